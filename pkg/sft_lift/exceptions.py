""" The exceptions raised by sft-lift

Search outcomes such as a refuted ball or a missing periodic point are returned as
values, never raised. Only malformed input and exhausted budgets end up here.
"""
from typing import Optional


class SftLiftError(Exception):
    """ Base class of every error raised by the library """


class PresentationError(SftLiftError):
    """ A presentation or a generating set is malformed """


class UnknownGenerator(SftLiftError):
    """ A word uses a letter which is not declared by its presentation """

    def __init__(self, letter: str, known=()) -> None:
        self.letter = letter
        super().__init__(f"Unknown generator {letter!r} (declared: {', '.join(sorted(known))})")


class OracleFailure(SftLiftError):
    """ A word oracle could not decide an equality """


class NotConfluent(SftLiftError):
    """ A rewriting system has a critical pair with two different normal forms """


class SymbolMismatch(SftLiftError):
    """ A pattern uses a symbol outside the alphabet """


class ConflictingEntries(SftLiftError):
    """ Two equal support positions of a pattern carry different symbols """


class RelationViolation(SftLiftError):
    """ An embedding does not respect a relation of the embedded group """


class TransversalFailure(SftLiftError):
    """ The orbit decomposition of an action is inconsistent on a window """


class WindowTooSmall(SftLiftError):
    """ A finite action description does not cover the window it is used on """


class SynthesisError(SftLiftError):
    """ A point could not be synthesized from the given H-coloring """


class NotNearestNeighbor(SftLiftError):
    """ An SFT has a constraint which is not a two-cell forbidden pattern """


class IdentityElement(SftLiftError):
    """ A word which must be non-trivial represents the identity """


class NotFound(SftLiftError):
    """ A catalog lookup failed """


class SchemaError(SftLiftError):
    """ A JSON document does not match its schema """


class ExportTooLarge(SftLiftError):
    """ An extensional export would produce more patterns than allowed """


class InconsistentSolvers(SftLiftError):
    """ The two exact feasibility solvers disagree on a frequency system """


class ResourceLimit(SftLiftError):
    """ A search ran out of its node budget or of its wall-clock time

    This is never an emptiness certificate.
    """

    def __init__(self, reason: str, nodes: int = 0, elapsed: Optional[float] = None) -> None:
        self.reason = reason
        self.nodes = nodes
        self.elapsed = elapsed
        super().__init__(f"Resource limit reached ({reason}) after {nodes} nodes")
