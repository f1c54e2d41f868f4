"""
    sft_lift.sft
    ~~~~~~~~~~~~

    Alphabets, patterns, local constraints and subshifts of finite type.

    Constraints are evaluated on a :class:`Fragment`, a partial coloring of a
    finite window. A symbol of a product alphabet is split into components which
    the search assigns one by one, so every evaluation reports SATISFIED,
    VIOLATED, or UNKNOWN together with the first component it still needs.

    :license: MIT, see LICENSE for more details.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
import enum
import itertools
import logging
from typing import Any, Callable, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple, Type, Union

from sft_lift.exceptions import (ConflictingEntries, ExportTooLarge, PresentationError, RelationViolation,
                                 SymbolMismatch)
from sft_lift.groups import IDENTITY_LABEL, Window, Word, WordOracle, ball

logger = logging.getLogger(__name__)

Symbol = Hashable
Variable = Tuple[int, int]


class Verdict(enum.Enum):
    SATISFIED = 'satisfied'
    VIOLATED = 'violated'
    UNKNOWN = 'unknown'


class Alphabet:
    """ A finite alphabet of symbols (integers or strings) """

    def __init__(self, symbols: Iterable[Symbol]) -> None:
        self.symbols = tuple(symbols)
        if not self.symbols:
            raise SymbolMismatch("An alphabet needs at least one symbol")
        if len(set(self.symbols)) != len(self.symbols):
            raise SymbolMismatch(f"Duplicate symbols in {self.symbols}")

    @property
    def size(self) -> int:
        return len(self.symbols)

    @property
    def domains(self) -> Tuple[Tuple[Symbol, ...], ...]:
        """ The values of each component of a symbol """
        return (self.symbols,)

    def __contains__(self, symbol: Symbol) -> bool:
        return symbol in self.symbols

    def decompose(self, symbol: Symbol) -> Tuple[Symbol, ...]:
        return (symbol,)

    def compose(self, parts: Sequence[Symbol]) -> Symbol:
        return parts[0]

    def to_json_symbol(self, symbol: Symbol) -> Any:
        return symbol

    def from_json_symbol(self, value: Any) -> Symbol:
        return value

    def __eq__(self, other: object) -> bool:
        return type(other) is type(self) and other.symbols == self.symbols

    def __hash__(self) -> int:
        return hash(self.symbols)

    def __repr__(self) -> str:
        return f"Alphabet({list(self.symbols)})"


class ProductAlphabet(Alphabet):
    """ The alphabet Σ × F of a lifted SFT, F being all maps from S_H to S_G

    A symbol is the pair (σ, labels) where `labels[i]` is the S_G label chosen for
    the i-th H-generator. The symbols are never listed, only their components.

    Args:
        sigma: the alphabet Σ
        s_h: the H-generator names
        s_g: the S_G labels
    """

    def __init__(self, sigma: Alphabet, s_h: Sequence[str], s_g: Sequence[str]) -> None:
        self.sigma = sigma
        self.s_h = tuple(s_h)
        self.s_g = tuple(s_g)
        if not self.s_g and self.s_h:
            raise SymbolMismatch("S_G must not be empty")
        self._component = {name: i + 1 for i, name in enumerate(self.s_h)}

    @property
    def symbols(self):
        return tuple(self.compose(parts) for parts in itertools.product(*self.domains))

    @property
    def size(self) -> int:
        return self.sigma.size * len(self.s_g) ** len(self.s_h)

    @property
    def domains(self) -> Tuple[Tuple[Symbol, ...], ...]:
        return (self.sigma.symbols,) + (self.s_g,) * len(self.s_h)

    def component(self, h: str) -> int:
        return self._component[h]

    def __contains__(self, symbol: Symbol) -> bool:
        try:
            sigma, labels = symbol
        except (TypeError, ValueError):
            return False
        return sigma in self.sigma and len(labels) == len(self.s_h) and all(label in self.s_g for label in labels)

    def decompose(self, symbol: Symbol) -> Tuple[Symbol, ...]:
        sigma, labels = symbol
        return (sigma,) + tuple(labels)

    def compose(self, parts: Sequence[Symbol]) -> Symbol:
        return parts[0], tuple(parts[1:])

    def to_json_symbol(self, symbol: Symbol) -> Any:
        sigma, labels = symbol
        return [sigma, list(labels)]

    def from_json_symbol(self, value: Any) -> Symbol:
        sigma, labels = value
        return sigma, tuple(labels)

    def __eq__(self, other: object) -> bool:
        return (type(other) is type(self) and other.sigma == self.sigma
                and other.s_h == self.s_h and other.s_g == self.s_g)

    def __hash__(self) -> int:
        return hash((self.sigma, self.s_h, self.s_g))

    def __repr__(self) -> str:
        return f"ProductAlphabet({self.sigma!r}, {list(self.s_h)}, {list(self.s_g)})"


@dataclass(frozen=True)
class Pattern:
    """ A finite partial coloring, as (support word, symbol) entries sorted by word """
    entries: Tuple[Tuple[Word, Symbol], ...]

    def __post_init__(self) -> None:
        entries = tuple(sorted(((tuple(word), symbol) for word, symbol in self.entries),
                               key=lambda entry: (len(entry[0]), entry[0])))
        if not entries:
            raise SymbolMismatch("A pattern needs a non-empty support")
        object.__setattr__(self, 'entries', entries)

    @classmethod
    def of(cls, entries: Union[Mapping[Word, Symbol], Iterable[Tuple[Iterable[str], Symbol]]]) -> 'Pattern':
        if isinstance(entries, Mapping):
            entries = entries.items()
        return cls(tuple((tuple(word), symbol) for word, symbol in entries))

    @property
    def support(self) -> Tuple[Word, ...]:
        return tuple(word for word, _ in self.entries)

    @property
    def radius(self) -> int:
        return max(len(word) for word in self.support)


class LocalConstraint(ABC):
    """ A rule on the colors of a finite neighborhood of every cell

    Attributes:
        support_radius (int): every position the rule reads is at distance at most this from the anchor
    """
    support_radius = 0

    @abstractmethod
    def evaluate(self, fragment: 'Fragment', anchor: int) -> Tuple[Verdict, Optional[Variable]]:
        """ Evaluates the rule at `anchor`

        Returns the verdict and, when UNKNOWN, the first undetermined component it needs.
        Positions outside the window make the rule SATISFIED.
        """

    @abstractmethod
    def to_json(self, alphabet: Alphabet) -> Dict[str, Any]:
        """ The constraint object of the `sft.v1` schema """


class ForbiddenPattern(LocalConstraint):
    """ Forbids every translate of a pattern """

    def __init__(self, pattern: Pattern) -> None:
        self.pattern = pattern
        self.support_radius = pattern.radius

    def evaluate(self, fragment: 'Fragment', anchor: int) -> Tuple[Verdict, Optional[Variable]]:
        window = fragment.window
        cells = []
        for word, _ in self.pattern.entries:
            cell = window.walk(anchor, word)
            if cell is None:
                return Verdict.SATISFIED, None
            cells.append(cell)
        pending = None
        for cell, (_, symbol) in zip(cells, self.pattern.entries):
            for comp, part in enumerate(fragment.alphabet.decompose(symbol)):
                value = fragment.values[cell][comp]
                if value is None:
                    if pending is None:
                        pending = (cell, comp)
                elif value != part:
                    return Verdict.SATISFIED, None
        if pending is not None:
            return Verdict.UNKNOWN, pending
        return Verdict.VIOLATED, None

    def to_json(self, alphabet: Alphabet) -> Dict[str, Any]:
        return {'kind': 'forbidden', 'radius': self.support_radius,
                'pattern': [[list(word), alphabet.to_json_symbol(symbol)] for word, symbol in self.pattern.entries]}

    def __repr__(self) -> str:
        return f"ForbiddenPattern({dict(self.pattern.entries)})"


CHECKERS: Dict[str, Type['Checker']] = {}


def register_checker(checker_id: str) -> Callable[[Type['Checker']], Type['Checker']]:
    """ Class decorator registering a checker so that `sft.v1` documents can name it """
    def decorator(cls: Type['Checker']) -> Type['Checker']:
        cls.checker_id = checker_id
        CHECKERS[checker_id] = cls
        return cls
    return decorator


class Checker(LocalConstraint):
    """ An intensional constraint, identified by its checker id and JSON parameters """
    checker_id = 'abstract'

    @property
    @abstractmethod
    def params(self) -> Dict[str, Any]:
        """ JSON parameters from which `from_params` rebuilds the checker """

    @classmethod
    @abstractmethod
    def from_params(cls, params: Mapping[str, Any]) -> 'Checker':
        """ Rebuilds the checker """

    def to_json(self, alphabet: Alphabet) -> Dict[str, Any]:
        return {'kind': 'checker', 'radius': self.support_radius,
                'checker': {'id': self.checker_id, 'params': self.params}}

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.params})"


def make_checker(checker_id: str, params: Mapping[str, Any]) -> Checker:
    try:
        cls = CHECKERS[checker_id]
    except KeyError:
        raise PresentationError(f"Unknown checker {checker_id!r}") from None
    return cls.from_params(params)


@register_checker('exactly_one')
class ExactlyOne(Checker):
    """ In every group of (offset word, symbol) options, exactly one option matches

    An empty group can never be satisfied.
    """

    def __init__(self, groups: Sequence[Sequence[Tuple[Iterable[str], Symbol]]]) -> None:
        self.groups = tuple(tuple((tuple(word), symbol) for word, symbol in group) for group in groups)
        self.support_radius = max((len(word) for group in self.groups for word, _ in group), default=0)

    @property
    def params(self) -> Dict[str, Any]:
        return {'groups': [[[list(word), symbol] for word, symbol in group] for group in self.groups]}

    @classmethod
    def from_params(cls, params: Mapping[str, Any]) -> 'ExactlyOne':
        return cls([[(word, symbol) for word, symbol in group] for group in params['groups']])

    def evaluate(self, fragment: 'Fragment', anchor: int) -> Tuple[Verdict, Optional[Variable]]:
        window = fragment.window
        located = []
        for group in self.groups:
            cells = [window.walk(anchor, word) for word, _ in group]
            if any(cell is None for cell in cells):
                return Verdict.SATISFIED, None
            located.append(cells)
        pending = None
        for group, cells in zip(self.groups, located):
            matches = 0
            unknown = None
            for cell, (_, symbol) in zip(cells, group):
                value = fragment.values[cell][0]
                if value is None:
                    unknown = unknown or (cell, 0)
                elif value == symbol:
                    matches += 1
            if matches > 1 or (matches == 0 and unknown is None):
                return Verdict.VIOLATED, None
            if unknown is not None and pending is None:
                pending = unknown
        if pending is not None:
            return Verdict.UNKNOWN, pending
        return Verdict.SATISFIED, None


class Fragment:
    """ A partial coloring of a window, component by component

    Args:
        window: a :class:`~sft_lift.groups.Ball` or a Schreier graph
        alphabet: the alphabet of the colors
    """

    def __init__(self, window: Window, alphabet: Alphabet) -> None:
        self.window = window
        self.alphabet = alphabet
        self.arity = len(alphabet.domains)
        self.values: List[List[Optional[Symbol]]] = [[None] * self.arity for _ in range(window.size)]

    @classmethod
    def from_symbols(cls, window: Window, alphabet: Alphabet,
                     symbols: Union[Sequence[Symbol], Mapping[int, Symbol]]) -> 'Fragment':
        fragment = cls(window, alphabet)
        items = symbols.items() if isinstance(symbols, Mapping) else enumerate(symbols)
        for cell, symbol in items:
            if symbol is not None:
                fragment.assign_symbol(cell, symbol)
        return fragment

    def value(self, cell: int, comp: int) -> Optional[Symbol]:
        return self.values[cell][comp]

    def sigma(self, cell: int) -> Optional[Symbol]:
        return self.values[cell][0]

    def label(self, cell: int, h: str) -> Optional[str]:
        """ The S_G label stored at `cell` for the H-generator `h` """
        return self.values[cell][self.alphabet.component(h)]

    def assign(self, cell: int, comp: int, value: Symbol) -> None:
        self.values[cell][comp] = value

    def clear(self, cell: int, comp: int) -> None:
        self.values[cell][comp] = None

    def assign_symbol(self, cell: int, symbol: Symbol) -> None:
        if symbol not in self.alphabet:
            raise SymbolMismatch(f"{symbol!r} is not a symbol of {self.alphabet!r}")
        self.values[cell] = list(self.alphabet.decompose(symbol))

    def symbol(self, cell: int) -> Optional[Symbol]:
        parts = self.values[cell]
        if any(part is None for part in parts):
            return None
        return self.alphabet.compose(parts)

    def symbols(self) -> Tuple[Optional[Symbol], ...]:
        return tuple(self.symbol(cell) for cell in range(self.window.size))

    @property
    def is_total(self) -> bool:
        return all(part is not None for parts in self.values for part in parts)

    def copy(self) -> 'Fragment':
        other = Fragment(self.window, self.alphabet)
        other.values = [list(parts) for parts in self.values]
        return other


@dataclass(frozen=True)
class Sft:
    """ A subshift of finite type on a group

    Args:
        oracle: the group, its generators are the edge labels of every window
        alphabet: the alphabet
        constraints: the local constraints, forbidden patterns or checkers
        name: optional catalog name
    """
    oracle: WordOracle
    alphabet: Alphabet
    constraints: Tuple[LocalConstraint, ...] = ()
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'constraints', tuple(self.constraints))

    @property
    def generators(self) -> Tuple[str, ...]:
        return self.oracle.names

    @property
    def support_radius(self) -> int:
        return max((c.support_radius for c in self.constraints), default=0)

    def violations(self, fragment: Fragment) -> List[Tuple[int, int]]:
        """ The (anchor, constraint index) pairs violated by a fragment """
        found = []
        for anchor in range(fragment.window.size):
            for index, constraint in enumerate(self.constraints):
                if constraint.evaluate(fragment, anchor)[0] is Verdict.VIOLATED:
                    found.append((anchor, index))
        return found

    def extensional(self, limit: Optional[int] = None) -> List[Pattern]:
        """ Forbidden-pattern form of the SFT

        Checkers are expanded by coloring the ball of their support radius in every
        possible way and forbidding the colorings they reject.

        Raises:
            ExportTooLarge: if a checker needs more than `limit` colorings
        """
        from sft_lift.limiter import DEFAULT_EXPORT_LIMIT
        limit = DEFAULT_EXPORT_LIMIT if limit is None else limit
        patterns = []
        for constraint in self.constraints:
            if isinstance(constraint, ForbiddenPattern):
                patterns.append(constraint.pattern)
                continue
            window = ball(self.oracle, r=constraint.support_radius)
            count = self.alphabet.size ** window.size
            if count > limit:
                raise ExportTooLarge(f"{constraint!r} expands to {count} colorings, the limit is {limit}")
            logger.debug(f" Expanding {constraint!r} over {count} colorings")
            for symbols in itertools.product(self.alphabet.symbols, repeat=window.size):
                fragment = Fragment.from_symbols(window, self.alphabet, symbols)
                if constraint.evaluate(fragment, 0)[0] is Verdict.VIOLATED:
                    patterns.append(Pattern(tuple(zip(window.words, symbols))))
            if len(patterns) > limit:
                raise ExportTooLarge(f"The export exceeds {limit} patterns")
        return patterns


def canonicalize_pattern(group: WordOracle, p: Pattern) -> Pattern:
    """ Replaces every support word by the read-back of its canonical form

    Raises:
        ConflictingEntries: if two equal support words carry different symbols
    """
    merged: Dict[Hashable, Tuple[Word, Symbol]] = {}
    for word, symbol in p.entries:
        element = group.normalize(word)
        if element in merged:
            if merged[element][1] != symbol:
                raise ConflictingEntries(f"{word} and {merged[element][0]} are the same position "
                                         f"but carry {symbol!r} and {merged[element][1]!r}")
            continue
        merged[element] = (group.to_word(element), symbol)
    return Pattern(tuple(merged.values()))


def make_sft(group: WordOracle, alphabet: Alphabet, forbidden: Iterable[Pattern], name: Optional[str] = None) -> Sft:
    """ The SFT forbidding every translate of every pattern

    Raises:
        SymbolMismatch: if a pattern uses a symbol outside the alphabet
        UnknownGenerator: if a support word uses an undeclared generator
    """
    constraints = []
    for pattern in forbidden:
        for word, symbol in pattern.entries:
            if symbol not in alphabet:
                raise SymbolMismatch(f"{symbol!r} is not a symbol of {alphabet!r}")
            group.check_word(word)
        constraints.append(ForbiddenPattern(canonicalize_pattern(group, pattern)))
    return Sft(group, alphabet, tuple(constraints), name)


def subgroup_lift(x_h: Sft, embedding: Mapping[str, Iterable[str]], g_oracle: WordOracle,
                  name: Optional[str] = None) -> Sft:
    """ The SFT on G taking the same forbidden patterns as `x_h`, through an embedding of H

    Args:
        x_h: an SFT on H given by forbidden patterns
        embedding: maps H-generators to words over G; formal inverses default to the inverse image
        g_oracle: the group G

    Raises:
        RelationViolation: if a relation of H does not hold for the images in G
    """
    h_oracle = x_h.oracle
    images: Dict[str, Word] = {}
    for name_h in h_oracle.names:
        if name_h in embedding:
            images[name_h] = g_oracle.check_word(embedding[name_h])
    for g in h_oracle.generators:
        if g.name not in images:
            if g.inverse is None or g.inverse not in images:
                raise RelationViolation(f"No image for the H-generator {g.name!r}")
            images[g.name] = g_oracle.inverse_word(images[g.inverse])

    def image(word: Iterable[str]) -> Word:
        return tuple(letter for h in word if h != IDENTITY_LABEL for letter in images[h])

    for left, right in h_oracle.presentation.relations:
        if not g_oracle.equal(image(left), image(right)):
            raise RelationViolation(f"The relation {left} = {right} of H fails under the embedding")

    forbidden = []
    for constraint in x_h.constraints:
        if not isinstance(constraint, ForbiddenPattern):
            raise PresentationError(f"Only forbidden patterns can be carried to a supergroup, not {constraint!r}")
        forbidden.append(Pattern(tuple((image(word), symbol) for word, symbol in constraint.pattern.entries)))
    logger.debug(f" Carrying {len(forbidden)} patterns from {h_oracle!r} to {g_oracle!r}")
    return make_sft(g_oracle, x_h.alphabet, forbidden, name)
