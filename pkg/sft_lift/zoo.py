"""
    sft_lift.zoo
    ~~~~~~~~~~~~

    Ready-made groups, actions and SFTs, and the catalog that names them.

    The catalog names are what the command line accepts in place of a file, so
    they are stable identifiers.

    :license: MIT, see LICENSE for more details.
"""
from dataclasses import dataclass
import logging
from types import MappingProxyType
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sft_lift.exceptions import IdentityElement, NotFound, PresentationError
from sft_lift.groups import (Ball, BaumslagSolitar1n, DirectProduct, FreeAbelian, FreeGroup, Heisenberg,
                             Lamplighter, MonoidPresentation, Word, WordOracle, cyclic_group, power)
from sft_lift.lift import CoordinateShift, LiftSpec, SubgroupTranslation, build_lifted_sft, product_action
from sft_lift.sft import Alphabet, ExactlyOne, Pattern, Sft, make_sft, subgroup_lift

logger = logging.getLogger(__name__)


def _successor_patterns(letter: str, symbols: Sequence[int], allowed: Callable[[int, int], bool]) -> List[Pattern]:
    """ Two-cell patterns forbidding every pair (s at ε, t at `letter`) which is not allowed """
    return [Pattern((((), s), ((letter,), t))) for s in symbols for t in symbols if not allowed(s, t)]


def piantadosi(target: str = 'F2') -> Sft:
    """ The three-color SFT where a adds 1 mod 3 and b hits 1 exactly off the color 1

    x_{g·a} = x_g + 1 mod 3, and x_g ≠ 1 if and only if x_{g·b} = 1. On ℤ² its
    frequency equations have no solution; on F_2 it is non-empty without periodic points.

    Args:
        target: `F2` for the free group, `Z2` for the free abelian group, on generators a and b
    """
    if target.upper() == 'F2':
        oracle: WordOracle = FreeGroup(2, ('a', 'b'))
    elif target.upper() == 'Z2':
        oracle = FreeAbelian(2, ('a', 'b'))
    else:
        raise NotFound(f"No Piantadosi SFT on {target!r}, use F2 or Z2")
    symbols = (0, 1, 2)
    forbidden = _successor_patterns('a', symbols, lambda s, t: t == (s + 1) % 3)
    forbidden += _successor_patterns('b', symbols, lambda s, t: (s != 1) == (t == 1))
    return make_sft(oracle, Alphabet(symbols), forbidden, name=f"piantadosi-{target.lower()}")


def mod_shift(n: int, oracle: Optional[WordOracle] = None, letter: str = 't') -> Sft:
    """ x_{i+1} = x_i + 1 mod n on ℤ, generated by `letter` """
    if n < 1:
        raise PresentationError(f"The modulus must be positive, got {n}")
    oracle = oracle or FreeAbelian(1, (letter,))
    symbols = tuple(range(n))
    forbidden = _successor_patterns(letter, symbols, lambda s, t: t == (s + 1) % n)
    return make_sft(oracle, Alphabet(symbols), forbidden, name=f"mod{n}-z")


def golden_mean() -> Sft:
    """ No two adjacent 1 on ℤ """
    return make_sft(FreeAbelian(1, ('t',)), Alphabet((0, 1)), [Pattern((((), 1), (('t',), 1)))], name='golden-mean-z')


def nonresidual_witness(oracle: WordOracle, a: Iterable[str], colors: int = 3, name: Optional[str] = None) -> Sft:
    """ Colorings where g and g·a always differ

    Any periodic point would be fixed by a finite-index subgroup, and a quotient in
    which `a` acts trivially has no such coloring.

    Raises:
        IdentityElement: if `a` represents the identity
    """
    a = oracle.check_word(a)
    if oracle.is_identity(a):
        raise IdentityElement(f"{'·'.join(a) or 'ε'} is the identity of {oracle!r}")
    symbols = tuple(range(colors))
    forbidden = [Pattern((((), c), (a, c))) for c in symbols]
    return make_sft(oracle, Alphabet(symbols), forbidden, name=name)


@dataclass(frozen=True)
class ParadoxicalDecomposition:
    """ Pieces A_i of a group with G = ⊔_{i≥0} A_i·g_i = ⊔_{j<0} A_j·g_j

    Attributes:
        elements: the translating element g_i of every piece index i
        membership: the piece index of a group element, given by its read-back word
    """
    elements: Mapping[int, Word]
    membership: Optional[Callable[[Word], int]] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, 'elements', {index: tuple(word) for index, word in sorted(self.elements.items())})
        if not any(index < 0 for index in self.elements) or not any(index >= 0 for index in self.elements):
            logger.warning(f"The decomposition {sorted(self.elements)} needs indices on both sides of 0, "
                           "its SFT is empty")

    @property
    def indices(self) -> Tuple[int, ...]:
        return tuple(self.elements)


def _standard_f2_piece(word: Word) -> int:
    if not word or word[-1] == 'a' or all(letter == 'A' for letter in word):
        return 0
    return {'A': 1, 'b': -1, 'B': -2}[word[-1]]


def standard_f2() -> ParadoxicalDecomposition:
    """ The reduced-word decomposition of F_2 = ⟨a, b⟩ into four pieces

    A_0 holds the words ending in a and the powers of A, A_1 the other words ending
    in A, A_{-1} the words ending in b and A_{-2} those ending in B. Then
    G = A_0 ⊔ A_1·a = A_{-1} ⊔ A_{-2}·b.
    """
    return ParadoxicalDecomposition({-2: ('b',), -1: (), 0: (), 1: ('a',)}, _standard_f2_piece)


def piece_assignment(pd: ParadoxicalDecomposition, oracle: WordOracle, window: Ball) -> Tuple[int, ...]:
    """ The piece index of every element of a ball """
    if pd.membership is None:
        raise PresentationError("The decomposition has no membership rule")
    return tuple(pd.membership(oracle.to_word(element)) for element in window.elements)


def paradoxical_sft(pd: ParadoxicalDecomposition, oracle: Optional[WordOracle] = None) -> Sft:
    """ Colorings by piece indices where every g lies in exactly one A_i·g_i on each side

    Args:
        pd: the decomposition
        oracle: the group, F_2 on a and b by default
    """
    oracle = oracle or FreeGroup(2, ('a', 'b'))
    sides: Tuple[List[Tuple[Word, int]], List[Tuple[Word, int]]] = ([], [])
    for index, element in pd.elements.items():
        offset = oracle.canonical_word(oracle.inverse_word(element))
        sides[0 if index >= 0 else 1].append((offset, index))
    return Sft(oracle, Alphabet(pd.indices), (ExactlyOne(sides),), name='paradoxical-f2')


# the tile colors are read as (north, south, east, west)
CHECKERBOARD_TILES = ((0, 1, 0, 1), (1, 0, 1, 0))


def wang_sft(tileset: Sequence[Sequence[Any]], oracle: Optional[WordOracle] = None, name: Optional[str] = None) -> Sft:
    """ The Wang tilings by a tileset, tile i being the symbol i

    The generator a moves east and b moves north.
    """
    oracle = oracle or FreeAbelian(2, ('a', 'b'))
    tiles = [tuple(tile) for tile in tileset]
    symbols = tuple(range(len(tiles)))
    forbidden = _successor_patterns('a', symbols, lambda s, t: tiles[s][2] == tiles[t][3])
    forbidden += _successor_patterns('b', symbols, lambda s, t: tiles[s][0] == tiles[t][1])
    logger.debug(f" {len(tiles)} Wang tiles, {len(forbidden)} forbidden pairs")
    return make_sft(oracle, Alphabet(symbols), forbidden, name=name)


def _z() -> FreeAbelian:
    return FreeAbelian(1, ('t',))


def z_copies(oracle: WordOracle, cycle_bound: int = 0, name: Optional[str] = 'z-copies') -> Sft:
    """ Points choosing at every element one outgoing and one incoming t-edge

    They split the Cayley graph into copies of ℤ. The antirelations t^k ≠ ε for
    k ≤ cycle_bound forbid the copies closing into short cycles.
    """
    h = _z()
    pres = MonoidPresentation(h.generators, h.presentation.relations,
                              tuple((power('t', 'T', k), ()) for k in range(1, cycle_bound + 1)))
    spec = LiftSpec(pres, Alphabet((0,)), (), oracle, oracle.names, h_oracle=h, name=name)
    return build_lifted_sft(spec)


def mod3_liftspec() -> LiftSpec:
    """ The mod-3 shift of ℤ lifted to ℤ² = ⟨a, b⟩ """
    h = _z()
    g = FreeAbelian(2, ('a', 'b'))
    return LiftSpec(h.presentation, Alphabet((0, 1, 2)), tuple(mod_shift(3).extensional()), g, g.names,
                    h_oracle=h, name='mod3-lift-z2')


def mod3_lift() -> Sft:
    return build_lifted_sft(mod3_liftspec())


def mod3_subgroup_lift() -> Sft:
    """ The mod-3 shift carried to ℤ² along the embedding t ↦ a """
    return subgroup_lift(mod_shift(3), {'t': ('a',)}, FreeAbelian(2, ('a', 'b')), name='mod3-subgroup-z2')


def mod3_shift_z() -> Sft:
    return mod_shift(3)


def paradoxical_f2() -> Sft:
    return paradoxical_sft(standard_f2())


def wang_checkerboard() -> Sft:
    return wang_sft(CHECKERBOARD_TILES, name='wang-checkerboard')


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str
    factory: Callable[[], Any]
    description: str


class Catalog:
    """ A read-only registry of named constructions

    Entries are built on every lookup, so callers never share mutable state.
    """

    def __init__(self, entries: Iterable[CatalogEntry]) -> None:
        self._entries = MappingProxyType({entry.name: entry for entry in entries})

    def __contains__(self, name: str) -> bool:
        return name in self._entries

    def names(self, kind: Optional[str] = None) -> List[str]:
        return sorted(name for name, entry in self._entries.items() if kind is None or entry.kind == kind)

    def entry(self, name: str) -> CatalogEntry:
        try:
            return self._entries[name]
        except KeyError:
            raise NotFound(f"No catalog entry named {name!r}") from None

    def get(self, name: str, kind: Optional[str] = None) -> Any:
        """ Builds the named construction

        Raises:
            NotFound: if the name is unknown, or names an entry of another kind
        """
        entry = self.entry(name)
        if kind is not None and entry.kind != kind:
            raise NotFound(f"{name!r} is a {entry.kind}, not a {kind}")
        return entry.factory()


def _entries() -> List[CatalogEntry]:
    return [
        # groups
        CatalogEntry('f2', 'group', lambda: FreeGroup(2, ('a', 'b')), "free group on a, b"),
        CatalogEntry('f3', 'group', lambda: FreeGroup(3, ('a', 'b', 'c')), "free group on a, b, c"),
        CatalogEntry('z', 'group', _z, "ℤ on t"),
        CatalogEntry('z2', 'group', lambda: FreeAbelian(2, ('a', 'b')), "ℤ² on a, b"),
        CatalogEntry('z3', 'group', lambda: FreeAbelian(3, ('a', 'b', 'c')), "ℤ³ on a, b, c"),
        CatalogEntry('bs12', 'group', lambda: BaumslagSolitar1n(2), "B(1,2) = ⟨a, b | a·b·A = b²⟩"),
        CatalogEntry('heisenberg', 'group', Heisenberg, "discrete Heisenberg group on a, b"),
        CatalogEntry('lamplighter', 'group', Lamplighter, "ℤ/2 ≀ ℤ with lamp a and move t"),
        CatalogEntry('c3', 'group', lambda: cyclic_group(3), "ℤ/3 on a"),
        CatalogEntry('f2xz', 'group', lambda: DirectProduct(FreeGroup(2, ('a', 'b')), _z()), "F_2 × ℤ"),
        # actions
        CatalogEntry('shift-z-on-z2', 'action', lambda: CoordinateShift(FreeAbelian(2, ('a', 'b')), ('a',)),
                     "ℤ acting on ℤ² along a"),
        CatalogEntry('shift-z2-on-z2', 'action', lambda: CoordinateShift(FreeAbelian(2, ('a', 'b')), ('a', 'b')),
                     "ℤ² acting on itself by translation"),
        CatalogEntry('translation-z-on-f2', 'action',
                     lambda: SubgroupTranslation(_z(), FreeGroup(2, ('a', 'b')), {'t': 'a'}),
                     "ℤ acting on F_2 by right multiplication by a"),
        CatalogEntry('product-z-z', 'action',
                     lambda: product_action(CoordinateShift(FreeAbelian(1, ('a',)), ('a',), ('t',)),
                                            CoordinateShift(FreeAbelian(1, ('b',)), ('b',), ('u',))),
                     "ℤ × ℤ acting on ℤ × ℤ factor by factor"),
        # lift specifications
        CatalogEntry('mod3-liftspec-z2', 'liftspec', mod3_liftspec, "the mod-3 shift of ℤ lifted to ℤ²"),
        # SFTs
        CatalogEntry('piantadosi-z2', 'sft', lambda: piantadosi('Z2'), "Piantadosi constraints on ℤ², empty"),
        CatalogEntry('piantadosi-f2', 'sft', lambda: piantadosi('F2'), "Piantadosi SFT on F_2, weakly aperiodic"),
        CatalogEntry('mod3-z', 'sft', mod3_shift_z, "x_{i+1} = x_i + 1 mod 3 on ℤ"),
        CatalogEntry('mod3-lift-z2', 'sft', mod3_lift, "lift of mod3-z to ℤ²"),
        CatalogEntry('mod3-subgroup-z2', 'sft', mod3_subgroup_lift, "mod3-z on every a-line of ℤ²"),
        CatalogEntry('paradoxical-f2', 'sft', paradoxical_f2, "paradoxical decomposition SFT on F_2"),
        CatalogEntry('wang-checkerboard', 'sft', wang_checkerboard, "two Wang tiles forcing a checkerboard"),
        CatalogEntry('golden-mean-z', 'sft', golden_mean, "no two adjacent 1 on ℤ"),
        CatalogEntry('nonresidual-bs12', 'sft',
                     lambda: nonresidual_witness(BaumslagSolitar1n(2), ('b',), name='nonresidual-bs12'),
                     "g and g·b differ, on B(1,2)"),
        CatalogEntry('z-copies-z2', 'sft', lambda: z_copies(FreeAbelian(2, ('a', 'b')), 4, 'z-copies-z2'),
                     "copies of ℤ in ℤ² without cycles of length ≤ 4"),
    ]


_CATALOG: Optional[Catalog] = None


def standard_catalog() -> Catalog:
    """ The catalog of every built-in construction """
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = Catalog(_entries())
    return _CATALOG


def lookup(name: str, kind: Optional[str] = None) -> Any:
    return standard_catalog().get(name, kind)


def describe() -> Dict[str, Dict[str, str]]:
    catalog = standard_catalog()
    return {name: {'kind': catalog.entry(name).kind, 'description': catalog.entry(name).description}
            for name in catalog.names()}
