"""
    sft_lift.groups
    ~~~~~~~~~~~~~~~

    Finitely presented groups and monoids, word oracles deciding equality for a
    catalog of groups, and the finite windows (balls of a Cayley graph) on which
    every search runs.

    Words are tuples of generator names. The empty tuple is the identity λ.
    Every oracle works with an element representation of its own (the canonical
    form) and can read a word back from it.

    :license: MIT, see LICENSE for more details.
"""
from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
import itertools
import logging
from typing import Any, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sft_lift.exceptions import PresentationError, UnknownGenerator

logger = logging.getLogger(__name__)

Word = Tuple[str, ...]
CanonicalForm = Hashable

# reserved step label standing for the identity element of any group
IDENTITY_LABEL = '1'


@dataclass(frozen=True)
class GeneratorSymbol:
    """ A generator of a presentation, optionally paired with its formal inverse

    A generator can be its own inverse (e.g. the lamp of the lamplighter group).
    """
    name: str
    inverse: Optional[str] = None


def paired_generators(names: Iterable[str]) -> Tuple[GeneratorSymbol, ...]:
    """ Generators for `names` together with their formal inverses

    The inverse of a lowercase name is its uppercase version, so `a` is paired with `A`.
    """
    symbols = []
    for name in names:
        if name.swapcase() == name:
            raise PresentationError(f"Cannot derive an inverse name for generator {name!r}")
        symbols.append(GeneratorSymbol(name, name.swapcase()))
        symbols.append(GeneratorSymbol(name.swapcase(), name))
    return tuple(symbols)


def _as_word(word: Iterable[str]) -> Word:
    if isinstance(word, str):
        raise TypeError(f"Words are sequences of generator names, got the string {word!r}")
    return tuple(word)


def power(letter: str, inverse: str, exponent: int) -> Word:
    """ The word letter^exponent, using `inverse` for negative exponents """
    return (letter,) * exponent if exponent >= 0 else (inverse,) * (-exponent)


@dataclass(frozen=True)
class MonoidPresentation:
    """ A finitely presented monoid

    Groups are seen as monoids whose generators come with formal inverses; the
    cancellation relations g·g⁻¹ = ε and g⁻¹·g = ε are added automatically when
    they are missing.

    Args:
        generators: the generator symbols
        relations: pairs of words declared equal
        antirelations: pairs of words declared different
    """
    generators: Tuple[GeneratorSymbol, ...]
    relations: Tuple[Tuple[Word, Word], ...] = ()
    antirelations: Tuple[Tuple[Word, Word], ...] = ()

    def __post_init__(self) -> None:
        generators = tuple(self.generators)
        names = [g.name for g in generators]
        if len(set(names)) != len(names):
            raise PresentationError(f"Generator names must be unique, got {names}")
        if IDENTITY_LABEL in names:
            raise PresentationError(f"{IDENTITY_LABEL!r} is reserved for the identity step")
        by_name = {g.name: g for g in generators}
        for g in generators:
            if g.inverse is None:
                continue
            partner = by_name.get(g.inverse)
            if partner is None or partner.inverse != g.name:
                raise PresentationError(f"The inverse pairing of {g.name!r} is not symmetric")

        relations = [(_as_word(u), _as_word(v)) for u, v in self.relations]
        antirelations = tuple((_as_word(u), _as_word(v)) for u, v in self.antirelations)
        for u, v in itertools.chain(relations, antirelations):
            for letter in itertools.chain(u, v):
                if letter not in by_name:
                    raise UnknownGenerator(letter, names)

        present = set(relations)
        for g in generators:
            if g.inverse is None:
                continue
            cancellation = ((g.name, g.inverse), ())
            if cancellation not in present:
                relations.append(cancellation)
                present.add(cancellation)

        object.__setattr__(self, 'generators', generators)
        object.__setattr__(self, 'relations', tuple(relations))
        object.__setattr__(self, 'antirelations', antirelations)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    @property
    def inverses(self) -> Dict[str, str]:
        return {g.name: g.inverse for g in self.generators if g.inverse is not None}

    @property
    def is_group(self) -> bool:
        """ True when every generator has a formal inverse """
        return all(g.inverse is not None for g in self.generators)

    @property
    def primary_names(self) -> Tuple[str, ...]:
        """ One generator name per inverse pair, in declaration order """
        seen = set()
        primary = []
        for g in self.generators:
            if g.name in seen:
                continue
            primary.append(g.name)
            seen.add(g.name)
            if g.inverse is not None:
                seen.add(g.inverse)
        return tuple(primary)

    def check_word(self, word: Iterable[str]) -> Word:
        word = _as_word(word)
        names = self.names
        for letter in word:
            if letter not in names:
                raise UnknownGenerator(letter, names)
        return word

    def inverse_word(self, word: Iterable[str]) -> Word:
        """ The formal inverse of a word (reversed, each letter inverted) """
        inverses = self.inverses
        try:
            return tuple(inverses[letter] for letter in reversed(tuple(word)))
        except KeyError as e:
            raise PresentationError(f"Generator {e.args[0]!r} has no formal inverse") from None

    def direct_product(self, other: 'MonoidPresentation') -> 'MonoidPresentation':
        """ Presentation of the direct product: disjoint generators plus cross commutations """
        clash = set(self.names) & set(other.names)
        if clash:
            raise PresentationError(f"The factors share generator names {sorted(clash)}")
        commutations = tuple(((x, y), (y, x)) for x in self.primary_names for y in other.primary_names)
        return MonoidPresentation(self.generators + other.generators,
                                  self.relations + other.relations + commutations,
                                  self.antirelations + other.antirelations)


class WordOracle(ABC):
    """ Decides the word problem of a group through a canonical form

    Subclasses implement the identity element, the right multiplication of a
    canonical form by one generator, the read-back of a word and the defining
    relations. Every derived operation (normalization, equality, balls) works
    by folding generators over the identity, from the left.

    Args:
        generators: the generator symbols, closed under formal inverses

    Attributes:
        kind (str): strategy name used by the `group.v1` schema
        amenable (bool): whether the group is amenable, which decides if a frequency
                         infeasibility certifies emptiness
        finitely_presented (bool): False when `presentation` only lists part of the relations
    """
    kind = 'abstract'
    amenable = False
    finitely_presented = True

    def __init__(self, generators: Sequence[GeneratorSymbol]) -> None:
        self._generators = tuple(generators)
        self._inverses = {g.name: g.inverse for g in self._generators}
        self._presentation: Optional[MonoidPresentation] = None

    @property
    def generators(self) -> Tuple[GeneratorSymbol, ...]:
        return self._generators

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(g.name for g in self._generators)

    @property
    def presentation(self) -> MonoidPresentation:
        if self._presentation is None:
            self._presentation = MonoidPresentation(self._generators, tuple(self._relations()))
        return self._presentation

    def inverse_of(self, name: str) -> Optional[str]:
        if name == IDENTITY_LABEL:
            return IDENTITY_LABEL
        if name not in self._inverses:
            raise UnknownGenerator(name, self.names)
        return self._inverses[name]

    def check_word(self, word: Iterable[str]) -> Word:
        word = _as_word(word)
        for letter in word:
            if letter not in self._inverses and letter != IDENTITY_LABEL:
                raise UnknownGenerator(letter, self.names)
        return word

    def apply(self, element: CanonicalForm, letter: str) -> CanonicalForm:
        """ Right multiplication of a canonical form by one generator """
        if letter == IDENTITY_LABEL:
            return element
        if letter not in self._inverses:
            raise UnknownGenerator(letter, self.names)
        return self._apply(element, letter)

    def evaluate(self, word: Iterable[str], start: Optional[CanonicalForm] = None) -> CanonicalForm:
        element = self.identity() if start is None else start
        for letter in self.check_word(word):
            element = self.apply(element, letter)
        return element

    def normalize(self, word: Iterable[str]) -> CanonicalForm:
        return self.evaluate(word)

    def equal(self, w1: Iterable[str], w2: Iterable[str]) -> bool:
        return self.normalize(w1) == self.normalize(w2)

    def is_identity(self, word: Iterable[str]) -> bool:
        return self.normalize(word) == self.identity()

    def canonical_word(self, word: Iterable[str]) -> Word:
        """ The read-back word of the element represented by `word` """
        return self.to_word(self.normalize(word))

    def inverse_word(self, word: Iterable[str]) -> Word:
        return tuple(self.inverse_of(letter) for letter in reversed(self.check_word(word)))

    @abstractmethod
    def identity(self) -> CanonicalForm:
        """ The canonical form of λ """

    @abstractmethod
    def _apply(self, element: CanonicalForm, letter: str) -> CanonicalForm:
        """ Right multiplication by a declared generator """

    @abstractmethod
    def to_word(self, element: CanonicalForm) -> Word:
        """ A word representing the element """

    @abstractmethod
    def _relations(self) -> Iterable[Tuple[Word, Word]]:
        """ The defining relations, cancellation relations excluded """

    @abstractmethod
    def to_spec(self) -> Dict[str, Any]:
        """ The `strategy` object of the `group.v1` schema """

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({', '.join(self.names)})"


def _default_names(count: int) -> Tuple[str, ...]:
    # t is kept for the acting group H, as in the lift specifications
    letters = 'abcdefghijklmnopqrsuvwxyz'
    if count > len(letters):
        raise PresentationError(f"Please name the {count} generators explicitly")
    return tuple(letters[:count])


class FreeGroup(WordOracle):
    """ The free group of the given rank; canonical forms are freely reduced words """
    kind = 'free_group'

    def __init__(self, rank: int = 2, names: Optional[Sequence[str]] = None) -> None:
        names = tuple(names) if names else _default_names(rank)
        if len(names) != rank:
            raise PresentationError(f"Expected {rank} generator names, got {names}")
        super().__init__(paired_generators(names))
        self.rank = rank
        self.primary = names
        self.amenable = rank <= 1

    def identity(self) -> Word:
        return ()

    def _apply(self, element: Word, letter: str) -> Word:
        if element and element[-1] == self._inverses[letter]:
            return element[:-1]
        return element + (letter,)

    def to_word(self, element: Word) -> Word:
        return element

    def _relations(self):
        return ()

    def to_spec(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'rank': self.rank, 'names': list(self.primary)}


class FreeAbelian(WordOracle):
    """ The free abelian group ℤ^rank; canonical forms are integer vectors """
    kind = 'free_abelian'
    amenable = True

    def __init__(self, rank: int = 2, names: Optional[Sequence[str]] = None) -> None:
        names = tuple(names) if names else _default_names(rank)
        if len(names) != rank:
            raise PresentationError(f"Expected {rank} generator names, got {names}")
        super().__init__(paired_generators(names))
        self.rank = rank
        self.primary = names
        self._axis = {}
        for i, name in enumerate(names):
            self._axis[name] = (i, 1)
            self._axis[name.swapcase()] = (i, -1)

    def identity(self) -> Tuple[int, ...]:
        return (0,) * self.rank

    def _apply(self, element: Tuple[int, ...], letter: str) -> Tuple[int, ...]:
        axis, sign = self._axis[letter]
        return element[:axis] + (element[axis] + sign,) + element[axis + 1:]

    def to_word(self, element: Tuple[int, ...]) -> Word:
        letters = []
        for name, coordinate in zip(self.primary, element):
            letters.extend(power(name, name.swapcase(), coordinate))
        # any order represents the element, the sorted one is shortlex-minimal
        return tuple(sorted(letters))

    def _relations(self):
        for x, y in itertools.combinations(self.primary, 2):
            yield (x, y), (y, x)

    def to_spec(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'rank': self.rank, 'names': list(self.primary)}


class BaumslagSolitar1n(WordOracle):
    """ The Baumslag-Solitar group B(1,n) = ⟨a, b | a·b·a⁻¹ = bⁿ⟩

    Elements are the affine maps x ↦ nᵏx + q with q in ℤ[1/n], stored as (k, q):
    a is (1, 0) and b is (0, 1). This representation is faithful for n ≠ 0.
    """
    kind = 'baumslag_solitar'
    amenable = True

    def __init__(self, n: int = 2, names: Sequence[str] = ('a', 'b')) -> None:
        if n == 0:
            raise PresentationError("B(1,0) is not a Baumslag-Solitar group")
        names = tuple(names)
        if len(names) != 2:
            raise PresentationError(f"Expected 2 generator names, got {names}")
        super().__init__(paired_generators(names))
        self.n = n
        self.primary = names

    def identity(self) -> Tuple[int, Fraction]:
        return (0, Fraction(0))

    def _apply(self, element: Tuple[int, Fraction], letter: str) -> Tuple[int, Fraction]:
        k, q = element
        a, b = self.primary
        if letter == a:
            return k + 1, q
        if letter == a.swapcase():
            return k - 1, q
        step = Fraction(self.n) ** k
        if letter == b:
            return k, q + step
        return k, q - step

    def to_word(self, element: Tuple[int, Fraction]) -> Word:
        k, q = element
        a, b = self.primary
        # q·nᵐ is an integer for m large enough, then element = a⁻ᵐ · b^N · a^(m+k)
        m = 0
        while (q * Fraction(self.n) ** m).denominator != 1:
            m += 1
        count = int(q * Fraction(self.n) ** m)
        return power(a, a.swapcase(), -m) + power(b, b.swapcase(), count) + power(a, a.swapcase(), m + k)

    def _relations(self):
        a, b = self.primary
        yield (a, b, a.swapcase()), power(b, b.swapcase(), self.n)

    def to_spec(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'n': self.n, 'names': list(self.primary)}


class Heisenberg(WordOracle):
    """ The discrete Heisenberg group, generated by a and b with central commutator

    Elements are unitriangular integer matrices stored as (x, y, z).
    """
    kind = 'heisenberg'
    amenable = True

    def __init__(self, names: Sequence[str] = ('a', 'b')) -> None:
        names = tuple(names)
        if len(names) != 2:
            raise PresentationError(f"Expected 2 generator names, got {names}")
        super().__init__(paired_generators(names))
        self.primary = names

    def identity(self) -> Tuple[int, int, int]:
        return (0, 0, 0)

    def _apply(self, element: Tuple[int, int, int], letter: str) -> Tuple[int, int, int]:
        x, y, z = element
        a, b = self.primary
        if letter == a:
            return x + 1, y, z
        if letter == a.swapcase():
            return x - 1, y, z
        if letter == b:
            return x, y + 1, z + x
        return x, y - 1, z - x

    def _commutator(self) -> Word:
        a, b = self.primary
        return a, b, a.swapcase(), b.swapcase()

    def to_word(self, element: Tuple[int, int, int]) -> Word:
        x, y, z = element
        a, b = self.primary
        word = power(a, a.swapcase(), x) + power(b, b.swapcase(), y)
        excess = z - x * y
        if excess >= 0:
            return word + self._commutator() * excess
        return word + (b, a, b.swapcase(), a.swapcase()) * (-excess)

    def _relations(self):
        a, b = self.primary
        c = self._commutator()
        yield c + (a,), (a,) + c
        yield c + (b,), (b,) + c

    def to_spec(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'names': list(self.primary)}


class Lamplighter(WordOracle):
    """ The lamplighter group ℤ/2 ≀ ℤ, with the lamp switch `a` and the move `t`

    Elements are (lit lamps, position). The group is not finitely presented, so
    `presentation` only lists the commutation relations for lamps at distance ≤ 3.
    """
    kind = 'lamplighter'
    amenable = True
    finitely_presented = False
    _RELATION_SPAN = 3

    def __init__(self, names: Sequence[str] = ('a', 't')) -> None:
        names = tuple(names)
        if len(names) != 2:
            raise PresentationError(f"Expected 2 generator names, got {names}")
        lamp, move = names
        super().__init__((GeneratorSymbol(lamp, lamp),) + paired_generators([move]))
        self.primary = names

    def identity(self) -> Tuple[Tuple[int, ...], int]:
        return ((), 0)

    def _apply(self, element: Tuple[Tuple[int, ...], int], letter: str) -> Tuple[Tuple[int, ...], int]:
        lamps, position = element
        lamp, move = self.primary
        if letter == lamp:
            lit = set(lamps) ^ {position}
            return tuple(sorted(lit)), position
        if letter == move:
            return lamps, position + 1
        return lamps, position - 1

    def to_word(self, element: Tuple[Tuple[int, ...], int]) -> Word:
        lamps, position = element
        lamp, move = self.primary
        word: Word = ()
        current = 0
        for target in lamps:
            word += power(move, move.swapcase(), target - current) + (lamp,)
            current = target
        return word + power(move, move.swapcase(), position - current)

    def _relations(self):
        lamp, move = self.primary
        for k in range(1, self._RELATION_SPAN + 1):
            shifted = power(move, move.swapcase(), k) + (lamp,) + power(move, move.swapcase(), -k)
            yield shifted + (lamp,), (lamp,) + shifted

    def to_spec(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'names': list(self.primary)}


class FiniteGroup(WordOracle):
    """ A finite group given by its multiplication table

    Element 0 must be the identity and `table[x][y]` is the product x·y.

    Args:
        table: the multiplication table
        generators: maps each generator name to the element it denotes
        inverses: optional explicit inverse pairing of the generator names; by default
                  the inverse of a generator is the first generator denoting the inverse element
    """
    kind = 'finite_group'
    amenable = True

    def __init__(self, table: Sequence[Sequence[int]], generators: Mapping[str, int],
                 inverses: Optional[Mapping[str, str]] = None) -> None:
        self.table = tuple(tuple(row) for row in table)
        self.elements = dict(generators)
        order = len(self.table)
        self._check_table(order)

        inverse_element = {x: next(y for y in range(order) if self.table[x][y] == 0) for x in range(order)}
        if inverses is None:
            inverses = {}
            for name, element in self.elements.items():
                partner = next((other for other, value in self.elements.items()
                                if value == inverse_element[element]), None)
                if partner is None:
                    raise PresentationError(f"No generator denotes the inverse of {name!r}")
                inverses[name] = partner
            # make the pairing symmetric when two names denote the same element
            for name in list(inverses):
                inverses[inverses[name]] = name
        super().__init__(tuple(GeneratorSymbol(name, inverses[name]) for name in self.elements))
        self._words = self._shortlex_words(order)

    def _check_table(self, order: int) -> None:
        if order == 0 or any(len(row) != order for row in self.table):
            raise PresentationError("The multiplication table must be square and non-empty")
        for x in range(order):
            if self.table[0][x] != x or self.table[x][0] != x:
                raise PresentationError("Element 0 must be the identity")
            if sorted(self.table[x]) != list(range(order)):
                raise PresentationError(f"Row {x} of the multiplication table is not a permutation")
        for x, y, z in itertools.product(range(order), repeat=3):
            if self.table[self.table[x][y]][z] != self.table[x][self.table[y][z]]:
                raise PresentationError(f"The multiplication is not associative at {(x, y, z)}")
        for name, element in self.elements.items():
            if not 0 <= element < order:
                raise PresentationError(f"Generator {name!r} denotes an unknown element {element}")

    def _shortlex_words(self, order: int) -> Dict[int, Word]:
        words = {0: ()}
        queue = deque([0])
        names = sorted(self.elements)
        while queue:
            x = queue.popleft()
            for name in names:
                y = self.table[x][self.elements[name]]
                if y not in words:
                    words[y] = words[x] + (name,)
                    queue.append(y)
        return words

    def identity(self) -> int:
        return 0

    def _apply(self, element: int, letter: str) -> int:
        return self.table[element][self.elements[letter]]

    def to_word(self, element: int) -> Word:
        if element not in self._words:
            raise PresentationError(f"Element {element} is not generated by the generators")
        return self._words[element]

    def _relations(self):
        for x, word in sorted(self._words.items()):
            for name in sorted(self.elements):
                yield word + (name,), self._words[self.table[x][self.elements[name]]]

    def to_spec(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'table': [list(row) for row in self.table],
                'generators': [[name, element] for name, element in self.elements.items()],
                'inverses': {g.name: g.inverse for g in self.generators}}


def cyclic_group(order: int, name: str = 'a') -> FiniteGroup:
    """ ℤ/order as a finite group generated by `name` and its inverse """
    table = [[(x + y) % order for y in range(order)] for x in range(order)]
    if order == 1:
        return FiniteGroup(table, {})
    generators = {name: 1 % order, name.swapcase(): (order - 1) % order}
    return FiniteGroup(table, generators, inverses={name: name.swapcase(), name.swapcase(): name})


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], {})


class DirectProduct(WordOracle):
    """ The direct product of two oracles with disjoint generator names """
    kind = 'direct_product'

    def __init__(self, left: WordOracle, right: WordOracle) -> None:
        clash = set(left.names) & set(right.names)
        if clash:
            raise PresentationError(f"The factors share generator names {sorted(clash)}")
        super().__init__(left.generators + right.generators)
        self.left = left
        self.right = right
        self._left_names = set(left.names)
        self.amenable = left.amenable and right.amenable
        self.finitely_presented = left.finitely_presented and right.finitely_presented

    def identity(self):
        return self.left.identity(), self.right.identity()

    def _apply(self, element, letter):
        first, second = element
        if letter in self._left_names:
            return self.left.apply(first, letter), second
        return first, self.right.apply(second, letter)

    def to_word(self, element) -> Word:
        first, second = element
        return self.left.to_word(first) + self.right.to_word(second)

    @property
    def presentation(self) -> MonoidPresentation:
        if self._presentation is None:
            self._presentation = self.left.presentation.direct_product(self.right.presentation)
        return self._presentation

    def _relations(self):
        return self.presentation.relations

    def to_spec(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'left': self.left.to_spec(), 'right': self.right.to_spec()}


def normalize(oracle: WordOracle, w: Iterable[str]) -> CanonicalForm:
    """ The canonical form of the element represented by `w`

    Raises:
        UnknownGenerator: if a letter is not declared by the oracle
    """
    return oracle.normalize(w)


def equal(oracle: WordOracle, w1: Iterable[str], w2: Iterable[str]) -> bool:
    """ True iff both words represent the same group element """
    return oracle.equal(w1, w2)


def direct_product(o1: WordOracle, o2: WordOracle) -> DirectProduct:
    """ The oracle of the direct product; generators are the disjoint union """
    return DirectProduct(o1, o2)


class Window(ABC):
    """ A finite portion of a Cayley or Schreier graph

    Elements are dense integers, the base point is 0. `step` follows one labelled
    edge and returns None when the edge leaves the window.
    """
    kind = 'window'
    closed = False

    @property
    @abstractmethod
    def size(self) -> int:
        """ Number of elements """

    @property
    @abstractmethod
    def generators(self) -> Tuple[str, ...]:
        """ Labels of the edges """

    @property
    def base(self) -> int:
        return 0

    @abstractmethod
    def step(self, element: int, letter: str) -> Optional[int]:
        """ The endpoint of the `letter` edge leaving `element`, None outside the window """

    def walk(self, element: int, word: Iterable[str]) -> Optional[int]:
        for letter in word:
            element = self.step(element, letter)
            if element is None:
                return None
        return element

    def neighborhood(self, element: int, radius: int) -> List[int]:
        """ The elements at graph distance ≤ radius, in discovery order """
        cache = self.__dict__.setdefault('_neighborhoods', {})
        key = (element, radius)
        if key not in cache:
            seen = {element: 0}
            order = [element]
            queue = deque([element])
            while queue:
                current = queue.popleft()
                if seen[current] == radius:
                    continue
                for letter in self.generators:
                    target = self.step(current, letter)
                    if target is not None and target not in seen:
                        seen[target] = seen[current] + 1
                        order.append(target)
                        queue.append(target)
            cache[key] = order
        return cache[key]


@dataclass(frozen=True)
class Ball(Window):
    """ The ball of a given radius around λ in a Cayley graph

    Element identifiers are assigned in breadth-first order, generators being
    tried in lexicographic order, so that every search over a ball is deterministic.

    Attributes:
        radius: the radius
        elements: canonical forms, indexed by element identifier
        words: a geodesic word for every element
        distances: the distance of every element to the base
        edges: the labelled edges with both ends in the ball
        generator_names: the edge labels
    """
    radius: int
    elements: Tuple[CanonicalForm, ...]
    words: Tuple[Word, ...]
    distances: Tuple[int, ...]
    edges: Tuple[Tuple[int, str, int], ...]
    generator_names: Tuple[str, ...]
    index: Dict[CanonicalForm, int] = field(init=False, repr=False, compare=False)
    _steps: Dict[Tuple[int, str], int] = field(init=False, repr=False, compare=False)

    kind = 'ball'

    def __post_init__(self) -> None:
        object.__setattr__(self, 'index', {element: i for i, element in enumerate(self.elements)})
        object.__setattr__(self, '_steps', {(source, letter): target for source, letter, target in self.edges})

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def generators(self) -> Tuple[str, ...]:
        return self.generator_names

    def step(self, element: int, letter: str) -> Optional[int]:
        if letter == IDENTITY_LABEL:
            return element
        return self._steps.get((element, letter))

    def id_of(self, element: CanonicalForm) -> Optional[int]:
        return self.index.get(element)


def ball(oracle: WordOracle, generators: Optional[Sequence[Union[GeneratorSymbol, str]]] = None,
         r: int = 1) -> Ball:
    """ The ball of radius `r` around λ, by breadth-first closure

    Args:
        oracle: decides equality of group elements
        generators: the generating set, closed under formal inverses (defaults to all
                    generators of the oracle)
        r: the radius

    Raises:
        PresentationError: if r is negative or the generators are not closed under inverses
    """
    if r < 0:
        raise PresentationError(f"The radius must be non-negative, got {r}")
    if generators is None:
        names = list(oracle.names)
    else:
        names = [g.name if isinstance(g, GeneratorSymbol) else g for g in generators]
    for name in names:
        inverse = oracle.inverse_of(name)
        if inverse is None or inverse not in names:
            raise PresentationError(f"The generating set is not closed under the inverse of {name!r}")
    names = sorted(set(names) - {IDENTITY_LABEL})

    identity = oracle.identity()
    elements = [identity]
    words: List[Word] = [()]
    distances = [0]
    index = {identity: 0}
    queue = deque([0])
    while queue:
        current = queue.popleft()
        if distances[current] == r:
            continue
        for name in names:
            target = oracle.apply(elements[current], name)
            if target not in index:
                index[target] = len(elements)
                elements.append(target)
                words.append(words[current] + (name,))
                distances.append(distances[current] + 1)
                queue.append(index[target])

    edges = []
    for source, element in enumerate(elements):
        for name in names:
            target = index.get(oracle.apply(element, name))
            if target is not None:
                edges.append((source, name, target))

    logger.debug(f" Ball of radius {r} over {names}: {len(elements)} elements, {len(edges)} edges")
    return Ball(r, tuple(elements), tuple(words), tuple(distances), tuple(edges), tuple(names))
