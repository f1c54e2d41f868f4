"""
    sft_lift.lift
    ~~~~~~~~~~~~~

    Translation-like actions and the lift of an SFT on H to an SFT on G.

    A point of the lifted SFT stores at every cell g a symbol of Σ and, for each
    generator h of H, a label φ(g, h) of S_G. Following these labels along an
    H-word is the path trace; the lifted constraints ask that the traces respect
    the relations of H and that the Σ-colors read along traces avoid the
    forbidden patterns of H.

    :license: MIT, see LICENSE for more details.
"""
from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass, field
import logging
from typing import (Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union)

import networkx as nx

from sft_lift.exceptions import (PresentationError, SymbolMismatch, SynthesisError, TransversalFailure,
                                 UnknownGenerator, WindowTooSmall)
from sft_lift.groups import (IDENTITY_LABEL, Ball, CanonicalForm, DirectProduct, FreeAbelian, MonoidPresentation,
                             Word, WordOracle)
from sft_lift.sft import (Alphabet, Checker, Fragment, Pattern, ProductAlphabet, Sft, Symbol, Variable, Verdict,
                          register_checker)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Endpoint:
    element: int


@dataclass(frozen=True)
class NeedsValue:
    position: int
    generator: str


@dataclass(frozen=True)
class LeftWindow:
    pass


TraceResult = Union[Endpoint, NeedsValue, LeftWindow]


def trace(fragment: Fragment, start: int, h: Iterable[str]) -> TraceResult:
    """ Follows the stored S_G labels from `start` along the H-word `h`

    Returns the endpoint, the first cell whose label is still undetermined, or
    LeftWindow when a step leaves the window.
    """
    current = start
    for letter in h:
        if letter == IDENTITY_LABEL:
            continue
        try:
            label = fragment.label(current, letter)
        except KeyError:
            raise UnknownGenerator(letter, fragment.alphabet.s_h) from None
        if label is None:
            return NeedsValue(current, letter)
        current = fragment.window.step(current, label)
        if current is None:
            return LeftWindow()
    return Endpoint(current)


def _variable(fragment: Fragment, needs: NeedsValue) -> Variable:
    return needs.position, fragment.alphabet.component(needs.generator)


class _UndeterminedType:

    def __repr__(self) -> str:
        return 'UNDETERMINED'


UNDETERMINED = _UndeterminedType()


def f_map(fragment: Fragment, h: Iterable[str], start: int = 0) -> Union[Symbol, _UndeterminedType]:
    """ The Σ-color read at the end of the trace of `h`, UNDETERMINED when the trace does not resolve """
    result = trace(fragment, start, h)
    if isinstance(result, Endpoint):
        value = fragment.sigma(result.element)
        if value is not None:
            return value
    return UNDETERMINED


@register_checker('relation')
class RelationChecker(Checker):
    """ Both words trace to the same endpoint """
    _violated_when_equal = False

    def __init__(self, h: Iterable[str], h_prime: Iterable[str]) -> None:
        self.h = tuple(h)
        self.h_prime = tuple(h_prime)
        self.support_radius = max(len(self.h), len(self.h_prime))

    @property
    def params(self) -> Dict[str, Any]:
        return {'h': list(self.h), 'h_prime': list(self.h_prime)}

    @classmethod
    def from_params(cls, params: Mapping[str, Any]) -> 'RelationChecker':
        return cls(params['h'], params['h_prime'])

    def evaluate(self, fragment: Fragment, anchor: int) -> Tuple[Verdict, Optional[Variable]]:
        first = trace(fragment, anchor, self.h)
        second = trace(fragment, anchor, self.h_prime)
        if isinstance(first, LeftWindow) or isinstance(second, LeftWindow):
            return Verdict.SATISFIED, None
        if isinstance(first, NeedsValue):
            return Verdict.UNKNOWN, _variable(fragment, first)
        if isinstance(second, NeedsValue):
            return Verdict.UNKNOWN, _variable(fragment, second)
        if (first.element == second.element) == self._violated_when_equal:
            return Verdict.VIOLATED, None
        return Verdict.SATISFIED, None


@register_checker('antirelation')
class AntirelationChecker(RelationChecker):
    """ The two words trace to different endpoints """
    _violated_when_equal = True


@register_checker('lifted_pattern')
class LiftedPatternChecker(Checker):
    """ Forbids a pattern of H in the Σ-colors read along the traces of its support """

    def __init__(self, pattern: Pattern) -> None:
        self.pattern = pattern
        self.support_radius = pattern.radius

    @property
    def params(self) -> Dict[str, Any]:
        return {'pattern': [[list(word), symbol] for word, symbol in self.pattern.entries]}

    @classmethod
    def from_params(cls, params: Mapping[str, Any]) -> 'LiftedPatternChecker':
        return cls(Pattern.of((word, symbol) for word, symbol in params['pattern']))

    def evaluate(self, fragment: Fragment, anchor: int) -> Tuple[Verdict, Optional[Variable]]:
        pending = None
        for word, symbol in self.pattern.entries:
            result = trace(fragment, anchor, word)
            if isinstance(result, LeftWindow):
                return Verdict.SATISFIED, None
            if isinstance(result, NeedsValue):
                pending = pending or _variable(fragment, result)
                continue
            value = fragment.sigma(result.element)
            if value is None:
                pending = pending or (result.element, 0)
            elif value != symbol:
                return Verdict.SATISFIED, None
        if pending is not None:
            return Verdict.UNKNOWN, pending
        return Verdict.VIOLATED, None


def relation_constraint(h: Iterable[str], h_prime: Iterable[str]) -> RelationChecker:
    """ The lifted form of the relation h = h′; its support radius is the longest word """
    return RelationChecker(h, h_prime)


def antirelation_constraint(h: Iterable[str], h_prime: Iterable[str]) -> AntirelationChecker:
    """ The lifted form of the antirelation h ≠ h′ """
    return AntirelationChecker(h, h_prime)


def lift_pattern(p: Pattern) -> LiftedPatternChecker:
    """ The lifted form of a forbidden pattern of H """
    return LiftedPatternChecker(p)


@dataclass(frozen=True)
class LiftSpec:
    """ Everything the lift of an SFT on H to G needs

    Args:
        presentation: the presentation of H, relations R and antirelations
        sigma: the alphabet Σ
        forbidden: the forbidden patterns of H, supports are words over H's generators
        group: the group G
        s_g: the S_G labels, generators of G or the identity label
        h_oracle: optional word oracle of H
        name: optional catalog name
    """
    presentation: MonoidPresentation
    sigma: Alphabet
    forbidden: Tuple[Pattern, ...]
    group: WordOracle
    s_g: Tuple[str, ...]
    h_oracle: Optional[WordOracle] = None
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'forbidden', tuple(self.forbidden))
        object.__setattr__(self, 's_g', tuple(self.s_g))
        for pattern in self.forbidden:
            for word, symbol in pattern.entries:
                self.presentation.check_word(word)
                if symbol not in self.sigma:
                    raise SymbolMismatch(f"{symbol!r} is not a symbol of {self.sigma!r}")
        for label in self.s_g:
            if label != IDENTITY_LABEL and label not in self.group.names:
                raise UnknownGenerator(label, self.group.names)


def build_lifted_sft(spec: LiftSpec) -> Sft:
    """ The SFT on G whose points encode a translation-like action of H and a point of the SFT on H

    The alphabet is Σ × F; the constraints are the lifted relations, antirelations and patterns.
    """
    alphabet = ProductAlphabet(spec.sigma, spec.presentation.names, spec.s_g)
    constraints: List[Checker] = [relation_constraint(u, v) for u, v in spec.presentation.relations]
    constraints.extend(antirelation_constraint(u, v) for u, v in spec.presentation.antirelations)
    constraints.extend(lift_pattern(p) for p in spec.forbidden)
    logger.debug(f" Lifted SFT over {spec.group!r}: {alphabet.size} symbols, {len(constraints)} constraints")
    return Sft(spec.group, alphabet, tuple(constraints), spec.name)


class TranslationActionSpec(ABC):
    """ A translation-like right action of H on G

    The action of a generator h on g is the step g ∘ h = g · φ(g, h) with φ(g, h) in S_G.

    Args:
        h_oracle: the acting group H
        g_oracle: the group G
    """
    kind = 'abstract'

    def __init__(self, h_oracle: WordOracle, g_oracle: WordOracle) -> None:
        self.h_oracle = h_oracle
        self.g_oracle = g_oracle

    @property
    def presentation(self) -> MonoidPresentation:
        return self.h_oracle.presentation

    @property
    def s_h(self) -> Tuple[str, ...]:
        return self.h_oracle.names

    @property
    @abstractmethod
    def s_g(self) -> Tuple[str, ...]:
        """ The labels the action uses """

    @abstractmethod
    def phi(self, g: CanonicalForm, h: str) -> Optional[str]:
        """ The label of the step of `h` at `g`, None outside a finite description """

    def step(self, g: CanonicalForm, h: str) -> Optional[CanonicalForm]:
        if h == IDENTITY_LABEL:
            return g
        label = self.phi(g, h)
        if label is None:
            return None
        return self.g_oracle.apply(g, label)

    def act(self, g: CanonicalForm, word: Iterable[str]) -> Optional[CanonicalForm]:
        """ g ∘ word, or None when a step is undefined """
        for h in word:
            g = self.step(g, h)
            if g is None:
                return None
        return g

    def to_finite_data(self, window: Ball) -> 'FiniteData':
        """ The labels of the action on every element of a ball """
        labels = {}
        for g in window.elements:
            for h in self.s_h:
                label = self.phi(g, h)
                if label is not None:
                    labels[(g, h)] = label
        return FiniteData(self.h_oracle, self.g_oracle, labels, radius=window.radius)


def _check_label(g_oracle: WordOracle, label: str) -> str:
    if label != IDENTITY_LABEL and label not in g_oracle.names:
        raise UnknownGenerator(label, g_oracle.names)
    return label


class SubgroupTranslation(TranslationActionSpec):
    """ H acting by right translation through an embedding sending each generator to a generator of G

    Args:
        h_oracle: the group H
        g_oracle: the group G
        embedding: the G-label of every H-generator; formal inverses default to the inverse label
    """
    kind = 'subgroup_translation'

    def __init__(self, h_oracle: WordOracle, g_oracle: WordOracle, embedding: Mapping[str, str]) -> None:
        super().__init__(h_oracle, g_oracle)
        images = {h: _check_label(g_oracle, label) for h, label in embedding.items()}
        for g in h_oracle.generators:
            if g.name in images:
                continue
            if g.inverse not in images:
                raise PresentationError(f"No image for the H-generator {g.name!r}")
            images[g.name] = g_oracle.inverse_of(images[g.inverse])
        for h in images:
            if h not in h_oracle.names:
                raise UnknownGenerator(h, h_oracle.names)
        self.embedding = images

    @property
    def s_g(self) -> Tuple[str, ...]:
        return tuple(sorted(set(self.embedding.values())))

    def phi(self, g: CanonicalForm, h: str) -> Optional[str]:
        return self.embedding[h]


class CoordinateShift(SubgroupTranslation):
    """ ℤ^k acting on a free abelian group by shifting along the given axes

    Args:
        g_oracle: the free abelian group G
        axes: the G-generator each H-axis moves along
        h_names: optional names of the H-generators, `t`, `u`, `v`, ... by default
    """
    kind = 'coordinate_shift'

    def __init__(self, g_oracle: WordOracle, axes: Sequence[str], h_names: Optional[Sequence[str]] = None) -> None:
        if not isinstance(g_oracle, FreeAbelian):
            raise PresentationError("Coordinate shifts act on free abelian groups")
        h_names = tuple(h_names) if h_names else tuple('tuvwxyz'[:len(axes)])
        super().__init__(FreeAbelian(len(axes), h_names), g_oracle, dict(zip(h_names, axes)))
        self.axes = tuple(axes)


class Product(TranslationActionSpec):
    """ H1 × H2 acting on G1 × G2 factor by factor """
    kind = 'product'

    def __init__(self, first: TranslationActionSpec, second: TranslationActionSpec) -> None:
        super().__init__(DirectProduct(first.h_oracle, second.h_oracle),
                         DirectProduct(first.g_oracle, second.g_oracle))
        self.first = first
        self.second = second
        self._first_names = set(first.s_h)

    @property
    def s_g(self) -> Tuple[str, ...]:
        return tuple(sorted(set(self.first.s_g) | set(self.second.s_g)))

    def phi(self, g: CanonicalForm, h: str) -> Optional[str]:
        g1, g2 = g
        if h in self._first_names:
            return self.first.phi(g1, h)
        return self.second.phi(g2, h)


class FiniteData(TranslationActionSpec):
    """ An action given by its labels on a finite set of elements of G

    Args:
        h_oracle: the group H
        g_oracle: the group G
        labels: maps (canonical form of g, H-generator) to the label φ(g, h)
        radius: optional radius of the ball the labels were taken on
    """
    kind = 'finite_data'

    def __init__(self, h_oracle: WordOracle, g_oracle: WordOracle,
                 labels: Mapping[Tuple[CanonicalForm, str], str], radius: Optional[int] = None) -> None:
        super().__init__(h_oracle, g_oracle)
        self.labels = {key: _check_label(g_oracle, label) for key, label in labels.items()}
        self.radius = radius

    @property
    def domain(self) -> frozenset:
        return frozenset(g for g, _ in self.labels)

    @property
    def s_g(self) -> Tuple[str, ...]:
        return tuple(sorted(set(self.labels.values())))

    def phi(self, g: CanonicalForm, h: str) -> Optional[str]:
        return self.labels.get((g, h))

    def mutated(self, g: CanonicalForm, h: str, label: str) -> 'FiniteData':
        """ A copy with a single label changed """
        labels = dict(self.labels)
        labels[(g, h)] = label
        return FiniteData(self.h_oracle, self.g_oracle, labels, self.radius)


@dataclass(frozen=True)
class Counterexample:
    """ A located failure of a translation-like action

    Attributes:
        kind: `step`, `undefined`, `relation` or `freeness`
        start: a word of G reaching the element where the failure starts
        words: the H-words involved
        detail: a human readable description
    """
    kind: str
    start: Word
    words: Tuple[Word, ...]
    detail: str = ''


@dataclass(frozen=True)
class TlaVerified:
    radius: int
    bound: int
    ok = True


@dataclass(frozen=True)
class CounterexampleReport:
    radius: int
    bound: int
    counterexamples: Tuple[Counterexample, ...]
    ok = False


def verify_tla(action: TranslationActionSpec, window: Ball, L: Optional[int] = None) -> Union[TlaVerified,
                                                                                             CounterexampleReport]:
    """ Checks on a ball that the action is translation-like

    Every step must be a generator step, every relation of H must trace to equal
    endpoints whenever both traces are defined, and no non-identity H-element of
    length at most L may fix a starting element.

    Args:
        action: the action
        window: the ball of starting elements
        L: the freeness bound, the radius of the ball by default
    """
    bound = window.radius if L is None else L
    if bound < 1:
        raise PresentationError(f"The freeness bound must be positive, got {bound}")
    g_oracle, h_oracle = action.g_oracle, action.h_oracle
    valid_labels = set(g_oracle.names) | {IDENTITY_LABEL}
    found: List[Counterexample] = []

    for g in window.elements:
        start = g_oracle.to_word(g)
        for h in action.s_h:
            label = action.phi(g, h)
            if label is None:
                found.append(Counterexample('undefined', start, ((h,),), f"no label for {h}"))
            elif label not in valid_labels:
                found.append(Counterexample('step', start, ((h,),), f"{label!r} is not a generator of G"))

        for u, v in action.presentation.relations:
            first, second = action.act(g, u), action.act(g, v)
            if first is not None and second is not None and first != second:
                found.append(Counterexample('relation', start, (u, v), "the relation traces to two endpoints"))

        identity = h_oracle.identity()
        seen = {identity}
        frontier = [(identity, (), g)]
        for _ in range(bound):
            following = []
            for h_element, word, position in frontier:
                for h in h_oracle.names:
                    h_next = h_oracle.apply(h_element, h)
                    if h_next in seen:
                        continue
                    seen.add(h_next)
                    reached = action.step(position, h)
                    if reached is None:
                        continue
                    if reached == g:
                        found.append(Counterexample('freeness', start, (word + (h,),),
                                                    "a non-identity element fixes the start"))
                    following.append((h_next, word + (h,), reached))
            frontier = following

    if found:
        logger.info(f"Translation-like action rejected with {len(found)} counterexamples")
        return CounterexampleReport(window.radius, bound, tuple(found))
    logger.info(f"Translation-like action verified on radius {window.radius} with bound {bound}")
    return TlaVerified(window.radius, bound)


def product_action(a1: TranslationActionSpec, a2: TranslationActionSpec) -> Product:
    """ The action of H1 × H2 on G1 × G2 """
    return Product(a1, a2)


def orbit_pieces(action: TranslationActionSpec, window: Ball) -> Dict[int, Tuple[int, CanonicalForm]]:
    """ Splits a ball into pieces of orbits and locates every element in its piece

    Each piece is a connected component of the action edges inside the ball. Its
    representative is its first element in breadth-first order and every element
    g gets the H-element i with g = representative ∘ i.

    Raises:
        WindowTooSmall: if the action is undefined on an element of the ball
        TransversalFailure: if an element is reached with two different H-elements
    """
    graph = nx.Graph()
    graph.add_nodes_from(range(window.size))
    for cell, g in enumerate(window.elements):
        for h in action.s_h:
            reached = action.step(g, h)
            if reached is None:
                raise WindowTooSmall(f"The action is undefined at {g_word(action, g)} for {h}")
            target = window.id_of(reached)
            if target is not None:
                graph.add_edge(cell, target)

    located: Dict[int, Tuple[int, CanonicalForm]] = {}
    h_oracle = action.h_oracle
    for component in sorted(nx.connected_components(graph), key=min):
        representative = min(component)
        located[representative] = (representative, h_oracle.identity())
        queue = deque([representative])
        while queue:
            cell = queue.popleft()
            h_element = located[cell][1]
            for h in action.s_h:
                target = window.id_of(action.step(window.elements[cell], h))
                if target is None:
                    continue
                entry = (representative, h_oracle.apply(h_element, h))
                if target not in located:
                    located[target] = entry
                    queue.append(target)
                elif located[target] != entry:
                    raise TransversalFailure(f"{g_word(action, window.elements[target])} is reached as "
                                             f"{h_oracle.to_word(located[target][1])} and as "
                                             f"{h_oracle.to_word(entry[1])}")
    logger.debug(f" {len(set(rep for rep, _ in located.values()))} orbit pieces in a ball of {window.size}")
    return located


def g_word(action: TranslationActionSpec, g: CanonicalForm) -> str:
    return '·'.join(action.g_oracle.to_word(g)) or 'ε'


def synthesize_point(action: TranslationActionSpec, y: Union[Callable[[Word], Symbol], Mapping[Word, Symbol]],
                     window: Ball, alphabet: Optional[ProductAlphabet] = None) -> Fragment:
    """ A lifted point on a ball built from an action and a coloring of H

    Every cell gets the labels of the action and the color y(i) where i locates the
    cell in its orbit piece.

    Args:
        action: the action of H on G
        y: the coloring of H, a callable or a mapping on H-words
        window: the ball
        alphabet: the alphabet of the lifted SFT; built from the colors and labels when omitted

    Raises:
        TransversalFailure: if the orbit decomposition is inconsistent on the ball
        SynthesisError: if y has no color for a needed H-element
    """
    h_oracle = action.h_oracle
    if isinstance(y, Mapping):
        table = {h_oracle.normalize(word): color for word, color in y.items()}

        def color_of(word: Word) -> Symbol:
            return table[h_oracle.normalize(word)]
    else:
        color_of = y

    pieces = orbit_pieces(action, window)
    colors = {}
    for cell in range(window.size):
        word = h_oracle.to_word(pieces[cell][1])
        try:
            colors[cell] = color_of(word)
        except (KeyError, IndexError):
            raise SynthesisError(f"No color for the H-element {'·'.join(word) or 'ε'}") from None

    if alphabet is None:
        alphabet = ProductAlphabet(Alphabet(sorted(set(colors.values()), key=repr)), action.s_h, action.s_g)
    if tuple(alphabet.s_h) != tuple(action.s_h):
        raise SymbolMismatch(f"The alphabet is built on {alphabet.s_h}, the action on {action.s_h}")

    fragment = Fragment(window, alphabet)
    for cell, g in enumerate(window.elements):
        labels = tuple(action.phi(g, h) for h in action.s_h)
        fragment.assign_symbol(cell, (colors[cell], labels))
    return fragment


@dataclass(frozen=True)
class Readout:
    """ The coloring of H read off a lifted point, and the H-words tracing back to the base """
    colors: Dict[Word, Symbol]
    periods: Tuple[Word, ...]


def quotient_readout(fragment: Fragment, h_oracle: WordOracle, radius: int) -> Readout:
    """ Reads the H-coloring of a lifted point up to a radius of H

    On a Schreier graph every trace resolves, so the readout is total and periodic
    under the H-elements listed in `periods`.
    """
    identity = h_oracle.identity()
    colors: Dict[Word, Symbol] = {}
    periods = []
    seen = {identity}
    frontier = [identity]
    base_color = f_map(fragment, ())
    if base_color is not UNDETERMINED:
        colors[()] = base_color
    for _ in range(radius):
        following = []
        for element in frontier:
            for h in h_oracle.names:
                reached = h_oracle.apply(element, h)
                if reached in seen:
                    continue
                seen.add(reached)
                following.append(reached)
                word = h_oracle.to_word(reached)
                result = trace(fragment, fragment.window.base, word)
                if not isinstance(result, Endpoint):
                    continue
                if result.element == fragment.window.base:
                    periods.append(word)
                color = fragment.sigma(result.element)
                if color is not None:
                    colors[word] = color
        frontier = following
    return Readout(colors, tuple(periods))


def compose_actions(a1: TranslationActionSpec, a2: TranslationActionSpec, window: Ball) -> FiniteData:
    """ The action of H on G obtained from an action of H on N and of N on G

    With g = k ∘ i for a representative k of the orbit piece of g, the composed
    step is φ(g, h) = φ2(g, φ1(i, h)).

    Raises:
        WindowTooSmall: if one of the actions is not described where it is needed
    """
    if set(a1.g_oracle.names) != set(a2.h_oracle.names):
        raise PresentationError("The first action must act on the group acting in the second one")
    pieces = orbit_pieces(a2, window)
    labels = {}
    for cell, g in enumerate(window.elements):
        i = pieces[cell][1]
        for h in a1.s_h:
            middle = a1.phi(i, h)
            if middle is None:
                raise WindowTooSmall(f"The first action is undefined at {'·'.join(a2.h_oracle.to_word(i)) or 'ε'}")
            if middle == IDENTITY_LABEL:
                labels[(g, h)] = IDENTITY_LABEL
                continue
            label = a2.phi(g, middle)
            if label is None:
                raise WindowTooSmall(f"The second action is undefined at {g_word(a2, g)}")
            labels[(g, h)] = label
    return FiniteData(a1.h_oracle, a2.g_oracle, labels, radius=window.radius)
