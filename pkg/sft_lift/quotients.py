"""
    sft_lift.quotients
    ~~~~~~~~~~~~~~~~~~

    Finite transitive permutation representations of a presentation, seen as
    Schreier graphs on which periodic points are searched.

    Representations are enumerated as complete coset tables with a low-index
    backtracking: the first undefined entry of the table is either sent to an
    existing coset or to a new one, and the relators are scanned after every
    definition to deduce entries and discard inconsistent tables.

    :license: MIT, see LICENSE for more details.
"""
import logging
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from sft_lift.exceptions import PresentationError, UnknownGenerator
from sft_lift.groups import IDENTITY_LABEL, FreeAbelian, MonoidPresentation, Window, WordOracle
from sft_lift.limiter import Limiter

logger = logging.getLogger(__name__)

Permutations = Dict[str, Tuple[int, ...]]


def _inverse_permutation(perm: Sequence[int]) -> Tuple[int, ...]:
    inverse = [0] * len(perm)
    for x, y in enumerate(perm):
        inverse[y] = x
    return tuple(inverse)


def complete_permutations(pres: MonoidPresentation, perms: Mapping[str, Sequence[int]]) -> Permutations:
    """ Adds the permutations of the formal inverses which are not given """
    complete = {name: tuple(images) for name, images in perms.items()}
    for name in complete:
        if name not in pres.names:
            raise UnknownGenerator(name, pres.names)
    for g in pres.generators:
        if g.name in complete:
            continue
        if g.inverse is None or g.inverse not in complete:
            raise PresentationError(f"No permutation for the generator {g.name!r}")
        complete[g.name] = _inverse_permutation(complete[g.inverse])
    return complete


class SchreierGraph(Window):
    """ A finite transitive action of a group, as a closed window

    Points are the cosets 0..degree-1 and coset 0 is the base. No step ever leaves it.

    Args:
        perms: the images of every point under every generator
        degree: the number of points, needed only when there are no generators
    """
    kind = 'quotient'
    closed = True

    def __init__(self, perms: Mapping[str, Sequence[int]], degree: Optional[int] = None) -> None:
        self.perms: Permutations = {name: tuple(images) for name, images in sorted(perms.items())}
        degrees = {len(images) for images in self.perms.values()}
        if degree is not None:
            degrees.add(degree)
        if len(degrees) != 1:
            raise PresentationError(f"Inconsistent permutation degrees {sorted(degrees)}")
        self.degree = degrees.pop()
        if self.degree < 1:
            raise PresentationError("A Schreier graph needs at least one point")
        for name, images in self.perms.items():
            if sorted(images) != list(range(self.degree)):
                raise PresentationError(f"The images of {name!r} do not form a permutation")

    @classmethod
    def from_primary(cls, pres: MonoidPresentation, perms: Mapping[str, Sequence[int]],
                     degree: Optional[int] = None) -> 'SchreierGraph':
        return cls(complete_permutations(pres, perms), degree)

    @property
    def size(self) -> int:
        return self.degree

    @property
    def generators(self) -> Tuple[str, ...]:
        return tuple(self.perms)

    def step(self, element: int, letter: str) -> Optional[int]:
        if letter == IDENTITY_LABEL:
            return element
        return self.perms[letter][element]

    @property
    def is_transitive(self) -> bool:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.degree))
        for images in self.perms.values():
            graph.add_edges_from(enumerate(images))
        return nx.is_connected(graph)

    def relabeled(self, labels: Sequence[int]) -> 'SchreierGraph':
        """ The same action with point x renamed labels[x] """
        perms = {}
        for name, images in self.perms.items():
            relabeled = [0] * self.degree
            for x, y in enumerate(images):
                relabeled[labels[x]] = labels[y]
            perms[name] = tuple(relabeled)
        return SchreierGraph(perms, self.degree)

    def canonical(self, names: Optional[Sequence[str]] = None) -> 'SchreierGraph':
        """ The relabeling fixing the base with the lexicographically least permutation tuple """
        return self.relabeled(canonical_labeling(self.perms, names or tuple(self.perms), self.degree))

    def to_json(self) -> Dict[str, Any]:
        return {'degree': self.degree, 'perms': {name: list(images) for name, images in self.perms.items()}}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SchreierGraph) and other.degree == self.degree and other.perms == self.perms

    def __hash__(self) -> int:
        return hash((self.degree, tuple(self.perms.items())))

    def __repr__(self) -> str:
        return f"SchreierGraph(degree={self.degree}, perms={self.perms})"


FiniteQuotientSpec = SchreierGraph


def canonical_labeling(perms: Mapping[str, Sequence[int]], names: Sequence[str], degree: int) -> List[int]:
    """ The relabeling of the points, fixing 0, minimizing the tuple of permutations of `names`

    The permutations are read generator by generator, point by point. Labels are
    handed out in increasing order as new points are met, so the only choice left
    is which unlabeled point receives the next label when a position needs it.
    """
    best: Optional[Tuple[int, ...]] = None
    best_labels: List[int] = []
    total = len(names) * degree

    def search(label_of: Dict[int, int], element_of: Dict[int, int], sequence: Tuple[int, ...]) -> None:
        nonlocal best, best_labels
        position = len(sequence)
        if position == total:
            if best is None or sequence < best:
                best = sequence
                labels = dict(label_of)
                # points never reached keep the remaining labels in order
                for point in range(degree):
                    if point not in labels:
                        labels[point] = len(labels)
                best_labels = [labels[point] for point in range(degree)]
            return
        name_index, x = divmod(position, degree)
        images = perms[names[name_index]]
        if x in element_of:
            choices = [element_of[x]]
        else:
            choices = [point for point in range(degree) if point not in label_of]
        for point in choices:
            added = []
            if point not in label_of:
                label_of[point] = x
                element_of[x] = point
                added.append(point)
            target = images[point]
            if target not in label_of:
                label = len(label_of)
                label_of[target] = label
                element_of[label] = target
                added.append(target)
            candidate = sequence + (label_of[target],)
            if best is None or candidate <= best[:len(candidate)]:
                search(label_of, element_of, candidate)
            for added_point in added:
                del element_of[label_of.pop(added_point)]

    if degree == 1 or not names:
        return list(range(degree))
    search({0: 0}, {0: 0}, ())
    return best_labels


def verify_relations(pres: MonoidPresentation, perms: Mapping[str, Sequence[int]]) -> bool:
    """ True iff both sides of every relation act identically on every point """
    complete = complete_permutations(pres, perms)
    degree = len(next(iter(complete.values()))) if complete else 1

    def act(x: int, word: Iterable[str]) -> int:
        for letter in word:
            x = complete[letter][x]
        return x

    for left, right in pres.relations:
        for x in range(degree):
            if act(x, left) != act(x, right):
                logger.debug(f" Relation {left} = {right} fails at point {x}")
                return False
    return True


def _relators(pres: MonoidPresentation) -> List[Tuple[str, ...]]:
    inverses = pres.inverses
    relators = []
    for left, right in pres.relations:
        relator = tuple(left) + pres.inverse_word(right)
        # cancellation relators hold in every coset table
        if len(relator) == 2 and inverses[relator[0]] == relator[1]:
            continue
        if relator and relator not in relators:
            relators.append(relator)
    return relators


def _close(table: List[List[Optional[int]]], relators: List[Tuple[int, ...]], inverse: List[int]) -> bool:
    """ Scans every relator from every coset, filling deduced entries; False on a contradiction """
    changed = True
    while changed:
        changed = False
        for x in range(len(table)):
            for relator in relators:
                forward, i = x, 0
                while i < len(relator) and table[forward][relator[i]] is not None:
                    forward = table[forward][relator[i]]
                    i += 1
                if i == len(relator):
                    if forward != x:
                        return False
                    continue
                backward, j = x, len(relator)
                while j > i and table[backward][inverse[relator[j - 1]]] is not None:
                    backward = table[backward][inverse[relator[j - 1]]]
                    j -= 1
                if j == i:
                    if forward != backward:
                        return False
                elif j == i + 1:
                    column = relator[i]
                    table[forward][column] = backward
                    table[backward][inverse[column]] = forward
                    changed = True
    return True


def enumerate_transitive_reps(pres: MonoidPresentation, oracle: Optional[WordOracle] = None, m_max: int = 1,
                              limiter: Optional[Limiter] = None) -> List[SchreierGraph]:
    """ Every transitive permutation representation of degree ≤ m_max, up to relabeling fixing the base

    Args:
        pres: a group presentation, every generator having a formal inverse
        oracle: optional word oracle of the group, used to warn about truncated presentations
        m_max: the maximal degree
        limiter: the search budget

    Raises:
        ResourceLimit: if the search exhausts its budget
    """
    if m_max < 1:
        raise PresentationError(f"The maximal degree must be positive, got {m_max}")
    if not pres.is_group:
        raise PresentationError("Permutation representations need every generator to have an inverse")
    if oracle is not None and not oracle.finitely_presented:
        logger.warning(f"{oracle!r} is not finitely presented, the representations only satisfy listed relations")
    budget = (limiter or Limiter()).budget()

    names = pres.names
    column = {name: i for i, name in enumerate(names)}
    inverse = [column[pres.inverses[name]] for name in names]
    relators = [tuple(column[letter] for letter in relator) for relator in _relators(pres)]
    width = len(names)

    found = []
    start = [[None] * width]
    stack = [start] if _close(start, relators, inverse) else []
    while stack:
        table = stack.pop()
        budget.hit()
        undefined = next(((c, g) for c in range(len(table)) for g in range(width) if table[c][g] is None), None)
        if undefined is None:
            found.append(table)
            continue
        coset, g = undefined
        branches = [d for d in range(len(table)) if table[d][inverse[g]] is None]
        if len(table) < m_max:
            branches.append(len(table))
        for target in reversed(branches):
            candidate = [row[:] for row in table]
            if target == len(table):
                candidate.append([None] * width)
            candidate[coset][g] = target
            candidate[target][inverse[g]] = coset
            if _close(candidate, relators, inverse):
                stack.append(candidate)

    primary = pres.primary_names
    reps = []
    for table in found:
        perms = {name: tuple(row[column[name]] for row in table) for name in names}
        graph = SchreierGraph(perms, len(table))
        if not graph.is_transitive:
            continue
        reps.append(graph.canonical(primary))
    reps.sort(key=lambda q: (q.degree, tuple(q.perms[name] for name in primary)))
    logger.info(f"{len(reps)} transitive representations of degree at most {m_max} ({budget.nodes} nodes)")
    return reps


def torus(oracle: WordOracle, dims: Sequence[int]) -> SchreierGraph:
    """ The quotient of ℤ^d by the lattice of the given periods, first coordinate varying fastest """
    if not isinstance(oracle, FreeAbelian) or oracle.rank != len(dims):
        raise PresentationError(f"A torus of dimension {len(dims)} needs a free abelian group of that rank")
    if any(d < 1 for d in dims):
        raise PresentationError(f"Periods must be positive, got {tuple(dims)}")
    degree = 1
    strides = []
    for d in dims:
        strides.append(degree)
        degree *= d
    perms = {}
    for axis, name in enumerate(oracle.primary):
        images = []
        for x in range(degree):
            coordinate = (x // strides[axis]) % dims[axis]
            images.append(x + (((coordinate + 1) % dims[axis]) - coordinate) * strides[axis])
        perms[name] = tuple(images)
    return SchreierGraph.from_primary(oracle.presentation, perms, degree)


def cyclic(oracle: WordOracle, n: int, images: Mapping[str, int]) -> SchreierGraph:
    """ The quotient on ℤ/n where each primary generator acts by adding a constant

    Raises:
        PresentationError: if the shifts do not satisfy the relations
    """
    pres = oracle.presentation
    perms = {name: tuple((x + images[name]) % n for x in range(n)) for name in pres.primary_names}
    if not verify_relations(pres, perms):
        raise PresentationError(f"The shifts {dict(images)} do not define an action of {oracle!r} on ℤ/{n}")
    return SchreierGraph.from_primary(pres, perms, n)
