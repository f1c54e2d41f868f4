"""
    sft_lift.solver
    ~~~~~~~~~~~~~~~

    Exact backtracking search for colorings of balls and Schreier graphs.

    Variables are the components of the cells (the σ-part and every label of a
    lifted symbol are separate variables), taken in a fixed order: cells in
    breadth-first order, components in order, values in alphabet order. After every
    assignment the constraints anchored near the assigned cell are re-evaluated and
    the next component each of them needs is pruned of the values that would
    violate it. A refuted search returns a case-split proof that the verifier of
    :mod:`sft_lift.verify` replays without searching.

    :license: MIT, see LICENSE for more details.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import logging
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from sft_lift import schemas
from sft_lift.exceptions import ResourceLimit
from sft_lift.groups import Ball, Window, ball
from sft_lift.lift import CounterexampleReport, FiniteData, TranslationActionSpec, verify_tla
from sft_lift.limiter import Budget, Limiter
from sft_lift.quotients import SchreierGraph, enumerate_transitive_reps
from sft_lift.sft import Alphabet, Fragment, Sft, Symbol, Verdict
from sft_lift.utils import digest

logger = logging.getLogger(__name__)

EMPTY_AT_RADIUS = 'EmptyAtRadius'
ADMISSIBLE_UP_TO = 'AdmissibleUpTo'
PERIODIC_POINT = 'PeriodicPoint'
NO_PERIODIC_POINT = 'NoPeriodicPointUpTo'
FREQUENCY_INFEASIBLE = 'FrequencyInfeasible'
TLA_VERIFIED = 'TlaVerified'


def window_to_json(window: Window) -> Dict[str, Any]:
    if isinstance(window, SchreierGraph):
        return dict(kind='quotient', **window.to_json())
    return {'kind': 'ball', 'radius': window.radius}


@dataclass(frozen=True)
class ColoringWitness:
    """ A total coloring of a window violating no constraint that closes inside it """
    window: Window
    alphabet: Alphabet
    assignment: Tuple[Symbol, ...]
    ok = True

    def fragment(self) -> Fragment:
        return Fragment.from_symbols(self.window, self.alphabet, self.assignment)

    def to_json(self) -> Dict[str, Any]:
        return {'window': window_to_json(self.window),
                'assignment': [self.alphabet.to_json_symbol(symbol) for symbol in self.assignment]}


@dataclass(frozen=True)
class Refuted:
    """ No coloring of the window exists; `proof` is None when it was not kept """
    window: Window
    proof: Optional[Dict[str, Any]] = None
    ok = False


@dataclass(frozen=True)
class NoPoint(Refuted):
    """ No coloring of a Schreier graph exists, hence no point fixed by the matching subgroup """


@dataclass(frozen=True)
class Certificate:
    """ A machine-checkable outcome

    Attributes:
        kind: one of the outcome names, e.g. `EmptyAtRadius`
        payload: the data a verifier needs, JSON-able
        inputs_digest: SHA-256 of the canonical JSON of the subject
        limits: the search limits in force
    """
    kind: str
    payload: Dict[str, Any]
    inputs_digest: str
    limits: Dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> Dict[str, Any]:
        from sft_lift import __version__
        return {'schema': 'cert.v1', 'kind': self.kind, 'payload': self.payload,
                'inputs_digest': self.inputs_digest, 'limits': self.limits, 'version': __version__}


def sft_digest(sft: Sft) -> str:
    return digest(schemas.sft_to_json(sft))


class _Frame:
    __slots__ = ('var', 'values', 'pruned', 'mark', 'children', 'position', 'current', 'active')

    def __init__(self, var: int, values: List[Symbol], pruned: Dict[Symbol, Tuple[int, int]], mark: int) -> None:
        self.var = var
        self.values = values
        self.pruned = pruned
        self.mark = mark
        self.children: Dict[Symbol, Any] = {}
        self.position = 0
        self.current = None
        self.active = False


class _Search:
    """ One depth-first search over a window, with its own fragment and trail """

    def __init__(self, sft: Sft, window: Window, budget: Budget, keep_proof: bool, proof_limit: int) -> None:
        self.sft = sft
        self.window = window
        self.budget = budget
        self.constraints = sft.constraints
        self.fragment = Fragment(window, sft.alphabet)
        self.domains = sft.alphabet.domains
        self.arity = len(self.domains)
        self.variables = [(cell, comp) for cell in range(window.size) for comp in range(self.arity)]
        self.removed: List[Dict[Symbol, Tuple[int, int]]] = [{} for _ in self.variables]
        self.trail: List[Tuple[int, Symbol]] = []
        self.keep_proof = keep_proof
        self.proof_limit = proof_limit
        self.proof_nodes = 0
        self._affected: Dict[int, List[Tuple[int, int]]] = {}

    def index(self, cell: int, comp: int) -> int:
        return cell * self.arity + comp

    def live(self, i: int) -> List[Symbol]:
        removed = self.removed[i]
        return [value for value in self.domains[i % self.arity] if value not in removed]

    def affected(self, cell: int) -> List[Tuple[int, int]]:
        if cell not in self._affected:
            self._affected[cell] = [(anchor, index)
                                    for index, constraint in enumerate(self.constraints)
                                    for anchor in self.window.neighborhood(cell, constraint.support_radius)]
        return self._affected[cell]

    def _node(self, node: Dict[str, Any]) -> Dict[str, Any]:
        if not self.keep_proof:
            return {}
        self.proof_nodes += 1
        if self.proof_nodes > self.proof_limit:
            logger.warning(f"Refutation proof dropped, it exceeds {self.proof_limit} nodes")
            self.keep_proof = False
            return {}
        return node

    def leaf(self, anchor: int, index: int) -> Dict[str, Any]:
        return self._node({'conflict': [anchor, index]})

    def branch(self, i: int, children: Mapping[Symbol, Any]) -> Dict[str, Any]:
        if not self.keep_proof:
            return {}
        comp = i % self.arity
        listed = [[value, children[value]] for value in self.domains[comp] if value in children]
        return self._node({'var': list(self.variables[i]), 'children': listed})

    def wipeout(self, i: int) -> Dict[str, Any]:
        return self.branch(i, {value: self.leaf(*reason) for value, reason in self.removed[i].items()})

    def remove(self, i: int, value: Symbol, reason: Tuple[int, int]) -> None:
        self.removed[i][value] = reason
        self.trail.append((i, value))

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            i, value = self.trail.pop()
            del self.removed[i][value]

    def check(self, anchor: int, index: int) -> Optional[Dict[str, Any]]:
        """ Evaluates one constraint instance and prunes the component it needs next """
        constraint = self.constraints[index]
        fragment = self.fragment
        verdict, pending = constraint.evaluate(fragment, anchor)
        if verdict is Verdict.VIOLATED:
            return self.leaf(anchor, index)
        if verdict is Verdict.UNKNOWN and pending is not None:
            cell, comp = pending
            i = self.index(cell, comp)
            for value in self.live(i):
                fragment.assign(cell, comp, value)
                outcome, _ = constraint.evaluate(fragment, anchor)
                fragment.clear(cell, comp)
                if outcome is Verdict.VIOLATED:
                    self.remove(i, value, (anchor, index))
            if not self.live(i):
                return self.wipeout(i)
        return None

    def propagate(self, cell: int) -> Optional[Dict[str, Any]]:
        for anchor, index in self.affected(cell):
            conflict = self.check(anchor, index)
            if conflict is not None:
                return conflict
        return None

    def sweep(self) -> Optional[Dict[str, Any]]:
        """ Evaluates every constraint instance on the empty fragment """
        for anchor in range(self.window.size):
            for index in range(len(self.constraints)):
                conflict = self.check(anchor, index)
                if conflict is not None:
                    return conflict
        return None

    def fix(self, fixed: Mapping[int, Symbol]) -> bool:
        for cell, symbol in sorted(fixed.items()):
            self.fragment.assign_symbol(cell, symbol)
            if self.propagate(cell) is not None:
                return False
        return True

    def next_variable(self, start: int) -> Optional[int]:
        values = self.fragment.values
        for i in range(start, len(self.variables)):
            cell, comp = self.variables[i]
            if values[cell][comp] is None:
                return i
        return None

    def frame(self, i: int, restrict: Optional[Sequence[Symbol]] = None) -> _Frame:
        live = self.live(i)
        if restrict is not None:
            live = [value for value in live if value in restrict]
        return _Frame(i, live, dict(self.removed[i]), len(self.trail))

    def frame_node(self, frame: _Frame) -> Dict[str, Any]:
        if not self.keep_proof:
            return {}
        children = dict(frame.children)
        for value, reason in frame.pruned.items():
            children[value] = self.leaf(*reason)
        return self.branch(frame.var, children)

    def run(self, first: Optional[int] = None,
            restrict: Optional[Sequence[Symbol]] = None) -> Tuple[Optional[Fragment], Optional[Dict[str, Any]]]:
        """ Returns (total fragment, None) on success, (None, proof) on refutation """
        first = self.next_variable(0) if first is None else first
        if first is None:
            return self.fragment.copy(), None
        frames = [self.frame(first, restrict)]
        fragment = self.fragment
        while frames:
            frame = frames[-1]
            cell, comp = self.variables[frame.var]
            if frame.active:
                fragment.clear(cell, comp)
                self.undo(frame.mark)
                frame.active = False
            if frame.position == len(frame.values):
                frames.pop()
                node = self.frame_node(frame)
                if not frames:
                    return None, node
                frames[-1].children[frames[-1].current] = node
                continue
            value = frame.values[frame.position]
            frame.position += 1
            frame.current = value
            self.budget.hit()
            fragment.assign(cell, comp, value)
            frame.active = True
            conflict = self.propagate(cell)
            if conflict is not None:
                frame.children[value] = conflict
                continue
            following = self.next_variable(frame.var + 1)
            if following is None:
                return fragment.copy(), None
            frames.append(self.frame(following))
        return None, None


def _search(sft: Sft, window: Window, limiter: Limiter,
            fixed: Optional[Mapping[int, Symbol]] = None) -> Tuple[Optional[Fragment], Optional[Dict[str, Any]]]:
    keep_proof = not fixed

    def fresh() -> _Search:
        return _Search(sft, window, limiter.budget(), keep_proof, limiter.proof_limit)

    search = fresh()
    conflict = search.sweep()
    if conflict is not None:
        return None, conflict if keep_proof else None
    if fixed and not search.fix(fixed):
        return None, None
    first = search.next_variable(0)
    if limiter.threads <= 1 or fixed or first is None:
        fragment, proof = search.run()
        logger.debug(f" Search over {window.size} cells: {search.budget.nodes} nodes")
        return fragment, proof if keep_proof else None

    values = search.live(first)
    pruned = dict(search.removed[first])

    def subtree(value: Symbol):
        worker = fresh()
        worker.sweep()
        return worker.run(first, [value])

    children: Dict[Symbol, Any] = {}
    complete = True
    failure: Optional[ResourceLimit] = None
    with ThreadPoolExecutor(max_workers=limiter.threads) as pool:
        futures = [pool.submit(subtree, value) for value in values]
        for value, future in zip(values, futures):
            try:
                fragment, proof = future.result()
            except ResourceLimit as e:
                failure = failure or e
                continue
            if fragment is not None and failure is None:
                for pending in futures:
                    pending.cancel()
                return fragment, None
            if proof:
                children.update({child_value: child for child_value, child in proof['children']})
            else:
                complete = False
    if failure is not None:
        raise failure
    if not keep_proof or not complete:
        return None, None
    for value, reason in pruned.items():
        children[value] = search.leaf(*reason)
    return None, search.branch(first, children)


def ball_admissible(sft: Sft, window: Window, limiter: Optional[Limiter] = None,
                    fixed: Optional[Mapping[int, Symbol]] = None) -> Union[ColoringWitness, Refuted]:
    """ Searches a total coloring of the window violating no constraint that closes inside it

    Refuted on a ball proves the SFT empty.

    Args:
        sft: the SFT
        window: a ball of the SFT's group (or any window)
        limiter: the search budget
        fixed: optional symbols imposed on some cells

    Raises:
        ResourceLimit: if the budget runs out, which is never a refutation
    """
    limiter = limiter or Limiter()
    fragment, proof = _search(sft, window, limiter, fixed)
    if fragment is None:
        return Refuted(window, proof)
    return ColoringWitness(window, sft.alphabet, fragment.symbols())


def quotient_point(sft: Sft, q: SchreierGraph, limiter: Optional[Limiter] = None) -> Union[ColoringWitness, NoPoint]:
    """ Searches a coloring of a Schreier graph, that is a point fixed by a finite-index subgroup """
    limiter = limiter or Limiter()
    fragment, proof = _search(sft, q, limiter)
    if fragment is None:
        logger.debug(f" No point on the quotient of degree {q.degree}")
        return NoPoint(q, proof)
    return ColoringWitness(q, sft.alphabet, fragment.symbols())


def emptiness_probe(sft: Sft, r_max: int, limiter: Optional[Limiter] = None) -> Certificate:
    """ EmptyAtRadius(r) for the least refuted radius r ≤ r_max, else AdmissibleUpTo(r_max) """
    limiter = limiter or Limiter()
    inputs = sft_digest(sft)
    result = None
    for r in range(r_max + 1):
        result = ball_admissible(sft, ball(sft.oracle, r=r), limiter)
        if not result.ok:
            logger.info(f"{sft.name or 'SFT'} refuted at radius {r}")
            return Certificate(EMPTY_AT_RADIUS, {'radius': r, 'proof': result.proof}, inputs, limiter.describe())
    logger.info(f"{sft.name or 'SFT'} admissible up to radius {r_max}")
    return Certificate(ADMISSIBLE_UP_TO, {'radius': r_max, 'witness': result.to_json()}, inputs, limiter.describe())


def aperiodicity_probe(sft: Sft, m_max: int, limiter: Optional[Limiter] = None) -> Certificate:
    """ Searches points on every transitive quotient of degree ≤ m_max

    Returns the first PeriodicPoint in enumeration order, or NoPeriodicPointUpTo(m_max)
    with the refutation of every quotient. Both list the degrees admitting points.
    """
    limiter = limiter or Limiter()
    inputs = sft_digest(sft)
    reps = enumerate_transitive_reps(sft.oracle.presentation, sft.oracle, m_max, limiter)
    first = None
    degrees = set()
    refutations = []
    for q in reps:
        result = quotient_point(sft, q, limiter)
        if result.ok:
            degrees.add(q.degree)
            if first is None:
                first = result
        else:
            refutations.append({'quotient': q.to_json(), 'proof': result.proof})
    payload: Dict[str, Any] = {'m_max': m_max, 'representations': len(reps), 'degrees_with_points': sorted(degrees)}
    if first is not None:
        logger.info(f"Periodic point on a quotient of degree {first.window.degree}")
        payload.update(quotient=first.window.to_json(), witness=first.to_json()['assignment'])
        return Certificate(PERIODIC_POINT, payload, inputs, limiter.describe())
    logger.info(f"No periodic point on the {len(reps)} quotients of degree at most {m_max}")
    payload['quotients'] = refutations
    return Certificate(NO_PERIODIC_POINT, payload, inputs, limiter.describe())


def tla_probe(action: TranslationActionSpec, window: Ball,
              L: Optional[int] = None) -> Union[Certificate, CounterexampleReport]:
    """ Verifies a translation-like action on a ball and certifies it

    Formula actions are first written down as labels on the ball of radius r + L,
    which holds every element the checks reach. The certificate digest is the one
    of the `tla.v1` document of these labels.
    """
    bound = window.radius if L is None else L
    if not isinstance(action, FiniteData):
        action = action.to_finite_data(ball(action.g_oracle, r=window.radius + bound))
    result = verify_tla(action, window, bound)
    if not result.ok:
        return result
    return Certificate(TLA_VERIFIED, {'radius': window.radius, 'L': bound}, digest(schemas.tla_to_json(action)))
