"""
    sft_lift.verify
    ~~~~~~~~~~~~~~~

    Re-validation of certificates from their payload alone.

    The verifier never runs a search. It re-reads the constraints from the JSON
    form of the SFT and evaluates them with its own code: witnesses are checked
    cell by cell, refutation proofs are replayed (every branch must split a
    variable over its whole domain and every leaf must name a constraint that the
    partial assignment of its path already violates), Farkas combinations are
    re-multiplied and translation-like actions are traced again.

    :license: MIT, see LICENSE for more details.
"""
from dataclasses import dataclass
from fractions import Fraction
import logging
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sft_lift import schemas
from sft_lift.exceptions import SftLiftError
from sft_lift.groups import IDENTITY_LABEL, ball
from sft_lift.utils import digest

logger = logging.getLogger(__name__)

Assignment = Dict[Tuple[int, int], Any]
Steps = Mapping[Tuple[int, str], int]


@dataclass(frozen=True)
class Verification:
    """ The verdict of the verifier, with the reasons of a rejection """
    kind: str
    ok: bool
    reasons: Tuple[str, ...] = ()

    def to_json(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'ok': self.ok, 'reasons': list(self.reasons)}


class _Window:
    """ Plain adjacency of a ball or a Schreier graph """

    def __init__(self, size: int, steps: Steps) -> None:
        self.size = size
        self.steps = steps

    def walk(self, cell: Optional[int], word: Iterable[str]) -> Optional[int]:
        for letter in word:
            if cell is None:
                return None
            if letter != IDENTITY_LABEL:
                cell = self.steps.get((cell, letter))
        return cell


def _ball_window(oracle, radius: int) -> _Window:
    window = ball(oracle, r=radius)
    return _Window(window.size, {(source, letter): target for source, letter, target in window.edges})


def _quotient_window(quotient: Mapping[str, Any]) -> _Window:
    steps = {}
    for letter, images in quotient['perms'].items():
        for point, image in enumerate(images):
            steps[(point, letter)] = image
    return _Window(int(quotient['degree']), steps)


class _Constraints:
    """ Evaluates the constraints of an `sft.v1` document on partial assignments """

    def __init__(self, document: Mapping[str, Any]) -> None:
        alphabet = document['alphabet']
        self.product = alphabet['kind'] == 'product'
        if self.product:
            self.s_h = list(alphabet['s_h'])
            self.domains = [list(alphabet['sigma'])] + [list(alphabet['s_g'])] * len(self.s_h)
        else:
            self.s_h = []
            self.domains = [list(alphabet['symbols'])]
        self.constraints = list(document['constraints'])

    def parts(self, symbol: Any) -> List[Any]:
        if self.product:
            sigma, labels = symbol
            return [sigma] + list(labels)
        return [symbol]

    def _trace(self, window: _Window, values: Assignment, start: int, word: Sequence[str]):
        """ ('end', cell), ('left', None) or ('open', None) """
        cell = start
        for letter in word:
            if letter == IDENTITY_LABEL:
                continue
            label = values.get((cell, self.s_h.index(letter) + 1))
            if label is None:
                return 'open', None
            cell = window.walk(cell, [label])
            if cell is None:
                return 'left', None
        return 'end', cell

    def violated(self, index: int, window: _Window, values: Assignment, anchor: int) -> bool:
        """ True when every completion of `values` violates constraint `index` at `anchor` """
        constraint = self.constraints[index]
        if constraint['kind'] == 'forbidden':
            return self._forbidden(constraint['pattern'], window, values, anchor)
        checker = constraint['checker']
        params = checker['params']
        if checker['id'] == 'exactly_one':
            return self._exactly_one(params['groups'], window, values, anchor)
        if checker['id'] in ('relation', 'antirelation'):
            first = self._trace(window, values, anchor, params['h'])
            second = self._trace(window, values, anchor, params['h_prime'])
            if first[0] != 'end' or second[0] != 'end':
                return False
            return (first[1] == second[1]) == (checker['id'] == 'antirelation')
        if checker['id'] == 'lifted_pattern':
            for word, symbol in params['pattern']:
                outcome, cell = self._trace(window, values, anchor, word)
                if outcome != 'end' or values.get((cell, 0)) != symbol:
                    return False
            return True
        raise SftLiftError(f"The verifier does not know the checker {checker['id']!r}")

    def _forbidden(self, pattern, window: _Window, values: Assignment, anchor: int) -> bool:
        for word, symbol in pattern:
            cell = window.walk(anchor, word)
            if cell is None:
                return False
            for comp, part in enumerate(self.parts(symbol)):
                if values.get((cell, comp)) != part:
                    return False
        return True

    def _exactly_one(self, groups, window: _Window, values: Assignment, anchor: int) -> bool:
        cells = [[window.walk(anchor, word) for word, _ in group] for group in groups]
        if any(cell is None for group in cells for cell in group):
            return False
        for group, group_cells in zip(groups, cells):
            colors = [values.get((cell, 0)) for cell in group_cells]
            if None in colors:
                if sum(color == symbol for color, (_, symbol) in zip(colors, group)) > 1:
                    return True
                continue
            if sum(color == symbol for color, (_, symbol) in zip(colors, group)) != 1:
                return True
        return False


def check_witness(document: Mapping[str, Any], window: _Window, assignment: Sequence[Any]) -> List[str]:
    """ The violations of a total coloring, as readable reasons """
    constraints = _Constraints(document)
    if len(assignment) != window.size:
        return [f"The witness colors {len(assignment)} cells, the window has {window.size}"]
    values: Assignment = {}
    reasons = []
    for cell, symbol in enumerate(assignment):
        parts = constraints.parts(symbol)
        for comp, part in enumerate(parts):
            if part not in constraints.domains[comp]:
                reasons.append(f"Cell {cell} holds {symbol!r}, which is not a symbol of the alphabet")
            values[(cell, comp)] = part
    for anchor in range(window.size):
        for index in range(len(constraints.constraints)):
            if constraints.violated(index, window, values, anchor):
                reasons.append(f"Constraint {index} is violated at cell {anchor}")
    return reasons


def replay_proof(document: Mapping[str, Any], window: _Window, proof: Optional[Mapping[str, Any]]) -> List[str]:
    """ Replays a case-split refutation; an empty list means every branch ends in a violation """
    if not proof:
        return ["The certificate carries no refutation proof"]
    constraints = _Constraints(document)
    arity = len(constraints.domains)
    reasons = []
    stack: List[Tuple[Mapping[str, Any], Assignment]] = [(proof, {})]
    while stack:
        node, values = stack.pop()
        if 'conflict' in node:
            anchor, index = node['conflict']
            if not 0 <= anchor < window.size or not 0 <= index < len(constraints.constraints):
                reasons.append(f"The leaf {node['conflict']} is out of range")
            elif not constraints.violated(index, window, values, anchor):
                reasons.append(f"Constraint {index} at cell {anchor} is not violated by {sorted(values.items())}")
            continue
        if 'var' not in node:
            reasons.append("A proof node is neither a branch nor a leaf")
            continue
        cell, comp = node['var']
        if not (0 <= cell < window.size and 0 <= comp < arity) or (cell, comp) in values:
            reasons.append(f"The branch on {node['var']} is not on a free variable")
            continue
        children = node['children']
        listed = [value for value, _ in children]
        domain = constraints.domains[comp]
        if len(listed) != len(domain) or any(value not in listed for value in domain):
            reasons.append(f"The branch on {node['var']} does not cover the domain {domain}")
            continue
        for value, child in children:
            extended = dict(values)
            extended[(cell, comp)] = value
            stack.append((child, extended))
        if len(reasons) > 20:
            break
    return reasons


def _relations_hold(oracle, quotient: Mapping[str, Any]) -> List[str]:
    window = _quotient_window(quotient)
    reasons = []
    for letter in oracle.names:
        if letter not in quotient['perms']:
            reasons.append(f"The quotient has no permutation for {letter!r}")
    if reasons:
        return reasons
    for left, right in oracle.presentation.relations:
        for point in range(window.size):
            if window.walk(point, left) != window.walk(point, right):
                reasons.append(f"The relation {list(left)} = {list(right)} fails at point {point}")
                break
    return reasons


def _verify_frequencies(document: Mapping[str, Any], payload: Mapping[str, Any]) -> List[str]:
    from sft_lift.freqlin import build_frequency_system
    sft = schemas.sft_from_json(document)
    system = build_frequency_system(sft, payload['system']['directions'])
    reasons = []
    if system.to_json() != payload['system']:
        reasons.append("The frequency system does not match the SFT")
        return reasons
    if not sft.oracle.amenable:
        reasons.append("The group is not amenable, infeasibility does not prove emptiness")
    k = system.k
    farkas = [Fraction(int(value['num']), int(value['den'])) for value in payload['farkas']]
    allowed = {d: [tuple(pair) for pair in payload['system']['allowed'][d]] for d in payload['system']['directions']}
    forbidden = payload['system']['forbidden_symbols']
    expected = 1 + 2 * k * len(allowed) + len(forbidden)
    if len(farkas) != expected:
        return reasons + [f"{len(farkas)} multipliers for {expected} equations"]
    # fᵀA column by column: z_s then every flow variable
    weights = iter(farkas)
    total = next(weights)
    z = [total] * k
    flows = []
    for d in payload['system']['directions']:
        rows = [next(weights) for _ in range(k)]
        columns = [next(weights) for _ in range(k)]
        for s in range(k):
            z[s] -= rows[s] + columns[s]
        flows.extend(rows[s] + columns[t] for s, t in allowed[d])
    for s in forbidden:
        z[s] += next(weights)
    if any(value < 0 for value in z + flows):
        reasons.append("The Farkas combination has a negative coefficient")
    if total >= 0:
        reasons.append("The Farkas combination does not have a negative right-hand side")
    return reasons


def _verify_tla(document: Mapping[str, Any], payload: Mapping[str, Any]) -> List[str]:
    h_oracle = schemas.group_from_json(document['h_group'])
    g_oracle = schemas.group_from_json(document['g_group'])
    labels = {}
    for g_word, h, label in document['labels']:
        labels[(g_oracle.normalize(g_word), h)] = label
    radius, bound = int(payload['radius']), int(payload['L'])
    window = ball(g_oracle, r=radius)
    valid = set(g_oracle.names) | {IDENTITY_LABEL}
    reasons = []

    def act(g, word):
        for h in word:
            if h == IDENTITY_LABEL:
                continue
            label = labels.get((g, h))
            if label is None:
                return None
            g = g_oracle.apply(g, label)
        return g

    for g in window.elements:
        start = '·'.join(g_oracle.to_word(g)) or 'ε'
        for h in h_oracle.names:
            label = labels.get((g, h))
            if label not in valid:
                reasons.append(f"The step of {h} at {start} is {label!r}")
        for left, right in h_oracle.presentation.relations:
            first, second = act(g, left), act(g, right)
            if first is not None and second is not None and first != second:
                reasons.append(f"The relation {list(left)} = {list(right)} fails at {start}")
        words = [()]
        for _ in range(bound):
            words = [word + (h,) for word in words for h in h_oracle.names]
            for word in words:
                if act(g, word) == g and not h_oracle.is_identity(word):
                    reasons.append(f"{'·'.join(word)} fixes {start}")
        if len(reasons) > 20:
            break
    return reasons


def verify_certificate(certificate: Mapping[str, Any], subject: Mapping[str, Any]) -> Verification:
    """ Re-validates a `cert.v1` certificate against the document it was produced from

    Args:
        certificate: the certificate
        subject: the `sft.v1` document, or the `tla.v1` document for TlaVerified
    """
    schemas.validate(certificate, 'cert.v1')
    kind = certificate['kind']
    payload = certificate['payload']
    if digest(subject) != certificate['inputs_digest']:
        return Verification(kind, False, ("The inputs digest does not match the subject",))

    if kind == 'TlaVerified':
        schemas.validate(subject, 'tla.v1')
        reasons = _verify_tla(subject, payload)
    else:
        schemas.validate(subject, 'sft.v1')
        oracle = schemas.group_from_json(subject['group'])
        if kind == 'EmptyAtRadius':
            reasons = replay_proof(subject, _ball_window(oracle, int(payload['radius'])), payload['proof'])
        elif kind == 'AdmissibleUpTo':
            witness = payload['witness']
            reasons = check_witness(subject, _ball_window(oracle, int(witness['window']['radius'])),
                                    witness['assignment'])
            if witness['window']['radius'] != payload['radius']:
                reasons.append("The witness is not taken on the claimed radius")
        elif kind == 'PeriodicPoint':
            reasons = _relations_hold(oracle, payload['quotient'])
            if not reasons:
                reasons = check_witness(subject, _quotient_window(payload['quotient']), payload['witness'])
        elif kind == 'NoPeriodicPointUpTo':
            reasons = _verify_no_point(subject, oracle, payload)
        elif kind == 'FrequencyInfeasible':
            reasons = _verify_frequencies(subject, payload)
        else:
            reasons = [f"Unknown certificate kind {kind!r}"]

    if reasons:
        logger.info(f"{kind} certificate rejected: {reasons[0]}")
    else:
        logger.info(f"{kind} certificate verified")
    return Verification(kind, not reasons, tuple(reasons))


def _verify_no_point(document: Mapping[str, Any], oracle, payload: Mapping[str, Any]) -> List[str]:
    from sft_lift.quotients import enumerate_transitive_reps
    expected = [q.to_json() for q in enumerate_transitive_reps(oracle.presentation, oracle, int(payload['m_max']))]
    listed = [entry['quotient'] for entry in payload['quotients']]
    if sorted(map(digest, expected)) != sorted(map(digest, listed)):
        return ["The refuted quotients are not all the transitive representations"]
    reasons = []
    for entry in payload['quotients']:
        for reason in replay_proof(document, _quotient_window(entry['quotient']), entry['proof']):
            reasons.append(f"Quotient of degree {entry['quotient']['degree']}: {reason}")
    return reasons
