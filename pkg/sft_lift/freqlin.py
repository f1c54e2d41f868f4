"""
    sft_lift.freqlin
    ~~~~~~~~~~~~~~~~

    Symbol-frequency flow equations of nearest-neighbor SFTs.

    An invariant probability measure on a nearest-neighbor SFT gives every symbol
    s a frequency z_s and every direction d a flow matrix M_d whose entry (s, t)
    is the frequency of an s followed by a t along d. The flows vanish on the
    forbidden pairs and their row and column sums are z. When this linear system
    has no nonnegative solution with Σz = 1, the SFT carries no invariant measure,
    which on an amenable group means it is empty.

    Feasibility is decided in exact rational arithmetic, twice for small alphabets:
    by Fourier-Motzkin elimination and by a phase-one simplex with Bland's rule.
    The simplex also yields the infeasibility witness, a rational combination f
    of the equations with fᵀA ≥ 0 and fᵀb < 0.

    :license: MIT, see LICENSE for more details.
"""
from dataclasses import dataclass, field
from fractions import Fraction
import logging
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

import networkx as nx

from sft_lift.exceptions import InconsistentSolvers, NotNearestNeighbor, SymbolMismatch
from sft_lift.sft import Alphabet, ForbiddenPattern, ProductAlphabet, Sft, Symbol
from sft_lift.solver import FREQUENCY_INFEASIBLE, Certificate, sft_digest

logger = logging.getLogger(__name__)

# largest alphabet both solvers run on
FOURIER_MOTZKIN_ALPHABET = 4
# Fourier-Motzkin gives up beyond this many inequalities
FOURIER_MOTZKIN_CAP = 20_000

Row = Dict[int, Fraction]
Pair = Tuple[int, int]


def rational_to_json(value: Fraction) -> Dict[str, str]:
    value = Fraction(value)
    return {'num': str(value.numerator), 'den': str(value.denominator)}


def rational_from_json(value: Dict[str, str]) -> Fraction:
    return Fraction(int(value['num']), int(value['den']))


@dataclass(frozen=True)
class FrequencySystem:
    """ The flow equations of a nearest-neighbor SFT

    Symbols are referred to by their index in the alphabet.

    Attributes:
        alphabet: the alphabet of the SFT
        directions: the generators along which flows are taken
        allowed: per direction, the ordered pairs of symbol indices that may be adjacent
        forbidden_symbols: indices of symbols forbidden by single-cell patterns
        amenable: whether the group is amenable, that is whether infeasibility proves emptiness
    """
    alphabet: Alphabet
    directions: Tuple[str, ...]
    allowed: Dict[str, FrozenSet[Pair]]
    forbidden_symbols: FrozenSet[int] = frozenset()
    amenable: bool = False

    @property
    def k(self) -> int:
        return self.alphabet.size

    @property
    def variables(self) -> List[Tuple[Any, ...]]:
        """ ('z', s) for every symbol, then ('m', d, s, t) for every allowed pair of every direction """
        names: List[Tuple[Any, ...]] = [('z', s) for s in range(self.k)]
        for d in self.directions:
            names.extend(('m', d, s, t) for s, t in sorted(self.allowed[d]))
        return names

    def equations(self) -> List[Tuple[Row, Fraction]]:
        """ The rows (coefficients by variable index, right-hand side) of A·x = b

        The order is Σz = 1, then per direction the row sums and the column sums of
        M_d, then z_s = 0 for every forbidden symbol.
        """
        index = {name: i for i, name in enumerate(self.variables)}
        rows: List[Tuple[Row, Fraction]] = [({s: Fraction(1) for s in range(self.k)}, Fraction(1))]
        for d in self.directions:
            pairs = sorted(self.allowed[d])
            for s in range(self.k):
                row = {index[('m', d, s, t)]: Fraction(1) for s2, t in pairs if s2 == s}
                row[s] = Fraction(-1)
                rows.append((row, Fraction(0)))
            for t in range(self.k):
                row = {index[('m', d, s, t)]: Fraction(1) for s, t2 in pairs if t2 == t}
                row[t] = Fraction(-1)
                rows.append((row, Fraction(0)))
        for s in sorted(self.forbidden_symbols):
            rows.append(({s: Fraction(1)}, Fraction(0)))
        return rows

    def check_solution(self, z: Sequence[Fraction], flows: Dict[str, Sequence[Sequence[Fraction]]]) -> bool:
        """ True iff (z, flows) is a nonnegative solution supported on the allowed pairs """
        if len(z) != self.k or any(value < 0 for value in z) or sum(z) != 1:
            return False
        if any(z[s] != 0 for s in self.forbidden_symbols):
            return False
        for d in self.directions:
            matrix = flows.get(d)
            if matrix is None or len(matrix) != self.k:
                return False
            for s in range(self.k):
                for t in range(self.k):
                    value = matrix[s][t]
                    if value < 0 or (value != 0 and (s, t) not in self.allowed[d]):
                        return False
                if sum(matrix[s]) != z[s] or sum(matrix[t][s] for t in range(self.k)) != z[s]:
                    return False
        return True

    def to_json(self) -> Dict[str, Any]:
        return {'alphabet': [self.alphabet.to_json_symbol(symbol) for symbol in self.alphabet.symbols],
                'directions': list(self.directions),
                'allowed': {d: [list(pair) for pair in sorted(self.allowed[d])] for d in self.directions},
                'forbidden_symbols': sorted(self.forbidden_symbols),
                'amenable': self.amenable}


def build_frequency_system(sft: Sft, directions: Optional[Sequence[str]] = None) -> FrequencySystem:
    """ The frequency system of an SFT whose constraints are two-cell forbidden patterns

    A pattern on {ε, d⁻¹} is read as the reversed pair along d, so every pattern is
    expressed along one generator of each inverse pair.

    Args:
        sft: the SFT, over a plain alphabet
        directions: the generators to take flows along, one per inverse pair
                    (the primary generators of the group by default)

    Raises:
        NotNearestNeighbor: if a constraint is not a pattern of one or two adjacent cells
    """
    if isinstance(sft.alphabet, ProductAlphabet):
        raise NotNearestNeighbor("Frequency systems need a plain alphabet")
    oracle = sft.oracle
    pres = oracle.presentation
    directions = tuple(directions) if directions is not None else pres.primary_names
    inverses = pres.inverses
    for d in directions:
        if d not in pres.names:
            raise NotNearestNeighbor(f"{d!r} is not a generator of {oracle!r}")
    position = {symbol: i for i, symbol in enumerate(sft.alphabet.symbols)}
    k = sft.alphabet.size
    allowed = {d: {(s, t) for s in range(k) for t in range(k)} for d in directions}
    forbidden_symbols = set()

    for constraint in sft.constraints:
        if not isinstance(constraint, ForbiddenPattern):
            raise NotNearestNeighbor(f"{constraint!r} is not a forbidden pattern")
        entries = constraint.pattern.entries
        try:
            indices = [position[symbol] for _, symbol in entries]
        except KeyError as e:
            raise SymbolMismatch(f"{e.args[0]!r} is not a symbol of {sft.alphabet!r}") from None
        if len(entries) == 1 and entries[0][0] == ():
            forbidden_symbols.add(indices[0])
            continue
        if len(entries) != 2 or entries[0][0] != () or len(entries[1][0]) != 1:
            raise NotNearestNeighbor(f"{constraint!r} is not supported on two adjacent cells")
        letter = entries[1][0][0]
        pair = (indices[0], indices[1])
        if letter in allowed:
            allowed[letter].discard(pair)
            if inverses.get(letter) == letter:
                allowed[letter].discard(pair[::-1])
        elif inverses.get(letter) in allowed:
            allowed[inverses[letter]].discard(pair[::-1])
        else:
            raise NotNearestNeighbor(f"{constraint!r} reads along {letter!r}, which is not a listed direction")

    for d in directions:
        allowed[d] = {(s, t) for s, t in allowed[d] if s not in forbidden_symbols and t not in forbidden_symbols}
    system = FrequencySystem(sft.alphabet, directions, {d: frozenset(pairs) for d, pairs in allowed.items()},
                             frozenset(forbidden_symbols), oracle.amenable)
    logger.debug(f" Frequency system with {k} symbols, {len(system.variables)} variables, "
                 f"{len(system.equations())} equations")
    return system


def reduced_equations(system: FrequencySystem) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """ The equations between frequencies implied by the flows

    For every direction, each connected component of the bipartite graph of allowed
    pairs balances the symbols on its left against the symbols on its right. Common
    symbols are cancelled, trivial equations dropped and duplicates merged. A side
    is a sorted tuple of symbol indices, an empty side stands for 0.
    """
    found = []
    for d in system.directions:
        graph = nx.Graph()
        graph.add_nodes_from(('left', s) for s in range(system.k))
        graph.add_nodes_from(('right', t) for t in range(system.k))
        graph.add_edges_from((('left', s), ('right', t)) for s, t in system.allowed[d])
        for component in sorted(nx.connected_components(graph), key=lambda nodes: min(nodes)):
            left = [s for side, s in component if side == 'left']
            right = [t for side, t in component if side == 'right']
            common = set(left) & set(right)
            left = tuple(sorted(s for s in left if s not in common))
            right = tuple(sorted(t for t in right if t not in common))
            if not left and not right:
                continue
            equation = tuple(sorted((left, right), key=lambda side: (len(side), side)))
            if equation not in found:
                found.append(equation)
    return found


def format_equation(equation: Tuple[Tuple[int, ...], Tuple[int, ...]]) -> str:
    left, right = equation
    return f"{' + '.join(f'z{s}' for s in left) or '0'} = {' + '.join(f'z{s}' for s in right) or '0'}"


@dataclass(frozen=True)
class Feasible:
    """ A nonnegative solution: symbol frequencies and one flow matrix per direction """
    z: Tuple[Fraction, ...]
    flows: Dict[str, Tuple[Tuple[Fraction, ...], ...]]
    ok = True

    def to_json(self) -> Dict[str, Any]:
        return {'outcome': 'Feasible',
                'z': [rational_to_json(value) for value in self.z],
                'flows': {d: [[rational_to_json(value) for value in row] for row in matrix]
                          for d, matrix in self.flows.items()}}


@dataclass(frozen=True)
class Infeasible:
    """ No nonnegative solution, with a Farkas combination of the equations proving it

    Attributes:
        farkas: one rational per equation, in the order of :meth:`FrequencySystem.equations`
        certifies_empty: True when the group is amenable
    """
    farkas: Tuple[Fraction, ...]
    certifies_empty: bool = False
    ok = False

    def to_json(self) -> Dict[str, Any]:
        return {'outcome': 'Infeasible', 'farkas': [rational_to_json(value) for value in self.farkas],
                'certifies_empty': self.certifies_empty}


class _Tableau:
    """ Phase-one simplex on A·x = b, x ≥ 0, with one artificial column per row """

    def __init__(self, rows: List[Tuple[Row, Fraction]], n: int) -> None:
        self.m = len(rows)
        self.n = n
        self.signs = []
        self.T: List[List[Fraction]] = []
        self.rhs: List[Fraction] = []
        for i, (row, b) in enumerate(rows):
            sign = -1 if b < 0 else 1
            dense = [Fraction(0)] * (n + self.m)
            for j, value in row.items():
                dense[j] = sign * value
            dense[n + i] = Fraction(1)
            self.signs.append(sign)
            self.T.append(dense)
            self.rhs.append(sign * b)
        self.cost = [Fraction(0)] * n + [Fraction(1)] * self.m
        self.basis = [n + i for i in range(self.m)]

    def reduced_costs(self) -> List[Fraction]:
        reduced = list(self.cost)
        for i, column in enumerate(self.basis):
            weight = self.cost[column]
            if weight:
                for j, value in enumerate(self.T[i]):
                    if value:
                        reduced[j] -= weight * value
        return reduced

    def pivot(self, i: int, j: int) -> None:
        row = self.T[i]
        piv = row[j]
        self.T[i] = [value / piv for value in row]
        self.rhs[i] /= piv
        for r in range(self.m):
            factor = self.T[r][j]
            if r != i and factor:
                self.T[r] = [a - factor * b for a, b in zip(self.T[r], self.T[i])]
                self.rhs[r] -= factor * self.rhs[i]
        self.basis[i] = j

    def solve(self) -> List[Fraction]:
        """ Runs Bland's rule to optimality and returns the reduced costs """
        pivots = 0
        while True:
            reduced = self.reduced_costs()
            entering = next((j for j, value in enumerate(reduced) if value < 0), None)
            if entering is None:
                logger.debug(f" Simplex optimal after {pivots} pivots")
                return reduced
            candidates = [(self.rhs[i] / self.T[i][entering], self.basis[i], i)
                          for i in range(self.m) if self.T[i][entering] > 0]
            # the phase-one objective is bounded below by 0
            _, _, leaving = min(candidates)
            self.pivot(leaving, entering)
            pivots += 1

    @property
    def objective(self) -> Fraction:
        return sum((self.cost[column] * self.rhs[i] for i, column in enumerate(self.basis)), Fraction(0))


def simplex_feasibility(rows: List[Tuple[Row, Fraction]], n: int) -> Union[List[Fraction], Tuple[Fraction, ...]]:
    """ A solution x (a list) of A·x = b, x ≥ 0, or a Farkas vector f (a tuple) with fᵀA ≥ 0, fᵀb < 0 """
    tableau = _Tableau(rows, n)
    reduced = tableau.solve()
    if tableau.objective == 0:
        x = [Fraction(0)] * n
        for i, column in enumerate(tableau.basis):
            if column < n:
                x[column] = tableau.rhs[i]
        return x
    # the dual of the phase-one problem is y = 1 - reduced cost of each artificial column
    return tuple(-tableau.signs[i] * (1 - reduced[n + i]) for i in range(tableau.m))


class _TooLarge(Exception):
    pass


def _normalized(coefficients: Dict[int, Fraction], constant: Fraction) -> Tuple[Tuple[Tuple[int, Fraction], ...],
                                                                                   Fraction]:
    scale = max((abs(value) for value in coefficients.values()), default=abs(constant)) or Fraction(1)
    return tuple(sorted((j, value / scale) for j, value in coefficients.items())), constant / scale


def fourier_motzkin_feasible(rows: List[Tuple[Row, Fraction]], n: int, cap: int = FOURIER_MOTZKIN_CAP) -> bool:
    """ Decides A·x = b, x ≥ 0 by Gaussian elimination of the equalities then Fourier-Motzkin

    Raises:
        _TooLarge: when the number of inequalities exceeds `cap`
    """
    # express pivot variables through the free ones: x_p = constant + Σ coefficient·x_f
    pivots: Dict[int, Tuple[Dict[int, Fraction], Fraction]] = {}
    for row, b in rows:
        row = {j: Fraction(value) for j, value in row.items() if value}
        b = Fraction(b)
        for p, (expression, constant) in pivots.items():
            if p in row:
                factor = row.pop(p)
                for j, value in expression.items():
                    row[j] = row.get(j, Fraction(0)) + factor * value
                    if row[j] == 0:
                        del row[j]
                b -= factor * constant
        if not row:
            if b != 0:
                return False
            continue
        p = min(row)
        coefficient = row.pop(p)
        expression = {j: -value / coefficient for j, value in row.items()}
        constant = b / coefficient
        for q, (other, other_constant) in list(pivots.items()):
            if p in other:
                factor = other.pop(p)
                for j, value in expression.items():
                    other[j] = other.get(j, Fraction(0)) + factor * value
                    if other[j] == 0:
                        del other[j]
                pivots[q] = (other, other_constant + factor * constant)
        pivots[p] = (expression, constant)

    # inequalities Σ coefficient·x + constant ≥ 0 over the free variables
    inequalities = set()
    for expression, constant in pivots.values():
        inequalities.add(_normalized(dict(expression), constant))
    free = sorted({j for j in range(n) if j not in pivots})
    for j in free:
        inequalities.add(_normalized({j: Fraction(1)}, Fraction(0)))

    for variable in free:
        positive, negative, kept = [], [], set()
        for coefficients, constant in inequalities:
            value = dict(coefficients).get(variable, Fraction(0))
            if value > 0:
                positive.append((dict(coefficients), constant, value))
            elif value < 0:
                negative.append((dict(coefficients), constant, value))
            else:
                kept.add((coefficients, constant))
        for p_coefficients, p_constant, p_value in positive:
            for n_coefficients, n_constant, n_value in negative:
                combined: Dict[int, Fraction] = {}
                for j in set(p_coefficients) | set(n_coefficients):
                    if j == variable:
                        continue
                    value = p_coefficients.get(j, 0) / p_value - n_coefficients.get(j, 0) / n_value
                    if value:
                        combined[j] = value
                constant = p_constant / p_value - n_constant / n_value
                if not combined:
                    if constant < 0:
                        return False
                    continue
                kept.add(_normalized(combined, constant))
                if len(kept) > cap:
                    raise _TooLarge()
        inequalities = kept
    return all(constant >= 0 for coefficients, constant in inequalities if not coefficients)


def _solution(system: FrequencySystem, x: List[Fraction]) -> Feasible:
    z = tuple(x[:system.k])
    flows = {}
    position = system.k
    for d in system.directions:
        matrix = [[Fraction(0)] * system.k for _ in range(system.k)]
        for s, t in sorted(system.allowed[d]):
            matrix[s][t] = x[position]
            position += 1
        flows[d] = tuple(tuple(row) for row in matrix)
    return Feasible(z, flows)


def solve_frequency_system(system: FrequencySystem) -> Union[Feasible, Infeasible]:
    """ Decides the frequency system exactly

    Raises:
        InconsistentSolvers: if Fourier-Motzkin and the simplex disagree
    """
    rows = system.equations()
    n = len(system.variables)
    answer = simplex_feasibility(rows, n)
    feasible = isinstance(answer, list)
    if system.k <= FOURIER_MOTZKIN_ALPHABET:
        try:
            eliminated = fourier_motzkin_feasible(rows, n)
        except _TooLarge:
            logger.debug(f" Fourier-Motzkin gave up beyond {FOURIER_MOTZKIN_CAP} inequalities")
        else:
            if eliminated != feasible:
                logger.error(f"Fourier-Motzkin says {eliminated}, the simplex says {feasible}")
                raise InconsistentSolvers("The two exact solvers disagree on the frequency system")
    if feasible:
        solution = _solution(system, answer)
        if not system.check_solution(solution.z, solution.flows):
            raise InconsistentSolvers("The simplex returned a point which is not a solution")
        return solution
    if not check_farkas(rows, n, answer):
        raise InconsistentSolvers("The simplex returned an invalid infeasibility witness")
    if not system.amenable:
        logger.warning("The frequency system is infeasible but the group is not amenable, "
                       "this does not prove the SFT empty")
    return Infeasible(answer, system.amenable)


def check_farkas(rows: List[Tuple[Row, Fraction]], n: int, f: Sequence[Fraction]) -> bool:
    """ True iff fᵀA ≥ 0 componentwise and fᵀb < 0 """
    if len(f) != len(rows):
        return False
    combined = [Fraction(0)] * n
    total = Fraction(0)
    for weight, (row, b) in zip(f, rows):
        for j, value in row.items():
            combined[j] += weight * value
        total += weight * b
    return total < 0 and all(value >= 0 for value in combined)


def empirical_frequencies(sft: Sft, witness: Union[Sequence[Symbol], Any], q: Any,
                          directions: Optional[Sequence[str]] = None) -> Feasible:
    """ The frequencies and flows of a periodic point given on a Schreier graph

    Args:
        sft: the nearest-neighbor SFT
        witness: the symbols of the cosets, or a coloring witness holding them
        q: the Schreier graph
        directions: as for :func:`build_frequency_system`
    """
    assignment = getattr(witness, 'assignment', witness)
    system = build_frequency_system(sft, directions)
    position = {symbol: i for i, symbol in enumerate(sft.alphabet.symbols)}
    weight = Fraction(1, q.size)
    z = [Fraction(0)] * system.k
    flows = {d: [[Fraction(0)] * system.k for _ in range(system.k)] for d in system.directions}
    for cell, symbol in enumerate(assignment):
        s = position[symbol]
        z[s] += weight
        for d in system.directions:
            t = position[assignment[q.step(cell, d)]]
            flows[d][s][t] += weight
    return Feasible(tuple(z), {d: tuple(tuple(row) for row in matrix) for d, matrix in flows.items()})


@dataclass(frozen=True)
class FrequencyReport:
    """ The outcome of the frequency probe and, when it proves emptiness, its certificate """
    system: FrequencySystem
    result: Union[Feasible, Infeasible]
    reduced: Tuple[Tuple[Tuple[int, ...], Tuple[int, ...]], ...] = field(default=())
    certificate: Optional[Certificate] = None

    def to_json(self) -> Dict[str, Any]:
        document = {'schema': 'freq.v1', 'system': self.system.to_json(),
                    'reduced': [[list(left), list(right)] for left, right in self.reduced]}
        document.update(self.result.to_json())
        return document


def frequency_probe(sft: Sft, directions: Optional[Sequence[str]] = None) -> FrequencyReport:
    """ Builds and solves the frequency system of an SFT

    A FrequencyInfeasible certificate is attached only when the group is amenable.
    """
    system = build_frequency_system(sft, directions)
    result = solve_frequency_system(system)
    certificate = None
    if not result.ok and result.certifies_empty:
        payload = {'system': system.to_json(), 'farkas': [rational_to_json(value) for value in result.farkas]}
        certificate = Certificate(FREQUENCY_INFEASIBLE, payload, sft_digest(sft))
        logger.info(f"{sft.name or 'SFT'} has no invariant measure, it is empty")
    return FrequencyReport(system, result, tuple(reduced_equations(system)), certificate)
