""" Test the different scenarios of quotients.py
"""
import pytest

from sft_lift.exceptions import PresentationError, ResourceLimit, UnknownGenerator
from sft_lift.groups import FreeGroup, Lamplighter
from sft_lift.limiter import Limiter
from sft_lift.quotients import (SchreierGraph, complete_permutations, cyclic, enumerate_transitive_reps, torus,
                                verify_relations)


def test_schreier_graph_must_hold_permutations():
    """ Test that the images of every generator form a permutation of the points
    """
    with pytest.raises(PresentationError):
        SchreierGraph({'a': (0, 0)})
    with pytest.raises(PresentationError):
        SchreierGraph({'a': (0, 1), 'b': (0, 1, 2)})


def test_complete_permutations(z):
    """ Test that the inverse permutations are derived
    """
    perms = complete_permutations(z.presentation, {'t': (1, 2, 0)})
    assert perms['T'] == (2, 0, 1)
    with pytest.raises(UnknownGenerator):
        complete_permutations(z.presentation, {'s': (0,)})


def test_torus(z2):
    """ Test the 3×3 torus quotient of ℤ²
    """
    q = torus(z2, (3, 3))
    assert q.degree == 9
    assert q.is_transitive
    assert verify_relations(z2.presentation, q.perms)
    assert q.walk(0, ('a', 'a', 'a')) == 0
    assert q.walk(0, ('a', 'b', 'A', 'B')) == 0
    assert q.step(0, 'b') == 3
    with pytest.raises(PresentationError):
        torus(z2, (3,))


def test_cyclic(z, z2):
    """ Test quotients on ℤ/n given by constant shifts
    """
    q = cyclic(z, 3, {'t': 1})
    assert q.step(0, 't') == 1
    assert q.step(0, 'T') == 2
    assert cyclic(z2, 2, {'a': 1, 'b': 1}).is_transitive


def test_verify_relations(f2, z2):
    """ Test that non-commuting permutations fail the relations of ℤ² but not those of F_2
    """
    perms = {'a': (1, 0, 2), 'b': (0, 2, 1)}
    assert not verify_relations(z2.presentation, perms)
    assert verify_relations(f2.presentation, perms)


def test_canonical_relabeling():
    """ Test that relabelings fixing the base give the same canonical graph
    """
    first = SchreierGraph({'t': (1, 2, 0)})
    second = SchreierGraph({'t': (2, 0, 1)})
    assert first.canonical() == second.canonical()
    assert first.relabeled([0, 2, 1]) == second


@pytest.mark.parametrize('m_max,counts', [
    (1, [1]),
    (2, [1, 3]),
    (4, [1, 3, 4, 7]),
])
def test_reps_of_z2(z2, m_max, counts):
    """ Test that the representations of ℤ² of degree m match its subgroups of index m
    """
    reps = enumerate_transitive_reps(z2.presentation, z2, m_max)
    assert [sum(1 for q in reps if q.degree == m) for m in range(1, m_max + 1)] == counts
    assert all(q.is_transitive for q in reps)
    assert all(verify_relations(z2.presentation, q.perms) for q in reps)


@pytest.mark.parametrize('m_max,counts', [
    (2, [1, 3]),
    (3, [1, 3, 13]),
])
def test_reps_of_f2(f2, m_max, counts):
    """ Test that the representations of F_2 of degree m match its subgroups of index m
    """
    reps = enumerate_transitive_reps(f2.presentation, f2, m_max)
    assert [sum(1 for q in reps if q.degree == m) for m in range(1, m_max + 1)] == counts


def test_reps_are_distinct_and_sorted(z):
    """ Test that ℤ has exactly one representation per degree, in degree order
    """
    reps = enumerate_transitive_reps(z.presentation, z, 4)
    assert [q.degree for q in reps] == [1, 2, 3, 4]
    assert len(set(reps)) == len(reps)


def test_reps_errors(z):
    """ Test the invalid requests and the budget
    """
    with pytest.raises(PresentationError):
        enumerate_transitive_reps(z.presentation, z, 0)
    with pytest.raises(ResourceLimit):
        enumerate_transitive_reps(FreeGroup(2, ('a', 'b')).presentation, m_max=4, limiter=Limiter(node_budget=10))


def test_reps_of_truncated_presentation(caplog):
    """ Test that a group which is not finitely presented is reported
    """
    lamplighter = Lamplighter()
    reps = enumerate_transitive_reps(lamplighter.presentation, lamplighter, 2)
    assert reps
    assert 'not finitely presented' in caplog.text
