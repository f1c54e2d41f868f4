""" Test the different scenarios of sft.py
"""
import pytest

from sft_lift import zoo
from sft_lift.exceptions import (ConflictingEntries, ExportTooLarge, PresentationError, RelationViolation,
                                 SymbolMismatch, UnknownGenerator)
from sft_lift.groups import ball
from sft_lift.sft import (Alphabet, ExactlyOne, Fragment, Pattern, ProductAlphabet, Sft, Verdict, make_checker,
                          make_sft, subgroup_lift)


def test_alphabet():
    """ Test that an alphabet needs distinct symbols
    """
    alphabet = Alphabet((0, 1, 2))
    assert alphabet.size == 3
    assert 2 in alphabet
    assert 3 not in alphabet
    with pytest.raises(SymbolMismatch):
        Alphabet(())
    with pytest.raises(SymbolMismatch):
        Alphabet((0, 0))


def test_product_alphabet():
    """ Test the components of a lifted alphabet
    """
    alphabet = ProductAlphabet(Alphabet((0, 1, 2)), ('t', 'T'), ('a', 'A', 'b', 'B'))
    assert alphabet.size == 48
    assert (1, ('a', 'A')) in alphabet
    assert (1, ('a', 'c')) not in alphabet
    assert 1 not in alphabet
    assert alphabet.decompose((2, ('b', 'B'))) == (2, 'b', 'B')
    assert alphabet.compose((2, 'b', 'B')) == (2, ('b', 'B'))
    assert alphabet.component('T') == 2
    assert alphabet.to_json_symbol((0, ('a', 'A'))) == [0, ['a', 'A']]


def test_pattern_is_sorted():
    """ Test that pattern entries are sorted by support word
    """
    pattern = Pattern(((('t',), 1), ((), 0)))
    assert pattern.entries == (((), 0), (('t',), 1))
    assert pattern.support == ((), ('t',))
    assert pattern.radius == 1
    assert Pattern.of({(): 0}).radius == 0
    with pytest.raises(SymbolMismatch):
        Pattern(())


def test_make_sft_errors(z, z2):
    """ Test that patterns must use the alphabet and the declared generators
    """
    with pytest.raises(SymbolMismatch):
        make_sft(z, Alphabet((0, 1)), [Pattern((((), 2),))])
    with pytest.raises(UnknownGenerator):
        make_sft(z, Alphabet((0, 1)), [Pattern(((('c',), 0),))])
    with pytest.raises(ConflictingEntries):
        make_sft(z2, Alphabet((0, 1)), [Pattern(((('a', 'b'), 0), (('b', 'a'), 1)))])


def test_canonical_supports(z2):
    """ Test that support words denoting the same element are merged
    """
    sft = make_sft(z2, Alphabet((0, 1)), [Pattern(((('b', 'a'), 0), (('a', 'b'), 0), (('a', 'A'), 1)))])
    assert sft.constraints[0].pattern.entries == (((), 1), (('a', 'b'), 0))


def test_forbidden_pattern_verdicts(golden_mean):
    """ Test the three verdicts of a forbidden pattern on ℤ
    """
    window = ball(golden_mean.oracle, r=1)
    assert window.words == ((), ('T',), ('t',))
    constraint = golden_mean.constraints[0]

    fragment = Fragment.from_symbols(window, golden_mean.alphabet, [1, 0, 1])
    assert constraint.evaluate(fragment, 0) == (Verdict.VIOLATED, None)
    assert constraint.evaluate(fragment, 1) == (Verdict.SATISFIED, None)
    # the pattern leaves the window
    assert constraint.evaluate(fragment, 2) == (Verdict.SATISFIED, None)
    assert golden_mean.violations(fragment) == [(0, 0)]

    partial = Fragment.from_symbols(window, golden_mean.alphabet, {0: 1})
    assert constraint.evaluate(partial, 0) == (Verdict.UNKNOWN, (2, 0))
    assert golden_mean.violations(partial) == []


def test_exactly_one(z):
    """ Test the exactly-one checker on ℤ
    """
    checker = ExactlyOne([[((), 0), (('t',), 0)]])
    sft = Sft(z, Alphabet((0, 1)), (checker,))
    window = ball(z, r=1)

    def verdict(symbols):
        return checker.evaluate(Fragment.from_symbols(window, sft.alphabet, symbols), 0)

    assert verdict([0, 1, 1]) == (Verdict.SATISFIED, None)
    assert verdict([0, 1, 0]) == (Verdict.VIOLATED, None)
    assert verdict([1, 0, 1]) == (Verdict.VIOLATED, None)
    assert verdict({0: 1}) == (Verdict.UNKNOWN, (2, 0))
    assert sft.support_radius == 1


def test_extensional_export(z):
    """ Test that a checker expands to the colorings of its support ball it rejects
    """
    sft = Sft(z, Alphabet((0, 1)), (ExactlyOne([[((), 0), (('t',), 0)]]),))
    patterns = sft.extensional()
    assert len(patterns) == 4
    for pattern in patterns:
        colors = dict(pattern.entries)
        assert colors[()] == colors[('t',)]
    with pytest.raises(ExportTooLarge):
        sft.extensional(limit=5)


def test_checker_registry():
    """ Test that checkers are rebuilt from their id and parameters
    """
    checker = ExactlyOne([[((), 0), (('A',), 1)], [(('B',), -2), ((), -1)]])
    rebuilt = make_checker('exactly_one', checker.params)
    assert rebuilt.groups == checker.groups
    with pytest.raises(PresentationError):
        make_checker('no_such_checker', {})


def test_subgroup_lift(z2):
    """ Test that the mod-3 shift is carried to every a-line of ℤ²
    """
    sft = zoo.mod3_subgroup_lift()
    assert sft.oracle.names == z2.names
    assert len(sft.constraints) == 6
    assert all(constraint.pattern.support == ((), ('a',)) for constraint in sft.constraints)


def test_subgroup_lift_relation_violation(f2):
    """ Test that ℤ² does not embed in F_2 by a ↦ a, b ↦ b
    """
    with pytest.raises(RelationViolation):
        subgroup_lift(zoo.wang_checkerboard(), {'a': ('a',), 'b': ('b',)}, f2)


def test_subgroup_lift_needs_patterns(f2, paradoxical):
    """ Test that only forbidden patterns can be carried along an embedding
    """
    with pytest.raises(PresentationError):
        subgroup_lift(paradoxical, {'a': ('a',), 'b': ('b',)}, f2)
