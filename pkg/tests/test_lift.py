""" Test the different scenarios of lift.py
"""
import pytest

from sft_lift import zoo
from sft_lift.exceptions import SymbolMismatch, SynthesisError, TransversalFailure, UnknownGenerator, WindowTooSmall
from sft_lift.groups import FreeAbelian, ball
from sft_lift.lift import (UNDETERMINED, AntirelationChecker, CoordinateShift, Endpoint, LeftWindow, LiftSpec,
                           NeedsValue, RelationChecker, SubgroupTranslation, compose_actions, f_map, orbit_pieces,
                           product_action, quotient_readout, synthesize_point, trace, verify_tla)
from sft_lift.quotients import torus
from sft_lift.sft import Alphabet, Fragment, Pattern, ProductAlphabet
from sft_lift.solver import ball_admissible, quotient_point


def mod3_color(word):
    """ The mod-3 shift coloring of ℤ read on a word over t, T
    """
    return (word.count('t') - word.count('T')) % 3


@pytest.fixture()
def shift(z2):
    """ ℤ acting on ℤ² along a
    """
    return CoordinateShift(z2, ('a',))


@pytest.fixture()
def lifted_point(shift, mod3_lift):
    """ The lift of the mod-3 coloring of ℤ along the shift, on the ball of radius 3
    """
    window = ball(shift.g_oracle, r=3)
    return synthesize_point(shift, mod3_color, window, alphabet=mod3_lift.alphabet)


def test_lifted_sft_shape(mod3_lift):
    """ Test the alphabet and the constraints of the lifted mod-3 shift
    """
    assert isinstance(mod3_lift.alphabet, ProductAlphabet)
    assert mod3_lift.alphabet.size == 48
    relations = [c for c in mod3_lift.constraints if isinstance(c, RelationChecker)]
    assert len(relations) == 2
    assert len(mod3_lift.constraints) == 8


def test_antirelations_are_lifted(z2):
    """ Test that every antirelation t^k ≠ ε becomes a checker
    """
    sft = zoo.z_copies(z2, 2)
    antirelations = [c for c in sft.constraints if isinstance(c, AntirelationChecker)]
    assert [c.h for c in antirelations] == [('t',), ('t', 't')]


def test_liftspec_checks_its_inputs(z, z2):
    """ Test that lift specifications refuse foreign symbols and labels
    """
    with pytest.raises(SymbolMismatch):
        LiftSpec(z.presentation, Alphabet((0, 1)), (Pattern((((), 5),)),), z2, z2.names)
    with pytest.raises(UnknownGenerator):
        LiftSpec(z.presentation, Alphabet((0, 1)), (), z2, ('a', 'c'))


def test_synthesized_point_is_admissible(mod3_lift, lifted_point):
    """ Test that the point built from an action and a point of the SFT on ℤ is a point of the lift
    """
    assert lifted_point.is_total
    assert mod3_lift.violations(lifted_point) == []
    window = lifted_point.window
    fixed = dict(enumerate(lifted_point.symbols()))
    result = ball_admissible(mod3_lift, window, fixed=fixed)
    assert result.ok
    assert result.assignment == lifted_point.symbols()


def test_f_map_reads_the_coloring(lifted_point):
    """ Test that the colors read along traces reproduce the coloring of ℤ
    """
    for k in range(4):
        assert f_map(lifted_point, ('t',) * k) == k % 3
    assert f_map(lifted_point, ('T',)) == 2
    # a trace leaving the ball
    assert f_map(lifted_point, ('t',) * 4) is UNDETERMINED


def test_trace(lifted_point, mod3_lift):
    """ Test the three outcomes of a trace
    """
    window = lifted_point.window
    edge = window.id_of((3, 0))
    assert trace(lifted_point, 0, ('t', 't')) == Endpoint(window.id_of((2, 0)))
    assert trace(lifted_point, edge, ('t',)) == LeftWindow()
    assert trace(Fragment(window, mod3_lift.alphabet), 0, ('t',)) == NeedsValue(0, 't')


def test_trace_is_equivariant(lifted_point, z2):
    """ Test that tracing from g·x is the translate by g of the trace from x
    """
    window = lifted_point.window
    h = ('t', 't', 'T')
    offset = trace(lifted_point, 0, h)
    for g in ball(z2, r=1).elements:
        expected = window.id_of(z2.evaluate(window.words[offset.element], start=g))
        assert trace(lifted_point, window.id_of(g), h) == Endpoint(expected)


def test_relation_checker_detects_bad_labels(lifted_point, mod3_lift):
    """ Test that breaking the label of T at a cell violates t·T = ε
    """
    fragment = lifted_point.copy()
    cell = fragment.window.id_of((1, 0))
    fragment.assign(cell, mod3_lift.alphabet.component('T'), 'B')
    assert (0, 0) in mod3_lift.violations(fragment)


def test_verify_tla_accepts_actions(z, z2, f2, shift):
    """ Test that the built-in actions are translation-like
    """
    assert verify_tla(shift, ball(z2, r=4), 4).ok
    assert verify_tla(SubgroupTranslation(z, f2, {'t': 'a'}), ball(f2, r=4), 4).ok
    product = zoo.lookup('product-z-z', 'action')
    assert verify_tla(product, ball(product.g_oracle, r=4), 4).ok


def test_verify_tla_mutation(z2, shift):
    """ Test that changing one label of a valid action is caught
    """
    data = shift.to_finite_data(ball(z2, r=5))
    assert verify_tla(data, ball(z2, r=4), 4).ok

    report = verify_tla(data.mutated(z2.identity(), 't', 'b'), ball(z2, r=4), 4)
    assert not report.ok
    assert any(c.kind == 'relation' and c.start == () for c in report.counterexamples)

    with pytest.raises(UnknownGenerator):
        data.mutated(z2.identity(), 't', 'c')


@pytest.mark.parametrize('name', ['shift-z-on-z2', 'translation-z-on-f2', 'product-z-z'])
def test_every_single_label_mutation_is_caught(name):
    """ Test that changing any one label on the checked ball gives a located counterexample
    """
    action = zoo.lookup(name, 'action')
    g_oracle = action.g_oracle
    data = action.to_finite_data(ball(g_oracle, r=5))
    window = ball(g_oracle, r=4)
    assert verify_tla(data, window, 4).ok

    labels = g_oracle.names + ('1',)
    mutations = 0
    for g in window.elements:
        for h in action.h_oracle.names:
            for label in labels:
                if label == data.phi(g, h):
                    continue
                report = verify_tla(data.mutated(g, h, label), window, 4)
                assert not report.ok, (g, h, label)
                assert all(g_oracle.normalize(c.start) in window.elements for c in report.counterexamples)
                mutations += 1
    assert mutations == window.size * len(action.h_oracle.names) * (len(labels) - 1)


def test_verify_tla_freeness(z, z2):
    """ Test that an action fixing its points is refused
    """
    report = verify_tla(SubgroupTranslation(z, z2, {'t': '1'}), ball(z2, r=1), 2)
    assert not report.ok
    assert {c.kind for c in report.counterexamples} == {'freeness'}


def test_verify_tla_undefined(z2, shift):
    """ Test that labels taken on a smaller ball leave undefined steps
    """
    report = verify_tla(shift.to_finite_data(ball(z2, r=2)), ball(z2, r=4), 4)
    assert not report.ok
    assert any(c.kind == 'undefined' for c in report.counterexamples)


def test_orbit_pieces(z2, shift):
    """ Test that the rows of a ball are the orbit pieces of the shift along a
    """
    window = ball(z2, r=1)
    pieces = orbit_pieces(shift, window)
    assert len({representative for representative, _ in pieces.values()}) == 3
    assert pieces[window.id_of((1, 0))] == (0, (1,))
    assert pieces[window.id_of((-1, 0))] == (0, (-1,))


def test_orbit_pieces_transversal_failure(z, c3):
    """ Test that ℤ acting on ℤ/3 is not free and breaks the orbit decomposition
    """
    action = SubgroupTranslation(z, c3, {'t': 'a'})
    with pytest.raises(TransversalFailure):
        orbit_pieces(action, ball(c3, r=1))


def test_orbit_pieces_window_too_small(z2, shift):
    """ Test that an action described on a smaller ball cannot be decomposed
    """
    with pytest.raises(WindowTooSmall):
        orbit_pieces(shift.to_finite_data(ball(z2, r=1)), ball(z2, r=2))


def test_product_action():
    """ Test that the product action acts factor by factor
    """
    product = product_action(CoordinateShift(FreeAbelian(1, ('a',)), ('a',), ('t',)),
                             CoordinateShift(FreeAbelian(1, ('b',)), ('b',), ('u',)))
    identity = product.g_oracle.identity()
    assert product.phi(identity, 't') == 'a'
    assert product.phi(identity, 'U') == 'B'
    assert product.act(identity, ('t', 'u', 't')) == product.g_oracle.normalize(('a', 'a', 'b'))


def test_compose_actions(z2):
    """ Test that composing ℤ on ℤ with ℤ on ℤ² gives the shift along a
    """
    first = SubgroupTranslation(FreeAbelian(1, ('t',)), FreeAbelian(1, ('s',)), {'t': 's'})
    second = CoordinateShift(z2, ('a',), ('s',))
    composed = compose_actions(first, second, ball(z2, r=2))
    assert composed.phi(z2.identity(), 't') == 'a'
    assert composed.phi((0, 1), 'T') == 'A'
    assert verify_tla(composed, ball(z2, r=2), 2).ok


def test_quotient_readout(z, z2, mod3_lift):
    """ Test that the coloring read off a periodic lifted point is a point of the mod-3 shift
    """
    witness = quotient_point(mod3_lift, torus(z2, (3, 3)))
    assert witness.ok
    readout = quotient_readout(witness.fragment(), z, 9)
    assert len(readout.colors) == 19
    for k in range(-8, 8):
        word = z.to_word((k,))
        following = z.to_word((k + 1,))
        assert readout.colors[following] == (readout.colors[word] + 1) % 3
    assert readout.periods
    assert all(len(word) % 3 == 0 for word in readout.periods)


def test_synthesize_point_needs_colors(shift, z2):
    """ Test that a finite H-coloring must cover every H-element met in the ball
    """
    with pytest.raises(SynthesisError):
        synthesize_point(shift, {(): 0}, ball(z2, r=1))


def test_finite_quotients_of_lift(mod3_lift, z2):
    """ Test that the lifted mod-3 shift has points on the 3×3 torus
    """
    assert quotient_point(mod3_lift, torus(z2, (3, 3))).ok
    assert not quotient_point(mod3_lift, torus(z2, (2, 2))).ok
