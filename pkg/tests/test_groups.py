""" Test the different scenarios of groups.py
"""
import random

import pytest

from sft_lift.exceptions import PresentationError, UnknownGenerator
from sft_lift.groups import (BaumslagSolitar1n, DirectProduct, FiniteGroup, FreeAbelian, FreeGroup,
                             GeneratorSymbol, Heisenberg, Lamplighter, MonoidPresentation, ball, cyclic_group,
                             direct_product, equal, normalize, paired_generators, power)


def test_paired_generators():
    """ Test that every lowercase generator is paired with its uppercase inverse
    """
    assert paired_generators(['a', 'b']) == (GeneratorSymbol('a', 'A'), GeneratorSymbol('A', 'a'),
                                             GeneratorSymbol('b', 'B'), GeneratorSymbol('B', 'b'))
    with pytest.raises(PresentationError):
        paired_generators(['1'])


def test_presentation_adds_cancellations():
    """ Test that the cancellation relations are added to a group presentation
    """
    pres = MonoidPresentation(paired_generators(['a']))
    assert pres.relations == ((('a', 'A'), ()), (('A', 'a'), ()))
    assert pres.is_group
    assert pres.primary_names == ('a',)


def test_default_names_leave_t_to_the_acting_group():
    """ Test that unnamed generators never take the letter t
    """
    assert FreeGroup(2).primary == ('a', 'b')
    assert FreeAbelian(20).primary[-1] == 'u'
    assert 't' not in FreeAbelian(25).names
    with pytest.raises(PresentationError):
        FreeAbelian(26)


def test_presentation_rejects_bad_generators():
    """ Test the malformed generating sets
    """
    # the identity label is reserved
    with pytest.raises(PresentationError):
        MonoidPresentation((GeneratorSymbol('1'),))
    # a non-symmetric inverse pairing
    with pytest.raises(PresentationError):
        MonoidPresentation((GeneratorSymbol('a', 'A'), GeneratorSymbol('A')))
    # duplicates
    with pytest.raises(PresentationError):
        MonoidPresentation((GeneratorSymbol('a'), GeneratorSymbol('a')))
    # a relation over an undeclared letter
    with pytest.raises(UnknownGenerator):
        MonoidPresentation(paired_generators(['a']), relations=((('a', 'c'), ()),))


def test_free_group_normalize(f2):
    """ Test the free reduction of words in F_2
    """
    assert normalize(f2, ('a', 'A', 'b')) == ('b',)
    assert normalize(f2, ('a', 'b', 'B', 'A')) == ()
    assert not equal(f2, ('a', 'b'), ('b', 'a'))
    assert f2.is_identity(())
    assert not f2.amenable


def test_free_abelian_normalize(z2):
    """ Test that ℤ² commutes and reads its elements back as sorted words
    """
    assert equal(z2, ('a', 'b'), ('b', 'a'))
    assert normalize(z2, ('a', 'a', 'B')) == (2, -1)
    assert z2.to_word((2, -1)) == ('B', 'a', 'a')
    assert z2.amenable


def test_unknown_generator(f2):
    """ Test that undeclared letters are refused
    """
    with pytest.raises(UnknownGenerator):
        f2.normalize(('c',))
    with pytest.raises(TypeError):
        f2.check_word('ab')


def test_identity_label_is_neutral(f2):
    """ Test that the reserved identity label acts trivially
    """
    assert f2.normalize(('a', '1', 'b')) == ('a', 'b')
    assert f2.inverse_of('1') == '1'


def test_baumslag_solitar_relation():
    """ Test the defining relation a·b·A = b² of B(1,2)
    """
    bs = BaumslagSolitar1n(2)
    assert bs.equal(('a', 'b', 'A'), ('b', 'b'))
    assert not bs.equal(('a', 'b'), ('b', 'a'))
    with pytest.raises(PresentationError):
        BaumslagSolitar1n(0)


def test_heisenberg_commutator_is_central():
    """ Test that the commutator of a and b commutes with both generators
    """
    h = Heisenberg()
    commutator = ('a', 'b', 'A', 'B')
    assert h.equal(commutator + ('a',), ('a',) + commutator)
    assert h.equal(commutator + ('b',), ('b',) + commutator)
    assert not h.is_identity(commutator)


def test_lamplighter():
    """ Test that lamps far apart commute and that the lamp is its own inverse
    """
    lamplighter = Lamplighter()
    assert lamplighter.is_identity(('a', 'a'))
    assert lamplighter.inverse_of('a') == 'a'
    far = power('t', 'T', 7) + ('a',) + power('t', 'T', -7)
    assert lamplighter.equal(far + ('a',), ('a',) + far)
    assert not lamplighter.finitely_presented


def test_finite_group(c3):
    """ Test the multiplication table oracle of ℤ/3
    """
    assert c3.is_identity(('a', 'a', 'a'))
    assert c3.equal(('a', 'a'), ('A',))
    # words are shortlex over the sorted names, uppercase first
    assert c3.to_word(2) == ('A',)
    assert c3.to_word(1) == ('a',)


def test_finite_group_bad_table():
    """ Test that broken multiplication tables are refused
    """
    with pytest.raises(PresentationError):
        FiniteGroup([[0, 1], [1, 1]], {'a': 1})
    with pytest.raises(PresentationError):
        FiniteGroup([[1, 0], [0, 1]], {'a': 1})
    with pytest.raises(PresentationError):
        FiniteGroup([[0, 1], [1, 0]], {'a': 5})


def test_direct_product(f2, z):
    """ Test that the factors of a direct product commute
    """
    product = direct_product(f2, z)
    assert product.equal(('a', 't'), ('t', 'a'))
    assert not product.equal(('a', 'b'), ('b', 'a'))
    assert (('a', 't'), ('t', 'a')) in product.presentation.relations
    assert not product.amenable
    with pytest.raises(PresentationError):
        DirectProduct(f2, FreeGroup(1, ('a',)))


@pytest.mark.parametrize('oracle', [
    FreeGroup(2, ('a', 'b')),
    FreeAbelian(3, ('a', 'b', 'c')),
    BaumslagSolitar1n(2),
    Heisenberg(),
    Lamplighter(),
    cyclic_group(5),
    DirectProduct(FreeGroup(2, ('a', 'b')), FreeAbelian(1, ('t',))),
])
def test_read_back(oracle):
    """ Test that the read-back word of every element of a ball evaluates to that element
    """
    window = ball(oracle, r=3)
    for element in window.elements:
        assert oracle.normalize(oracle.to_word(element)) == element


@pytest.mark.parametrize('oracle', [
    FreeGroup(3, ('a', 'b', 'c')),
    FreeAbelian(3, ('a', 'b', 'c')),
    BaumslagSolitar1n(2),
    Heisenberg(),
    Lamplighter(),
    cyclic_group(4),
    DirectProduct(FreeGroup(2, ('a', 'b')), FreeAbelian(1, ('t',))),
])
def test_equality_is_a_congruence(oracle):
    """ Test on random words that equality survives concatenation and that every relation holds
    """
    rng = random.Random(20240101)
    names = oracle.names
    relations = oracle.presentation.relations

    def word():
        return tuple(rng.choice(names) for _ in range(rng.randint(0, 6)))

    for _ in range(200):
        w1, w3 = word(), word()
        w2 = oracle.to_word(oracle.normalize(w1))
        assert oracle.equal(w1, w2)
        assert oracle.equal(w1 + w3, w2 + w3)
        assert oracle.equal(w3 + w1, w3 + w2)
        assert oracle.canonical_word(w2) == w2

        left, right = rng.choice(relations)
        i = rng.randint(0, len(w1))
        assert oracle.equal(w1[:i] + left + w1[i:], w1[:i] + right + w1[i:])


@pytest.mark.parametrize('oracle,radius,size', [
    (FreeGroup(2, ('a', 'b')), 1, 5),
    (FreeGroup(2, ('a', 'b')), 2, 17),
    (FreeAbelian(2, ('a', 'b')), 1, 5),
    (FreeAbelian(2, ('a', 'b')), 2, 13),
    (FreeAbelian(1, ('t',)), 3, 7),
    (Lamplighter(), 1, 4),
    (cyclic_group(3), 4, 3),
])
def test_ball_sizes(oracle, radius, size):
    """ Test the number of elements of some balls
    """
    assert ball(oracle, r=radius).size == size


def test_ball_layout(z2):
    """ Test that ball identifiers follow breadth-first order over the sorted generators
    """
    window = ball(z2, r=1)
    assert window.words == ((), ('A',), ('B',), ('a',), ('b',))
    assert window.distances == (0, 1, 1, 1, 1)
    assert window.step(0, 'a') == 3
    assert window.step(3, 'a') is None
    assert window.step(3, '1') == 3
    assert window.id_of((0, 1)) == 4
    assert ball(z2, r=2).neighborhood(0, 1) == [0, 1, 2, 3, 4]


def test_ball_errors(f2):
    """ Test that a ball needs a non-negative radius and a generating set closed under inverses
    """
    with pytest.raises(PresentationError):
        ball(f2, r=-1)
    with pytest.raises(PresentationError):
        ball(f2, generators=['a'], r=1)
