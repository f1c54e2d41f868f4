""" Test the different scenarios of zoo.py
"""
import pytest

from sft_lift import zoo
from sft_lift.exceptions import IdentityElement, NotFound, PresentationError
from sft_lift.groups import BaumslagSolitar1n, FreeAbelian, WordOracle, ball
from sft_lift.lift import TranslationActionSpec
from sft_lift.schemas import sft_to_json
from sft_lift.sft import Sft
from sft_lift.solver import ADMISSIBLE_UP_TO, Certificate, ColoringWitness, emptiness_probe, sft_digest
from sft_lift.verify import verify_certificate


def test_catalog_names():
    catalog = zoo.standard_catalog()
    assert 'piantadosi-f2' in catalog
    assert 'no-such-entry' not in catalog
    assert catalog.names('action') == ['product-z-z', 'shift-z-on-z2', 'shift-z2-on-z2', 'translation-z-on-f2']
    assert catalog.names('liftspec') == ['mod3-liftspec-z2']
    assert catalog.names() == sorted(catalog.names())


@pytest.mark.parametrize('name', zoo.standard_catalog().names())
def test_catalog_builds_every_entry(name):
    """ Test that every entry builds an object of its kind
    """
    entry = zoo.standard_catalog().entry(name)
    item = zoo.lookup(name, entry.kind)
    expected = {'group': WordOracle, 'action': TranslationActionSpec, 'sft': Sft}.get(entry.kind)
    if expected is not None:
        assert isinstance(item, expected)


def test_catalog_entries_are_fresh():
    """ Test that every lookup builds a new object
    """
    assert zoo.lookup('mod3-z') is not zoo.lookup('mod3-z')


def test_lookup_errors():
    with pytest.raises(NotFound):
        zoo.lookup('no-such-entry')
    with pytest.raises(NotFound):
        zoo.lookup('f2', 'sft')


def test_describe():
    described = zoo.describe()
    assert described['golden-mean-z'] == {'kind': 'sft', 'description': "no two adjacent 1 on ℤ"}
    assert described['z2']['kind'] == 'group'


def test_piantadosi_targets():
    """ Test the groups the Piantadosi constraints can be set on
    """
    assert zoo.piantadosi('F2').name == 'piantadosi-f2'
    assert zoo.piantadosi('z2').oracle.amenable
    with pytest.raises(NotFound):
        zoo.piantadosi('Z3')


def test_mod_shift():
    """ Test that x_{i+1} = x_i + 1 mod n forbids every other successor
    """
    sft = zoo.mod_shift(4)
    assert sft.name == 'mod4-z'
    assert len(sft.constraints) == 12
    with pytest.raises(PresentationError):
        zoo.mod_shift(0)


def test_nonresidual_witness():
    """ Test that the chosen element must not be the identity
    """
    oracle = BaumslagSolitar1n(2)
    assert len(zoo.nonresidual_witness(oracle, ('b',)).constraints) == 3
    with pytest.raises(IdentityElement):
        zoo.nonresidual_witness(oracle, ('b', 'B'))


def test_paradoxical_decomposition(caplog):
    """ Test that a one-sided decomposition is reported
    """
    pd = zoo.ParadoxicalDecomposition({0: (), 1: ('a',)})
    assert pd.indices == (0, 1)
    assert 'both sides of 0' in caplog.text
    with pytest.raises(PresentationError):
        zoo.piece_assignment(pd, FreeAbelian(1, ('a',)), None)


def test_standard_f2_pieces():
    """ Test the piece of a few reduced words
    """
    pd = zoo.standard_f2()
    assert pd.indices == (-2, -1, 0, 1)
    assert [pd.membership(word) for word in [(), ('A', 'A'), ('b', 'A'), ('a', 'b'), ('B',), ('b', 'a')]] == \
        [0, 0, 1, -1, -2, 0]


def test_wang_checkerboard():
    """ Test that every tile forbids a neighbor on each side
    """
    sft = zoo.wang_checkerboard()
    assert sft.alphabet.symbols == (0, 1)
    assert len(sft.constraints) == 4


def test_paradoxical_witnesses_are_verified(f2, limiter):
    """ Test that colorings of the paradoxical SFT, searched or given by the pieces, pass the verifier
    """
    sft = zoo.lookup('paradoxical-f2', 'sft')
    subject = sft_to_json(sft)
    certificate = emptiness_probe(sft, 3, limiter)
    assert certificate.kind == ADMISSIBLE_UP_TO
    assert verify_certificate(certificate.to_json(), subject).ok

    window = ball(f2, r=3)
    witness = ColoringWitness(window, sft.alphabet, zoo.piece_assignment(zoo.standard_f2(), f2, window))
    certificate = Certificate(ADMISSIBLE_UP_TO, {'radius': 3, 'witness': witness.to_json()}, sft_digest(sft),
                              limiter.describe())
    assert verify_certificate(certificate.to_json(), subject).ok
