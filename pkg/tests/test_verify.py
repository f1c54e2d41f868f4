""" Test the different scenarios of verify.py
"""
import copy

import pytest

from sft_lift.exceptions import SchemaError
from sft_lift.freqlin import frequency_probe
from sft_lift.groups import ball
from sft_lift.lift import CoordinateShift
from sft_lift.schemas import sft_to_json, tla_to_json
from sft_lift.solver import aperiodicity_probe, emptiness_probe, tla_probe
from sft_lift.verify import verify_certificate


@pytest.fixture()
def empty_certificate(piantadosi_z2, limiter):
    return emptiness_probe(piantadosi_z2, 3, limiter).to_json()


@pytest.fixture()
def witness_certificate(piantadosi_f2, limiter):
    return emptiness_probe(piantadosi_f2, 3, limiter).to_json()


def test_accepts_refutation(empty_certificate, piantadosi_z2):
    """ Test that the replayed refutation of the Piantadosi constraints on ℤ² is accepted
    """
    verification = verify_certificate(empty_certificate, sft_to_json(piantadosi_z2))
    assert verification.kind == 'EmptyAtRadius'
    assert verification.ok
    assert verification.reasons == ()


def test_accepts_witness(witness_certificate, piantadosi_f2):
    """ Test that a coloring of a ball of F_2 is accepted
    """
    assert verify_certificate(witness_certificate, sft_to_json(piantadosi_f2)).ok


@pytest.mark.parametrize('m_max,kind', [
    (3, 'PeriodicPoint'),
    (2, 'NoPeriodicPointUpTo'),
])
def test_accepts_periodic_outcomes(mod3_z, limiter, m_max, kind):
    """ Test both outcomes of the search on quotients of ℤ
    """
    certificate = aperiodicity_probe(mod3_z, m_max, limiter).to_json()
    verification = verify_certificate(certificate, sft_to_json(mod3_z))
    assert verification.kind == kind
    assert verification.ok


def test_accepts_frequency_infeasibility(piantadosi_z2):
    """ Test that the Farkas combination of the Piantadosi frequency system is re-multiplied and accepted
    """
    certificate = frequency_probe(piantadosi_z2).certificate.to_json()
    assert verify_certificate(certificate, sft_to_json(piantadosi_z2)).ok


def test_accepts_translation_like_action(z2):
    """ Test that a TlaVerified certificate is checked against the labels it was computed on
    """
    shift = CoordinateShift(z2, ('a',))
    certificate = tla_probe(shift, ball(z2, r=3), 3).to_json()
    subject = tla_to_json(shift.to_finite_data(ball(z2, r=6)))
    assert verify_certificate(certificate, subject).ok


def test_rejects_other_subject(empty_certificate, piantadosi_f2):
    """ Test that a certificate does not vouch for another SFT
    """
    verification = verify_certificate(empty_certificate, sft_to_json(piantadosi_f2))
    assert not verification.ok
    assert 'digest' in verification.reasons[0]


def test_rejects_changed_digest(empty_certificate, piantadosi_z2):
    tampered = dict(empty_certificate, inputs_digest='0' * 64)
    assert not verify_certificate(tampered, sft_to_json(piantadosi_z2)).ok


def test_rejects_changed_witness(witness_certificate, piantadosi_f2):
    """ Test that a foreign symbol in a witness is caught
    """
    tampered = copy.deepcopy(witness_certificate)
    tampered['payload']['witness']['assignment'][0] = 7
    verification = verify_certificate(tampered, sft_to_json(piantadosi_f2))
    assert not verification.ok
    assert any('Cell 0' in reason for reason in verification.reasons)


def test_rejects_incomplete_proof(empty_certificate, piantadosi_z2):
    """ Test that a branch missing one value of its domain is caught
    """
    tampered = copy.deepcopy(empty_certificate)
    proof = tampered['payload']['proof']
    assert 'children' in proof
    proof['children'].pop()
    verification = verify_certificate(tampered, sft_to_json(piantadosi_z2))
    assert not verification.ok
    assert any('does not cover' in reason for reason in verification.reasons)


def test_rejects_flipped_farkas(piantadosi_z2):
    """ Test that negated multipliers no longer certify infeasibility
    """
    certificate = frequency_probe(piantadosi_z2).certificate.to_json()
    tampered = copy.deepcopy(certificate)
    for value in tampered['payload']['farkas']:
        value['num'] = str(-int(value['num']))
    assert not verify_certificate(tampered, sft_to_json(piantadosi_z2)).ok


def test_rejects_malformed_certificate(piantadosi_z2):
    with pytest.raises(SchemaError):
        verify_certificate({'schema': 'cert.v1', 'kind': 'Proven'}, sft_to_json(piantadosi_z2))
