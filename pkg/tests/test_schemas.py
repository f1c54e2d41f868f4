""" Test the different scenarios of schemas.py
"""
import pytest

from sft_lift import schemas, zoo
from sft_lift.exceptions import SchemaError
from sft_lift.freqlin import frequency_probe
from sft_lift.groups import ball, cyclic_group
from sft_lift.lift import CoordinateShift
from sft_lift.quotients import torus


def test_validate_errors():
    """ Test the documents refused before any construction
    """
    with pytest.raises(SchemaError):
        schemas.validate([1, 2])
    with pytest.raises(SchemaError):
        schemas.validate({'schema': 'sft.v9'})
    with pytest.raises(SchemaError):
        schemas.validate({'schema': 'group.v1'}, 'sft.v1')
    with pytest.raises(SchemaError):
        schemas.validate({'schema': 'quotient.v1', 'degree': 0, 'perms': {}})


def test_extra_fields_are_refused(golden_mean):
    document = schemas.sft_to_json(golden_mean)
    document['comment'] = 'no two adjacent 1'
    with pytest.raises(SchemaError):
        schemas.sft_from_json(document)


def test_parse():
    assert schemas.parse('{"schema": "cert.v1"}') == {'schema': 'cert.v1'}
    with pytest.raises(SchemaError):
        schemas.parse('{"schema": ')


@pytest.mark.parametrize('name', ['f2', 'z2', 'bs12', 'heisenberg', 'lamplighter', 'c3', 'f2xz'])
def test_group_round_trip(name):
    """ Test that a group document rebuilds the same group
    """
    document = schemas.group_to_json(zoo.lookup(name, 'group'))
    schemas.validate(document)
    assert schemas.group_to_json(schemas.group_from_json(document)) == document


def test_finite_group_keeps_generator_order():
    """ Test that the generators of a finite group come back in their declared order
    """
    c3 = cyclic_group(3)
    document = schemas.group_to_json(c3)
    assert [g['name'] for g in document['generators']] == ['a', 'A']
    assert schemas.group_from_json(document).names == c3.names


def test_group_generator_mismatch(z2):
    """ Test that declared generators must be the ones of the strategy
    """
    document = schemas.group_to_json(z2)
    document['generators'] = list(reversed(document['generators']))
    with pytest.raises(SchemaError):
        schemas.group_from_json(document)


def test_group_by_name():
    assert schemas.group_from_json('z').names == ('t', 'T')


@pytest.mark.parametrize('name', ['piantadosi-f2', 'paradoxical-f2', 'mod3-lift-z2', 'golden-mean-z'])
def test_sft_round_trip(name):
    """ Test that pattern and checker constraints survive their JSON form
    """
    document = schemas.sft_to_json(zoo.lookup(name, 'sft'))
    rebuilt = schemas.sft_from_json(document)
    assert rebuilt.name == name
    assert schemas.sft_to_json(rebuilt) == document


def test_sft_semantic_errors(golden_mean):
    """ Test that unknown symbols and generators are schema errors
    """
    document = schemas.sft_to_json(golden_mean)
    document['constraints'][0]['pattern'][0][1] = 5
    with pytest.raises(SchemaError):
        schemas.sft_from_json(document)

    document = schemas.sft_to_json(golden_mean)
    document['constraints'][0]['pattern'][1][0] = ['u']
    with pytest.raises(SchemaError):
        schemas.sft_from_json(document)


def test_liftspec_round_trip():
    spec = zoo.lookup('mod3-liftspec-z2', 'liftspec')
    document = schemas.liftspec_to_json(spec)
    assert schemas.liftspec_to_json(schemas.liftspec_from_json(document)) == document

    document['s_g'] = ['a', 'c']
    with pytest.raises(SchemaError):
        schemas.liftspec_from_json(document)


def test_tla_round_trip(z2):
    """ Test that the labels of an action are written as read-back words
    """
    data = CoordinateShift(z2, ('a',)).to_finite_data(ball(z2, r=2))
    document = schemas.tla_to_json(data)
    assert document['radius'] == 2
    assert [[], 't', 'a'] in document['labels']
    assert schemas.tla_from_json(document).labels == data.labels


def test_quotient_round_trip(z2):
    q = torus(z2, (2, 3))
    assert schemas.quotient_from_json(schemas.quotient_to_json(q)) == q
    with pytest.raises(SchemaError):
        schemas.quotient_from_json({'schema': 'quotient.v1', 'degree': 2, 'perms': {'a': [0, 0]}})


def test_other_documents_validate(z2, piantadosi_z2):
    """ Test that balls, frequency reports and run manifests match their schemas
    """
    schemas.validate(schemas.ball_to_json(ball(z2, r=1), z2), 'ball.v1')
    schemas.validate(frequency_probe(piantadosi_z2).to_json(), 'freq.v1')
    manifest = schemas.run_manifest('ball', {'group': '0' * 64}, {'radius': 1}, '5 elements',
                                    '2024-01-01T00:00:00+00:00', 0.01)
    schemas.validate(manifest, 'manifest.v1')
    assert 'output_digest' not in manifest
