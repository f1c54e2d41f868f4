""" Test the different scenarios of utils.py
"""
import os

from sft_lift.utils import atomic_write, canonical_json, digest, format_word


def test_canonical_json():
    """ Test that key order and whitespace do not change the canonical form
    """
    assert canonical_json({'b': [1, 2], 'a': 'ℤ'}) == '{"a":"ℤ","b":[1,2]}'
    assert canonical_json({'a': 1, 'b': 2}) == canonical_json({'b': 2, 'a': 1})


def test_digest():
    assert digest({'a': 1, 'b': 2}) == digest({'b': 2, 'a': 1})
    assert digest({'a': 1}) != digest({'a': 2})
    assert len(digest([])) == 64


def test_atomic_write(tmp_path):
    """ Test that the target is replaced and no temporary file is left behind
    """
    target = tmp_path / 'out.json'
    target.write_text('old')
    atomic_write(str(target), '{"new":true}\n')
    assert target.read_text() == '{"new":true}\n'
    assert os.listdir(tmp_path) == ['out.json']


def test_format_word():
    assert format_word(()) == 'ε'
    assert format_word(('a', 'B')) == 'a·B'
