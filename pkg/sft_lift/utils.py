""" The different utility functions available """
import hashlib
import json
import os
import tempfile
from typing import Any


def canonical_json(document: Any) -> str:
    """ Serializes a JSON-able document canonically

    Keys are sorted and separators are compact, so two equal documents always give
    byte-identical strings. This is what makes certificates reproducible.
    """
    return json.dumps(document, sort_keys=True, separators=(',', ':'), ensure_ascii=False)


def digest(document: Any) -> str:
    """ Returns the SHA-256 content hash of the canonical JSON of a document """
    return hashlib.sha256(canonical_json(document).encode('utf-8')).hexdigest()


def atomic_write(path: str, text: str) -> None:
    """ Writes `text` to `path` atomically

    The content goes to a temporary file in the same directory which then replaces
    the target, so readers never observe a half-written certificate.
    """
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(prefix='.sft-lift-', dir=directory)
    try:
        with os.fdopen(fd, 'w', encoding='utf-8') as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise


def format_word(word) -> str:
    """ Human readable rendering of a word, 'ε' for the empty one """
    return '·'.join(word) if word else 'ε'
