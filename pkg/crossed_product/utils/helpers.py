"""
Helper utilities for spec files and reports
"""
import json

from cryptography.hazmat.primitives import hashes


def canonical_json(data):
    """
    Serialize data deterministically

    Args:
        data: JSON compatible value

    Returns:
        str: JSON text with sorted keys and no insignificant whitespace
    """
    return json.dumps(data, sort_keys=True, separators=(',', ':'), ensure_ascii=True)


def compute_digest(*parts):
    """
    SHA-256 digest over the canonical JSON of each input

    Args:
        parts: JSON compatible values (spec dicts, option dicts)

    Returns:
        str: 'sha256:' followed by the hex digest
    """
    digest = hashes.Hash(hashes.SHA256())
    for part in parts:
        digest.update(canonical_json(part).encode('utf-8'))
        digest.update(b'\x00')
    return 'sha256:' + digest.finalize().hex()


def parse_json_field(data, default=None):
    """
    Parse a JSON field that may already be decoded

    Args:
        data: JSON string, dict, list or None
        default: Default value when the field is missing

    Returns:
        dict or list: Parsed JSON data or default
    """
    if data is None or data == '':
        return default if default is not None else {}
    if isinstance(data, (dict, list)):
        return data
    return json.loads(data)


def json_path(*parts):
    """
    Render a position inside a spec file, e.g. twist[2][4]

    Args:
        parts: keys (str) and indices (int)

    Returns:
        str: the path
    """
    path = ''
    for part in parts:
        if isinstance(part, int):
            path += f"[{part}]"
        else:
            path += f".{part}" if path else part
    return path or '$'
