"""
Utilities for spec files, reports and exact linear algebra
"""
from .helpers import (
    canonical_json,
    compute_digest,
    parse_json_field,
    json_path
)

# Exports
__all__ = [
    'canonical_json',
    'compute_digest',
    'parse_json_field',
    'json_path'
]
