"""
Configuration for the crossed product engine.
"""
import os
import logging

from .errors import PreconditionError


def setup_logging(name='crossed_product'):
    """Set up logging for the engine"""
    # Get log level from environment variable
    log_level_str = os.getenv('LOG_LEVEL', 'INFO').upper()
    log_level = getattr(logging, log_level_str, None)
    if not isinstance(log_level, int):
        log_level = logging.INFO  # Fallback if invalid level provided

    logger = logging.getLogger(name)

    # Check if logger already has handlers to avoid duplicates
    if not logger.handlers:
        handler = logging.StreamHandler()  # stderr; reports go to stdout
        handler.setLevel(log_level)
        formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
        handler.setFormatter(formatter)
        logger.addHandler(handler)
        logger.setLevel(log_level)

    return logger


logger = setup_logging('crossed_product')

# Degree bounds for every enumeration over "all words"
DEFAULT_DEGREE = 4
MAX_DEGREE = 8

# Witnesses kept per failed check; the pass flag always covers every instance
MAX_WITNESSES = 10

REPORT_SCHEMA_VERSION = 1

# Rewrite strategies for Wick ordering
STRATEGY_LEFTMOST = 'leftmost'
STRATEGY_RIGHTMOST = 'rightmost'

MONOMIAL_ORDER = (
    'length-lexicographic; letters compared by generator index ascending, '
    'A-letter before B-letter at equal index'
)
REWRITE_ORDER = (
    'length-lexicographic over the declared generator order of each quotient '
    'algebra (default: index ascending); the leading word of a rule is its '
    'largest word'
)
VACUUM_NORMALIZATION = (
    '<0|0> = 1 and a_i|0> = 0; the alternative <0|0> = 0, a_i|0> = |0> is '
    'rejected because it breaks adjointness of a_i and a_i^+'
)
INDEX_CONVENTIONS = (
    'twist entries [i, j, k, l, t] mean y^i x^j -> t x^k y^l; operator rows '
    'are output pairs (k, l) and columns input pairs (i, j), flattened '
    'row-major with 1-based generators; transpose is the matrix transpose '
    'in this layout'
)


def conventions():
    """Conventions block embedded in every report"""
    return {
        'monomial_order': MONOMIAL_ORDER,
        'rewrite_order': REWRITE_ORDER,
        'vacuum_normalization': VACUUM_NORMALIZATION,
        'index_conventions': INDEX_CONVENTIONS,
    }


def check_degree(degree, minimum=0):
    """Validate a degree bound before enumerating words"""
    if not isinstance(degree, int) or isinstance(degree, bool):
        raise PreconditionError(f"degree must be an integer, got {degree!r}")
    if degree < minimum:
        raise PreconditionError(f"degree must be at least {minimum}, got {degree}")
    if degree > MAX_DEGREE:
        raise PreconditionError(f"degree {degree} exceeds the cap {MAX_DEGREE}")
    return degree
