"""
Exceptions raised by the crossed product engine.

Every error is a ValueError so callers that only know about bad input keep
working; verifiers never raise on a mathematical failure, they report it.
"""


class CrossedProductError(ValueError):
    """Base class for all engine errors"""


class DimensionError(CrossedProductError):
    """A dimension, index or operator shape does not match"""


class AlphabetError(CrossedProductError):
    """A word mixes alphabets where a single alphabet is required"""


class PreconditionError(CrossedProductError):
    """An operation was called outside its precondition"""


class SpecError(CrossedProductError):
    """
    A spec file could not be parsed or validated.

    Args:
        errors: list of human readable messages, each prefixed with the
            position (JSON path) of the offending value
    """

    def __init__(self, errors):
        if isinstance(errors, str):
            errors = [errors]
        self.errors = list(errors)
        super().__init__('; '.join(self.errors))


class VerificationAbort(CrossedProductError):
    """A construction stopped because a required identity failed"""

    def __init__(self, identity, message):
        self.identity = identity
        super().__init__(f"{identity}: {message}")
