"""Exception hierarchy."""


class BitangentError(Exception):
    """Base class for all package errors."""


class InputError(BitangentError, ValueError):
    """Malformed or out-of-contract input (CLI exit code 2)."""


class NotSmoothError(BitangentError):
    pass


class LineInCurveError(BitangentError):
    pass


class GenericityError(BitangentError):
    """No admissible random coordinate change was found within the retry cap."""


class UndecidableError(BitangentError):
    """A sign could not be decided before the precision cap."""

    def __init__(self, message: str = "undecidable at cap"):
        super().__init__(message)


class HypothesisError(BitangentError):
    """A geometric hypothesis (e.g. Z disjoint from the line at infinity) fails."""


class NonSimpleZeroError(BitangentError):
    def __init__(self, message: str = "non-simple zero"):
        super().__init__(message)


class NotABitangentError(BitangentError):
    pass


class DegenerateError(BitangentError):
    pass
