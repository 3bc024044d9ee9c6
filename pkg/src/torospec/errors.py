"""Exception hierarchy.

Everything raised on purpose by the package derives from :class:`TorospecError`.
Input/domain problems are :class:`DomainError` (CLI exit code 2), numerical
failures are :class:`NumericalError` (CLI exit code 3).
"""


class TorospecError(Exception):
    pass


class DomainError(TorospecError, ValueError):
    pass


class BesselRangeError(DomainError):
    """Order or argument outside the validated evaluation range."""


class ClassificationError(DomainError):
    """A mode label is not legal for the requested cavity family."""


class ForbiddenRegionError(DomainError):
    """Torus with minor radius larger than its major radius."""


class MissingModeError(DomainError, KeyError):
    """A fitted table has no row for the requested mode."""

    def __str__(self):
        return Exception.__str__(self)


class ModeNotFoundError(DomainError, LookupError):
    """The requested mode is not part of the spectrum."""


class InsufficientDataError(DomainError):
    """Too few usable measured lines for a calibration."""


class ParseError(DomainError):
    """Malformed input file or command-line value."""


class NumericalError(TorospecError, ArithmeticError):
    pass


class ConvergenceError(NumericalError):
    pass


class CalibrationError(NumericalError):
    """The calibration objective has no minimum inside the search window."""
