"""Exception types raised across the package."""


class WeylError(Exception):
    """Base class for all package errors."""


class InvalidGroupError(WeylError, ValueError):
    pass


class GroupSizeError(WeylError, ValueError):
    pass


class InvalidElementError(WeylError, ValueError):
    pass


class InvalidInputError(WeylError, ValueError):
    pass


class InvalidExponentError(WeylError, ValueError):
    pass


class InvalidWeightError(WeylError, ValueError):
    pass


class NumericalFailureError(WeylError, ArithmeticError):
    pass


class ConfigError(WeylError, ValueError):
    pass


class ReportIOError(WeylError, OSError):
    pass
