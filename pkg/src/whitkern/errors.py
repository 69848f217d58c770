class WhitkernError(Exception):
    """Base class for errors raised by this package."""


class ParameterError(WhitkernError, ValueError):
    pass


class DomainError(WhitkernError, ValueError):
    pass


class DimensionError(WhitkernError, ValueError):
    pass


class ContractError(WhitkernError, ValueError):
    pass


class PrecisionError(WhitkernError, ArithmeticError):
    pass


class SingularityError(WhitkernError, ArithmeticError):
    def __init__(self, message, pivot=None):
        super().__init__(message)
        self.pivot = pivot
