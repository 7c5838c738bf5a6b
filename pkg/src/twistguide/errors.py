class TwistguideError(Exception):
    """Base class for all package errors."""


class InvalidDomainError(TwistguideError, ValueError):
    pass


class UnsupportedShapeError(TwistguideError, ValueError):
    pass


class CapacityError(TwistguideError):
    pass


class ConvergenceError(TwistguideError):
    pass


class BasisError(TwistguideError, ValueError):
    pass


class SingularShiftError(TwistguideError, ArithmeticError):
    """Factorization hit a pivot too small to trust; retry with a shifted sigma."""

    def __init__(self, sigma, pivot, scale):
        super().__init__(f"near-singular pivot {pivot:.3e} at sigma={sigma!r} (scale {scale:.3e})")
        self.sigma = sigma
        self.pivot = pivot
        self.scale = scale


class ConfigError(TwistguideError, ValueError):
    def __init__(self, message, line=None, key=None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.key = key
