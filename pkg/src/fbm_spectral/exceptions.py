"""Exception types raised by the package."""


class SpectralError(Exception):
    """Base class for all package errors."""


class DomainError(SpectralError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class ContractError(SpectralError):
    """An input violates a structural property the operation relies on."""


class NotPositiveSemidefiniteError(SpectralError, ValueError):
    """Cholesky factorization met a pivot that is clearly negative."""


class NumericConsistencyError(SpectralError, ArithmeticError):
    """Two routes to the same quantity disagree beyond round-off."""


class IntegerOrderError(DomainError):
    """A product formula hit a vanishing factor at an integer order.

    Callers should fall back to the integer-order construction instead.
    """
