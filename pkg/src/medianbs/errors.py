"""Exception types shared across the package."""


class MedianBSError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(MedianBSError, ValueError):
    """One or more input fields violate their invariants.

    ``fields`` names the offending fields so callers can report them.
    """

    def __init__(self, message: str, fields: tuple[str, ...] = ()):
        super().__init__(message)
        self.fields = fields


class DomainError(MedianBSError, ValueError):
    """An argument lies outside a function's mathematical domain."""


class DegenerateLawError(MedianBSError):
    """Operation undefined for a point-mass (zero-scale) terminal law."""


class DegenerateCaseError(MedianBSError):
    """d1/d2 are undefined (sigma*sqrt(tau) = 0 or strike = 0).

    Internal signal; the pricers catch it and fall back to explicit
    limit formulas, so it never reaches CLI users.
    """


class TailUnderflowError(MedianBSError):
    """Exercise probability below 1e-300; the strike is too deep
    out of the money for double precision."""


class QuadratureError(MedianBSError):
    """Numeric integration failed to reach the requested tolerance."""

    def __init__(self, message: str, achieved: float, target: float):
        super().__init__(message)
        self.achieved = achieved
        self.target = target


class SupportTooLargeError(MedianBSError):
    """Exact enumeration would exceed the outcome budget; use Monte Carlo."""


class InsufficientExceedancesError(MedianBSError):
    """Too few sample values above the strike for a median estimate."""

    def __init__(self, message: str, count: int):
        super().__init__(message)
        self.count = count


class CurveError(MedianBSError):
    """Some grid points of a price curve failed; carries the failures."""

    def __init__(self, message: str, failures: list[tuple[float, Exception]]):
        super().__init__(message)
        self.failures = failures
