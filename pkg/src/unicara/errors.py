"""Exception hierarchy shared by all solver modules."""


class UnicaraError(Exception):
    """Base class for every error raised by this package."""


class UsageError(UnicaraError, ValueError):
    """Malformed or dimensionally inconsistent input."""


class IntegralityViolation(UnicaraError):
    """A vertex or fixed coordinate came out fractional.

    Raised when a system asserted to be totally unimodular turns out not to be:
    integrality is enforced at runtime rather than trusted.
    """


class UnsupportedUnboundedInput(UnicaraError):
    """The polyhedron is unbounded where a polytope is required."""


class CapExceeded(UnicaraError):
    """A search or enumeration ran past its work cap (not an infeasibility proof)."""
