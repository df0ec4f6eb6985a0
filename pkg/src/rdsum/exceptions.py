"""Exception types raised by the numerical routines."""


class DomainError(ValueError):
    """An argument lies outside the domain where the routine is defined."""


class ToleranceNotReached(ArithmeticError):
    """A series or quadrature could not meet the requested tolerance."""


class GuardError(RuntimeError):
    """A work-size guard (table length, tuple count) would be exceeded."""


class ExtrapolationDiverged(ArithmeticError):
    """Successive Richardson estimates failed to contract."""
