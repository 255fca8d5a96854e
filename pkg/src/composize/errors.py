"""Exception types shared across the package."""


class CompositeError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "error"


class InvalidRate(CompositeError):
    """An event rate (given or implied) left the open interval (0, 1)."""

    code = "rate.invalid"


class InvalidEffect(CompositeError):
    """Effect specification is unusable (implied rate out of range, or wrong direction
    for a superiority design)."""

    code = "effect.invalid"


class NullEffect(CompositeError):
    """The composite effect vanished; no finite sample size exists."""

    code = "effect.null"


class InfeasibleCorrelation(CompositeError):
    """Correlation incompatible with the margins (joint cell probability out of range)."""

    code = "infeasible.correlation"


class DomainError(CompositeError):
    """Argument outside the mathematical domain of a function."""

    code = "domain.error"
