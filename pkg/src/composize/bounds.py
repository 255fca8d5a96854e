"""Feasible correlation range for two binary components, under both arms' margins.

The Pearson correlation between two Bernoulli variables is constrained by their
margins (Frechet-type bounds). A design must respect the constraint in the
control arm and in the treatment arm simultaneously, so the usable range is the
intersection of the two. When only intervals of plausible control rates are
known, robust bounds tighten the range so it stays valid across the whole
uncertainty set.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .composite import ArmRates, EffectSpec, MarginalSpec, treatment_rates
from .errors import InvalidRate

__all__ = [
    "CorrelationBounds",
    "CorrelationCategory",
    "RateIntervals",
    "RobustBounds",
    "bounds",
    "category_interval",
    "design_rho",
    "robust_bounds",
]


@dataclass(frozen=True, slots=True)
class CorrelationBounds:
    """Feasible correlation range (lower, upper) for a marginal specification."""

    lower: float
    upper: float

    def __post_init__(self) -> None:
        if not -1.0 <= self.lower < self.upper <= 1.0:
            raise InvalidRate(
                f"correlation bounds must satisfy -1 <= lower < upper <= 1, "
                f"got ({self.lower!r}, {self.upper!r})"
            )

    @property
    def width(self) -> float:
        return self.upper - self.lower


class CorrelationCategory(enum.Enum):
    WEAK = "weak"
    MODERATE = "moderate"
    STRONG = "strong"
    NO_PRIOR = "no_prior"


@dataclass(frozen=True, slots=True)
class RateIntervals:
    """Plausible control-rate intervals I1 x I2, one per component."""

    i1: tuple[float, float]
    i2: tuple[float, float]

    def __post_init__(self) -> None:
        for name, (low, high) in (("i1", self.i1), ("i2", self.i2)):
            if not 0.0 < low <= high < 1.0:
                raise InvalidRate(
                    f"{name} must satisfy 0 < low <= high < 1, got ({low!r}, {high!r})"
                )

    @property
    def low_corner(self) -> ArmRates:
        return ArmRates(self.i1[0], self.i2[0])

    @property
    def high_corner(self) -> ArmRates:
        return ArmRates(self.i1[1], self.i2[1])

    @property
    def midpoint(self) -> ArmRates:
        return ArmRates((self.i1[0] + self.i1[1]) / 2.0, (self.i2[0] + self.i2[1]) / 2.0)


@dataclass(frozen=True, slots=True)
class RobustBounds:
    """Correlation range valid across the whole rate-uncertainty set."""

    lower: float
    upper: float

    @property
    def as_bounds(self) -> CorrelationBounds:
        return CorrelationBounds(self.lower, self.upper)


def _single_arm_terms(rates: ArmRates) -> tuple[float, float]:
    p1, p2 = rates.p1, rates.p2
    q1, q2 = 1.0 - p1, 1.0 - p2
    low = max(-math.sqrt(p1 * p2 / (q1 * q2)), -math.sqrt(q1 * q2 / (p1 * p2)))
    up = min(math.sqrt(p1 * q2 / (p2 * q1)), math.sqrt(p2 * q1 / (p1 * q2)))
    return low, up


def bounds(spec: MarginalSpec) -> CorrelationBounds:
    """Feasible correlation range honoring the margins of both arms."""
    low0, up0 = _single_arm_terms(spec.control)
    low1, up1 = _single_arm_terms(treatment_rates(spec))
    return CorrelationBounds(max(low0, low1), min(up0, up1))


def category_interval(
    b: CorrelationBounds, category: CorrelationCategory
) -> tuple[float, float]:
    """Split [lower, upper] into weak/moderate/strong thirds.

    Weak is [lower, lower + w/3), moderate the middle third, strong the top
    third including the upper bound; NO_PRIOR spans the whole range.
    """
    third = b.width / 3.0
    if category is CorrelationCategory.WEAK:
        return (b.lower, b.lower + third)
    if category is CorrelationCategory.MODERATE:
        return (b.lower + third, b.lower + 2.0 * third)
    if category is CorrelationCategory.STRONG:
        return (b.lower + 2.0 * third, b.upper)
    return (b.lower, b.upper)


def design_rho(b: CorrelationBounds, category: CorrelationCategory) -> float:
    """Correlation to size at: the category's upper endpoint (worst case within it)."""
    return category_interval(b, category)[1]


def robust_bounds(
    intervals: RateIntervals, effect: EffectSpec, grid_points: int = 33
) -> RobustBounds:
    """Correlation range valid for every plausible rate pair.

    The rate pairs are swept along the diagonal of I1 x I2 (components moving
    from their lower to their upper interval endpoints together) on a uniform
    grid including both corners; the result is the intersection of the bounds
    at every grid point. Raises InvalidEffect if the effect is unusable at any
    grid point.
    """
    if grid_points < 2:
        raise InvalidRate(f"grid_points must be at least 2, got {grid_points!r}")
    (l1, h1), (l2, h2) = intervals.i1, intervals.i2
    lower = -1.0
    upper = 1.0
    for k in range(grid_points):
        t = k / (grid_points - 1)
        spec = MarginalSpec(ArmRates(l1 + t * (h1 - l1), l2 + t * (h2 - l2)), effect)
        b = bounds(spec)
        lower = max(lower, b.lower)
        upper = min(upper, b.upper)
    return RobustBounds(lower, upper)
