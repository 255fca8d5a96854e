"""Sample size and power for one-sided two-proportion tests on the composite endpoint.

All designs are balanced two-arm superiority trials targeting risk reduction,
tested one-sided at level alpha with either a pooled or an unpooled variance
estimate, for one of three effect measures: risk difference, risk ratio (log
scale), or odds ratio (log scale).

The raw total sample size has the common form

    n = 2 * (z_alpha * A + z_beta * B)^2 / E^2

where E is the composite effect on the analysis scale and (A, B) are the
null/alternative standard-deviation factors of the chosen measure; the pooled
A replaces per-arm rates with their average, the unpooled one sets A = B.
Power at a given n follows by solving the same relation for z_beta.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from ._normal import cdf_normal, quantile_normal
from .bounds import (
    CorrelationBounds,
    CorrelationCategory,
    RateIntervals,
    bounds,
    category_interval,
    robust_bounds,
)
from .composite import (
    ArmRates,
    EffectSpec,
    MarginalSpec,
    OddsRatio,
    RiskDifference,
    RiskRatio,
    composite_effect,
    composite_rate,
    treatment_rates,
)
from .errors import InfeasibleCorrelation, InvalidEffect, InvalidRate, NullEffect

__all__ = [
    "DesignSpec",
    "SampleSizeResult",
    "Recommendation",
    "quantile_normal",
    "cdf_normal",
    "ss_from_composite",
    "n_composite",
    "power",
    "recommend",
    "sample_size_interval",
    "rho_curve",
    "effect_in_measure",
]

#: Composite effects smaller than this (absolute, on the analysis scale) are
#: treated as no effect: the implied n grows without bound.
NULL_EFFECT_TOL = 1e-10

_MEASURES = ("rd", "rr", "or")
_VARIANCES = ("pooled", "unpooled")


@dataclass(frozen=True, slots=True)
class DesignSpec:
    """Test-level design parameters."""

    alpha: float
    power_target: float
    measure: str
    variance: str

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 0.5:
            raise InvalidRate(f"alpha must lie in (0, 0.5), got {self.alpha!r}")
        if not 0.5 < self.power_target < 1.0:
            raise InvalidRate(
                f"power_target must lie in (0.5, 1), got {self.power_target!r}"
            )
        if self.measure not in _MEASURES:
            raise InvalidRate(f"measure must be one of {_MEASURES}, got {self.measure!r}")
        if self.variance not in _VARIANCES:
            raise InvalidRate(
                f"variance must be one of {_VARIANCES}, got {self.variance!r}"
            )


@dataclass(frozen=True, slots=True)
class SampleSizeResult:
    n_total_raw: float
    n_total: int
    n_per_group: int
    design_rho_used: float
    achieved_power_at_design: float


@dataclass(frozen=True, slots=True)
class Recommendation:
    category: CorrelationCategory
    rho_interval: tuple[float, float]
    sample_size: SampleSizeResult
    power_range: tuple[float, float]


def effect_in_measure(spec: MarginalSpec, measure: str) -> EffectSpec:
    """Re-express the componentwise effect of spec in another measure."""
    if spec.effect.measure == measure:
        return spec.effect
    p1, p2 = spec.control.p1, spec.control.p2
    t = treatment_rates(spec)
    if measure == "rd":
        return RiskDifference(t.p1 - p1, t.p2 - p2)
    if measure == "rr":
        return RiskRatio(t.p1 / p1, t.p2 / p2)
    if measure == "or":
        return OddsRatio(
            (t.p1 / (1.0 - t.p1)) / (p1 / (1.0 - p1)),
            (t.p2 / (1.0 - t.p2)) / (p2 / (1.0 - p2)),
        )
    raise InvalidRate(f"unknown measure {measure!r}")


def _implied_treatment_rate(p0_star: float, effect_star: float, measure: str) -> float:
    if measure == "rd":
        return p0_star + effect_star
    if measure == "rr":
        return p0_star * effect_star
    odds = effect_star * p0_star / (1.0 - p0_star)
    return odds / (1.0 + odds)


def _analysis_effect(effect_star: float, measure: str) -> float:
    """Effect on the analysis scale (identity for rd, log for ratio measures)."""
    if measure == "rd":
        return effect_star
    if effect_star <= 0.0:
        raise InvalidEffect(f"ratio effect must be positive, got {effect_star!r}")
    return math.log(effect_star)


def _sd_factors(p0: float, p1: float, measure: str, variance: str) -> tuple[float, float]:
    """(A, B): standard-deviation factors under H0 (A) and H1 (B)."""
    q0, q1 = 1.0 - p0, 1.0 - p1
    if measure == "rd":
        b = math.sqrt(p0 * q0 + p1 * q1)
    elif measure == "rr":
        b = math.sqrt(q0 / p0 + q1 / p1)
    else:
        b = math.sqrt(1.0 / (p0 * q0) + 1.0 / (p1 * q1))
    if variance == "unpooled":
        return b, b
    pbar = (p0 + p1) / 2.0
    qbar = 1.0 - pbar
    if measure == "rd":
        a = math.sqrt(2.0 * pbar * qbar)
    elif measure == "rr":
        a = math.sqrt(2.0 * qbar / pbar)
    else:
        a = math.sqrt(2.0 / (pbar * qbar))
    return a, b


def _composite_pair(p0_star: float, effect_star: float, d: DesignSpec) -> tuple[float, float, float]:
    """Validated (p0*, p1*, analysis effect E) triple for the design's measure."""
    if not 0.0 < p0_star < 1.0:
        raise InvalidRate(
            f"composite control rate must lie in (0, 1), got {p0_star!r}"
        )
    p1_star = _implied_treatment_rate(p0_star, effect_star, d.measure)
    if not 0.0 < p1_star < 1.0:
        raise InvalidRate(
            f"implied composite treatment rate {p1_star:.6g} lies outside (0, 1)"
        )
    e = _analysis_effect(effect_star, d.measure)
    if abs(e) < NULL_EFFECT_TOL:
        raise NullEffect(
            "composite effect vanished (no detectable difference on the analysis scale)"
        )
    return p0_star, p1_star, e


def ss_from_composite(p0_star: float, effect_star: float, d: DesignSpec) -> float:
    """Raw (real-valued) total sample size from the composite parameters."""
    p0, p1, e = _composite_pair(p0_star, effect_star, d)
    a, b = _sd_factors(p0, p1, d.measure, d.variance)
    za = quantile_normal(1.0 - d.alpha)
    zb = quantile_normal(d.power_target)
    return 2.0 * (za * a + zb * b) ** 2 / e ** 2


def _power_from_composite(p0_star: float, effect_star: float, n_total: float, d: DesignSpec) -> float:
    p0, p1, e = _composite_pair(p0_star, effect_star, d)
    a, b = _sd_factors(p0, p1, d.measure, d.variance)
    za = quantile_normal(1.0 - d.alpha)
    return cdf_normal((math.sqrt(n_total / 2.0) * abs(e) - za * a) / b)


def _require_superiority(effect: EffectSpec) -> None:
    """Strategy-level guard: sizing assumes a risk-reducing effect on each component."""
    e1, e2 = effect.values
    anchor = 0.0 if effect.measure == "rd" else 1.0
    if not (e1 < anchor and e2 < anchor):
        raise InvalidEffect(
            f"superiority sizing requires risk reduction on both components "
            f"(each effect < {anchor:g}), got ({e1!r}, {e2!r})"
        )


def _check_rho_feasible(spec: MarginalSpec, rho: float) -> None:
    b = bounds(spec)
    if not b.lower - 1e-12 <= rho <= b.upper + 1e-12:
        raise InfeasibleCorrelation(
            f"correlation {rho!r} outside the feasible range "
            f"({b.lower:.6g}, {b.upper:.6g}) for these margins"
        )


def _composite_params(spec: MarginalSpec, rho: float, d: DesignSpec) -> tuple[float, float]:
    """(composite control rate, composite effect) in the design's measure."""
    sized = MarginalSpec(spec.control, effect_in_measure(spec, d.measure))
    return composite_rate(spec.control, rho), composite_effect(sized, rho)


def n_composite(spec: MarginalSpec, rho: float, d: DesignSpec) -> SampleSizeResult:
    """Total sample size at a fixed correlation.

    Ceils the raw value (total and per-group separately) and reports the power
    the ceiled total achieves back at the design point.
    """
    _require_superiority(spec.effect)
    _check_rho_feasible(spec, rho)
    p0_star, effect_star = _composite_params(spec, rho, d)
    raw = ss_from_composite(p0_star, effect_star, d)
    n_total = math.ceil(raw)
    achieved = _power_from_composite(p0_star, effect_star, n_total, d)
    return SampleSizeResult(
        n_total_raw=raw,
        n_total=n_total,
        n_per_group=math.ceil(raw / 2.0),
        design_rho_used=rho,
        achieved_power_at_design=achieved,
    )


def power(spec: MarginalSpec, rho: float, n_total: float, d: DesignSpec) -> float:
    """Probability of rejecting H0 at the given total sample size."""
    if n_total < 2:
        raise InvalidRate(f"n_total must be at least 2, got {n_total!r}")
    _check_rho_feasible(spec, rho)
    p0_star, effect_star = _composite_params(spec, rho, d)
    return _power_from_composite(p0_star, effect_star, n_total, d)


_SWEEP_POINTS = 11  # interval endpoints plus a 9-point interior guard


def _power_over_interval(
    spec: MarginalSpec, rho_lo: float, rho_hi: float, n_total: int, d: DesignSpec
) -> tuple[float, float]:
    values = []
    for k in range(_SWEEP_POINTS):
        rho = rho_lo + (rho_hi - rho_lo) * k / (_SWEEP_POINTS - 1)
        values.append(power(spec, rho, n_total, d))
    return min(values), max(values)


def _sizing_corner(intervals: RateIntervals, measure: str) -> ArmRates:
    # Risk difference is worst (largest n) at the upper rate corner; the ratio
    # measures reverse and peak at the lower corner.
    return intervals.high_corner if measure == "rd" else intervals.low_corner


def recommend(
    spec_or_intervals: "MarginalSpec | RateIntervals",
    category: CorrelationCategory,
    d: DesignSpec,
    effect: EffectSpec | None = None,
) -> Recommendation:
    """Category-based sizing under correlation (and optional rate) uncertainty.

    The design correlation is the category's upper endpoint. With point rates
    the trial is sized at those rates; with rate intervals it is sized at the
    worst-case corner for the chosen measure, and the correlation categories
    are derived from the robust bounds. The reported power range spans the
    category's correlation interval: its low end is the guaranteed power at the
    sizing rates, its high end the most favorable combination of rate corner
    and correlation.
    """
    if isinstance(spec_or_intervals, RateIntervals):
        if effect is None:
            raise InvalidEffect("rate intervals require an explicit effect")
        _require_superiority(effect)
        intervals = spec_or_intervals
        rb = robust_bounds(intervals, effect)
        rho_lo, rho_hi = category_interval(rb.as_bounds, category)
        sizing_spec = MarginalSpec(_sizing_corner(intervals, d.measure), effect)
        corner_specs = [
            MarginalSpec(intervals.low_corner, effect),
            MarginalSpec(intervals.high_corner, effect),
        ]
    else:
        spec = spec_or_intervals
        _require_superiority(spec.effect)
        rho_lo, rho_hi = category_interval(bounds(spec), category)
        sizing_spec = spec
        corner_specs = [spec]

    result = n_composite(sizing_spec, rho_hi, d)
    p_lo, p_hi = _power_over_interval(sizing_spec, rho_lo, rho_hi, result.n_total, d)
    for corner in corner_specs:
        p_hi = max(p_hi, power(corner, rho_lo, result.n_total, d))
    return Recommendation(
        category=category,
        rho_interval=(rho_lo, rho_hi),
        sample_size=result,
        power_range=(p_lo, p_hi),
    )


def sample_size_interval(
    intervals: RateIntervals, effect: EffectSpec, rho: float, d: DesignSpec
) -> tuple[int, int]:
    """Total-n range over the rate-uncertainty rectangle at a fixed correlation.

    The extremes sit at the paired rate corners: the risk difference peaks at
    the upper corner, the ratio measures at the lower one. Returned ascending.
    """
    _require_superiority(effect)
    ns = [
        n_composite(MarginalSpec(corner, effect), rho, d).n_total
        for corner in (intervals.low_corner, intervals.high_corner)
    ]
    return (min(ns), max(ns))


def rho_curve(
    spec_or_intervals: "MarginalSpec | RateIntervals",
    d: DesignSpec,
    n_points: int,
    effect: EffectSpec | None = None,
) -> list[tuple[float, int, int, int]]:
    """(rho, n_low, n_point, n_high) sampled uniformly over the feasible range.

    Point specs yield a degenerate band (n_low = n_point = n_high); interval
    inputs evaluate the band at the rate corners and the point value at the
    interval midpoints.
    """
    if n_points < 2:
        raise InvalidRate(f"n_points must be at least 2, got {n_points!r}")
    if isinstance(spec_or_intervals, RateIntervals):
        if effect is None:
            raise InvalidEffect("rate intervals require an explicit effect")
        intervals = spec_or_intervals
        rb = robust_bounds(intervals, effect)
        rho_lo, rho_hi = rb.lower, rb.upper
        mid_spec = MarginalSpec(intervals.midpoint, effect)

        def row(rho: float) -> tuple[float, int, int, int]:
            n_low, n_high = sample_size_interval(intervals, effect, rho, d)
            return (rho, n_low, n_composite(mid_spec, rho, d).n_total, n_high)

    else:
        spec = spec_or_intervals
        _require_superiority(spec.effect)
        b = bounds(spec)
        rho_lo, rho_hi = b.lower, b.upper

        def row(rho: float) -> tuple[float, int, int, int]:
            n = n_composite(spec, rho, d).n_total
            return (rho, n, n, n)

    out = []
    for k in range(n_points):
        rho = rho_lo + (rho_hi - rho_lo) * k / (n_points - 1)
        out.append(row(rho))
    return out
