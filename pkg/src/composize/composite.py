"""Composite-endpoint parameters for two correlated binary components.

A two-arm trial observes two binary events per subject; the composite endpoint
fires when at least one component does. Given the per-component event rates,
a treatment effect on each component (risk difference, risk ratio, or odds
ratio) and the within-arm Pearson correlation between components, this module
derives the joint 2x2 cell probabilities, the composite event rate and the
composite-level treatment effect.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar, Union

from .errors import InfeasibleCorrelation, InvalidEffect, InvalidRate

__all__ = [
    "ArmRates",
    "RiskDifference",
    "RiskRatio",
    "OddsRatio",
    "EffectSpec",
    "MarginalSpec",
    "CorrelationPair",
    "JointTable",
    "joint_table",
    "composite_rate",
    "treatment_rates",
    "composite_effect",
]

#: Tolerance on joint-table cells: values in [-CELL_TOL, 0) are float noise at the
#: feasibility boundary and are clamped to zero; anything further out is infeasible.
CELL_TOL = 1e-12


def _check_rate(name: str, value: float) -> None:
    if not 0.0 < value < 1.0 or math.isnan(value):
        raise InvalidRate(f"{name} must lie strictly inside (0, 1), got {value!r}")


@dataclass(frozen=True, slots=True)
class ArmRates:
    """Marginal event rates (p1, p2) of the two components within one arm."""

    p1: float
    p2: float

    def __post_init__(self) -> None:
        _check_rate("p1", self.p1)
        _check_rate("p2", self.p2)


@dataclass(frozen=True, slots=True)
class RiskDifference:
    """Componentwise risk differences; treatment rate is p + d."""

    d1: float
    d2: float

    measure: ClassVar[str] = "rd"

    def __post_init__(self) -> None:
        for name, d in (("d1", self.d1), ("d2", self.d2)):
            if not -1.0 < d < 1.0 or math.isnan(d):
                raise InvalidEffect(f"{name} must lie in (-1, 1), got {d!r}")

    @property
    def values(self) -> tuple[float, float]:
        return (self.d1, self.d2)


@dataclass(frozen=True, slots=True)
class RiskRatio:
    """Componentwise risk ratios; treatment rate is p * r."""

    r1: float
    r2: float

    measure: ClassVar[str] = "rr"

    def __post_init__(self) -> None:
        for name, r in (("r1", self.r1), ("r2", self.r2)):
            if not r > 0.0 or math.isnan(r) or math.isinf(r):
                raise InvalidEffect(f"{name} must be a positive real, got {r!r}")

    @property
    def values(self) -> tuple[float, float]:
        return (self.r1, self.r2)


@dataclass(frozen=True, slots=True)
class OddsRatio:
    """Componentwise odds ratios; treatment odds are o * p/(1-p)."""

    o1: float
    o2: float

    measure: ClassVar[str] = "or"

    def __post_init__(self) -> None:
        for name, o in (("o1", self.o1), ("o2", self.o2)):
            if not o > 0.0 or math.isnan(o) or math.isinf(o):
                raise InvalidEffect(f"{name} must be a positive real, got {o!r}")

    @property
    def values(self) -> tuple[float, float]:
        return (self.o1, self.o2)


EffectSpec = Union[RiskDifference, RiskRatio, OddsRatio]


@dataclass(frozen=True, slots=True)
class MarginalSpec:
    """Control-arm rates plus a componentwise treatment effect.

    Validates on construction that the implied treatment-arm rates stay inside
    (0, 1); the effect direction is deliberately unconstrained here.
    """

    control: ArmRates
    effect: EffectSpec

    def __post_init__(self) -> None:
        treatment_rates(self)  # raises InvalidEffect when an implied rate escapes (0, 1)


@dataclass(frozen=True, slots=True)
class CorrelationPair:
    """Component correlation per arm; most designs assume a common value."""

    rho0: float
    rho1: float

    @classmethod
    def common(cls, rho: float) -> "CorrelationPair":
        return cls(rho, rho)


@dataclass(frozen=True, slots=True)
class JointTable:
    """Cell probabilities of the component pair (X1, X2) within one arm."""

    p11: float
    p10: float
    p01: float
    p00: float

    @property
    def cells(self) -> tuple[float, float, float, float]:
        return (self.p11, self.p10, self.p01, self.p00)


def joint_table(rates: ArmRates, rho: float) -> JointTable:
    """Invert the Pearson correlation into the 2x2 joint cell probabilities.

    p11 = p1*p2 + rho*sqrt(p1*q1*p2*q2); the remaining cells follow from the
    margins. Raises InfeasibleCorrelation when any cell leaves [0, 1] by more
    than CELL_TOL.
    """
    p1, p2 = rates.p1, rates.p2
    q1, q2 = 1.0 - p1, 1.0 - p2
    p11 = p1 * p2 + rho * math.sqrt(p1 * q1 * p2 * q2)
    p10 = p1 - p11
    p01 = p2 - p11
    p00 = 1.0 - p1 - p2 + p11
    cells = []
    for cell in (p11, p10, p01, p00):
        if cell < -CELL_TOL or cell > 1.0 + CELL_TOL:
            raise InfeasibleCorrelation(
                f"correlation {rho!r} is infeasible for rates ({p1!r}, {p2!r}): "
                f"joint cell probability {cell:.6g} outside [0, 1]"
            )
        cells.append(min(max(cell, 0.0), 1.0))
    return JointTable(*cells)


def composite_rate(rates: ArmRates, rho: float) -> float:
    """Probability that at least one component event occurs in the arm.

    1 - q1*q2 - rho*sqrt(p1*p2*q1*q2); strictly decreasing in rho.
    """
    joint_table(rates, rho)  # feasibility gate
    p1, p2 = rates.p1, rates.p2
    q1, q2 = 1.0 - p1, 1.0 - p2
    return 1.0 - q1 * q2 - rho * math.sqrt(p1 * p2 * q1 * q2)


def treatment_rates(spec: MarginalSpec) -> ArmRates:
    """Apply the componentwise effect to the control rates."""
    p1, p2 = spec.control.p1, spec.control.p2
    effect = spec.effect
    if isinstance(effect, RiskDifference):
        t1, t2 = p1 + effect.d1, p2 + effect.d2
    elif isinstance(effect, RiskRatio):
        t1, t2 = p1 * effect.r1, p2 * effect.r2
    elif isinstance(effect, OddsRatio):
        t1 = _invert_odds(effect.o1 * p1 / (1.0 - p1))
        t2 = _invert_odds(effect.o2 * p2 / (1.0 - p2))
    else:  # pragma: no cover - the union is closed
        raise TypeError(f"unknown effect spec {effect!r}")
    for name, t in (("component 1", t1), ("component 2", t2)):
        if not 0.0 < t < 1.0:
            raise InvalidEffect(
                f"effect implies a treatment rate of {t:.6g} for {name}, outside (0, 1)"
            )
    return ArmRates(t1, t2)


def _invert_odds(odds: float) -> float:
    return odds / (1.0 + odds)


def composite_effect(spec: MarginalSpec, corr: "CorrelationPair | float") -> float:
    """Treatment effect on the composite endpoint, in the measure of spec.effect.

    Computed from the two arms' composite rates: delta = p1* - p0* for risk
    difference, the rate ratio for risk ratio, the odds ratio of the composite
    rates for odds ratio. Accepts a plain float as a common per-arm correlation.
    """
    if not isinstance(corr, CorrelationPair):
        corr = CorrelationPair.common(corr)
    p0_star = composite_rate(spec.control, corr.rho0)
    p1_star = composite_rate(treatment_rates(spec), corr.rho1)
    measure = spec.effect.measure
    if measure == "rd":
        return p1_star - p0_star
    if measure == "rr":
        return p1_star / p0_star
    return (p1_star / (1.0 - p1_star)) / (p0_star / (1.0 - p0_star))
