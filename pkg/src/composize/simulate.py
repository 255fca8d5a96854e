"""Monte Carlo validation of the sizing rules.

Simulates balanced two-arm trials with correlated bivariate binary outcomes,
applies the one-sided composite-endpoint tests (risk difference, log risk
ratio, log odds ratio; pooled or unpooled variance), and estimates empirical
power and type I error over scenario grids.

Randomness is fully reproducible: replication r of a scenario draws from a
Philox4x64-10 bit generator keyed by (seed, scenario coordinates, r), so
results are independent of execution order and worker count.
"""
from __future__ import annotations

import csv
import hashlib
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from ._normal import quantile_normal
from .bounds import bounds
from .composite import (
    ArmRates,
    EffectSpec,
    MarginalSpec,
    RiskRatio,
    joint_table,
    treatment_rates,
)
from .design import DesignSpec, effect_in_measure, n_composite
from .errors import InfeasibleCorrelation, InvalidRate

__all__ = [
    "Scenario",
    "ArmOutcome",
    "SimulationSummary",
    "GridConfig",
    "sample_arm",
    "test_statistic",
    "empirical_rate",
    "feasible_cells",
    "run_grid",
    "write_csv",
    "CSV_COLUMNS",
]

#: Test statistic paired with each effect measure.
STAT_FOR_MEASURE = {"rd": "T", "rr": "Z", "or": "W"}

#: Fixed result-table column order.
CSV_COLUMNS = (
    "p1", "p2", "effect1", "effect2", "measure", "rho_true", "rho_design",
    "variance", "statistic", "n_total", "reps", "seed",
    "empirical_power", "empirical_type1",
)

#: The four design-correlation rules of the reference simulation study:
#: thirds of the upper bound for the categories, or an exact guess of the truth.
DESIGN_RULES = ("weak", "moderate", "strong", "exact")


@dataclass(frozen=True, slots=True)
class Scenario:
    """One simulated trial configuration."""

    control: ArmRates
    effect: EffectSpec
    rho_true: float
    design_rho: float
    d: DesignSpec
    n_total: int

    def __post_init__(self) -> None:
        if self.n_total < 4:
            raise InvalidRate(f"n_total must be at least 4, got {self.n_total!r}")
        b = bounds(MarginalSpec(self.control, self.effect))
        for name, rho in (("rho_true", self.rho_true), ("design_rho", self.design_rho)):
            if not b.lower - 1e-12 <= rho <= b.upper + 1e-12:
                raise InfeasibleCorrelation(
                    f"{name}={rho!r} outside the feasible range "
                    f"({b.lower:.6g}, {b.upper:.6g})"
                )

    @property
    def n_per_group(self) -> int:
        return (self.n_total + 1) // 2


@dataclass(frozen=True, slots=True)
class ArmOutcome:
    """Counts of the four joint component outcomes in one simulated arm."""

    c11: int
    c10: int
    c01: int
    c00: int

    @property
    def n(self) -> int:
        return self.c11 + self.c10 + self.c01 + self.c00

    @property
    def composite_successes(self) -> int:
        return self.c11 + self.c10 + self.c01


@dataclass(frozen=True, slots=True)
class SimulationSummary:
    rejections: int
    reps: int
    empirical_rate: float
    seed: int
    statistic: str
    variance: str


def sample_arm(
    rates: ArmRates, rho: float, n_per_group: int, rng: np.random.Generator
) -> ArmOutcome:
    """Draw one arm's joint outcome counts (multinomial on the 2x2 cells)."""
    if n_per_group < 1:
        raise InvalidRate(f"n_per_group must be at least 1, got {n_per_group!r}")
    cells = joint_table(rates, rho).cells
    counts = rng.multinomial(n_per_group, cells)
    return ArmOutcome(*(int(c) for c in counts))


def _corrected_proportions(
    control: ArmOutcome, treatment: ArmOutcome, needs_failures: bool
) -> tuple[float, float]:
    """Composite proportions, continuity-corrected when a required count is zero.

    The log-scale statistics break down on empty success (or, for the odds
    ratio, failure) counts; in that case add 0.5 to the composite success and
    failure counts of both arms.
    """
    s0, n0 = control.composite_successes, control.n
    s1, n1 = treatment.composite_successes, treatment.n
    zero = s0 == 0 or s1 == 0
    if needs_failures:
        zero = zero or s0 == n0 or s1 == n1
    if zero:
        return (s0 + 0.5) / (n0 + 1.0), (s1 + 0.5) / (n1 + 1.0)
    return s0 / n0, s1 / n1


def _signed_inf(numerator: float) -> float:
    if numerator == 0.0:
        return 0.0
    return math.copysign(math.inf, numerator)


def test_statistic(
    control: ArmOutcome,
    treatment: ArmOutcome,
    stat: str = "T",
    variance: str = "pooled",
    alpha: float = 0.025,
) -> bool:
    """One-sided test decision: True when H0 (no risk reduction) is rejected.

    Rejects when the statistic falls below -z_alpha. stat selects the scale:
    "T" for the composite risk difference, "Z" for the log risk ratio, "W" for
    the log odds ratio.
    """
    n0, n1 = control.n, treatment.n
    if n0 < 1 or n1 < 1:
        raise InvalidRate("both arms must be nonempty")
    pooled = variance == "pooled"
    if stat == "T":
        p0, p1 = control.composite_successes / n0, treatment.composite_successes / n1
        num = p1 - p0
        if pooled:
            pbar = (control.composite_successes + treatment.composite_successes) / (n0 + n1)
            var = pbar * (1.0 - pbar) * (1.0 / n0 + 1.0 / n1)
        else:
            var = p0 * (1.0 - p0) / n0 + p1 * (1.0 - p1) / n1
        t = num / math.sqrt(var) if var > 0.0 else _signed_inf(num)
    elif stat == "Z":
        p0, p1 = _corrected_proportions(control, treatment, needs_failures=False)
        num = math.log(p1 / p0)
        if pooled:
            pbar = (p0 + p1) / 2.0
            var = (1.0 - pbar) / pbar * (1.0 / n0 + 1.0 / n1)
        else:
            var = (1.0 - p0) / (p0 * n0) + (1.0 - p1) / (p1 * n1)
        t = num / math.sqrt(var) if var > 0.0 else _signed_inf(num)
    elif stat == "W":
        p0, p1 = _corrected_proportions(control, treatment, needs_failures=True)
        num = math.log((p1 / (1.0 - p1)) / (p0 / (1.0 - p0)))
        if pooled:
            pbar = (p0 + p1) / 2.0
            var = (1.0 / (pbar * (1.0 - pbar))) * (1.0 / n0 + 1.0 / n1)
        else:
            var = 1.0 / (n0 * p0 * (1.0 - p0)) + 1.0 / (n1 * p1 * (1.0 - p1))
        t = num / math.sqrt(var) if var > 0.0 else _signed_inf(num)
    else:
        raise InvalidRate(f"unknown statistic {stat!r}")
    return t < -quantile_normal(1.0 - alpha)


def _decide_batch(
    s0: np.ndarray, s1: np.ndarray, n0: int, n1: int,
    stat: str, variance: str, alpha: float,
) -> np.ndarray:
    """Vectorized test_statistic over arrays of composite success counts.

    Must stay decision-for-decision identical to the scalar function; the test
    suite enforces the parity.
    """
    s0 = s0.astype(np.float64)
    s1 = s1.astype(np.float64)
    pooled = variance == "pooled"
    if stat == "T":
        p0, p1 = s0 / n0, s1 / n1
        num = p1 - p0
        if pooled:
            pbar = (s0 + s1) / (n0 + n1)
            var = pbar * (1.0 - pbar) * (1.0 / n0 + 1.0 / n1)
        else:
            var = p0 * (1.0 - p0) / n0 + p1 * (1.0 - p1) / n1
    elif stat in ("Z", "W"):
        zero = (s0 == 0.0) | (s1 == 0.0)
        if stat == "W":
            zero |= (s0 == n0) | (s1 == n1)
        p0 = np.where(zero, (s0 + 0.5) / (n0 + 1.0), s0 / n0)
        p1 = np.where(zero, (s1 + 0.5) / (n1 + 1.0), s1 / n1)
        if stat == "Z":
            num = np.log(p1 / p0)
            if pooled:
                pbar = (p0 + p1) / 2.0
                var = (1.0 - pbar) / pbar * (1.0 / n0 + 1.0 / n1)
            else:
                var = (1.0 - p0) / (p0 * n0) + (1.0 - p1) / (p1 * n1)
        else:
            num = np.log((p1 / (1.0 - p1)) / (p0 / (1.0 - p0)))
            if pooled:
                pbar = (p0 + p1) / 2.0
                var = (1.0 / (pbar * (1.0 - pbar))) * (1.0 / n0 + 1.0 / n1)
            else:
                var = 1.0 / (n0 * p0 * (1.0 - p0)) + 1.0 / (n1 * p1 * (1.0 - p1))
    else:
        raise InvalidRate(f"unknown statistic {stat!r}")
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(
            var > 0.0,
            num / np.sqrt(var),
            np.where(num == 0.0, 0.0, np.copysign(np.inf, num)),
        )
    return t < -quantile_normal(1.0 - alpha)


def _scenario_key(s: Scenario, seed: int, under_null: bool) -> tuple[np.uint64, np.uint64]:
    e1, e2 = s.effect.values
    raw = "|".join(
        repr(v)
        for v in (
            seed, s.control.p1, s.control.p2, s.effect.measure, e1, e2,
            s.rho_true, s.design_rho, s.d.variance, s.n_total, under_null,
        )
    )
    digest = hashlib.sha256(raw.encode()).digest()
    k0 = int.from_bytes(digest[:8], "little")
    k1 = int.from_bytes(digest[8:16], "little")
    return np.uint64(k0), np.uint64(k1)


def empirical_rate(
    s: Scenario, reps: int, seed: int, under_null: bool = False
) -> SimulationSummary:
    """Rejection rate over reps simulated trials of the scenario.

    under_null replaces the treatment effect with no effect (identical arm
    distributions) while keeping rates, correlation and sample size, turning
    the rate into an empirical type I error. Each (scenario, seed, under_null)
    combination owns a counter-based random stream keyed by its coordinates,
    so results do not depend on evaluation order or worker count.
    """
    if reps < 1:
        raise InvalidRate(f"reps must be at least 1, got {reps!r}")
    control_rates = s.control
    if under_null:
        treat_rates = control_rates
    else:
        treat_rates = treatment_rates(MarginalSpec(control_rates, s.effect))
    cells0 = joint_table(control_rates, s.rho_true).cells
    cells1 = joint_table(treat_rates, s.rho_true).cells
    stat = STAT_FOR_MEASURE[s.d.measure]
    rng = np.random.Generator(np.random.Philox(key=_scenario_key(s, seed, under_null)))
    n_g = s.n_per_group
    counts0 = rng.multinomial(n_g, cells0, size=reps)
    counts1 = rng.multinomial(n_g, cells1, size=reps)
    # Composite successes are everything but the no-event cell (last column).
    rejected = _decide_batch(
        n_g - counts0[:, 3], n_g - counts1[:, 3],
        n_g, n_g, stat, s.d.variance, s.d.alpha,
    )
    rejections = int(rejected.sum())
    return SimulationSummary(
        rejections=rejections,
        reps=reps,
        empirical_rate=rejections / reps,
        seed=seed,
        statistic=stat,
        variance=s.d.variance,
    )


@dataclass(frozen=True, slots=True)
class GridConfig:
    """Scenario grid: cross product of rates, risk-ratio effects and correlations.

    Component 1 is the rarer event; (p1, p2) combinations with p1 >= p2 are
    skipped, as are correlations outside the feasible bounds of a cell.
    """

    p1_values: tuple[float, ...]
    p2_values: tuple[float, ...]
    r1_values: tuple[float, ...]
    r2_values: tuple[float, ...]
    rho_true_values: tuple[float, ...]
    reps: int
    seed: int
    alpha: float = 0.025
    power_target: float = 0.80
    rules: tuple[str, ...] = DESIGN_RULES
    variances: tuple[str, ...] = ("pooled", "unpooled")
    workers: int = 1

    def __post_init__(self) -> None:
        if self.reps < 1:
            raise InvalidRate(f"reps must be at least 1, got {self.reps!r}")
        if self.workers < 1:
            raise InvalidRate(f"workers must be at least 1, got {self.workers!r}")
        for rule in self.rules:
            if rule not in DESIGN_RULES:
                raise InvalidRate(f"unknown design rule {rule!r}")


def feasible_cells(
    config: GridConfig,
) -> list[tuple[ArmRates, RiskRatio, float]]:
    """Feasible (rates, effect, rho_true) cells of the grid, in deterministic order."""
    cells = []
    for p1 in config.p1_values:
        for p2 in config.p2_values:
            if p1 >= p2:
                continue
            for r1 in config.r1_values:
                for r2 in config.r2_values:
                    rates = ArmRates(p1, p2)
                    effect = RiskRatio(r1, r2)
                    b = bounds(MarginalSpec(rates, effect))
                    for rho in config.rho_true_values:
                        if b.lower < rho < b.upper:
                            cells.append((rates, effect, rho))
    return cells


def _design_rho_for_rule(rule: str, upper: float, rho_true: float) -> float:
    if rule == "weak":
        return upper / 3.0
    if rule == "moderate":
        return 2.0 * upper / 3.0
    if rule == "strong":
        return upper
    return rho_true


def _row_specs(config: GridConfig) -> list[tuple]:
    specs = []
    for rates, effect, rho_true in feasible_cells(config):
        upper = bounds(MarginalSpec(rates, effect)).upper
        for rule in config.rules:
            design_rho = _design_rho_for_rule(rule, upper, rho_true)
            for variance in config.variances:
                for measure in ("rd", "rr", "or"):
                    specs.append(
                        (rates.p1, rates.p2, effect.r1, effect.r2, measure,
                         rho_true, design_rho, variance, config.alpha,
                         config.power_target, config.reps, config.seed)
                    )
    # lexicographic in the CSV's scenario-coordinate columns
    specs.sort()
    return specs


def _run_row(spec: tuple) -> dict:
    (p1, p2, r1, r2, measure, rho_true, design_rho, variance, alpha,
     power_target, reps, seed) = spec
    rates = ArmRates(p1, p2)
    base = MarginalSpec(rates, RiskRatio(r1, r2))
    d = DesignSpec(alpha, power_target, measure, variance)
    effect = effect_in_measure(base, measure)
    n_total = n_composite(MarginalSpec(rates, effect), design_rho, d).n_total
    scenario = Scenario(
        control=rates, effect=effect, rho_true=rho_true,
        design_rho=design_rho, d=d, n_total=n_total,
    )
    power_summary = empirical_rate(scenario, reps, seed, under_null=False)
    null_summary = empirical_rate(scenario, reps, seed, under_null=True)
    return {
        "p1": p1, "p2": p2, "effect1": r1, "effect2": r2, "measure": measure,
        "rho_true": rho_true, "rho_design": design_rho, "variance": variance,
        "statistic": power_summary.statistic, "n_total": n_total, "reps": reps,
        "seed": seed, "empirical_power": power_summary.empirical_rate,
        "empirical_type1": null_summary.empirical_rate,
    }


def run_grid(config: GridConfig) -> list[dict]:
    """Simulate every feasible grid cell under each design rule.

    Returns one row per (cell, rule, variance, statistic) with empirical power
    and type I error; rows are sorted by their scenario coordinates and the
    output is identical for any worker count.
    """
    specs = _row_specs(config)
    if config.workers == 1:
        return [_run_row(s) for s in specs]
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        return list(pool.map(_run_row, specs, chunksize=8))


def write_csv(rows: Iterable[dict], path: str) -> None:
    """Write result rows in the fixed column order."""
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(CSV_COLUMNS))
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _csv_cell(row[k]) for k in CSV_COLUMNS})


def _csv_cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)
