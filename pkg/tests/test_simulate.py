"""Trial simulator: arm sampling, test decisions, empirical rates, the grid."""

import math

import numpy as np
import pytest

from composize import (
    ArmOutcome,
    ArmRates,
    DesignSpec,
    GridConfig,
    InfeasibleCorrelation,
    InvalidRate,
    MarginalSpec,
    RiskDifference,
    Scenario,
    composite_rate,
    empirical_rate,
    feasible_cells,
    run_grid,
    sample_arm,
    write_csv,
)
from composize.simulate import CSV_COLUMNS, STAT_FOR_MEASURE
from composize.simulate import test_statistic as decide

RD_POOLED = DesignSpec(0.025, 0.80, "rd", "pooled")

CASE_SCENARIO = Scenario(
    control=ArmRates(0.095, 0.137),
    effect=RiskDifference(-0.022, -0.027),
    rho_true=0.30,
    design_rho=0.30,
    d=RD_POOLED,
    n_total=3031,
)


def outcome(successes: int, n: int) -> ArmOutcome:
    """An arm where `successes` subjects had component 1 only."""
    return ArmOutcome(c11=0, c10=successes, c01=0, c00=n - successes)


class TestSampleArm:
    def test_perfect_correlation_never_splits(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            arm = sample_arm(ArmRates(0.2, 0.2), 1.0, 500, rng)
            assert arm.c10 == 0
            assert arm.c01 == 0
            assert arm.n == 500

    def test_mean_composite_rate_matches_formula(self):
        rates, rho, n = ArmRates(0.095, 0.137), 0.3, 100_000
        arm = sample_arm(rates, rho, n, np.random.default_rng(7))
        expected = composite_rate(rates, rho)
        se = math.sqrt(expected * (1 - expected) / n)
        assert abs(arm.composite_successes / n - expected) < 3 * se

    def test_independent_components_uncorrelated(self):
        n = 100_000
        arm = sample_arm(ArmRates(0.3, 0.4), 0.0, n, np.random.default_rng(3))
        p1_hat = (arm.c11 + arm.c10) / n
        p2_hat = (arm.c11 + arm.c01) / n
        r = (arm.c11 / n - p1_hat * p2_hat) / math.sqrt(
            p1_hat * (1 - p1_hat) * p2_hat * (1 - p2_hat)
        )
        assert abs(r) < 3 / math.sqrt(n)

    def test_infeasible_rho(self):
        with pytest.raises(InfeasibleCorrelation):
            sample_arm(ArmRates(0.05, 0.9), 0.9, 100, np.random.default_rng(0))

    def test_empty_arm_rejected(self):
        with pytest.raises(InvalidRate):
            sample_arm(ArmRates(0.2, 0.3), 0.0, 0, np.random.default_rng(0))


class TestTestStatistic:
    def test_identical_arms_accept(self):
        arm = outcome(30, 100)
        for stat in ("T", "Z", "W"):
            for variance in ("pooled", "unpooled"):
                assert decide(arm, arm, stat, variance) is False

    def test_hand_computed_t_pooled(self):
        """Composite 30/100 vs 15/100: z = -0.15 / sqrt(2 * 0.225 * 0.775 / 100)."""
        control, treatment = outcome(30, 100), outcome(15, 100)
        z = (0.15 - 0.30) / math.sqrt(2 * 0.225 * 0.775 / 100)
        assert z < -1.959964  # z is about -2.54
        assert decide(control, treatment, "T", "pooled") is True

    def test_hand_computed_t_pooled_non_rejection(self):
        # 25/100 vs 15/100 gives z about -1.77, short of -1.96
        control, treatment = outcome(25, 100), outcome(15, 100)
        z = (0.15 - 0.25) / math.sqrt(2 * 0.20 * 0.80 / 100)
        assert -1.959964 < z < 0
        assert decide(control, treatment, "T", "pooled") is False

    def test_unpooled_t_matches_direct_formula(self):
        control, treatment = outcome(40, 120), outcome(22, 120)
        p0, p1 = 40 / 120, 22 / 120
        z = (p1 - p0) / math.sqrt(p0 * (1 - p0) / 120 + p1 * (1 - p1) / 120)
        expected = z < -1.959964
        assert decide(control, treatment, "T", "unpooled") is expected

    @pytest.mark.parametrize("stat", ["Z", "W"])
    @pytest.mark.parametrize("variance", ["pooled", "unpooled"])
    def test_zero_treatment_count_is_corrected(self, stat, variance):
        decision = decide(outcome(10, 50), outcome(0, 50), stat, variance)
        assert isinstance(decision, bool)

    def test_w_with_all_successes_is_corrected(self):
        decision = decide(outcome(50, 50), outcome(45, 50), "W", "unpooled")
        assert isinstance(decision, bool)

    def test_t_degenerate_variance(self):
        # all-vs-none leaves zero unpooled variance: sign of the numerator decides
        assert decide(outcome(50, 50), outcome(0, 50), "T", "unpooled") is True
        assert decide(outcome(0, 50), outcome(50, 50), "T", "unpooled") is False
        assert decide(outcome(50, 50), outcome(50, 50), "T", "unpooled") is False

    def test_unknown_statistic(self):
        with pytest.raises(InvalidRate):
            decide(outcome(10, 50), outcome(5, 50), "Q", "pooled")


class TestDecideBatch:
    """The vectorized decision path must agree with the scalar one everywhere."""

    @pytest.mark.parametrize("stat", ["T", "Z", "W"])
    @pytest.mark.parametrize("variance", ["pooled", "unpooled"])
    def test_matches_scalar_on_small_samples(self, stat, variance):
        from composize.simulate import _decide_batch

        n0, n1 = 7, 9
        s0 = np.array([a for a in range(n0 + 1) for _ in range(n1 + 1)])
        s1 = np.array([b for _ in range(n0 + 1) for b in range(n1 + 1)])
        batch = _decide_batch(s0, s1, n0, n1, stat, variance, 0.025)
        for a, b, got in zip(s0, s1, batch):
            expected = decide(outcome(int(a), n0), outcome(int(b), n1), stat, variance)
            assert got == expected, (stat, variance, a, b)

    def test_matches_scalar_on_random_draws(self):
        rng = np.random.default_rng(44)
        for _ in range(50):
            n = int(rng.integers(20, 400))
            s0 = rng.binomial(n, 0.3, size=40)
            s1 = rng.binomial(n, 0.25, size=40)
            for stat in ("T", "Z", "W"):
                for variance in ("pooled", "unpooled"):
                    from composize.simulate import _decide_batch

                    batch = _decide_batch(s0, s1, n, n, stat, variance, 0.025)
                    scalar = [
                        decide(outcome(int(a), n), outcome(int(b), n), stat, variance)
                        for a, b in zip(s0, s1)
                    ]
                    assert batch.tolist() == scalar


class TestEmpiricalRate:
    def test_deterministic_given_seed(self):
        a = empirical_rate(CASE_SCENARIO, 5, seed=123)
        b = empirical_rate(CASE_SCENARIO, 5, seed=123)
        assert a == b

    def test_single_rep_determinism(self):
        a = empirical_rate(CASE_SCENARIO, 1, seed=9)
        b = empirical_rate(CASE_SCENARIO, 1, seed=9)
        assert a.rejections == b.rejections

    def test_power_near_target_when_correctly_specified(self):
        summary = empirical_rate(CASE_SCENARIO, 2000, seed=2026)
        se = math.sqrt(0.8 * 0.2 / 2000)
        assert summary.empirical_rate > 0.80 - 4 * se
        assert summary.statistic == "T"
        assert summary.variance == "pooled"

    def test_type_one_error_near_alpha(self):
        summary = empirical_rate(CASE_SCENARIO, 2000, seed=2026, under_null=True)
        se = math.sqrt(0.025 * 0.975 / 2000)
        assert abs(summary.empirical_rate - 0.025) < 4 * se

    def test_null_and_alternative_streams_differ(self):
        a = empirical_rate(CASE_SCENARIO, 50, seed=5)
        b = empirical_rate(CASE_SCENARIO, 50, seed=5, under_null=True)
        assert a.rejections != b.rejections

    def test_scenario_validation(self):
        with pytest.raises(InfeasibleCorrelation):
            Scenario(
                control=ArmRates(0.095, 0.137),
                effect=RiskDifference(-0.022, -0.027),
                rho_true=0.95,
                design_rho=0.30,
                d=RD_POOLED,
                n_total=3031,
            )
        with pytest.raises(InvalidRate):
            Scenario(
                control=ArmRates(0.095, 0.137),
                effect=RiskDifference(-0.022, -0.027),
                rho_true=0.30,
                design_rho=0.30,
                d=RD_POOLED,
                n_total=2,
            )


GRID = GridConfig(
    p1_values=(0.05, 0.1),
    p2_values=(0.1, 0.2),
    r1_values=(0.7,),
    r2_values=(0.8,),
    rho_true_values=(0.1, 0.5),
    reps=30,
    seed=99,
)


class TestGrid:
    def test_reference_grid_has_421_feasible_cells(self):
        """The published simulation grid, counted by bound enumeration."""
        full = GridConfig(
            p1_values=(0.01, 0.05, 0.10),
            p2_values=(0.01, 0.05, 0.10, 0.15, 0.20),
            r1_values=(0.6, 0.7, 0.8),
            r2_values=(0.6, 0.7, 0.8),
            rho_true_values=(0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0),
            reps=1,
            seed=0,
        )
        assert len(feasible_cells(full)) == 421

    def test_rarer_component_ordering_enforced(self):
        cells = feasible_cells(GRID)
        assert all(rates.p1 < rates.p2 for rates, _, _ in cells)

    def test_row_count_and_columns(self):
        rows = run_grid(GRID)
        assert len(rows) == len(feasible_cells(GRID)) * 4 * 2 * 3
        for row in rows:
            assert set(row) == set(CSV_COLUMNS)
            assert row["statistic"] == STAT_FOR_MEASURE[row["measure"]]
            assert 0.0 <= row["empirical_power"] <= 1.0
            assert 0.0 <= row["empirical_type1"] <= 1.0

    def test_rows_sorted_by_scenario_key(self):
        rows = run_grid(GRID)
        keys = [
            (r["p1"], r["p2"], r["effect1"], r["effect2"], r["measure"],
             r["rho_true"], r["rho_design"], r["variance"])
            for r in rows
        ]
        assert keys == sorted(keys)

    def test_worker_count_invariance(self):
        serial = run_grid(GRID)
        parallel = run_grid(
            GridConfig(**{**{f.name: getattr(GRID, f.name) for f in GRID.__dataclass_fields__.values()},
                          "workers": 3})
        )
        assert serial == parallel

    def test_csv_round_trip(self, tmp_path):
        rows = run_grid(GRID)[:4]
        path = tmp_path / "out.csv"
        write_csv(rows, str(path))
        lines = path.read_text().strip().splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert len(lines) == 5
        first = lines[1].split(",")
        assert float(first[0]) == rows[0]["p1"]

    def test_config_validation(self):
        with pytest.raises(InvalidRate):
            GridConfig(**{**_grid_kwargs(), "reps": 0})
        with pytest.raises(InvalidRate):
            GridConfig(**{**_grid_kwargs(), "workers": 0})
        with pytest.raises(InvalidRate):
            GridConfig(**{**_grid_kwargs(), "rules": ("weak", "psychic")})


def _grid_kwargs() -> dict:
    return {f.name: getattr(GRID, f.name) for f in GRID.__dataclass_fields__.values()}
