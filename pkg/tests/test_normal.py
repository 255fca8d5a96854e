"""Normal quantile/CDF checks against frozen high-precision references.

Reference values were computed with mpmath at 60 decimal digits, evaluated at
the exact float64 inputs, then rounded to the nearest float64.
"""

import math

import pytest

from composize._normal import cdf_normal, quantile_normal
from composize.errors import DomainError

QUANTILE_REFS = [
    (1e-12, -7.034483825301132),
    (1e-06, -4.753424308822899),
    (0.025, -1.9599639845400543),
    (0.2, -0.8416212335729142),
    (0.25, -0.6744897501960817),
    (0.5, 0.0),
    (0.75, 0.6744897501960817),
    (0.8, 0.8416212335729144),
    (0.975, 1.9599639845400538),
    (0.999999, 4.753424308817087),
    (0.9999990463256836, 4.7630010342678135),
]

CDF_REFS = [
    (-8.0, 6.220960574271784e-16),
    (-3.5, 0.00023262907903552504),
    (-1.959963984540054, 0.025000000000000012),
    (-0.5, 0.3085375387259869),
    (0.0, 0.5),
    (0.8416212335729143, 0.8),
    (2.5, 0.9937903346742238),
    (6.5, 0.99999999995984),
]


@pytest.mark.parametrize("p,expected", QUANTILE_REFS)
def test_quantile_reference_values(p, expected):
    assert quantile_normal(p) == pytest.approx(expected, abs=1e-13, rel=1e-13)


@pytest.mark.parametrize("x,expected", CDF_REFS)
def test_cdf_reference_values(x, expected):
    assert cdf_normal(x) == pytest.approx(expected, rel=1e-13)


def test_median_is_zero():
    assert quantile_normal(0.5) == 0.0
    assert cdf_normal(0.0) == 0.5


def test_design_quantiles():
    """The two deviates every sample-size formula is built from."""
    assert quantile_normal(0.975) == pytest.approx(1.959964, abs=5e-7)
    assert quantile_normal(0.80) == pytest.approx(0.8416212, abs=5e-8)


def test_symmetry():
    for p in (0.25, 0.1, 0.01, 0.0078125):
        assert quantile_normal(p) == -quantile_normal(1.0 - p)


def test_round_trip_quantile_of_cdf():
    x = -6.0
    while x <= 6.0:
        assert abs(quantile_normal(cdf_normal(x)) - x) < 1e-8
        x += 0.125


def test_round_trip_cdf_of_quantile():
    for i in range(1, 200):
        p = i / 200.0
        assert cdf_normal(quantile_normal(p)) == pytest.approx(p, rel=1e-12)


def test_quantile_monotone():
    prev = quantile_normal(1e-9)
    for i in range(1, 500):
        cur = quantile_normal(i / 500.0 * (1 - 2e-9) + 1e-9)
        assert cur > prev
        prev = cur


@pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.1, math.nan])
def test_quantile_rejects_out_of_domain(p):
    with pytest.raises(DomainError):
        quantile_normal(p)


def test_cdf_extreme_tails_saturate_cleanly():
    assert cdf_normal(-40.0) == 0.0
    assert cdf_normal(40.0) == 1.0
    assert 0.0 < cdf_normal(-8.0) < 1e-14
