import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate as sp_integrate

from falsepos.errors import DomainError
from falsepos.normal import std_cdf, std_pdf, std_quantile, std_sf


def _bisect_quantile(p, lo=-40.0, hi=40.0):
    # independent oracle: plain bisection on the cdf
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if std_cdf(mid) < p:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_pdf_values():
    assert std_pdf(0.0) == pytest.approx(0.3989422804, abs=1e-10)
    # mpmath, 40 digits
    assert std_pdf(1.6449) == pytest.approx(0.10312777369994583, abs=1e-15)
    assert std_pdf(-1.3) == std_pdf(1.3)


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_non_finite_rejected(bad):
    with pytest.raises(ValueError):
        std_pdf(bad)
    with pytest.raises(ValueError):
        std_cdf(bad)


def test_cdf_values():
    assert std_cdf(0.0) == 0.5
    assert std_cdf(1.6449) == pytest.approx(0.95, abs=1e-4)
    assert std_cdf(1.96) == pytest.approx(0.975, abs=1e-4)
    # mpmath references
    assert std_cdf(1.6449) == pytest.approx(0.9500047825316537, abs=1e-15)
    assert std_cdf(1.96) == pytest.approx(0.9750021048517796, abs=1e-15)


def test_tails():
    assert std_cdf(-8.0) < 1e-14
    assert std_cdf(8.0) > 1.0 - 1e-14
    assert std_sf(8.0) == pytest.approx(6.220960574271785e-16, rel=1e-12)


def test_symmetry_grid():
    z = np.linspace(-8, 8, 3201)
    assert np.max(np.abs(std_cdf(z) + std_cdf(-z) - 1.0)) <= 1e-12


def test_cdf_against_quadrature_oracle():
    for z in np.linspace(-6, 6, 49):
        ref, _ = sp_integrate.quad(std_pdf, -12.0, z, epsabs=1e-13, epsrel=1e-13, limit=200)
        assert abs(std_cdf(z) - ref) <= 1e-9


@pytest.mark.parametrize(
    "p, expected",
    [
        (0.5, 0.0),
        (0.95, 1.6448536269514727),
        (0.975, 1.9599639845400542),
        (0.75, 0.6744897501960817),
    ],
)
def test_quantile_frozen(p, expected):
    assert std_quantile(p) == pytest.approx(expected, abs=1e-12)
    assert std_quantile(p) == pytest.approx(_bisect_quantile(p), abs=1e-10)


def test_quantile_spec_values():
    assert std_quantile(0.95) == pytest.approx(1.644854, abs=1e-5)
    assert std_quantile(0.975) == pytest.approx(1.959964, abs=1e-5)


@pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5, math.nan])
def test_quantile_domain(p):
    with pytest.raises(DomainError):
        std_quantile(p)


def test_quantile_round_trip_grid():
    p = np.linspace(0.001, 0.999, 4001)
    assert np.max(np.abs(std_cdf(std_quantile(p)) - p)) <= 1e-10


def test_quantile_extreme_tails():
    for p in (1e-300, 5e-324, 1e-20):
        z = std_quantile(p)
        assert math.isfinite(z)
        assert std_cdf(z) == pytest.approx(p, rel=1e-9)
    assert std_quantile(1 - 1e-16) == pytest.approx(-std_quantile(1.1102230246251565e-16), abs=1e-12)


def test_quantile_vectorised_matches_scalar():
    p = np.array([0.01, 0.2, 0.5, 0.8, 0.99])
    vec = std_quantile(p)
    assert vec.shape == p.shape
    assert np.array_equal(vec, np.array([std_quantile(float(x)) for x in p]))


@given(st.floats(min_value=1e-12, max_value=1 - 1e-12), st.floats(min_value=1e-12, max_value=1 - 1e-12))
def test_quantile_strictly_increasing(p1, p2):
    if p1 < p2 and p2 - p1 > 1e-14:
        assert std_quantile(p1) < std_quantile(p2)


@given(st.floats(min_value=1e-6, max_value=1 - 1e-6))
def test_round_trip_property(p):
    assert abs(std_cdf(std_quantile(p)) - p) <= 1e-12
