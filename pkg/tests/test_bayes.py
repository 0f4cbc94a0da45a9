import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from falsepos.bayes import (
    DEFAULT_BF_EDGES,
    BfInterval,
    BhPrior,
    bf_threshold_in_xbar,
    bin_prob,
    false_positive_prob,
    gamma_star,
    h0_given_bf_in,
    johnson_table,
    log_bayes_factor,
    positive_prob,
    posterior_h0,
    posterior_hmu,
    resolve_gamma,
    umpbt_mu,
    umpbt_prior,
    weighted_false_positive,
)
from falsepos.errors import DegenerateError, DomainError
from falsepos.normal import std_cdf
from falsepos.ztest import GaussianZTest, SampleSummary, rejection_threshold

# 40-digit mpmath values for the alpha = 0.05 bins (exact gamma* as first edge)
MP_P_EDGES = [0.05, 0.032000609622210088, 0.018738595545845505, 0.0094208319231528604, 0.0035167092805619776]
MP_P_E = [0.05005926471543512, 0.049803066452843424, 0.050037183934728416, 0.04995905069660896, 0.07514143420038408]
MP_H0_E = [0.17978081060627357, 0.13314455334715051, 0.093108393498396193, 0.059089620001442841, 0.023400599935208597]


@pytest.fixture
def prior05():
    return umpbt_prior(0.05, 100)


def test_log_bayes_factor():
    prior = BhPrior(0.5, 4)
    assert log_bayes_factor(prior, SampleSummary(4, 1.0)) == pytest.approx(1.5)
    assert log_bayes_factor(prior, SampleSummary(4, 0.25)) == 0.0
    big = log_bayes_factor(BhPrior(0.164514, 100), SampleSummary(100, 100.0))
    assert big == pytest.approx(1643.8, abs=0.2)
    assert big / math.log(10) == pytest.approx(713.9, abs=0.2)
    with pytest.raises(ValueError):
        log_bayes_factor(prior, SampleSummary(5, 1.0))


def test_posteriors():
    assert posterior_h0(0.0) == 0.5
    assert posterior_hmu(0.0) == 0.5
    assert posterior_h0(math.log(3.87)) == pytest.approx(0.2053388090349076, abs=1e-12)
    assert posterior_hmu(math.log(3.87)) == pytest.approx(0.7946611909650924, abs=1e-12)
    assert posterior_h0(1643.8) == 0.0
    assert posterior_hmu(1643.8) == 1.0
    assert posterior_h0(-2.3) == pytest.approx(posterior_hmu(2.3), abs=1e-16)


def test_posterior_normalisation():
    lbf = np.linspace(-700, 700, 14001)
    assert np.max(np.abs(posterior_h0(lbf) + posterior_hmu(lbf) - 1.0)) <= 1e-12
    for big in (800.0, 5000.0, 1e300):
        assert (posterior_h0(big), posterior_hmu(big)) == (0.0, 1.0)
        assert (posterior_h0(-big), posterior_hmu(-big)) == (1.0, 0.0)


@given(st.floats(-700, 700), st.floats(-700, 700))
def test_posterior_h0_decreasing(a, b):
    if a < b:
        assert posterior_h0(a) >= posterior_h0(b)


@given(st.floats(0.01, 5), st.integers(1, 10_000), st.floats(-3, 3), st.floats(-3, 3))
def test_log_bf_increasing_in_mean(mu, n, x1, x2):
    prior = BhPrior(mu, n)
    if x1 + 1e-9 < x2:
        assert log_bayes_factor(prior, SampleSummary(n, x1)) < log_bayes_factor(prior, SampleSummary(n, x2))


def test_gamma_star():
    assert gamma_star(0.05) == pytest.approx(3.868132092353787, rel=1e-12)
    assert gamma_star(0.05) == pytest.approx(3.868, abs=0.005)
    assert gamma_star(0.01) == pytest.approx(14.95, abs=0.05)
    assert gamma_star(0.5 - 1e-12) == pytest.approx(1.0, abs=1e-9)
    for bad in (0.5, 0.7, 0.0):
        with pytest.raises(DomainError):
            gamma_star(bad)


def test_resolve_gamma():
    assert resolve_gamma(3.87, 0.05) == gamma_star(0.05)
    assert resolve_gamma(20.0, 0.05) == 20.0


def test_umpbt_mu():
    assert umpbt_mu(3.87, 100) == pytest.approx(0.1645147110164736, abs=1e-12)
    assert umpbt_mu(3.87, 100) == pytest.approx(0.16451, abs=1e-4)
    assert umpbt_mu(math.e**2, 2) == pytest.approx(math.sqrt(2), abs=1e-15)
    assert umpbt_mu(3.87, 200) == pytest.approx(0.11633, abs=1e-4)
    with pytest.raises(DomainError):
        umpbt_mu(1.0, 10)


@pytest.mark.parametrize("gamma", [1.01, 3.87, 20.0, 1e6])
@pytest.mark.parametrize("n", [1, 3, 100, 12345])
def test_pooling_identity(gamma, n):
    assert umpbt_mu(gamma, 2 * n) * math.sqrt(2) == pytest.approx(umpbt_mu(gamma, n), abs=1e-12)


def test_bf_threshold(prior05):
    assert bf_threshold_in_xbar(prior05, gamma_star(0.05)) == pytest.approx(0.164485, abs=1e-5)
    assert bf_threshold_in_xbar(prior05, 1.0) == pytest.approx(prior05.mu / 2, abs=1e-15)
    assert bf_threshold_in_xbar(prior05, 5.44) == pytest.approx(0.1852171365279447, abs=1e-12)
    # round trip: the Bayes factor at the threshold is gamma
    t = bf_threshold_in_xbar(prior05, 7.92)
    assert log_bayes_factor(prior05, SampleSummary(100, t)) == pytest.approx(math.log(7.92), abs=1e-12)


@pytest.mark.parametrize("n", [1, 10, 100, 10_000])
@pytest.mark.parametrize("alpha", [0.1, 0.05, 0.01, 0.005])
def test_umpbt_equivalence(alpha, n):
    t = bf_threshold_in_xbar(umpbt_prior(alpha, n), gamma_star(alpha))
    assert abs(t - rejection_threshold(GaussianZTest(alpha, n))) <= 1e-9


@pytest.mark.parametrize("n", [1, 100, 4000])
def test_positive_and_false_positive_probs(n):
    prior = umpbt_prior(0.05, n)
    g = gamma_star(0.05)
    assert positive_prob(prior, g) == pytest.approx(0.275, abs=1e-3)
    assert false_positive_prob(prior, g) == pytest.approx(0.025, abs=1e-4)
    assert h0_given_bf_in(prior, BfInterval(g)) == pytest.approx(0.0909, abs=1e-3)
    # tail sums at z = 2.69508 and 1.04994
    assert positive_prob(prior, 21.77) == pytest.approx(0.0752, abs=1e-3)
    assert positive_prob(prior, 1e-300) == pytest.approx(1.0, abs=1e-12)
    assert false_positive_prob(prior, 1e-300) == pytest.approx(0.5, abs=1e-12)


def test_bf_at_least_one_false_positive():
    # sqrt(n) = 2 x* / mu makes BF >= 1 a level-5% test under H0
    for mu in (0.1, 0.5, 2.0):
        n = (2 * 1.6448536269514727 / mu) ** 2
        # n need not be an integer here; use the continuous form directly
        d = math.sqrt(n) * mu
        fp = 0.5 * (1 - std_cdf(d / 2))
        assert fp == pytest.approx(0.025, abs=1e-4)
        n_int = math.ceil(n)
        assert false_positive_prob(BhPrior(mu, n_int), 1.0) <= 0.025 + 1e-9


@given(st.floats(0.01, 3.0), st.integers(1, 100_000))
def test_consequence_two(mu, n):
    if math.sqrt(n) * mu >= 2 * 1.6448536269514727:
        assert false_positive_prob(BhPrior(mu, n), 1.0) <= 0.025 + 1e-9


def test_concentration_of_bayes_factor():
    p = bin_prob(BhPrior(0.5, 10_000), BfInterval(1 / 20, 20))
    assert p < 1e-10
    # mpmath with upper tails: 1.2997e-137
    assert p == pytest.approx(1.299747947572011e-137, rel=1e-6)


def test_bin_prob(prior05):
    g = gamma_star(0.05)
    assert bin_prob(prior05, BfInterval(g, 5.44)) == pytest.approx(0.05, abs=0.002)
    assert bin_prob(prior05, BfInterval(21.77)) == pytest.approx(0.075, abs=0.002)
    assert bin_prob(prior05, BfInterval(0.0)) == pytest.approx(1.0, abs=1e-15)


def test_partition_consistency(prior05):
    rows = johnson_table(0.05, 100)
    total = sum(r.prob_bin for r in rows)
    assert abs(total - positive_prob(prior05, gamma_star(0.05))) <= 1e-9


@pytest.mark.parametrize("idx", range(5))
def test_table_matches_mpmath(idx):
    row = johnson_table(0.05, 100)[idx]
    assert row.p_lo == pytest.approx(MP_P_EDGES[idx], rel=1e-10)
    assert row.prob_bin == pytest.approx(MP_P_E[idx], abs=1e-12)
    assert row.prob_h0_given_bin == pytest.approx(MP_H0_E[idx], abs=1e-12)


def test_table_rounded_values():
    rows = johnson_table(0.05, 100)
    for row, p in zip(rows, (0.05, 0.032, 0.019, 0.0094, 0.0035)):
        assert row.p_lo == pytest.approx(p, rel=0.10)
    for row, pe in zip(rows, (0.05, 0.05, 0.05, 0.05, 0.075)):
        assert row.prob_bin == pytest.approx(pe, abs=0.003)
    assert rows[0].prob_h0_given_bin == pytest.approx(0.18, abs=0.005)
    assert rows[2].prob_h0_given_bin == pytest.approx(0.09, abs=0.005)
    assert rows[-1].p_hi == 0.0
    assert weighted_false_positive(rows) == pytest.approx(0.025, abs=1e-12)


@pytest.mark.parametrize("alpha", [0.1, 0.05, 0.01])
@pytest.mark.parametrize("n", [1, 100, 10_000])
def test_weighted_total_is_half_alpha(alpha, n):
    g = gamma_star(alpha)
    edges = [g, 2 * g, 5 * g, 30 * g]
    rows = johnson_table(alpha, n, edges)
    assert weighted_false_positive(rows) == pytest.approx(alpha / 2, abs=1e-12)


def test_quadrature_agrees_with_ratio(prior05):
    g = gamma_star(0.05)
    edges = [g, 5.44, 7.92, 12.31, 21.77, math.inf]
    for lo, hi in zip(edges, edges[1:]):
        interval = BfInterval(lo, hi)
        exact = h0_given_bf_in(prior05, interval, "ratio")
        quad = h0_given_bf_in(prior05, interval, "quadrature")
        assert abs(exact - quad) <= 1e-6


def test_quadrature_other_priors():
    for prior in (BhPrior(0.3, 20), BhPrior(1.0, 1), BhPrior(0.05, 2500)):
        for interval in (BfInterval(0.5, 2.0), BfInterval(1.0), BfInterval(0.0, 1.0)):
            assert h0_given_bf_in(prior, interval, "quadrature") == pytest.approx(
                h0_given_bf_in(prior, interval, "ratio"), abs=1e-6
            )


def test_zero_mass_bin_raises():
    # bumps at z = 0 and z = 100; BF in [e^-10, e^10] means z within 0.1 of 50,
    # where both normal tails underflow
    prior = BhPrior(1.0, 10_000)
    far = BfInterval(math.exp(-10), math.exp(10))
    assert bin_prob(prior, far) == 0.0
    with pytest.raises(DegenerateError):
        h0_given_bf_in(prior, far)
    with pytest.raises(DegenerateError):
        h0_given_bf_in(prior, far, "quadrature")
    with pytest.raises(ValueError):
        h0_given_bf_in(prior, BfInterval(1.0), "simpson")


def test_johnson_edges_validation():
    with pytest.raises(ValueError):
        johnson_table(0.05, 100, [3.87, 3.0])
    with pytest.raises(ValueError):
        johnson_table(0.05, 100, [])
    rows = johnson_table(0.05, 100, list(DEFAULT_BF_EDGES))
    assert rows[0].interval.lo == gamma_star(0.05)
    assert len(rows) == 5
