"""Two-point Bayesian model: H0 (mean 0) vs H_mu (mean mu), each with prior 1/2.

Bayes factors are carried on the natural-log scale throughout; an empirical
mean of 100 with n = 100 already gives a factor near 10**714.

Most quantities reduce to normal tail masses once the Bayes-factor cut is
mapped back to the empirical mean. In standardised units ``z = sqrt(n) xbar``
the log Bayes factor is ``d z - d**2 / 2`` with ``d = sqrt(n) mu``, so the
cut ``BF >= g`` is ``z >= log(g) / d + d / 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateError, DomainError
from .normal import std_pdf, std_quantile, std_sf
from .quadrature import integrate
from .ztest import SampleSummary, p_value

__all__ = [
    "BhPrior",
    "BfInterval",
    "JohnsonTableRow",
    "DEFAULT_BF_EDGES",
    "log_bayes_factor",
    "lbf_of_mean",
    "posterior_h0",
    "posterior_hmu",
    "gamma_star",
    "resolve_gamma",
    "umpbt_mu",
    "umpbt_prior",
    "bf_threshold_in_xbar",
    "positive_prob",
    "false_positive_prob",
    "bin_prob",
    "h0_given_bf_in",
    "johnson_table",
    "weighted_false_positive",
]

DEFAULT_BF_EDGES = (3.87, 5.44, 7.92, 12.31, 21.77)

# standard deviations kept on either side of the two mixture bumps
_TRUNCATION = 10.0


@dataclass(frozen=True)
class BhPrior:
    mu: float
    n: int

    def __post_init__(self):
        if not (math.isfinite(self.mu) and self.mu > 0):
            raise DomainError(f"alternative mean must be positive, got {self.mu!r}")
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")

    @property
    def shift(self) -> float:
        """Alternative mean in standard-error units, ``sqrt(n) * mu``."""
        return math.sqrt(self.n) * self.mu


@dataclass(frozen=True)
class BfInterval:
    """Closed range of Bayes factors; ``lo`` may be 0 and ``hi`` may be inf."""

    lo: float
    hi: float = math.inf

    def __post_init__(self):
        if not (self.lo >= 0 and self.hi > self.lo):
            raise ValueError(f"need 0 <= lo < hi, got [{self.lo}, {self.hi}]")


@dataclass(frozen=True)
class JohnsonTableRow:
    interval: BfInterval
    p_lo: float
    p_hi: float
    prob_bin: float
    prob_h0_given_bin: float


def lbf_of_mean(prior: BhPrior, xbar):
    """Vectorised log Bayes factor as a function of the empirical mean."""
    return prior.n * (2.0 * prior.mu * np.asarray(xbar, dtype=float) - prior.mu**2) / 2.0


def log_bayes_factor(prior: BhPrior, s: SampleSummary) -> float:
    """``n (2 mu xbar - mu**2) / 2``, the natural log of the Bayes factor."""
    if s.n != prior.n:
        raise ValueError(f"sample has n={s.n} but the prior was built for n={prior.n}")
    return float(lbf_of_mean(prior, s.xbar))


def _sigmoid_neg(lbf):
    # 1 / (1 + exp(lbf)) without overflow in either direction
    lbf = np.asarray(lbf, dtype=float)
    e = np.exp(-np.abs(lbf))
    return np.where(lbf >= 0, e / (1.0 + e), 1.0 / (1.0 + e))


def posterior_h0(lbf):
    out = _sigmoid_neg(lbf)
    return float(out) if out.ndim == 0 else out


def posterior_hmu(lbf):
    out = _sigmoid_neg(-np.asarray(lbf, dtype=float))
    return float(out) if out.ndim == 0 else out


def gamma_star(alpha: float) -> float:
    """Bayes-factor cut matching a one-sided level ``alpha``: ``exp(x*^2 / 2)``.

    ``x*`` is the upper ``alpha`` point of the standard normal (about 1.645 at
    ``alpha = 0.05``, giving 3.868).
    """
    if not 0.0 < alpha < 0.5:
        raise DomainError(f"one-sided setting needs 0 < alpha < 0.5, got {alpha!r}")
    z = -std_quantile(alpha)
    return math.exp(0.5 * z * z)


def resolve_gamma(gamma: float, alpha: float, tol: float = 0.005) -> float:
    """Replace a rounded cut such as 3.87 by the exact ``gamma_star(alpha)``.

    Values farther than ``tol`` from the exact cut are returned unchanged.
    """
    exact = gamma_star(alpha)
    return exact if abs(gamma - exact) <= tol else gamma


def umpbt_mu(gamma: float, n: int) -> float:
    """Alternative mean maximising ``P[BF >= gamma]``: ``sqrt(2 log(gamma) / n)``."""
    if not gamma > 1.0:
        raise DomainError(f"gamma must exceed 1, got {gamma!r}")
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    return math.sqrt(2.0 * math.log(gamma) / n)


def umpbt_prior(alpha: float, n: int) -> BhPrior:
    return BhPrior(umpbt_mu(gamma_star(alpha), n), n)


def _cut_z(prior: BhPrior, gamma: float) -> float:
    """Standardised mean at which the Bayes factor equals ``gamma``."""
    if gamma == math.inf:
        return math.inf
    if gamma == 0.0:
        return -math.inf
    d = prior.shift
    return math.log(gamma) / d + d / 2.0


def bf_threshold_in_xbar(prior: BhPrior, gamma: float) -> float:
    """Empirical mean solving ``BF = gamma``: ``log(gamma) / (n mu) + mu / 2``."""
    if not gamma > 0:
        raise DomainError(f"gamma must be positive, got {gamma!r}")
    return math.log(gamma) / (prior.n * prior.mu) + prior.mu / 2.0


def _sf(z: float) -> float:
    if z == math.inf:
        return 0.0
    if z == -math.inf:
        return 1.0
    return std_sf(z)


def _mass(a: float, b: float) -> float:
    """P[a <= Z <= b] for standard normal Z, without cancellation in the tails."""
    if a >= 0:
        return _sf(a) - _sf(b)
    if b <= 0:
        return _sf(-b) - _sf(-a)
    return 1.0 - _sf(b) - _sf(-a)


def positive_prob(prior: BhPrior, gamma: float) -> float:
    """P[BF >= gamma] under the 1/2-1/2 mixture."""
    if not gamma > 0:
        raise DomainError(f"gamma must be positive, got {gamma!r}")
    z = _cut_z(prior, gamma)
    return 0.5 * _sf(z) + 0.5 * _sf(z - prior.shift)


def false_positive_prob(prior: BhPrior, gamma: float) -> float:
    """P[BF >= gamma and H0] = P[BF >= gamma | H0] / 2."""
    if not gamma > 0:
        raise DomainError(f"gamma must be positive, got {gamma!r}")
    return 0.5 * _sf(_cut_z(prior, gamma))


def _bin_masses(prior: BhPrior, interval: BfInterval) -> tuple[float, float]:
    a = _cut_z(prior, interval.lo)
    b = _cut_z(prior, interval.hi)
    d = prior.shift
    return 0.5 * _mass(a, b), 0.5 * _mass(a - d, b - d)


def bin_prob(prior: BhPrior, interval: BfInterval) -> float:
    h0, hmu = _bin_masses(prior, interval)
    return h0 + hmu


def _h0_given_ratio(prior: BhPrior, interval: BfInterval) -> float:
    h0, hmu = _bin_masses(prior, interval)
    total = h0 + hmu
    if total <= 0.0:
        raise DegenerateError(f"P[BF in [{interval.lo}, {interval.hi}]] is zero")
    return h0 / total


def _h0_given_quadrature(prior: BhPrior, interval: BfInterval) -> float:
    # Average of 1 / (1 + BF) against the mixture density of the standardised
    # mean, restricted to the interval.
    d = prior.shift
    a = max(_cut_z(prior, interval.lo), -_TRUNCATION)
    b = min(_cut_z(prior, interval.hi), d + _TRUNCATION)
    if not a < b:
        raise DegenerateError(f"P[BF in [{interval.lo}, {interval.hi}]] is zero")

    def density(z):
        return 0.5 * (std_pdf(z) + std_pdf(z - d))

    def weighted(z):
        return _sigmoid_neg(d * z - 0.5 * d * d) * density(z)

    mass, _ = integrate(density, a, b, abstol=1e-10)
    if mass <= 0.0:
        raise DegenerateError(f"P[BF in [{interval.lo}, {interval.hi}]] is zero")
    num, _ = integrate(weighted, a, b, abstol=1e-10)
    return num / mass


def h0_given_bf_in(prior: BhPrior, interval: BfInterval, method: str = "ratio") -> float:
    """P[H0 | BF in interval].

    ``method="ratio"`` divides the H0 part of the bin mass by the whole bin
    mass (exact up to normal-tail rounding). ``method="quadrature"`` instead
    integrates the posterior ``1 / (1 + BF)`` over the bin and normalises.
    """
    if method == "ratio":
        return _h0_given_ratio(prior, interval)
    if method == "quadrature":
        return _h0_given_quadrature(prior, interval)
    raise ValueError(f"unknown method {method!r}; expected 'ratio' or 'quadrature'")


def johnson_table(
    alpha: float,
    n: int,
    bf_edges: Sequence[float] = DEFAULT_BF_EDGES,
    method: str = "ratio",
) -> list[JohnsonTableRow]:
    """Tabulate Bayes-factor bins above the cut under the UMPBT prior.

    Consecutive edges delimit the bins and the last bin is open to infinity.
    A first edge within rounding of ``gamma_star(alpha)`` is replaced by the
    exact value.
    """
    edges = [float(e) for e in bf_edges]
    if not edges:
        raise ValueError("at least one Bayes-factor edge is required")
    if any(e <= 0 for e in edges):
        raise ValueError("Bayes-factor edges must be positive")
    if any(b <= a for a, b in zip(edges, edges[1:])):
        raise ValueError(f"Bayes-factor edges must be strictly increasing, got {edges}")
    edges[0] = resolve_gamma(edges[0], alpha)
    if len(edges) > 1 and edges[1] <= edges[0]:
        raise ValueError(f"Bayes-factor edges must be strictly increasing, got {edges}")

    prior = umpbt_prior(alpha, n)

    def pval(edge):
        if edge == math.inf:
            return 0.0
        return p_value(SampleSummary(n, bf_threshold_in_xbar(prior, edge)))

    rows = []
    for lo, hi in zip(edges, edges[1:] + [math.inf]):
        interval = BfInterval(lo, hi)
        rows.append(
            JohnsonTableRow(
                interval=interval,
                p_lo=pval(lo),
                p_hi=pval(hi),
                prob_bin=bin_prob(prior, interval),
                prob_h0_given_bin=h0_given_bf_in(prior, interval, method),
            )
        )
    return rows


def weighted_false_positive(rows: Sequence[JohnsonTableRow]) -> float:
    """Sum over bins of ``P[E] * P[H0 | E]``, i.e. P[H0 and BF in the union]."""
    return sum(r.prob_bin * r.prob_h0_given_bin for r in rows)
