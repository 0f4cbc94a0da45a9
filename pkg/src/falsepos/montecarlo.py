"""Seeded Monte Carlo worlds of repeated experiments.

Every experiment ``i`` owns one Philox counter block keyed by
``(seed, stream)``: word 0 picks the hypothesis, word 1 becomes the normal
deviate through :func:`falsepos.normal.std_quantile`. Draws therefore depend
only on ``(seed, i)`` and reports are bit-identical whatever the chunking or
the number of worker threads.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import bayes
from .errors import DegenerateError, DomainError
from .normal import std_quantile, std_sf
from .positivity import fp_bound_capped
from .ztest import GaussianZTest, SampleSummary, confidence_interval, rejects

__all__ = [
    "WorldConfig",
    "BhWorldConfig",
    "Tallies",
    "SimulationReport",
    "BinHistogram",
    "CoverageReport",
    "uniform_blocks",
    "simulate_world",
    "simulate_bh",
    "simulate_coverage",
    "verify_bound",
    "analytic_rates",
    "expected_tallies",
    "SE_BAND",
]

# acceptance band, in binomial standard errors
SE_BAND = 4.0
CHUNK_SIZE = 1 << 16

_STREAM_WORLD = 0
_STREAM_BH = 1
_STREAM_COVERAGE = 2
_U64 = 1 << 64


def _check_seed(seed):
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or not 0 <= seed < _U64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")


def _check_k(k):
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")


@dataclass(frozen=True)
class WorldConfig:
    k: int
    eta: float
    mu_alt: float
    n: int
    alpha: float
    seed: int = 0

    def __post_init__(self):
        _check_k(self.k)
        _check_seed(self.seed)
        if not 0.0 <= self.eta <= 1.0:
            raise DomainError(f"eta must lie in [0, 1], got {self.eta!r}")
        if not (math.isfinite(self.mu_alt) and self.mu_alt > 0):
            raise DomainError(f"mu_alt must be positive, got {self.mu_alt!r}")
        GaussianZTest(self.alpha, self.n)

    @property
    def test(self) -> GaussianZTest:
        return GaussianZTest(self.alpha, self.n)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "eta": self.eta,
            "mu_alt": self.mu_alt,
            "n": self.n,
            "alpha": self.alpha,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class BhWorldConfig:
    k: int
    prior: bayes.BhPrior
    gamma: float
    bf_edges: tuple[float, ...] = bayes.DEFAULT_BF_EDGES
    seed: int = 0

    def __post_init__(self):
        _check_k(self.k)
        _check_seed(self.seed)
        if not self.gamma > 0:
            raise DomainError(f"gamma must be positive, got {self.gamma!r}")
        edges = tuple(float(e) for e in self.bf_edges)
        if not edges or edges[0] <= 0 or any(b <= a for a, b in zip(edges, edges[1:])):
            raise ValueError(f"bf_edges must be positive and strictly increasing, got {edges}")
        object.__setattr__(self, "bf_edges", edges)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "mu": self.prior.mu,
            "n": self.prior.n,
            "gamma": self.gamma,
            "bf_edges": list(self.bf_edges),
            "seed": self.seed,
        }


@dataclass(frozen=True)
class Tallies:
    fp: int
    tn: int
    tp: int
    fn: int

    @property
    def k(self) -> int:
        return self.fp + self.tn + self.tp + self.fn

    @property
    def k_positive(self) -> int:
        return self.fp + self.tp


def _binomial_se(p, m):
    return math.sqrt(p * (1.0 - p) / m) if m > 0 else None


@dataclass(frozen=True)
class SimulationReport:
    tallies: Tallies

    @property
    def k(self) -> int:
        return self.tallies.k

    @property
    def k_positive(self) -> int:
        return self.tallies.k_positive

    @property
    def empirical_r(self) -> float:
        return self.k_positive / self.k

    @property
    def empirical_fp_among_all(self) -> float:
        return self.tallies.fp / self.k

    @property
    def empirical_fp_among_positives(self) -> Optional[float]:
        if self.k_positive == 0:
            return None
        return self.tallies.fp / self.k_positive

    @property
    def stderr_estimates(self) -> dict:
        fpp = self.empirical_fp_among_positives
        return {
            "r": _binomial_se(self.empirical_r, self.k),
            "fp_among_all": _binomial_se(self.empirical_fp_among_all, self.k),
            "fp_among_positives": None if fpp is None else _binomial_se(fpp, self.k_positive),
        }

    def to_dict(self) -> dict:
        t = self.tallies
        return {
            "tallies": {"fp": t.fp, "tn": t.tn, "tp": t.tp, "fn": t.fn},
            "rates": {
                "r": self.empirical_r,
                "fp_among_positives": self.empirical_fp_among_positives,
                "fp_among_all": self.empirical_fp_among_all,
            },
            "stderr": self.stderr_estimates,
        }


@dataclass(frozen=True)
class BinHistogram:
    """Positives binned by Bayes factor; the last bin is open to infinity."""

    edges: tuple[float, ...]
    counts: tuple[int, ...]
    fp_counts: tuple[int, ...]

    def fractions(self, k: int) -> list[float]:
        return [c / k for c in self.counts]

    def fp_shares(self) -> list[Optional[float]]:
        return [f / c if c else None for f, c in zip(self.fp_counts, self.counts)]

    def to_dict(self) -> dict:
        return {"edges": list(self.edges), "counts": list(self.counts), "fp_counts": list(self.fp_counts)}


@dataclass(frozen=True)
class CoverageReport:
    k: int
    covered: int
    level: float

    @property
    def coverage(self) -> float:
        return self.covered / self.k

    @property
    def stderr(self) -> float:
        return math.sqrt(self.level * (1.0 - self.level) / self.k)


def uniform_blocks(seed: int, stream: int, start: int, stop: int) -> np.ndarray:
    """Uniforms on the open interval (0, 1), shape ``(stop - start, 4)``.

    Row ``j`` depends only on ``(seed, stream, start + j)``.
    """
    bitgen = np.random.Philox(key=[seed, stream])
    bitgen.advance(start)
    raw = bitgen.random_raw(4 * (stop - start)).reshape(-1, 4)
    # top 53 bits, shifted by half an ulp so neither 0 nor 1 can occur
    return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


def _run(kernel: Callable[[int, int], np.ndarray], k: int, workers: Optional[int]) -> np.ndarray:
    bounds = [(s, min(s + CHUNK_SIZE, k)) for s in range(0, k, CHUNK_SIZE)]
    if workers is None or workers <= 1 or len(bounds) == 1:
        parts = [kernel(a, b) for a, b in bounds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda ab: kernel(*ab), bounds))
    # integer tallies: the merge is exact and order-free
    return np.sum(parts, axis=0)


def _tally(h0, positive):
    return np.array([
        np.count_nonzero(h0 & positive),
        np.count_nonzero(h0 & ~positive),
        np.count_nonzero(~h0 & positive),
        np.count_nonzero(~h0 & ~positive),
    ], dtype=np.int64)


def simulate_world(cfg: WorldConfig, workers: Optional[int] = None) -> SimulationReport:
    """Run ``cfg.k`` one-sided z-tests; each null is true with probability ``eta``."""
    test = cfg.test
    scale = 1.0 / math.sqrt(cfg.n)

    def kernel(start, stop):
        u = uniform_blocks(cfg.seed, _STREAM_WORLD, start, stop)
        h0 = u[:, 0] < cfg.eta
        xbar = np.where(h0, 0.0, cfg.mu_alt) + scale * std_quantile(u[:, 1])
        return _tally(h0, rejects(test, xbar))

    fp, tn, tp, fn = (int(v) for v in _run(kernel, cfg.k, workers))
    return SimulationReport(Tallies(fp, tn, tp, fn))


def _snap_first_edge(edges: Sequence[float], gamma: float, tol: float = 0.005):
    edges = list(edges)
    if abs(edges[0] - gamma) <= tol:
        edges[0] = gamma
    return tuple(edges)


def simulate_bh(cfg: BhWorldConfig, workers: Optional[int] = None) -> tuple[SimulationReport, BinHistogram]:
    """Draw experiments from the 1/2-1/2 mixture and reject when ``BF >= gamma``.

    Positives are also binned by Bayes factor. A first edge within rounding of
    ``gamma`` (3.87 against 3.868...) is moved onto ``gamma``.
    """
    prior = cfg.prior
    scale = 1.0 / math.sqrt(prior.n)
    log_gamma = math.log(cfg.gamma)
    edges = _snap_first_edge(cfg.bf_edges, cfg.gamma)
    log_edges = np.log(np.array(edges))
    nbins = len(edges)

    def kernel(start, stop):
        u = uniform_blocks(cfg.seed, _STREAM_BH, start, stop)
        h0 = u[:, 0] < 0.5
        xbar = np.where(h0, 0.0, prior.mu) + scale * std_quantile(u[:, 1])
        lbf = bayes.lbf_of_mean(prior, xbar)
        positive = lbf >= log_gamma
        idx = np.searchsorted(log_edges, lbf, side="right") - 1
        binned = idx >= 0
        counts = np.bincount(idx[binned], minlength=nbins)
        fp_counts = np.bincount(idx[binned & h0], minlength=nbins)
        return np.concatenate([_tally(h0, positive), counts, fp_counts])

    out = _run(kernel, cfg.k, workers)
    fp, tn, tp, fn = (int(v) for v in out[:4])
    hist = BinHistogram(
        edges=edges,
        counts=tuple(int(c) for c in out[4:4 + nbins]),
        fp_counts=tuple(int(c) for c in out[4 + nbins:]),
    )
    return SimulationReport(Tallies(fp, tn, tp, fn)), hist


def simulate_coverage(
    level: float, mu0: float, n: int, k: int, seed: int = 0, workers: Optional[int] = None
) -> CoverageReport:
    """Count how often the level-``level`` interval around ``xbar`` contains ``mu0``."""
    _check_k(k)
    _check_seed(seed)
    _, half = confidence_interval(SampleSummary(n, 0.0), level)
    scale = 1.0 / math.sqrt(n)

    def kernel(start, stop):
        u = uniform_blocks(seed, _STREAM_COVERAGE, start, stop)
        xbar = mu0 + scale * std_quantile(u[:, 1])
        return np.array([np.count_nonzero(np.abs(xbar - mu0) <= half)], dtype=np.int64)

    return CoverageReport(k=k, covered=int(_run(kernel, k, workers)[0]), level=level)


def verify_bound(report: SimulationReport, alpha: float) -> tuple[bool, float]:
    """Check the empirical false-positive share against the bound at the empirical ``r``.

    Returns ``(holds, slack)`` with ``slack = min(1, bound) - observed``. The
    check passes when ``slack >= -SE_BAND * se``, where ``se`` combines the
    binomial error of the observed share with the error the bound inherits
    from the estimated ``r``.
    """
    if report.k_positive == 0:
        raise DegenerateError("report has no positive results; the bound is undefined")
    r = report.empirical_r
    observed = report.empirical_fp_among_positives
    bound = fp_bound_capped(alpha, r)
    se_obs = _binomial_se(observed, report.k_positive)
    if bound < 1.0:
        # |d bound / d r| = alpha / ((1 - alpha) r^2)
        se_bound = alpha / ((1.0 - alpha) * r * r) * _binomial_se(r, report.k)
    else:
        se_bound = 0.0
    se = math.hypot(se_obs, se_bound)
    slack = bound - observed
    return slack >= -SE_BAND * se, slack


def _power(cfg: WorldConfig) -> float:
    z_alpha = -std_quantile(cfg.alpha)
    return std_sf(z_alpha - math.sqrt(cfg.n) * cfg.mu_alt)


def analytic_rates(cfg: WorldConfig) -> dict:
    """Closed-form counterparts of the empirical rates in a :class:`SimulationReport`."""
    power = _power(cfg)
    fp = cfg.eta * cfg.alpha
    r = fp + (1.0 - cfg.eta) * power
    return {
        "r": r,
        "fp_among_all": fp,
        "fp_among_positives": fp / r if r > 0 else None,
        "beta": 1.0 - power,
    }


def expected_tallies(cfg: WorldConfig, p_band: Optional[tuple[float, float]] = None) -> dict:
    """Expected FP/TN/TP/FN counts over ``cfg.k`` experiments.

    With ``p_band=(p_lo, p_hi)`` only experiments whose p-value lies in that
    band are counted (FP and TP; negatives are reported as zero when the band
    is inside the rejection region).
    """
    k, eta = cfg.k, cfg.eta
    shift = math.sqrt(cfg.n) * cfg.mu_alt
    if p_band is None:
        power = _power(cfg)
        return {
            "fp": k * eta * cfg.alpha,
            "tn": k * eta * (1.0 - cfg.alpha),
            "tp": k * (1.0 - eta) * power,
            "fn": k * (1.0 - eta) * (1.0 - power),
        }
    p_lo, p_hi = p_band
    if not 0.0 < p_lo < p_hi <= cfg.alpha:
        raise ValueError(f"p_band must satisfy 0 < p_lo < p_hi <= alpha, got {p_band}")
    z_hi = -std_quantile(p_lo)
    z_lo = -std_quantile(p_hi)
    alt_mass = std_sf(z_lo - shift) - std_sf(z_hi - shift)
    return {
        "fp": k * eta * (p_hi - p_lo),
        "tn": 0.0,
        "tp": k * (1.0 - eta) * alt_mass,
        "fn": 0.0,
    }
