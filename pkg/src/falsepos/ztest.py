"""One-sided Gaussian mean test with known unit variance.

Measurements ``x_1..x_n`` are N(mu, 1); the null is ``mu = 0`` and the test
rejects for large empirical means. Everything runs on the sufficient
statistic ``(n, xbar)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .normal import std_quantile, std_sf

__all__ = [
    "SampleSummary",
    "GaussianZTest",
    "TestOutcome",
    "rejection_threshold",
    "rejects",
    "decide",
    "p_value",
    "confidence_interval",
]


def _check_n(n):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")


@dataclass(frozen=True)
class SampleSummary:
    n: int
    xbar: float

    def __post_init__(self):
        _check_n(self.n)
        if not math.isfinite(self.xbar):
            raise ValueError(f"xbar must be finite, got {self.xbar!r}")

    @classmethod
    def from_measurements(cls, x) -> "SampleSummary":
        x = np.asarray(x, dtype=float)
        return cls(int(x.size), float(x.mean()))


@dataclass(frozen=True)
class GaussianZTest:
    alpha: float
    n: int

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        _check_n(self.n)


class TestOutcome(enum.Enum):
    __test__ = False  # keep pytest from collecting the enum

    POSITIVE = "Positive"
    NEGATIVE = "Negative"


def rejection_threshold(test: GaussianZTest) -> float:
    """Smallest empirical mean that rejects: ``Phi^{-1}(1 - alpha) / sqrt(n)``.

    With ``alpha = 0.05`` the numerator is 1.6448536..., commonly rounded to
    1.65; the rounded value is never used here.
    """
    return -std_quantile(test.alpha) / math.sqrt(test.n)


def rejects(test: GaussianZTest, xbar):
    """Vectorised decision rule; a mean exactly at the threshold rejects."""
    return np.asarray(xbar) >= rejection_threshold(test)


def decide(test: GaussianZTest, s: SampleSummary) -> TestOutcome:
    if s.n != test.n:
        raise ValueError(f"sample has n={s.n} but the test was designed for n={test.n}")
    return TestOutcome.POSITIVE if rejects(test, s.xbar) else TestOutcome.NEGATIVE


def p_value(s: SampleSummary) -> float:
    return std_sf(math.sqrt(s.n) * s.xbar)


def confidence_interval(s: SampleSummary, level: float = 0.95) -> tuple[float, float]:
    """Two-sided interval ``xbar -/+ q / sqrt(n)`` with ``q = Phi^{-1}((1 + level) / 2)``.

    Assumes standard deviation at most 1 (treated as exactly 1).
    """
    if not 0.0 < level < 1.0:
        raise DomainError(f"confidence level must lie in (0, 1), got {level!r}")
    half = std_quantile(0.5 * (1.0 + level)) / math.sqrt(s.n)
    return s.xbar - half, s.xbar + half
