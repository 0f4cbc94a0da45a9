"""False positives among *positive* results, as a function of the positivity ratio.

A body of work run at significance level ``alpha`` has a fraction ``eta`` of
true nulls and misses a fraction ``beta`` of the real effects. Its positivity
ratio (positive results over all results, published or not) is

    r = eta * alpha + (1 - eta) * (1 - beta)

and since ``beta >= 0`` forces ``eta <= (1 - r) / (1 - alpha)``, the share of
false positives among positives obeys

    eta * alpha / r <= alpha * (1 - r) / (r * (1 - alpha)).

The right-hand side only needs ``alpha`` and ``r``, both of which a
researcher can know.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateError, DomainError

__all__ = [
    "PositivityScenario",
    "CaseDecomposition",
    "BoundTable",
    "fp_bound",
    "fp_bound_capped",
    "format_percent",
    "positivity_ratio",
    "fp_among_positives",
    "decompose",
    "eta_upper_bound",
    "min_ratio_for_target",
    "bound_table",
    "guidance",
]


def _check_alpha(alpha):
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")


def _check_unit(name, value):
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {value!r}")


@dataclass(frozen=True)
class PositivityScenario:
    alpha: float
    eta: float
    beta: float

    def __post_init__(self):
        _check_alpha(self.alpha)
        _check_unit("eta", self.eta)
        _check_unit("beta", self.beta)


@dataclass(frozen=True)
class CaseDecomposition:
    """Proportions of the four test outcomes; the cells sum to one."""

    false_positive: float
    true_negative: float
    true_positive: float
    false_negative: float

    @property
    def positive(self) -> float:
        return self.false_positive + self.true_positive

    def total(self) -> float:
        return self.false_positive + self.true_negative + self.true_positive + self.false_negative


@dataclass(frozen=True)
class BoundTable:
    """Raw bound values, ``cells[i][j]`` for ``ratios[i]`` and ``alphas[j]``."""

    alphas: tuple[float, ...]
    ratios: tuple[float, ...]
    cells: np.ndarray

    def __post_init__(self):
        if self.cells.shape != (len(self.ratios), len(self.alphas)):
            raise ValueError("cells must have shape (len(ratios), len(alphas))")


def fp_bound(alpha: float, r: float) -> float:
    """Maximal share of false positives among positives, ``alpha(1-r) / (r(1-alpha))``.

    The value is returned uncapped and can exceed 1 when ``r < alpha``.

    >>> round(fp_bound(0.05, 0.2), 6)
    0.210526
    """
    _check_alpha(alpha)
    if r == 0:
        raise DomainError("r must be > 0: with no positive results the bound diverges")
    if not 0.0 < r <= 1.0:
        raise DomainError(f"r must lie in (0, 1], got {r!r}")
    return alpha * (1.0 - r) / (r * (1.0 - alpha))


def fp_bound_capped(alpha: float, r: float) -> float:
    return min(1.0, fp_bound(alpha, r))


def format_percent(value: float) -> str:
    """Render a proportion as a percentage with two significant digits.

    Values at or above 1 print as ``100%``. Below one percent a trailing zero
    is dropped: 0.0526 -> ``5.3%``, 0.2105 -> ``21%``, 0.0101 -> ``1.0%``,
    0.005025 -> ``0.5%``.
    """
    if not math.isfinite(value):
        raise ValueError(f"cannot format {value!r}")
    pct = min(value, 1.0) * 100.0
    if pct <= 0.0:
        return "0%"
    text = np.format_float_positional(float(f"{pct:.2g}"), trim="-")
    whole, _, frac = text.partition(".")
    if len(whole) >= 2:
        return f"{whole}%"
    if whole != "0":
        return f"{whole}.{(frac or '0')[0]}%"
    return f"0.{frac}%"


def positivity_ratio(sc: PositivityScenario) -> float:
    return sc.eta * sc.alpha + (1.0 - sc.eta) * (1.0 - sc.beta)


def fp_among_positives(sc: PositivityScenario) -> float:
    r = positivity_ratio(sc)
    if r <= 0.0:
        raise DegenerateError("scenario produces no positive results (r = 0)")
    return sc.eta * sc.alpha / r


def decompose(sc: PositivityScenario) -> CaseDecomposition:
    return CaseDecomposition(
        false_positive=sc.eta * sc.alpha,
        true_negative=sc.eta * (1.0 - sc.alpha),
        true_positive=(1.0 - sc.eta) * (1.0 - sc.beta),
        false_negative=(1.0 - sc.eta) * sc.beta,
    )


def eta_upper_bound(alpha: float, r: float) -> float:
    """Largest fraction of true nulls compatible with positivity ratio ``r``."""
    _check_alpha(alpha)
    _check_unit("r", r)
    return min(1.0, (1.0 - r) / (1.0 - alpha))


def min_ratio_for_target(alpha: float, target: float) -> float:
    """Smallest ``r`` whose bound is at most ``target``: ``alpha / (alpha + target (1 - alpha))``."""
    _check_alpha(alpha)
    if not target > 0:
        raise DomainError(f"target must be positive, got {target!r}")
    return alpha / (alpha + target * (1.0 - alpha))


def bound_table(alphas: Sequence[float], ratios: Sequence[float]) -> BoundTable:
    alphas = tuple(float(a) for a in alphas)
    ratios = tuple(float(r) for r in ratios)
    if not alphas or not ratios:
        raise ValueError("bound table needs at least one alpha and one ratio")
    cells = np.array([[fp_bound(a, r) for a in alphas] for r in ratios])
    return BoundTable(alphas, ratios, cells)


def guidance(alpha: float, targets: Sequence[float]) -> list[tuple[float, float]]:
    """Pair each tolerated false-positive share with the positivity ratio it requires."""
    targets = [float(t) for t in targets]
    if not targets:
        raise ValueError("at least one target is required")
    if any(b < a for a, b in zip(targets, targets[1:])):
        raise ValueError(f"targets must be sorted, got {targets}")
    return [(t, min_ratio_for_target(alpha, t)) for t in targets]
