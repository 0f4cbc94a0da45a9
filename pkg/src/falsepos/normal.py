"""Standard-normal pdf, cdf, upper tail and quantile.

All functions accept a float or a numpy array and return the same shape
(a plain ``float`` for scalar input).
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special

from .errors import DomainError

__all__ = ["std_pdf", "std_cdf", "std_sf", "std_quantile"]

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_SQRT2 = math.sqrt(2.0)

# Phi(-40) is far below the smallest subnormal double, so every representable
# probability has its quantile inside [-40, 0] (lower half).
_LOWER_BRACKET = -40.0
_MAX_NEWTON_STEPS = 100


def _as_finite(z, name="z"):
    arr = np.asarray(z, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite, got {z!r}")
    return arr


def _out(arr):
    return float(arr) if arr.ndim == 0 else arr


def std_pdf(z):
    """Density ``exp(-z**2 / 2) / sqrt(2 pi)``."""
    arr = _as_finite(z)
    return _out(_INV_SQRT_2PI * np.exp(-0.5 * arr * arr))


def std_cdf(z):
    """Lower-tail probability Phi(z).

    Evaluated through ``erfc`` on whichever side keeps the result away from
    cancellation, so the absolute error stays at the level of one ulp.
    """
    arr = _as_finite(z)
    lower = 0.5 * special.erfc(-arr / _SQRT2)
    upper = 1.0 - 0.5 * special.erfc(arr / _SQRT2)
    return _out(np.where(arr < 0.0, lower, upper))


def std_sf(z):
    """Upper-tail probability ``1 - Phi(z)``, accurate in the far right tail."""
    arr = _as_finite(z)
    return _out(0.5 * special.erfc(arr / _SQRT2))


def _lower_half_quantile(q):
    # Solve log Phi(z) = log q for q <= 1/2. log Phi is concave and increasing,
    # so Newton started at z = 0 jumps to the left of the root and then climbs
    # monotonically; the clamp keeps the first jump inside the bracket.
    z = np.zeros_like(q)
    target = np.log(q)
    active = np.ones(q.shape, dtype=bool)
    for _ in range(_MAX_NEWTON_STEPS):
        za = z[active]
        log_cdf = special.log_ndtr(za)
        # d/dz log Phi(z) = phi(z) / Phi(z), formed in log space to survive the tail
        slope = np.exp(-0.5 * za * za - math.log(math.sqrt(2.0 * math.pi)) - log_cdf)
        step = (log_cdf - target[active]) / slope
        new = np.clip(za - step, _LOWER_BRACKET, 0.0)
        moved = np.abs(new - za)
        z[active] = new
        done = moved <= 1e-15 * np.maximum(1.0, np.abs(new))
        idx = np.flatnonzero(active)
        active[idx[done]] = False
        if not active.any():
            break
    return z


def std_quantile(p):
    """Inverse of :func:`std_cdf` on the open interval (0, 1).

    Raises
    ------
    DomainError
        If any ``p`` is not strictly between 0 and 1.
    """
    arr = np.asarray(p, dtype=float)
    if not np.all((arr > 0.0) & (arr < 1.0)):
        raise DomainError(f"quantile needs 0 < p < 1, got {p!r}")
    upper = arr > 0.5
    # 1 - p is exact for p >= 1/2
    q = np.where(upper, 1.0 - arr, arr)
    z = _lower_half_quantile(np.atleast_1d(q)).reshape(q.shape)
    return _out(np.where(upper, -z, z))
