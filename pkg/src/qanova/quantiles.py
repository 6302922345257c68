"""Quantile estimators: sample median, Harrell-Davis, ideal fourths.

None of these need special handling for tied values. The Harrell-Davis
estimate is a convex combination of every order statistic, so its sampling
distribution stays close to continuous even when the data are heavily tied.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .special import reg_inc_beta

__all__ = [
    "HDWeights",
    "as_sample",
    "check_quantile",
    "sample_median",
    "hd_weights",
    "hd_estimate",
    "hd_estimate_sorted",
    "ideal_fourths",
]

_RENORM_TOL = 1e-9


def as_sample(x, name="sample"):
    """Return `x` as a 1-D float array, checking it is nonempty and finite."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError(f"{name} is empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def check_quantile(q):
    q = float(q)
    if not 0.0 < q < 1.0:
        raise ValueError(f"quantile must lie strictly between 0 and 1, got {q!r}")
    return q


def sample_median(x):
    """Usual sample median: middle order statistic, or mean of the two middle ones."""
    xs = np.sort(as_sample(x))
    n = xs.size
    m = n // 2
    if n % 2:
        return float(xs[m])
    return float((xs[m - 1] + xs[m]) / 2.0)


@dataclass(frozen=True)
class HDWeights:
    """Harrell-Davis weights for sample size `n` and quantile `q`.

    ``w[i-1]`` is the Beta(a, b) probability of ((i-1)/n, i/n], with
    ``a = (n+1)q`` and ``b = (n+1)(1-q)``.
    """

    n: int
    q: float
    w: np.ndarray

    @property
    def a(self):
        return (self.n + 1) * self.q

    @property
    def b(self):
        return (self.n + 1) * (1.0 - self.q)


@lru_cache(maxsize=512)
def _hd_weights_cached(n, q):
    a = (n + 1) * q
    b = (n + 1) * (1.0 - q)
    cdf = np.array([reg_inc_beta(i / n, a, b) for i in range(n + 1)])
    w = np.diff(cdf)
    # differences of a monotone CDF; clip rounding-level negatives
    w = np.maximum(w, 0.0)
    total = w.sum()
    if abs(total - 1.0) > _RENORM_TOL:
        raise ArithmeticError(f"Harrell-Davis weights sum to {total!r} for n={n}, q={q}")
    w = w / total
    w.setflags(write=False)
    return w


def hd_weights(n, q):
    """Compute the Harrell-Davis weight vector.

    Results are memoized on ``(n, q)``; the returned array is read-only.

    Parameters
    ----------
    n : int
        Sample size, at least 1.
    q : float
        Quantile in (0, 1).

    Returns
    -------
    HDWeights
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    q = check_quantile(q)
    return HDWeights(n=n, q=q, w=_hd_weights_cached(n, q))


def hd_estimate_sorted(xs, weights):
    """Harrell-Davis estimate(s) from data already sorted along the last axis.

    `xs` may be 1-D (one sample) or 2-D (one sample per row, e.g. bootstrap
    replicates), and `weights` is an :class:`HDWeights` or a bare weight array.
    """
    w = weights.w if isinstance(weights, HDWeights) else np.asarray(weights)
    if xs.shape[-1] != w.size:
        raise ValueError(f"sample size {xs.shape[-1]} does not match {w.size} weights")
    return xs @ w


def hd_estimate(x, q, weights=None):
    """Harrell-Davis estimate of the `q`th quantile of `x`.

    Parameters
    ----------
    x : array_like
        Sample values; not modified.
    q : float
        Quantile in (0, 1).
    weights : HDWeights, optional
        Precomputed weights for ``(len(x), q)``.

    Returns
    -------
    float
    """
    xs = np.sort(as_sample(x))
    if weights is None:
        weights = hd_weights(xs.size, q)
    elif weights.n != xs.size or weights.q != check_quantile(q):
        raise ValueError("supplied weights do not match the sample size and quantile")
    est = float(hd_estimate_sorted(xs, weights))
    # keep the convex-combination bound exact despite rounding
    return min(max(est, float(xs[0])), float(xs[-1]))


def _fourths_position(n):
    pos = n / 4.0 + 5.0 / 12.0
    j = int(np.floor(pos))
    return j, pos - j


def ideal_fourths(x):
    """Lower and upper ideal fourths of `x`.

    With ``j = floor(n/4 + 5/12)`` and ``h = n/4 + 5/12 - j`` the lower
    fourth interpolates X_(j), X_(j+1) and the upper fourth X_(k), X_(k-1)
    with ``k = n - j + 1``, both with weights (1-h, h).

    Requires ``n >= 3``: for n = 2 the lower index j is 0.
    """
    xs = np.sort(as_sample(x))
    return _ideal_fourths_sorted(xs)


def _ideal_fourths_sorted(xs):
    n = xs.shape[-1]
    j, h = _fourths_position(n)
    if j < 1:
        raise ValueError(f"ideal fourths need at least 3 observations, got {n}")
    k = n - j + 1
    q1 = (1.0 - h) * xs[..., j - 1] + h * xs[..., j]
    q2 = (1.0 - h) * xs[..., k - 1] + h * xs[..., k - 2]
    if np.ndim(q1) == 0:
        return float(q1), float(q2)
    return q1, q2
