"""Source distributions for Type I error simulations.

g-and-h transforms of a standard normal, beta-binomial distributions on
0..m, and beta-binomials whose upper tail has been reshaped while leaving
the lower part of the CDF (and hence the median) untouched.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from .special import ln_beta
from .streams import make_rng, open_uniform

__all__ = [
    "GHParams",
    "BetaBinParams",
    "TailModParams",
    "DiscretePmf",
    "gh_transform",
    "sample_gh",
    "beta_binomial_pmf",
    "discrete_quantile",
    "sample_discrete",
    "tail_modified_pmf",
]

_RENORM_TOL = 1e-9


@dataclass(frozen=True)
class GHParams:
    g: float = 0.0
    h: float = 0.0

    def __post_init__(self):
        if not (self.g >= 0 and self.h >= 0):
            raise ValueError(f"g and h must be nonnegative, got g={self.g}, h={self.h}")

    def draw(self, n, rng):
        return sample_gh(n, self, rng)


@dataclass(frozen=True)
class BetaBinParams:
    """Beta-binomial on 0..m; r weights the lower end, s the upper end."""

    m: int
    r: float
    s: float

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m}")
        if not (self.r > 0 and self.s > 0):
            raise ValueError(f"r and s must be positive, got r={self.r}, s={self.s}")

    def pmf(self):
        return beta_binomial_pmf(self)

    def draw(self, n, rng):
        return sample_discrete(self.pmf(), n, rng)


@dataclass(frozen=True)
class TailModParams:
    """Beta-binomial whose atoms at and above `cut` are flattened or reversed."""

    base: BetaBinParams
    variant: str = "flattened"
    cut: int = 15

    def __post_init__(self):
        if self.variant not in ("flattened", "reversed"):
            raise ValueError(f"variant must be 'flattened' or 'reversed', got {self.variant!r}")
        if int(self.cut) != self.cut or not 0 < self.cut <= self.base.m:
            raise ValueError(f"cut must be an integer in 1..{self.base.m}, got {self.cut}")

    def pmf(self):
        return tail_modified_pmf(self.base, self.variant, self.cut)

    def draw(self, n, rng):
        return sample_discrete(self.pmf(), n, rng)


@dataclass(frozen=True)
class DiscretePmf:
    probs: np.ndarray

    @property
    def m(self):
        return self.probs.size - 1

    @property
    def support(self):
        return np.arange(self.probs.size)

    def cdf(self):
        c = np.cumsum(self.probs)
        c[-1] = 1.0
        return c


def _normalized(probs):
    total = probs.sum()
    if abs(total - 1.0) > _RENORM_TOL:
        raise ArithmeticError(f"probabilities sum to {total!r}")
    probs = probs / total
    probs.setflags(write=False)
    return DiscretePmf(probs=probs)


def gh_transform(z, p):
    """Map standard normal values `z` to the g-and-h scale.

    ``(exp(g z) - 1) / g * exp(h z^2 / 2)`` for g > 0, and
    ``z * exp(h z^2 / 2)`` for g = 0.
    """
    z = np.asarray(z, dtype=float)
    if p.g > 0:
        w = np.expm1(p.g * z) / p.g
    else:
        w = z.copy() if z.ndim else z
    if p.h > 0:
        w = w * np.exp(p.h * z * z / 2.0)
    return w if np.ndim(w) else float(w)


def sample_gh(n, p, seed):
    """`n` g-and-h draws by inverse-CDF standard normals.

    `seed` is an int or a ``numpy.random.Generator``.
    """
    rng = make_rng(seed)
    z = ndtri(open_uniform(rng, int(n)))
    return np.asarray(gh_transform(z, p), dtype=float)


def beta_binomial_pmf(p):
    """Exact beta-binomial probabilities on 0..m, computed in log space.

    ``P(x) = B(x + r, m - x + s) / ((m + 1) B(m - x + 1, x + 1) B(r, s))``.
    With r = 1 and s > 1 the pmf is decreasing.
    """
    m = int(p.m)
    lp = np.array(
        [
            ln_beta(x + p.r, m - x + p.s) - np.log(m + 1) - ln_beta(m - x + 1, x + 1) - ln_beta(p.r, p.s)
            for x in range(m + 1)
        ]
    )
    return _normalized(np.exp(lp))


def discrete_quantile(pmf, prob):
    """Smallest support point x with CDF(x) >= `prob`."""
    if not 0.0 < prob < 1.0:
        raise ValueError(f"prob must lie strictly between 0 and 1, got {prob}")
    return int(np.searchsorted(pmf.cdf(), prob, side="left"))


def sample_discrete(pmf, n, seed):
    """`n` inverse-CDF draws from `pmf`, returned as floats."""
    rng = make_rng(seed)
    u = open_uniform(rng, int(n))
    return np.searchsorted(pmf.cdf(), u, side="left").astype(float)


def tail_modified_pmf(base, variant, cut):
    """Reshape the atoms ``x >= cut`` of a beta-binomial pmf.

    ``"flattened"`` spreads the tail mass evenly over those atoms and
    ``"reversed"`` reverses their order. Atoms below `cut` keep their
    probabilities, so the CDF is unchanged below `cut`.
    """
    params = TailModParams(base=base, variant=variant, cut=cut)
    P = np.array(beta_binomial_pmf(params.base).probs)
    tail = P[cut:]
    if variant == "flattened":
        P[cut:] = tail.sum() / tail.size
    else:
        P[cut:] = tail[::-1]
    return _normalized(P)
