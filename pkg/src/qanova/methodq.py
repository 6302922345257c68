"""Global test that J independent groups share a common quantile.

Each group is resampled with replacement, and the Harrell-Davis estimates
of all pairwise differences are collected into a bootstrap cloud. The zero
vector is appended as one more row. The p-value is the share of bootstrap
points that lie at least as deep as zero in the cloud, by projection
distance.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .depth import DegenerateCloudError, depth_pvalue, projection_distances
from .quantiles import as_sample, check_quantile, hd_estimate, hd_weights, hd_estimate_sorted
from .streams import BOOTSTRAP, QUANTILE, derive_seed, make_rng

__all__ = [
    "DEFAULT_B",
    "DEFAULT_SEED",
    "DeltaCloud",
    "QTestResult",
    "as_groups",
    "pair_labels",
    "bootstrap_deltas",
    "qanova",
    "qanova_multi",
]

DEFAULT_B = 600
DEFAULT_SEED = 20140101


def as_groups(data, min_size=1):
    """Validate grouped data and return a list of float arrays."""
    if isinstance(data, np.ndarray) and data.ndim == 2:
        data = list(data)
    groups = [as_sample(g, name=f"group {j + 1}") for j, g in enumerate(data)]
    if len(groups) < 2:
        raise ValueError(f"need at least 2 groups, got {len(groups)}")
    for j, g in enumerate(groups):
        if g.size < min_size:
            raise ValueError(f"group {j + 1} has {g.size} observation(s); at least {min_size} required")
    return groups


def pair_labels(J):
    """Column order of the pairwise differences: (j, k), j < k, lexicographic."""
    return list(combinations(range(J), 2))


@dataclass(frozen=True)
class DeltaCloud:
    """Bootstrap pairwise differences; the last of the B + 1 rows is zero."""

    G: np.ndarray
    pairs: list

    @property
    def B(self):
        return self.G.shape[0] - 1

    @property
    def L(self):
        return self.G.shape[1]

    def to_text(self):
        """Tab-separated rows, one per line, 17 significant digits."""
        return "".join("\t".join(repr(float(v)) for v in row) + "\n" for row in self.G)

    @classmethod
    def from_text(cls, text):
        rows = [line.split("\t") for line in text.splitlines() if line.strip()]
        G = np.array([[float(v) for v in row] for row in rows])
        L = G.shape[1]
        J = int(round((1 + np.sqrt(1 + 8 * L)) / 2))
        if J * (J - 1) // 2 != L:
            raise ValueError(f"{L} columns is not a pairwise-difference count")
        return cls(G=G, pairs=pair_labels(J))


@dataclass(frozen=True)
class QTestResult:
    q: float
    estimates: np.ndarray
    deltas: np.ndarray
    p_value: float
    B: int
    seed: int
    skipped_directions: int = 0
    null_distance: float = float("nan")
    pairs: list = field(default_factory=list)

    def as_record(self):
        """Plain-Python dict suitable for JSON output."""
        return {
            "q": self.q,
            "estimates": [float(v) for v in self.estimates],
            "pairs": [[j + 1, k + 1] for j, k in self.pairs],
            "deltas": [float(v) for v in self.deltas],
            "p_value": self.p_value,
            "B": self.B,
            "seed": self.seed,
            "skipped_directions": self.skipped_directions,
        }


def _bootstrap_estimates(x, q, B, rng):
    n = x.size
    idx = rng.integers(0, n, size=(B, n))
    xs = np.sort(x[idx], axis=1)
    return hd_estimate_sorted(xs, hd_weights(n, q))


def bootstrap_deltas(data, q, B=DEFAULT_B, seed=DEFAULT_SEED, group_keys=None, workers=1):
    """Build the bootstrap cloud of pairwise Harrell-Davis differences.

    Parameters
    ----------
    data : sequence of array_like
        J >= 2 independent samples, each with at least 2 observations.
    q : float
        Quantile in (0, 1).
    B : int
        Number of bootstrap replicates.
    seed : int
        Master seed.
    group_keys : sequence of int, optional
        Stream key of each group; defaults to ``0, ..., J-1``. A group's
        resamples depend only on ``(seed, key)``, never on its position.
    workers : int
        Threads used to resample groups; output does not depend on it.

    Returns
    -------
    DeltaCloud
    """
    groups = as_groups(data, min_size=2)
    q = check_quantile(q)
    B = int(B)
    if B < 1:
        raise ValueError(f"B must be at least 1, got {B}")
    J = len(groups)
    if group_keys is None:
        group_keys = range(J)
    group_keys = [int(k) for k in group_keys]
    if len(group_keys) != J or len(set(group_keys)) != J:
        raise ValueError("group_keys must hold one distinct key per group")

    def one(j):
        return _bootstrap_estimates(groups[j], q, B, make_rng(seed, BOOTSTRAP, group_keys[j]))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            cols = list(pool.map(one, range(J)))
    else:
        cols = [one(j) for j in range(J)]
    theta = np.column_stack(cols)
    pairs = pair_labels(J)
    left = [j for j, _ in pairs]
    right = [k for _, k in pairs]
    G = np.zeros((B + 1, len(pairs)))
    G[:B] = theta[:, left] - theta[:, right]
    return DeltaCloud(G=G, pairs=pairs)


def qanova(data, q=0.5, B=DEFAULT_B, seed=DEFAULT_SEED, group_keys=None, workers=1):
    """Test that all groups share the same `q`th quantile.

    Returns
    -------
    QTestResult
        Harrell-Davis estimates on the original samples, their pairwise
        differences, and the bootstrap depth p-value.

    Raises
    ------
    DegenerateCloudError
        If the bootstrap cloud is too tied for projection depth, e.g. when
        every group is (nearly) constant.
    """
    groups = as_groups(data, min_size=2)
    q = check_quantile(q)
    cloud = bootstrap_deltas(groups, q, B=B, seed=seed, group_keys=group_keys, workers=workers)
    try:
        report = projection_distances(cloud.G)
    except DegenerateCloudError as exc:
        sizes = ", ".join(str(g.size) for g in groups)
        distinct = ", ".join(str(np.unique(g).size) for g in groups)
        raise DegenerateCloudError(
            f"{exc} (q={q}; group sizes {sizes}; distinct values per group {distinct}). "
            "Heavy ties or tiny samples leave no spread in the bootstrap differences."
        ) from exc
    K = report.distances
    estimates = np.array([hd_estimate(g, q) for g in groups])
    left = [j for j, _ in cloud.pairs]
    right = [k for _, k in cloud.pairs]
    return QTestResult(
        q=q,
        estimates=estimates,
        deltas=estimates[left] - estimates[right],
        p_value=depth_pvalue(K[:-1], K[-1]),
        B=cloud.B,
        seed=int(seed),
        skipped_directions=report.skipped_directions,
        null_distance=float(K[-1]),
        pairs=cloud.pairs,
    )


def qanova_multi(data, qs=(0.25, 0.5, 0.75), B=DEFAULT_B, seed=DEFAULT_SEED, group_keys=None, workers=1):
    """Run :func:`qanova` at several quantiles, unadjusted.

    The test at ``qs[t]`` uses seed ``derive_seed(seed, QUANTILE, t)``, so
    resampling is independent across quantiles.
    """
    qs = [check_quantile(q) for q in qs]
    if not qs:
        raise ValueError("need at least one quantile")
    if len(set(qs)) != len(qs):
        raise ValueError("quantiles must be distinct")
    groups = as_groups(data, min_size=2)
    return [
        qanova(groups, q, B=B, seed=derive_seed(seed, QUANTILE, t), group_keys=group_keys, workers=workers)
        for t, q in enumerate(qs)
    ]
