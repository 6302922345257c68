"""Projection distances of the rows of a point cloud, and the depth p-value.

Each nonzero centred row defines a direction. Every row is projected onto
every direction. The projected lengths are scaled by their ideal-fourths
interquartile range. A row's distance is its largest scaled length over all
directions.
"""

from dataclasses import dataclass

import numpy as np

from .quantiles import _fourths_position

__all__ = [
    "DegenerateCloudError",
    "DepthReport",
    "as_cloud",
    "marginal_medians",
    "projection_distances",
    "depth_pvalue",
]

# interquartile ranges at or below this fraction of the largest projected
# length in the same direction are treated as zero
SCALE_RTOL = 1e-12


class DegenerateCloudError(ValueError):
    """No admissible projection direction exists for the cloud."""


@dataclass(frozen=True)
class DepthReport:
    center: np.ndarray
    distances: np.ndarray
    skipped_directions: int = 0


def as_cloud(y):
    y = np.asarray(y, dtype=float)
    if y.ndim == 1:
        y = y[:, None]
    if y.ndim != 2:
        raise ValueError(f"cloud must be an n x p matrix, got shape {y.shape}")
    if y.shape[0] < 2 or y.shape[1] < 1:
        raise ValueError(f"cloud needs n >= 2 rows and p >= 1 columns, got {y.shape}")
    if not np.all(np.isfinite(y)):
        raise ValueError("cloud contains non-finite values")
    return y


def marginal_medians(y):
    """Coordinate-wise sample medians of the rows of `y`."""
    y = as_cloud(y)
    ys = np.sort(y, axis=0)
    n = ys.shape[0]
    m = n // 2
    if n % 2:
        return ys[m].copy()
    return (ys[m - 1] + ys[m]) / 2.0


def _row_fourths(D):
    # ideal fourths of every row of D without a full sort
    n = D.shape[1]
    j, h = _fourths_position(n)
    if j < 1:
        raise ValueError(f"projection distances need at least 3 points, got {n}")
    k = n - j + 1
    kth = sorted({j - 1, j, k - 2, k - 1})
    P = np.partition(D, kth, axis=1)
    q1 = (1.0 - h) * P[:, j - 1] + h * P[:, j]
    q2 = (1.0 - h) * P[:, k - 1] + h * P[:, k - 2]
    return q1, q2


def projection_distances(y):
    """Projection distance of every row of `y` relative to the whole cloud.

    The cloud is centred on its marginal medians. A row equal to the centre
    defines no direction. A direction whose interquartile range is zero
    cannot scale anything. Both kinds are skipped, and a row's distance is
    the maximum over the remaining directions.

    Parameters
    ----------
    y : array_like, shape (n, p)
        The cloud; a 1-D input is read as n points in one dimension.
        Requires n >= 3.

    Returns
    -------
    DepthReport

    Raises
    ------
    DegenerateCloudError
        If every direction is skipped.
    """
    y = as_cloud(y)
    center = marginal_medians(y)
    U = y - center
    C = np.einsum("ij,ij->i", U, U)
    live = C > 0
    if not live.any():
        raise DegenerateCloudError("every row of the cloud coincides with its center")
    Ul = U[live]
    # |T_ij| = |U_i . U_j| / |U_i|
    D = np.abs(Ul @ U.T) / np.sqrt(C[live])[:, None]
    q1, q2 = _row_fourths(D)
    scale = q2 - q1
    ok = scale > SCALE_RTOL * D.max(axis=1)
    if not ok.any():
        raise DegenerateCloudError(
            "every projection direction has a zero interquartile range; "
            "the cloud is too heavily tied to measure depth"
        )
    dist = (D[ok] / scale[ok][:, None]).max(axis=0)
    skipped = int(y.shape[0] - ok.sum())
    return DepthReport(center=center, distances=dist, skipped_directions=skipped)


def depth_pvalue(cloud_distances, null_distance):
    """Generalized p-value ``1 - mean(K_0 >= K_b)``.

    Parameters
    ----------
    cloud_distances : array_like
        Distances K_1, ..., K_B of the bootstrap points.
    null_distance : float
        Distance K_0 of the null point.
    """
    K = np.asarray(cloud_distances, dtype=float).ravel()
    if K.size < 1:
        raise ValueError("need at least one cloud distance")
    below = np.count_nonzero(null_distance >= K)
    return (K.size - below) / K.size
