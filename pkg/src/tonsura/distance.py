"""Per-point inlier distances under the L2 and R1 metrics.

The distance of each observation from the centroid is the index used to
decide which points are "inliers".  Two metrics are supported:

* ``l2``: Euclidean distance from the mean after standardizing each axis
  by its sample standard deviation, so it is invariant under positive
  affine transforms of either marginal.
* ``r1``: sum of absolute deviations of the mid-ranks from the center
  rank n/2, so it is invariant under strictly monotone transforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .series import Centroid, PairedSeries, RankedSeries

__all__ = ["DistanceVector", "l2_distances", "r1_distances"]


@dataclass(frozen=True)
class DistanceVector:
    """Distances from the centroid, plus a deterministic sort order.

    ``order`` sorts observations by ascending distance; ties keep their
    original index order, which makes downstream cutoffs reproducible.
    ``space`` records whether the distances were computed on raw values
    or on rank (copula) coordinates.
    """

    metric: str
    deltas: np.ndarray
    order: np.ndarray
    space: str = "values"

    def __post_init__(self) -> None:
        deltas = np.asarray(self.deltas, dtype=np.float64).copy()
        deltas.flags.writeable = False
        object.__setattr__(self, "deltas", deltas)
        order = np.asarray(self.order, dtype=np.intp).copy()
        order.flags.writeable = False
        object.__setattr__(self, "order", order)
        if self.metric not in ("l2", "r1"):
            raise ValueError(f"unknown metric {self.metric!r}")
        if self.space not in ("values", "ranks"):
            raise ValueError(f"unknown space {self.space!r}")
        if len(self.deltas) != len(self.order):
            raise ValueError("deltas and order length mismatch")

    @property
    def n(self) -> int:
        return len(self.deltas)


def _make_vector(metric: str, deltas: np.ndarray, space: str) -> DistanceVector:
    order = np.argsort(deltas, kind="stable")
    return DistanceVector(metric=metric, deltas=deltas, order=order, space=space)


def l2_distances(
    series: PairedSeries, c: Centroid, space: str = "values"
) -> DistanceVector:
    """Standardized Euclidean distance of each point from the mean.

    delta_j = sqrt(((x_j - cx)/sx)^2 + ((y_j - cy)/sy)^2)

    Requires a mean-mode centroid with nonzero scales.
    """
    if c.mode != "mean":
        raise ValueError("l2 distances need a mean-mode centroid")
    if not c.sx or not c.sy:
        raise ValueError("l2 distances need positive scales on the centroid")
    zx = (series.xs - c.cx) / c.sx
    zy = (series.ys - c.cy) / c.sy
    return _make_vector("l2", np.hypot(zx, zy), space)


def r1_distances(ranked: RankedSeries, space: str = "values") -> DistanceVector:
    """Rank-space L1 distance of each point from the center rank.

    delta_j = |rank(x_j) - n/2| + |rank(y_j) - n/2|

    The center is taken at n/2; the constant offset from the exact rank
    mean (n+1)/2 shifts all distances equally and cannot change their
    ordering, which is all tonsuring consumes.
    """
    half = ranked.n / 2.0
    deltas = np.abs(ranked.ranks_x - half) + np.abs(ranked.ranks_y - half)
    return _make_vector("r1", deltas, space)
