"""Core data types for paired samples and their rank/centroid derivations.

Everything downstream (distances, tonsuring, association measures, tail
curves) consumes these types.  All of them are immutable after
construction and safe to share across threads; the operations here are
pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np
from scipy.stats import rankdata

from .errors import ConstantSeries

__all__ = [
    "PairedSeries",
    "RankedSeries",
    "Centroid",
    "compute_ranks",
    "compute_centroid",
]

LOW_CONFIDENCE_FLOOR = 24
"""Below this many observations a statistic is flagged low-confidence."""


def _frozen_array(values: Any) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-d sequence, got shape {arr.shape}")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class PairedSeries:
    """Aligned (x, y) observations, the universal input.

    Parameters
    ----------
    xs, ys : array-like of float
        Equal-length marginals, at least two observations, all finite.
    labels : pair of str
        Display names for the two marginals.
    meta : mapping
        Free-form provenance (source file, transform applied, date range).
    """

    xs: np.ndarray
    ys: np.ndarray
    labels: tuple[str, str] = ("x", "y")
    meta: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "xs", _frozen_array(self.xs))
        object.__setattr__(self, "ys", _frozen_array(self.ys))
        if len(self.xs) != len(self.ys):
            raise ValueError(
                f"marginals differ in length: {len(self.xs)} vs {len(self.ys)}"
            )
        if len(self.xs) < 2:
            raise ValueError("a paired series needs at least two observations")
        if not (np.isfinite(self.xs).all() and np.isfinite(self.ys).all()):
            raise ValueError("paired series values must all be finite")
        object.__setattr__(self, "labels", (str(self.labels[0]), str(self.labels[1])))
        object.__setattr__(self, "meta", dict(self.meta))

    @property
    def n(self) -> int:
        return len(self.xs)

    def take(self, indices: np.ndarray) -> "PairedSeries":
        """Subset by original-index positions, preserving order and labels."""
        idx = np.asarray(indices, dtype=np.intp)
        return PairedSeries(self.xs[idx], self.ys[idx], self.labels, self.meta)


@dataclass(frozen=True)
class RankedSeries:
    """Mid-rank vectors for both marginals, with tie metadata.

    Mid-ranks average the rank positions inside each tied group, so the
    rank sum is conserved at n(n+1)/2 and untied data gets a permutation
    of 1..n.  ``tie_groups_x``/``tie_groups_y`` hold the sizes of groups
    with two or more tied values.
    """

    ranks_x: np.ndarray
    ranks_y: np.ndarray
    tie_groups_x: tuple[int, ...] = ()
    tie_groups_y: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "ranks_x", _frozen_array(self.ranks_x))
        object.__setattr__(self, "ranks_y", _frozen_array(self.ranks_y))
        if len(self.ranks_x) != len(self.ranks_y):
            raise ValueError("rank vectors differ in length")

    @property
    def n(self) -> int:
        return len(self.ranks_x)

    @property
    def has_ties(self) -> bool:
        return bool(self.tie_groups_x or self.tie_groups_y)


@dataclass(frozen=True)
class Centroid:
    """Center (and, in mean mode, scale) of a paired series.

    ``mode="mean"`` carries sample standard deviations (n-1 denominator)
    as scales; ``mode="median"`` carries coordinate-wise medians and
    leaves the scales unset, since rank distances need no scale.
    """

    mode: str
    cx: float
    cy: float
    sx: float | None = None
    sy: float | None = None

    def __post_init__(self) -> None:
        if self.mode not in ("mean", "median"):
            raise ValueError(f"unknown centroid mode {self.mode!r}")


def _tie_group_sizes(values: np.ndarray) -> tuple[int, ...]:
    _, counts = np.unique(values, return_counts=True)
    return tuple(int(c) for c in counts[counts > 1])


def compute_ranks(series: PairedSeries) -> RankedSeries:
    """Mid-ranks of both marginals.

    Tied values share the average of the rank positions they occupy, so
    the rank sum stays exactly n(n+1)/2 per marginal.
    """
    return RankedSeries(
        ranks_x=rankdata(series.xs, method="average"),
        ranks_y=rankdata(series.ys, method="average"),
        tie_groups_x=_tie_group_sizes(series.xs),
        tie_groups_y=_tie_group_sizes(series.ys),
    )


def compute_centroid(series: PairedSeries, mode: str = "mean") -> Centroid:
    """Centroid of the joint sample: means+scales or coordinate-wise medians.

    Raises
    ------
    ConstantSeries
        In mean mode, when either marginal has zero sample standard
        deviation (standardized distances would be undefined).
    """
    if mode == "mean":
        sx = float(np.std(series.xs, ddof=1))
        sy = float(np.std(series.ys, ddof=1))
        if sx == 0.0 or sy == 0.0:
            which = series.labels[0] if sx == 0.0 else series.labels[1]
            raise ConstantSeries(f"marginal {which!r} is constant; scale is zero")
        return Centroid(
            mode="mean",
            cx=float(np.mean(series.xs)),
            cy=float(np.mean(series.ys)),
            sx=sx,
            sy=sy,
        )
    if mode == "median":
        return Centroid(
            mode="median",
            cx=float(np.median(series.xs)),
            cy=float(np.median(series.ys)),
        )
    raise ValueError(f"unknown centroid mode {mode!r}")
