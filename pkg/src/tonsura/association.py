"""Pearson, Spearman, and Somers d_BA on full or tonsured subsets.

All three measures recompute their internals (means, ranks, pair
counts) on the surviving subset only, so tonsured values are honest
statistics of the survivors rather than plug-ins of full-sample
moments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np
import scipy.stats

from .engine import TonsureResult
from .errors import ConstantSubset, DegenerateSubset
from .series import LOW_CONFIDENCE_FLOOR, PairedSeries

if TYPE_CHECKING:  # import cycle: scans imports this module at runtime
    from .scans import ScanCurve

__all__ = [
    "AssociationValue",
    "MEASURES",
    "pearson",
    "somers_dba",
    "spearman",
    "tonsured_scan",
]

_SOMERS_CHUNK = 512


@dataclass(frozen=True)
class AssociationValue:
    measure: str
    value: float
    n_used: int
    tonsure_percent: float = 0.0
    low_confidence: bool = False

    def __post_init__(self) -> None:
        if self.measure not in ("pearson", "spearman", "somers_dba"):
            raise ValueError(f"unknown measure {self.measure!r}")
        if self.n_used < 2:
            raise ValueError("association values need at least 2 points")
        if abs(self.value) > 1.0:
            raise ValueError(f"{self.measure} out of [-1, 1]: {self.value!r}")


def _subset_arrays(
    series: PairedSeries, subset: np.ndarray | None
) -> tuple[np.ndarray, np.ndarray]:
    if subset is None:
        return series.xs, series.ys
    idx = np.asarray(subset, dtype=np.intp)
    if idx.size < 2:
        raise ValueError("subset must contain at least 2 indices")
    return series.xs[idx], series.ys[idx]


def _product_moment(xs: np.ndarray, ys: np.ndarray, what: str) -> float:
    xc = xs - xs.mean()
    yc = ys - ys.mean()
    num = float(np.dot(xc, yc))
    vx = float(np.dot(xc, xc))
    vy = float(np.dot(yc, yc))
    if vx == 0.0 or vy == 0.0:
        which = "x" if vx == 0.0 else "y"
        raise ConstantSubset(f"{which} marginal is constant on the {what} subset")
    # perfectly correlated inputs must give exactly +-1, not 1 +- 1 ulp
    if num * num >= vx * vy:
        return math.copysign(1.0, num)
    return num / math.sqrt(vx * vy)


def _flags(n_used: int, percent: float) -> dict:
    return {
        "tonsure_percent": percent,
        "low_confidence": n_used < LOW_CONFIDENCE_FLOOR,
    }


def pearson(
    series: PairedSeries,
    subset: np.ndarray | None = None,
    tonsure_percent: float = 0.0,
) -> AssociationValue:
    """Product-moment correlation with means taken over the subset."""
    xs, ys = _subset_arrays(series, subset)
    value = _product_moment(xs, ys, "pearson")
    return AssociationValue("pearson", value, len(xs), **_flags(len(xs), tonsure_percent))


def spearman(
    series: PairedSeries,
    subset: np.ndarray | None = None,
    tonsure_percent: float = 0.0,
) -> AssociationValue:
    """Pearson applied to mid-ranks recomputed on the subset.

    Recomputing ranks inside the subset matters: survivor ranks from
    the full sample would leave gaps and shift the rank mean away from
    (m+1)/2.  Mid-ranks handle ties; empirical centering makes the rank
    mean constant drop out of the products.
    """
    xs, ys = _subset_arrays(series, subset)
    rx = scipy.stats.rankdata(xs, method="average")
    ry = scipy.stats.rankdata(ys, method="average")
    value = _product_moment(rx, ry, "spearman")
    return AssociationValue("spearman", value, len(xs), **_flags(len(xs), tonsure_percent))


def _pair_counts(xs: np.ndarray, ys: np.ndarray) -> tuple[int, int, int, int]:
    """Count ordered pairs i != j: (concordant, discordant, x-tied, y-tied).

    Signs of value differences equal signs of recomputed-rank
    differences, so the counts are taken on the values directly.  Pairs
    tied in both coordinates (including i == j) land in no bucket.
    """
    n = len(xs)
    c = d = tx = ty = 0
    for start in range(0, n, _SOMERS_CHUNK):
        xi = xs[start : start + _SOMERS_CHUNK, None]
        yi = ys[start : start + _SOMERS_CHUNK, None]
        gx = xi > xs[None, :]
        lx = xi < xs[None, :]
        gy = yi > ys[None, :]
        ly = yi < ys[None, :]
        c += np.count_nonzero((gx & gy) | (lx & ly))
        d += np.count_nonzero((gx & ly) | (lx & gy))
        ex = ~(gx | lx)
        ey = ~(gy | ly)
        tx += np.count_nonzero(ex & ~ey)
        ty += np.count_nonzero(ey & ~ex)
    return int(c), int(d), int(tx), int(ty)


def somers_dba(
    series: PairedSeries,
    subset: np.ndarray | None = None,
    tonsure_percent: float = 0.0,
) -> AssociationValue:
    """Symmetric Somers measure S = (S_X + S_Y) / 2 on the subset.

    S_X = (C - D) / (C + D + T_X) and S_Y likewise with T_Y, where C and
    D count ordered pairs differing in both coordinates, T_X counts
    x-tied pairs whose y differ, and T_Y the reverse.  Cost is O(m^2)
    in the subset size, vectorized in chunks.

    Raises DegenerateSubset when either denominator is zero (constant
    marginal, or every pair tied in at least one coordinate the same
    way).
    """
    xs, ys = _subset_arrays(series, subset)
    c, d, tx, ty = _pair_counts(xs, ys)
    den_x = c + d + tx
    den_y = c + d + ty
    if den_x == 0 or den_y == 0:
        which = "S_X" if den_x == 0 else "S_Y"
        raise DegenerateSubset(f"no usable pairs for {which} on {len(xs)} points")
    value = 0.5 * ((c - d) / den_x + (c - d) / den_y)
    return AssociationValue("somers_dba", value, len(xs), **_flags(len(xs), tonsure_percent))


MEASURES = {
    "pearson": pearson,
    "spearman": spearman,
    "somers_dba": somers_dba,
}


def tonsured_scan(
    series: PairedSeries,
    grid: Sequence[TonsureResult],
    measures: Sequence[str],
) -> dict[str, "ScanCurve"]:
    """Evaluate measures at every tonsure level of a precomputed grid.

    Degenerate survivor sets (constant marginal, no usable Somers
    pairs) become gaps in the affected curve instead of aborting the
    whole scan.
    """
    from .scans import ScanCurve, ScanPoint  # deferred: scans imports us

    unknown = [m for m in measures if m not in MEASURES]
    if unknown:
        raise ValueError(f"unknown measures: {unknown}")
    points: dict[str, list[ScanPoint]] = {m: [] for m in measures}
    for cut in grid:
        for m in measures:
            try:
                av = MEASURES[m](series, cut.survivors, cut.percent)
                pt = ScanPoint(
                    x=cut.percent,
                    value=av.value,
                    n_used=av.n_used,
                    low_confidence=av.low_confidence,
                )
            except (ConstantSubset, DegenerateSubset) as exc:
                pt = ScanPoint(
                    x=cut.percent,
                    value=None,
                    n_used=cut.survivor_count,
                    low_confidence=cut.low_confidence,
                    gap_reason=type(exc).__name__,
                )
            points[m].append(pt)
    metric = grid[0].metric if grid else "l2"
    space = grid[0].space if grid else "values"
    return {
        m: ScanCurve(
            kind="tonsure_assoc",
            measure=m,
            metric=metric,
            space=space,
            points=tuple(points[m]),
        )
        for m in measures
    }
