"""Inlier removal: cut the points closest to the centroid, keep the rest.

Tonsuring removes the T smallest-distance observations ("inliers") and
reports the surviving subset together with the cutoff distance and the
realized removal percentage 100*T/n.  It is the opposite of trimming:
the extremes stay, the center goes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distance import DistanceVector
from .errors import InvalidPercent, TooFewSurvivors
from .series import LOW_CONFIDENCE_FLOOR

__all__ = ["TonsureResult", "tonsure_by_percent", "tonsure_grid"]


@dataclass(frozen=True)
class TonsureResult:
    """Outcome of one tonsure cut.

    ``survivors`` holds original indices in ascending order.  Distance
    ties at the cutoff are broken by original index, so the survivor
    count is exact; when such ties straddle the cutoff some survivors
    share ``cutoff_delta`` with removed points.
    """

    survivors: np.ndarray
    removed_count: int
    cutoff_delta: float
    percent: float
    metric: str
    space: str
    low_confidence: bool = False

    def __post_init__(self) -> None:
        surv = np.asarray(self.survivors, dtype=np.intp).copy()
        surv.flags.writeable = False
        object.__setattr__(self, "survivors", surv)

    @property
    def survivor_count(self) -> int:
        return len(self.survivors)


def _removed_count(n: int, percent: float) -> int:
    # round half away from zero; round() would flip on banker's ties
    return int(math.floor(n * percent / 100.0 + 0.5))


def tonsure_by_percent(dist: DistanceVector, percent: float) -> TonsureResult:
    """Remove the requested percentage of smallest-distance points.

    The removal count is T = round(n * percent / 100); the realized
    percentage 100*T/n is reported (it can differ from the request by
    less than 100/(2n)).  The cutoff distance is the largest removed
    delta, or 0 when nothing is removed.

    Raises
    ------
    InvalidPercent
        When ``percent`` is outside [0, 100).
    TooFewSurvivors
        When fewer than two points would remain.
    """
    if not (0.0 <= percent < 100.0) or not math.isfinite(percent):
        raise InvalidPercent(f"tonsure percent must be in [0, 100), got {percent}")
    n = dist.n
    removed = _removed_count(n, percent)
    if n - removed < 2:
        raise TooFewSurvivors(
            f"removing {removed} of {n} points leaves fewer than 2 survivors"
        )
    survivors = np.sort(dist.order[removed:])
    cutoff = float(dist.deltas[dist.order[removed - 1]]) if removed else 0.0
    return TonsureResult(
        survivors=survivors,
        removed_count=removed,
        cutoff_delta=cutoff,
        percent=100.0 * removed / n,
        metric=dist.metric,
        space=dist.space,
        low_confidence=(n - removed) < LOW_CONFIDENCE_FLOOR,
    )


def tonsure_grid(
    dist: DistanceVector, step_percent: float, min_survivors: int = 2
) -> list[TonsureResult]:
    """Tonsure at 0, step, 2*step, ... until the survivor floor.

    Levels whose rounded removal count repeats a previous level are
    dropped, so survivor counts decrease strictly along the grid.  The
    grid stops before any level that would leave fewer than
    ``min_survivors`` points.
    """
    if step_percent <= 0:
        raise InvalidPercent(f"grid step must be positive, got {step_percent}")
    if min_survivors < 2:
        raise ValueError("min_survivors must be at least 2")
    n = dist.n
    results: list[TonsureResult] = []
    seen: set[int] = set()
    k = 0
    while True:
        percent = k * step_percent
        if percent >= 100.0:
            break
        removed = _removed_count(n, percent)
        if n - removed < min_survivors:
            break
        if removed not in seen:
            seen.add(removed)
            results.append(tonsure_by_percent(dist, percent))
        k += 1
    if not results:
        raise TooFewSurvivors(
            f"sample of {n} points is already below the survivor floor {min_survivors}"
        )
    return results
