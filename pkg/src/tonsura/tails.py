"""Corner tail dependence, edge tail insulation, and octant counts.

Everything here works in copula space: observations are reduced to
pseudo-observations (rank/n, rank/n) on (0, 1]^2, where corner squares,
edge bands, and octant sectors have exact combinatorial meaning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .engine import TonsureResult
from .errors import DegenerateOctants
from .series import PairedSeries, compute_ranks

__all__ = [
    "CORNERS",
    "EDGES",
    "OctantSummary",
    "PseudoObservations",
    "TailCurve",
    "TailPoint",
    "default_u_grid",
    "octant_summary",
    "pseudo_observations",
    "tail_dependence",
    "tail_insulation",
]

CORNERS = ("ur", "ul", "br", "bl")
EDGES = ("t0", "r0", "b0", "l0")

# squares with fewer observations than this are too sparse to trust
LOW_COUNT = 5


@dataclass(frozen=True)
class PseudoObservations:
    """Copula-space sample: u = rank_x/n, v = rank_y/n, both in (0, 1].

    Dividing by n (rather than n+1) puts the largest observation at
    exactly 1, so a corner square of side u = k/n holds exactly k of a
    comonotone sample's points.  Mid-ranks from ties survive unchanged.
    """

    us: np.ndarray
    vs: np.ndarray

    def __post_init__(self) -> None:
        us = np.asarray(self.us, dtype=np.float64).copy()
        vs = np.asarray(self.vs, dtype=np.float64).copy()
        if us.ndim != 1 or vs.ndim != 1 or len(us) != len(vs):
            raise ValueError("pseudo-observations must be equal-length vectors")
        if len(us) < 2:
            raise ValueError("need at least 2 pseudo-observations")
        for name, arr in (("u", us), ("v", vs)):
            if np.any(arr <= 0.0) or np.any(arr > 1.0):
                raise ValueError(f"{name} values must lie in (0, 1]")
        us.flags.writeable = False
        vs.flags.writeable = False
        object.__setattr__(self, "us", us)
        object.__setattr__(self, "vs", vs)

    @property
    def n(self) -> int:
        return len(self.us)


def pseudo_observations(series: PairedSeries) -> PseudoObservations:
    """Map a paired sample to copula space through its mid-ranks."""
    ranked = compute_ranks(series)
    n = series.n
    return PseudoObservations(ranked.ranks_x / n, ranked.ranks_y / n)


@dataclass(frozen=True)
class TailPoint:
    u: float
    lam: float
    count: int
    over_one: bool
    low_count: bool


@dataclass(frozen=True)
class TailCurve:
    region: str
    points: tuple[TailPoint, ...]

    def __post_init__(self) -> None:
        if self.region not in CORNERS + EDGES:
            raise ValueError(f"unknown tail region {self.region!r}")
        us = [p.u for p in self.points]
        if any(b >= a for a, b in zip(us, us[1:])):
            raise ValueError("tail curve u values must be strictly decreasing")

    @property
    def us(self) -> np.ndarray:
        return np.array([p.u for p in self.points])

    @property
    def lams(self) -> np.ndarray:
        return np.array([p.lam for p in self.points])


def default_u_grid(n: int, start: float = 0.5, ratio: float = 0.5) -> list[float]:
    """Geometric grid from ``start`` down to max(5/n, 0.001).

    The floor keeps at least five expected points per square when the
    coordinates are independent, below which the ratio is mostly noise.
    """
    if n < 2:
        raise ValueError("need n >= 2 for a tail grid")
    if not (0.0 < start <= 0.5) or not (0.0 < ratio < 1.0):
        raise ValueError("grid start must be in (0, 0.5] and ratio in (0, 1)")
    floor = max(LOW_COUNT / n, 0.001)
    grid = []
    u = start
    while u >= floor:
        grid.append(u)
        u *= ratio
    return grid or [start]


def _clean_grid(u_grid: Sequence[float]) -> list[float]:
    us = sorted({float(u) for u in u_grid}, reverse=True)
    if not us:
        raise ValueError("u grid is empty")
    if us[0] > 0.5 or us[-1] <= 0.0:
        raise ValueError("u grid values must lie in (0, 0.5]")
    return us


def _curve(region: str, n: int, us: list[float], counts: list[int]) -> TailCurve:
    pts = []
    for u, c in zip(us, counts):
        lam = c / (n * u)
        pts.append(
            TailPoint(u=u, lam=lam, count=c, over_one=lam > 1.0, low_count=c < LOW_COUNT)
        )
    return TailCurve(region=region, points=tuple(pts))


def tail_dependence(
    pseudo: PseudoObservations, corner: str, u_grid: Sequence[float]
) -> TailCurve:
    """lambda_corner(u) = (points in the u by u corner square) / (n u).

    The high side of a square is open (u_x > 1-u) and the low side is
    closed (u_x <= u); at u = k/n these two conventions hold exactly k
    comonotone points each, so mirrored corners match exactly.  Tied
    ranks can push lambda above 1; such points are flagged, not
    clipped.
    """
    if corner not in CORNERS:
        raise ValueError(f"corner must be one of {CORNERS}, got {corner!r}")
    us = _clean_grid(u_grid)
    p_us, p_vs = pseudo.us, pseudo.vs
    counts = []
    for u in us:
        in_x = p_us > 1.0 - u if corner in ("ur", "br") else p_us <= u
        in_y = p_vs > 1.0 - u if corner in ("ur", "ul") else p_vs <= u
        counts.append(int(np.count_nonzero(in_x & in_y)))
    return _curve(corner, pseudo.n, us, counts)


def tail_insulation(
    pseudo: PseudoObservations, edge: str, u_grid: Sequence[float]
) -> TailCurve:
    """lambda_edge(u): mass in a central band next to one extreme edge.

    For the right edge, lambda_r0(u) = #(u_x > 1-u and |v_y - 0.5| <
    u/2) / (n u): extreme in x while y stays within a central band of
    width u.  Near zero it signals that extremes of one variable
    insulate against ordinary values of the other.
    """
    if edge not in EDGES:
        raise ValueError(f"edge must be one of {EDGES}, got {edge!r}")
    us = _clean_grid(u_grid)
    p_us, p_vs = pseudo.us, pseudo.vs
    counts = []
    for u in us:
        if edge == "r0":
            hit = (p_us > 1.0 - u) & (np.abs(p_vs - 0.5) < u / 2.0)
        elif edge == "l0":
            hit = (p_us <= u) & (np.abs(p_vs - 0.5) < u / 2.0)
        elif edge == "t0":
            hit = (p_vs > 1.0 - u) & (np.abs(p_us - 0.5) < u / 2.0)
        else:
            hit = (p_vs <= u) & (np.abs(p_us - 0.5) < u / 2.0)
        counts.append(int(np.count_nonzero(hit)))
    return _curve(edge, pseudo.n, us, counts)


def _octant_counts(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Count points per octant 1..8, clockwise from the 9:00 ray.

    Sectors are half-open going clockwise, so a point on a dividing
    line belongs to the sector entered at that line.  The comparisons
    below are an exact restatement of that rule; no angles are
    computed.  The center point itself lands in octant 5.
    """
    counts = np.zeros(8, dtype=np.intp)
    conds = [
        (a < 0) & (b >= 0) & (-a > b),  # 1: (135, 180]
        (a < 0) & (b > 0) & (b >= -a),  # 2: (90, 135]
        (a >= 0) & (b > 0) & (b > a),  # 3: (45, 90]
        (a > 0) & (b > 0) & (b <= a),  # 4: (0, 45]
        (a > 0) & (b <= 0) & (b > -a),  # 5: (-45, 0]
        (a > 0) & (b < 0) & (-b >= a),  # 6: (-90, -45]
        (a <= 0) & (b < 0) & (-b > -a),  # 7: (-135, -90]
        (a < 0) & (b < 0) & (a <= b),  # 8: (-180, -135]
    ]
    for i, cond in enumerate(conds):
        counts[i] = np.count_nonzero(cond)
    counts[4] += np.count_nonzero((a == 0) & (b == 0))
    return counts


@dataclass(frozen=True)
class OctantSummary:
    """Octant populations of the survivors plus the group-average ratio.

    Octants 1, 2, 5, 6 (the discordant quadrants) average to n_ka and
    octants 3, 4, 7, 8 (the concordant quadrants) to n_kb; their ratio
    is a rank-based association measure, below 1 for positively
    associated data.  ``asymmetry[i]`` is count[i] over its own group
    average (nan if that group is empty but the other is not).
    """

    tonsure_percent: float
    counts: tuple[int, ...]
    n_ka: float
    n_kb: float
    ratio: float
    asymmetry: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.counts) != 8 or len(self.asymmetry) != 8:
            raise ValueError("octant summary needs exactly 8 octants")


_GROUP_A = (0, 1, 4, 5)  # octants 1, 2, 5, 6
_GROUP_B = (2, 3, 6, 7)  # octants 3, 4, 7, 8


def octant_summary(
    pseudo: PseudoObservations, tonsure: TonsureResult | None = None
) -> OctantSummary:
    """Octant populations of the (possibly tonsured) pseudo-sample.

    Intended for rank-space tonsuring, where removal is symmetric
    around the copula center.  Counts always sum to the survivor
    count.  Raises DegenerateOctants when the concordant group is
    empty (ratio undefined).
    """
    if tonsure is None:
        a = pseudo.us - 0.5
        b = pseudo.vs - 0.5
        percent = 0.0
    else:
        a = pseudo.us[tonsure.survivors] - 0.5
        b = pseudo.vs[tonsure.survivors] - 0.5
        percent = tonsure.percent
    counts = _octant_counts(a, b)
    n_ka = float(counts[list(_GROUP_A)].sum()) / 4.0
    n_kb = float(counts[list(_GROUP_B)].sum()) / 4.0
    if n_kb == 0.0:
        raise DegenerateOctants(
            f"octants 3, 4, 7, 8 hold no points at {percent:g}% tonsuring"
        )
    asym = [math.nan] * 8
    for i in _GROUP_A:
        asym[i] = float(counts[i]) / n_ka if n_ka > 0.0 else math.nan
    for i in _GROUP_B:
        asym[i] = float(counts[i]) / n_kb
    return OctantSummary(
        tonsure_percent=percent,
        counts=tuple(int(c) for c in counts),
        n_ka=n_ka,
        n_kb=n_kb,
        ratio=n_ka / n_kb,
        asymmetry=tuple(asym),
    )
