"""End-to-end scan orchestration.

A scan walks a grid (tonsure percent, tail size u, or beta threshold),
evaluates statistics at each level, and packages the results as
ScanCurve objects with enough metadata to re-run them exactly.  Null
envelopes rerun the identical scan on matched Gaussian replicates.
"""

from __future__ import annotations

import dataclasses
import hashlib
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .association import pearson, tonsured_scan
from .distance import DistanceVector, l2_distances, r1_distances
from .engine import tonsure_grid
from .errors import DegenerateOctants
from .series import LOW_CONFIDENCE_FLOOR, PairedSeries, compute_centroid, compute_ranks
from .simulate import NullEnvelope, null_envelope
from .tails import (
    CORNERS,
    EDGES,
    OctantSummary,
    default_u_grid,
    octant_summary,
    pseudo_observations,
    tail_dependence,
    tail_insulation,
)

__all__ = [
    "NullSettings",
    "ScanCurve",
    "ScanPoint",
    "distances_for",
    "run_beta_scan",
    "run_octant_scan",
    "run_tail_scan",
    "run_tonsure_scan",
    "series_digest",
]


@dataclass(frozen=True)
class ScanPoint:
    x: float
    value: float | None
    n_used: int
    low_confidence: bool = False
    gap_reason: str | None = None
    over_one: bool = False


@dataclass(frozen=True)
class ScanCurve:
    """One named curve: a statistic as a function of a grid position.

    ``reversal_at`` marks the first grid position where the curve's
    direction flips (computed over reliable points only); it is an
    annotation, the points themselves are never truncated.
    """

    kind: str
    measure: str
    metric: str
    space: str
    points: tuple[ScanPoint, ...]
    metadata: dict = field(default_factory=dict)
    reversal_at: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("tonsure_assoc", "tail", "octant", "beta"):
            raise ValueError(f"unknown scan kind {self.kind!r}")
        xs = [p.x for p in self.points]
        dx = np.diff(xs)
        if len(dx) and not (np.all(dx > 0) or np.all(dx < 0)):
            raise ValueError("scan grid positions must be strictly monotone")

    @property
    def xs(self) -> np.ndarray:
        return np.array([p.x for p in self.points])

    @property
    def values(self) -> np.ndarray:
        return np.array(
            [np.nan if p.value is None else p.value for p in self.points]
        )


@dataclass(frozen=True)
class NullSettings:
    replicates: int = 1000
    seed: int = 0
    band: tuple[float, float] = (5.0, 95.0)


def series_digest(series: PairedSeries) -> str:
    """Content hash of the exact float64 payload, for manifests."""
    h = hashlib.sha256()
    h.update(series.xs.tobytes())
    h.update(series.ys.tobytes())
    return h.hexdigest()


def distances_for(series: PairedSeries, metric: str, space: str) -> DistanceVector:
    """Build the distance vector for a metric/space combination.

    ``space`` chooses the coordinates fed to the metric: the raw
    values, or the mid-ranks (tonsuring the copula density).  The rank
    metric already works on ranks, so both spaces coincide for it.
    """
    if space not in ("values", "ranks"):
        raise ValueError(f"space must be 'values' or 'ranks', got {space!r}")
    if metric == "l2":
        if space == "ranks":
            ranked = compute_ranks(series)
            rank_pair = PairedSeries(ranked.ranks_x, ranked.ranks_y)
            return l2_distances(rank_pair, compute_centroid(rank_pair), space="ranks")
        return l2_distances(series, compute_centroid(series))
    if metric == "r1":
        return r1_distances(compute_ranks(series), space=space)
    raise ValueError(f"metric must be 'l2' or 'r1', got {metric!r}")


def _first_reversal(points: Sequence[ScanPoint]) -> float | None:
    usable = [(p.x, p.value) for p in points if p.value is not None and not p.low_confidence]
    direction = 0.0
    for (_, v0), (x1, v1) in zip(usable, usable[1:]):
        step = np.sign(v1 - v0)
        if step == 0.0:
            continue
        if direction == 0.0:
            direction = step
        elif step != direction:
            return x1
    return None


def _base_metadata(series: PairedSeries, **extra) -> dict:
    md = {"n": series.n, "input_digest": series_digest(series)}
    md.update(extra)
    return md


def run_tonsure_scan(
    series: PairedSeries,
    metric: str = "l2",
    space: str = "values",
    measures: Sequence[str] = ("pearson", "spearman", "somers_dba"),
    step_percent: float = 5.0,
    min_survivors: int = LOW_CONFIDENCE_FLOOR,
    null: NullSettings | None = None,
) -> tuple[dict[str, ScanCurve], dict[str, NullEnvelope] | None]:
    """Association measures vs tonsure percentage, with optional null.

    The null envelope reruns the identical scan (same metric, space,
    grid) on Gaussian replicates matched to the data's full-sample
    Pearson correlation.
    """
    dist = distances_for(series, metric, space)
    grid = tonsure_grid(dist, step_percent, min_survivors)
    curves = tonsured_scan(series, grid, measures)
    md = _base_metadata(
        series, metric=metric, space=space, step_percent=step_percent,
        min_survivors=min_survivors,
    )
    out = {}
    for name, curve in curves.items():
        out[name] = dataclasses.replace(
            curve, metadata=dict(md), reversal_at=_first_reversal(curve.points)
        )
    if null is None:
        return out, None
    rho = pearson(series).value

    def make_fn(measure: str):
        def fn(sim: PairedSeries) -> list[tuple[float, float | None]]:
            d = distances_for(sim, metric, space)
            g = tonsure_grid(d, step_percent, min_survivors)
            curve = tonsured_scan(sim, g, [measure])[measure]
            return [(p.x, p.value) for p in curve.points]

        return fn

    envelopes = {
        m: null_envelope(
            make_fn(m), series.n, rho,
            replicates=null.replicates, seed=null.seed, band=null.band,
        )
        for m in measures
    }
    return out, envelopes


def _tail_points(curve) -> tuple[ScanPoint, ...]:
    return tuple(
        ScanPoint(
            x=p.u,
            value=p.lam,
            n_used=p.count,
            low_confidence=p.low_count,
            over_one=p.over_one,
        )
        for p in curve.points
    )


def run_tail_scan(
    series: PairedSeries,
    corners: Sequence[str] = CORNERS,
    edges: Sequence[str] = (),
    u_grid: Sequence[float] | None = None,
    null: NullSettings | None = None,
) -> tuple[dict[str, ScanCurve], dict[str, NullEnvelope] | None]:
    """Corner and edge tail curves on pseudo-observations."""
    for r in list(corners) + list(edges):
        if r not in CORNERS + EDGES:
            raise ValueError(f"unknown tail region {r!r}")
    us = list(u_grid) if u_grid is not None else default_u_grid(series.n)
    pseudo = pseudo_observations(series)
    md = _base_metadata(series, u_grid=tuple(us))
    out = {}
    for corner in corners:
        tc = tail_dependence(pseudo, corner, us)
        out[corner] = ScanCurve(
            kind="tail", measure=f"lambda_{corner}", metric="r1", space="ranks",
            points=_tail_points(tc), metadata=dict(md),
        )
    for edge in edges:
        tc = tail_insulation(pseudo, edge, us)
        out[edge] = ScanCurve(
            kind="tail", measure=f"lambda_{edge}", metric="r1", space="ranks",
            points=_tail_points(tc), metadata=dict(md),
        )
    if null is None:
        return out, None
    rho = pearson(series).value

    def make_fn(region: str):
        is_corner = region in CORNERS

        def fn(sim: PairedSeries) -> list[tuple[float, float | None]]:
            ps = pseudo_observations(sim)
            tc = tail_dependence(ps, region, us) if is_corner else tail_insulation(ps, region, us)
            return [(p.u, p.lam) for p in tc.points]

        return fn

    envelopes = {
        r: null_envelope(
            make_fn(r), series.n, rho,
            replicates=null.replicates, seed=null.seed, band=null.band,
        )
        for r in list(corners) + list(edges)
    }
    return out, envelopes


def run_beta_scan(series: PairedSeries, thresholds: Sequence[float]) -> ScanCurve:
    """Regression slope of x on y keeping only |y| >= threshold rows.

    ``series`` pairs the dependent variable (xs) with the explanatory
    market series (ys).  Threshold 0 keeps everything and reproduces
    the ordinary least-squares slope.  Levels retaining fewer than two
    rows, or rows with zero market variance, become gaps.
    """
    ts = [float(t) for t in thresholds]
    if not ts:
        raise ValueError("need at least one threshold")
    if any(t < 0 for t in ts):
        raise ValueError("thresholds must be non-negative")
    if any(b <= a for a, b in zip(ts, ts[1:])):
        raise ValueError("thresholds must be strictly ascending")
    pts = []
    for t in ts:
        keep = np.abs(series.ys) >= t
        m = int(np.count_nonzero(keep))
        if m < 2:
            pts.append(ScanPoint(x=t, value=None, n_used=m, low_confidence=True,
                                 gap_reason="TooFewSurvivors"))
            continue
        stock = series.xs[keep]
        market = series.ys[keep]
        mc = market - market.mean()
        den = float(np.dot(mc, mc))
        if den == 0.0:
            pts.append(ScanPoint(x=t, value=None, n_used=m,
                                 low_confidence=m < LOW_CONFIDENCE_FLOOR,
                                 gap_reason="ConstantSubset"))
            continue
        num = float(np.dot(stock - stock.mean(), mc))
        pts.append(ScanPoint(x=t, value=num / den, n_used=m,
                             low_confidence=m < LOW_CONFIDENCE_FLOOR))
    return ScanCurve(
        kind="beta", measure="beta", metric="l2", space="values",
        points=tuple(pts),
        metadata=_base_metadata(series, thresholds=tuple(ts)),
        reversal_at=_first_reversal(pts),
    )


def run_octant_scan(
    series: PairedSeries,
    step_percent: float = 5.0,
    min_survivors: int = LOW_CONFIDENCE_FLOOR,
) -> tuple[ScanCurve, list[OctantSummary]]:
    """Octant population ratio vs tonsure percentage (rank metric).

    Octants live in copula space, so the removal always uses the rank
    metric; each level's full count table is returned alongside the
    ratio curve.
    """
    dist = r1_distances(compute_ranks(series))
    grid = tonsure_grid(dist, step_percent, min_survivors)
    pseudo = pseudo_observations(series)
    pts = []
    summaries = []
    for cut in grid:
        try:
            summ = octant_summary(pseudo, cut)
        except DegenerateOctants:
            pts.append(ScanPoint(x=cut.percent, value=None, n_used=cut.survivor_count,
                                 low_confidence=cut.low_confidence,
                                 gap_reason="DegenerateOctants"))
            continue
        summaries.append(summ)
        pts.append(ScanPoint(x=cut.percent, value=summ.ratio,
                             n_used=cut.survivor_count,
                             low_confidence=cut.low_confidence))
    curve = ScanCurve(
        kind="octant", measure="octant_ratio", metric="r1", space="ranks",
        points=tuple(pts),
        metadata=_base_metadata(series, step_percent=step_percent,
                                min_survivors=min_survivors),
        reversal_at=_first_reversal(pts),
    )
    return curve, summaries
