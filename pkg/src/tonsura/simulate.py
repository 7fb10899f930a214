"""Seeded synthetic pairs and Monte Carlo null envelopes.

The null model throughout is bivariate Gaussian with the observed
full-sample Pearson correlation.  Envelopes rerun an arbitrary scan on
many seeded Gaussian replicates and aggregate per grid point, so any
curve the package produces can be compared against "what would plain
Gaussians do".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .series import PairedSeries

__all__ = [
    "GENERATOR",
    "GandHSpec",
    "GaussianPairSpec",
    "NullEnvelope",
    "gen_gaussian_pair",
    "gh_transform",
    "null_envelope",
]

# Bit generator pinned by name so manifests can state exactly how the
# null replicates were drawn.
GENERATOR = "pcg64"

# gh_transform rejects |z| beyond this: exp(h z^2 / 2) leaves double
# range long before, and no Gaussian draw plausibly reaches it
Z_LIMIT = 38.0

ScanFn = Callable[[PairedSeries], Sequence[tuple[float, float | None]]]


@dataclass(frozen=True)
class GaussianPairSpec:
    n: int
    rho: float
    seed: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("need n >= 2")
        if not (-1.0 <= self.rho <= 1.0):
            raise ValueError(f"rho must be in [-1, 1], got {self.rho}")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must fit in 64 unsigned bits")


@dataclass(frozen=True)
class GandHSpec:
    """Skewness (g) and elongation (h) of a monotone normal transform."""

    g: float
    h: float
    standardize: bool = True

    def __post_init__(self) -> None:
        if not math.isfinite(self.g) or not math.isfinite(self.h):
            raise ValueError("g and h must be finite")
        if self.h < 0.0:
            raise ValueError("h must be >= 0 (keeps the transform increasing)")


def _draw_pair(rng: np.random.Generator, n: int, rho: float) -> PairedSeries:
    xs = rng.standard_normal(n)
    es = rng.standard_normal(n)
    # rho=1 must give ys identical to xs bit for bit
    ys = rho * xs + math.sqrt(1.0 - rho * rho) * es
    return PairedSeries(xs, ys)


def gen_gaussian_pair(spec: GaussianPairSpec) -> PairedSeries:
    """Draw y = rho x + sqrt(1 - rho^2) e from a seeded generator.

    Identical spec gives a bit-identical series on the same numpy
    build; the bit generator is pinned (see GENERATOR).
    """
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    pair = _draw_pair(rng, spec.n, spec.rho)
    return PairedSeries(
        pair.xs,
        pair.ys,
        meta={"rho": spec.rho, "seed": spec.seed, "generator": GENERATOR},
    )


def gh_transform(zs: np.ndarray, spec: GandHSpec) -> np.ndarray:
    """Apply T(z) = (exp(g z) - 1)/g * exp(h z^2 / 2) elementwise.

    The g -> 0 limit is z * exp(h z^2 / 2).  With h >= 0 the transform
    is strictly increasing, which is what leaves rank statistics of
    transformed samples unchanged.  When ``spec.standardize`` is on the
    output is rescaled to sample mean 0 and sample variance 1.
    """
    zs = np.asarray(zs, dtype=np.float64)
    if np.any(np.abs(zs) > Z_LIMIT):
        worst = float(np.max(np.abs(zs)))
        raise ValueError(f"|z| up to {worst:g} exceeds the overflow guard {Z_LIMIT:g}")
    bulge = np.exp(0.5 * spec.h * zs * zs)
    if spec.g == 0.0:
        out = zs * bulge
    else:
        out = np.expm1(spec.g * zs) / spec.g * bulge
    if spec.standardize:
        if len(out) < 2:
            raise ValueError("standardization needs at least 2 values")
        sd = float(np.std(out, ddof=1))
        if sd == 0.0:
            raise ValueError("cannot standardize a constant sample")
        out = (out - out.mean()) / sd
    return out


@dataclass(frozen=True)
class NullEnvelope:
    """Per-grid-point aggregate of a scan over Gaussian replicates.

    ``lo`` and ``hi`` are the band quantiles over replicates whose scan
    produced a value at that point; ``present`` counts those
    replicates.  For continuous statistics the mean sits inside the
    band.  A point produced by fewer than half the replicates is
    marked unreliable; a point no replicate produced carries nan.
    """

    xs: tuple[float, ...]
    mean: np.ndarray
    lo: np.ndarray
    hi: np.ndarray
    present: np.ndarray
    unreliable: np.ndarray
    replicates: int
    seed: int
    band: tuple[float, float] = (5.0, 95.0)
    values: np.ndarray | None = None

    def __post_init__(self) -> None:
        k = len(self.xs)
        for name in ("mean", "lo", "hi", "present", "unreliable"):
            if len(getattr(self, name)) != k:
                raise ValueError(f"envelope field {name} length mismatch")


def null_envelope(
    scan_fn: ScanFn,
    n: int,
    matched_rho: float,
    replicates: int = 1000,
    seed: int = 0,
    band: tuple[float, float] = (5.0, 95.0),
    keep_replicates: bool = False,
) -> NullEnvelope:
    """Run ``scan_fn`` on seeded Gaussian replicates and aggregate.

    ``scan_fn`` maps a PairedSeries of length ``n`` to a sequence of
    (grid position, value or None) pairs; None marks a gap.  Every
    replicate must report the same grid positions.  Replicate streams
    are spawned from the base seed, so results do not depend on
    evaluation order.
    """
    if replicates < 1:
        raise ValueError("need at least 1 replicate")
    if not (-1.0 <= matched_rho <= 1.0):
        raise ValueError(f"matched rho must be in [-1, 1], got {matched_rho}")
    if not (0.0 <= band[0] < band[1] <= 100.0):
        raise ValueError(f"band percentiles must satisfy 0 <= lo < hi <= 100, got {band}")
    children = np.random.SeedSequence(seed).spawn(replicates)
    xs_ref: tuple[float, ...] | None = None
    mat = np.empty(0)
    for i, child in enumerate(children):
        rng = np.random.Generator(np.random.PCG64(child))
        points = scan_fn(_draw_pair(rng, n, matched_rho))
        xs = tuple(p[0] for p in points)
        if xs_ref is None:
            xs_ref = xs
            mat = np.full((replicates, len(xs)), np.nan)
        elif xs != xs_ref:
            raise ValueError("replicate scans disagree on grid positions")
        for j, (_, value) in enumerate(points):
            if value is not None:
                mat[i, j] = value
    assert xs_ref is not None
    k = len(xs_ref)
    present = np.count_nonzero(~np.isnan(mat), axis=0)
    mean = np.full(k, np.nan)
    lo = np.full(k, np.nan)
    hi = np.full(k, np.nan)
    for j in range(k):
        col = mat[:, j]
        col = col[~np.isnan(col)]
        if len(col):
            mean[j] = col.mean()
            lo[j] = np.quantile(col, band[0] / 100.0)
            hi[j] = np.quantile(col, band[1] / 100.0)
    return NullEnvelope(
        xs=xs_ref,
        mean=mean,
        lo=lo,
        hi=hi,
        present=present,
        unreliable=present * 2 < replicates,
        replicates=replicates,
        seed=seed,
        band=band,
        values=mat if keep_replicates else None,
    )
