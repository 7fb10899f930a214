"""Static SVG charts for scan curves.

matplotlib is imported lazily so the data path never touches a
graphics stack.  Output is deterministic: fixed hash salt, no embedded
creation date.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping

import numpy as np

from .scans import ScanCurve
from .simulate import NullEnvelope

__all__ = ["render_curve"]

_X_LABELS = {
    "tonsure_assoc": "tonsure percent",
    "tail": "u",
    "octant": "tonsure percent",
    "beta": "market-move threshold",
}


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=True)
    matplotlib.rcParams["svg.hashsalt"] = "tonsura"
    import matplotlib.pyplot as plt

    return plt


def render_curve(
    path: str | Path,
    curve: ScanCurve,
    envelope: NullEnvelope | None = None,
) -> Path:
    """One chart: the real curve, with the null band behind it if given."""
    plt = _pyplot()
    path = Path(path)
    xs = curve.xs
    ys = curve.values
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    try:
        if envelope is not None:
            ax.fill_between(
                envelope.xs, envelope.lo, envelope.hi,
                color="0.85", label=f"null {envelope.band[0]:g}-{envelope.band[1]:g}%",
            )
            ax.plot(envelope.xs, envelope.mean, color="0.4", linestyle="--",
                    linewidth=1.0, label="null mean")
        ok = ~np.isnan(ys)
        ax.plot(xs[ok], ys[ok], color="C0", marker="o", markersize=3.0,
                linewidth=1.5, label=curve.measure)
        shaky = ok & np.array([p.low_confidence for p in curve.points])
        if shaky.any():
            ax.plot(xs[shaky], ys[shaky], linestyle="", marker="o",
                    markersize=5.0, markerfacecolor="none", color="C3",
                    label="low confidence")
        if curve.reversal_at is not None:
            ax.axvline(curve.reversal_at, color="C3", linewidth=0.8,
                       linestyle=":", label="direction reversal")
        ax.set_xlabel(_X_LABELS.get(curve.kind, "x"))
        ax.set_ylabel(curve.measure)
        if curve.kind == "tail":
            ax.invert_xaxis()
        ax.legend(loc="best", fontsize="small")
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
    finally:
        plt.close(fig)
    return path
