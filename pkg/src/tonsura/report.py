"""Deterministic writers: curve tables, octant tables, manifests.

Everything is delimited text plus a flat key-value manifest.  Floats
are written with repr(), the shortest string that parses back to the
identical double, so emitted files round-trip exactly and identical
runs produce identical bytes.  Nothing here writes a timestamp.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .scans import ScanCurve
from .simulate import NullEnvelope
from .tails import OctantSummary

__all__ = [
    "read_table",
    "write_curves",
    "write_manifest",
    "write_octants",
]

CURVE_COLUMNS = (
    "measure", "x", "value", "n_used", "low_confidence", "gap_reason", "over_one",
    "null_mean", "null_lo", "null_hi", "null_unreliable",
)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, float):
        # builtin repr is shortest-round-trip; numpy scalars are not
        return repr(float(value))
    if isinstance(value, np.integer):
        return str(int(value))
    return str(value)


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


def write_curves(
    path: str | Path,
    curves: Mapping[str, ScanCurve],
    envelopes: Mapping[str, NullEnvelope] | None = None,
) -> Path:
    """One row per curve point, curves stacked and keyed by measure.

    Envelope columns are filled positionally; an envelope must share
    its curve's grid.  Gap points keep their row with an empty value
    cell and a reason.
    """
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = _writer(fh)
        w.writerow(CURVE_COLUMNS)
        for name in sorted(curves):
            curve = curves[name]
            env = envelopes.get(name) if envelopes else None
            if env is not None and tuple(env.xs) != tuple(p.x for p in curve.points):
                raise ValueError(f"envelope grid does not match curve {name!r}")
            for j, p in enumerate(curve.points):
                row = [
                    curve.measure, _fmt(p.x), _fmt(p.value), p.n_used,
                    _fmt(p.low_confidence), p.gap_reason or "", _fmt(p.over_one),
                ]
                if env is not None:
                    row += [
                        _fmt(float(env.mean[j])), _fmt(float(env.lo[j])),
                        _fmt(float(env.hi[j])), _fmt(bool(env.unreliable[j])),
                    ]
                else:
                    row += ["", "", "", ""]
                w.writerow(row)
    return path


OCTANT_COLUMNS = (
    ("percent", "n_used")
    + tuple(f"n{i}" for i in range(1, 9))
    + ("n_ka", "n_kb", "ratio")
    + tuple(f"asym{i}" for i in range(1, 9))
)


def write_octants(path: str | Path, summaries: Sequence[OctantSummary]) -> Path:
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = _writer(fh)
        w.writerow(OCTANT_COLUMNS)
        for s in summaries:
            row = [_fmt(s.tonsure_percent), sum(s.counts)]
            row += [str(c) for c in s.counts]
            row += [_fmt(s.n_ka), _fmt(s.n_kb), _fmt(s.ratio)]
            row += [_fmt(a) for a in s.asymmetry]
            w.writerow(row)
    return path


def write_manifest(path: str | Path, entries: Mapping[str, object]) -> Path:
    """Flat sorted ``key = value`` lines; values formatted like cells."""
    path = Path(path)
    lines = []
    for key in sorted(entries):
        value = entries[key]
        if isinstance(value, (tuple, list)):
            text = ",".join(_fmt(v) for v in value)
        else:
            text = _fmt(value)
        lines.append(f"{key} = {text}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def read_table(path: str | Path) -> list[dict[str, str]]:
    """Read back an emitted delimited table as row dicts of raw cells."""
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))
