"""Delimited-file loading, level transforms, and key alignment.

The pipeline is load, transform, align: each column is read and
cleaned on its own, level series are turned into changes or returns,
and only then are the two sides joined on their row keys.  Every row
dropped along the way is counted and surfaced.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    EmptyAfterCleaning,
    NonPositiveLevel,
    NoSuchColumn,
    TooFewAligned,
)
from .series import PairedSeries

__all__ = [
    "AlignResult",
    "ColumnSpec",
    "LoadedColumn",
    "TRANSFORMS",
    "align",
    "load_column",
    "transform_levels",
    "transformed_column",
]

TRANSFORMS = ("none", "diff", "log", "pct")

_ALIASES = {
    "arithmetic_change": "diff",
    "log_return": "log",
    "pct_return": "pct",
}


def _canonical_transform(name: str) -> str:
    t = _ALIASES.get(name, name)
    if t not in TRANSFORMS:
        raise ValueError(f"unknown transform {name!r}; expected one of {TRANSFORMS}")
    return t


@dataclass(frozen=True)
class ColumnSpec:
    """Where one series comes from and how to turn levels into changes.

    ``column`` is a header name or a 0-based index.  ``note`` is free
    text (sampling frequency and the like) carried into manifests.
    """

    path: str
    column: str
    transform: str = "none"
    delimiter: str = ","
    note: str = ""

    def __post_init__(self) -> None:
        _canonical_transform(self.transform)


@dataclass(frozen=True)
class LoadedColumn:
    keys: tuple[str, ...]
    values: np.ndarray
    dropped: int
    source: str
    column: str

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=np.float64).copy()
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)
        if len(self.keys) != len(vals):
            raise ValueError("keys and values must have equal length")


def _parses_as_float(cell: str) -> bool:
    try:
        return math.isfinite(float(cell))
    except ValueError:
        return False


def _looks_like_header(first: list[str], second: list[str] | None) -> bool:
    # header iff some column is non-numeric in row 0 but numeric in row 1
    if second is None:
        return False
    for j in range(min(len(first), len(second))):
        if not _parses_as_float(first[j].strip()) and _parses_as_float(second[j].strip()):
            return True
    return False


def _resolve_column(spec: ColumnSpec, header: list[str] | None, width: int) -> int:
    if header is not None:
        names = [h.strip() for h in header]
        if spec.column in names:
            return names.index(spec.column)
    try:
        idx = int(spec.column)
    except ValueError:
        where = "header" if header is not None else "headerless file"
        raise NoSuchColumn(f"no column {spec.column!r} in {where} of {spec.path}") from None
    if not (0 <= idx < width):
        raise NoSuchColumn(f"column index {idx} out of range for {spec.path} ({width} columns)")
    return idx


def load_column(spec: ColumnSpec) -> LoadedColumn:
    """Read one numeric column, dropping and counting unusable rows.

    Row keys come from the first column when the selected column is a
    different one; otherwise the 0-based row number is used.  The
    first row is treated as a header when it is non-numeric in a
    column where the second row is numeric.
    """
    path = Path(spec.path)
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh, delimiter=spec.delimiter) if any(c.strip() for c in r)]
    if not rows:
        raise EmptyAfterCleaning(f"{spec.path} holds no data rows")
    header = rows[0] if _looks_like_header(rows[0], rows[1] if len(rows) > 1 else None) else None
    data = rows[1:] if header is not None else rows
    if not data:
        raise EmptyAfterCleaning(f"{spec.path} holds a header but no data rows")
    width = len(header) if header is not None else len(data[0])
    col = _resolve_column(spec, header, width)
    keys: list[str] = []
    values: list[float] = []
    dropped = 0
    for rnum, row in enumerate(data):
        if col >= len(row):
            dropped += 1
            continue
        cell = row[col].strip()
        if not _parses_as_float(cell):
            dropped += 1
            continue
        keys.append(row[0].strip() if (col != 0 and len(row) > 1) else str(rnum))
        values.append(float(cell))
    if not values:
        raise EmptyAfterCleaning(f"no usable values in column {spec.column!r} of {spec.path}")
    return LoadedColumn(
        keys=tuple(keys),
        values=np.array(values),
        dropped=dropped,
        source=str(spec.path),
        column=spec.column,
    )


def transform_levels(values: np.ndarray, transform: str) -> np.ndarray:
    """Levels to changes: diff, log return, or percent return.

    Output is one shorter than the input (except ``none``).  Log and
    percent returns demand strictly positive levels everywhere.
    """
    t = _canonical_transform(transform)
    v = np.asarray(values, dtype=np.float64)
    if t == "none":
        return v.copy()
    if len(v) < 2:
        raise EmptyAfterCleaning("need at least 2 levels to compute changes")
    if t == "diff":
        return np.diff(v)
    bad = np.nonzero(v <= 0.0)[0]
    if len(bad):
        i = int(bad[0])
        raise NonPositiveLevel(
            f"{t} returns need positive levels; found {v[i]!r} at position {i}"
        )
    if t == "log":
        return np.log(v[1:] / v[:-1])
    return v[1:] / v[:-1] - 1.0


def transformed_column(spec: ColumnSpec) -> LoadedColumn:
    """Load a column and apply its transform, keeping keys aligned.

    A change is keyed by the later of the two observations it spans,
    so differencing drops the first key.
    """
    raw = load_column(spec)
    t = _canonical_transform(spec.transform)
    if t == "none":
        return raw
    values = transform_levels(raw.values, t)
    return LoadedColumn(
        keys=raw.keys[1:],
        values=values,
        dropped=raw.dropped,
        source=raw.source,
        column=raw.column,
    )


@dataclass(frozen=True)
class AlignResult:
    series: PairedSeries
    policy: str
    common: int
    only_a: int
    only_b: int
    duplicates_a: int
    duplicates_b: int
    dropped_a: int
    dropped_b: int


def _first_occurrences(col: LoadedColumn) -> tuple[dict[str, float], int]:
    seen: dict[str, float] = {}
    dups = 0
    for k, v in zip(col.keys, col.values):
        if k in seen:
            dups += 1
        else:
            seen[k] = float(v)
    return seen, dups


def align(
    a: LoadedColumn,
    b: LoadedColumn,
    policy: str = "inner",
    labels: tuple[str, str] = ("x", "y"),
) -> AlignResult:
    """Pair two columns into one series.

    ``inner`` keeps keys present on both sides, ordered as they appear
    in ``a``; a duplicated key counts its first occurrence only.
    ``positional`` ignores keys and zips by row position up to the
    shorter length.
    """
    if policy not in ("inner", "positional"):
        raise ValueError(f"policy must be 'inner' or 'positional', got {policy!r}")
    if policy == "positional":
        m = min(len(a.values), len(b.values))
        if m < 2:
            raise TooFewAligned(f"only {m} positional pairs available")
        series = PairedSeries(a.values[:m], b.values[:m], labels=labels)
        return AlignResult(
            series=series, policy=policy, common=m,
            only_a=len(a.values) - m, only_b=len(b.values) - m,
            duplicates_a=0, duplicates_b=0,
            dropped_a=a.dropped, dropped_b=b.dropped,
        )
    map_a, dups_a = _first_occurrences(a)
    map_b, dups_b = _first_occurrences(b)
    common_keys = [k for k in dict.fromkeys(a.keys) if k in map_b]
    if len(common_keys) < 2:
        raise TooFewAligned(
            f"only {len(common_keys)} keys shared between {a.source} and {b.source}"
        )
    xs = np.array([map_a[k] for k in common_keys])
    ys = np.array([map_b[k] for k in common_keys])
    series = PairedSeries(xs, ys, labels=labels)
    return AlignResult(
        series=series, policy=policy, common=len(common_keys),
        only_a=len(map_a) - len(common_keys), only_b=len(map_b) - len(common_keys),
        duplicates_a=dups_a, duplicates_b=dups_b,
        dropped_a=a.dropped, dropped_b=b.dropped,
    )
