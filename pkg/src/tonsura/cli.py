"""Command-line front end.

Subcommands mirror the scan types: ``tonsure`` (association measures
vs removal percentage), ``taildep`` (corner and edge curves),
``octants`` (population tables), ``beta`` (thresholded regression
slope), and ``simulate`` (synthetic input generation).  All outputs
are deterministic for a fixed seed.

Exit codes: 0 success, 1 usage error, 2 data error, 3 degenerate
statistics.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .association import MEASURES, pearson
from .errors import DataError, DegenerateStatistics, InvalidPercent
from .ingest import TRANSFORMS, AlignResult, ColumnSpec, align, transformed_column
from .report import write_curves, write_manifest, write_octants
from .scans import (
    NullSettings,
    run_beta_scan,
    run_octant_scan,
    run_tail_scan,
    run_tonsure_scan,
    series_digest,
)
from .series import PairedSeries
from .simulate import (
    GENERATOR,
    GandHSpec,
    GaussianPairSpec,
    gen_gaussian_pair,
    gh_transform,
    null_envelope,
)
from .tails import CORNERS, EDGES

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; this tool reserves 2 for data
    # problems, so usage failures must exit 1
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _file_col(text: str) -> tuple[str, str]:
    path, _, col = text.rpartition(":")
    if not path or not col:
        raise argparse.ArgumentTypeError(f"expected FILE:COL, got {text!r}")
    return path, col


def _measure_list(text: str) -> list[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    bad = sorted(set(names) - set(MEASURES))
    if bad or not names:
        raise argparse.ArgumentTypeError(
            f"measures must be a comma list from {sorted(MEASURES)}, got {text!r}"
        )
    return list(dict.fromkeys(names))


def _region_list(text: str) -> list[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    bad = sorted(set(names) - set(CORNERS + EDGES))
    if bad or not names:
        raise argparse.ArgumentTypeError(
            f"regions must be a comma list from {CORNERS + EDGES}, got {text!r}"
        )
    return list(dict.fromkeys(names))


def _u_grid(text: str) -> list[float] | None:
    if text == "auto":
        return None
    try:
        us = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad u grid {text!r}") from None
    if not us or any(not (0.0 < u <= 0.5) for u in us):
        raise argparse.ArgumentTypeError("u grid values must lie in (0, 0.5]")
    return us


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}") from None


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not (0 <= value < 2**64):
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _onoff(text: str) -> bool:
    if text not in ("on", "off"):
        raise argparse.ArgumentTypeError(f"expected 'on' or 'off', got {text!r}")
    return text == "on"


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input-x", required=True, type=_file_col, metavar="FILE:COL")
    p.add_argument("--input-y", required=True, type=_file_col, metavar="FILE:COL")
    p.add_argument("--transform-x", default="none", choices=TRANSFORMS)
    p.add_argument("--transform-y", default="none", choices=TRANSFORMS)
    p.add_argument("--delimiter", default=",")
    p.add_argument("--align", default="inner", choices=("inner", "positional"),
                   help="key join policy (default inner join on row keys)")


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", required=True, metavar="DIR")
    p.add_argument("--plots", type=_onoff, default=True, metavar="{on|off}")


def _add_null_flags(p: argparse.ArgumentParser, default_on: bool) -> None:
    p.add_argument("--null", type=_onoff, default=default_on, metavar="{on|off}",
                   help="matched-correlation Gaussian envelope")
    p.add_argument("--replicates", type=int, default=1000)
    p.add_argument("--seed", type=_seed, default=0)


def _file_sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(65536), b""):
            h.update(block)
    return h.hexdigest()


def _load_series(args) -> tuple[PairedSeries, AlignResult, dict]:
    path_x, col_x = args.input_x
    path_y, col_y = args.input_y
    a = transformed_column(ColumnSpec(path_x, col_x, args.transform_x, args.delimiter))
    b = transformed_column(ColumnSpec(path_y, col_y, args.transform_y, args.delimiter))
    res = align(a, b, policy=args.align, labels=(col_x, col_y))
    manifest = {
        "input_x.path": path_x, "input_x.column": col_x,
        "input_x.transform": args.transform_x, "input_x.sha256": _file_sha256(path_x),
        "input_x.rows_dropped": res.dropped_a,
        "input_y.path": path_y, "input_y.column": col_y,
        "input_y.transform": args.transform_y, "input_y.sha256": _file_sha256(path_y),
        "input_y.rows_dropped": res.dropped_b,
        "align.policy": res.policy, "align.common": res.common,
        "align.only_x": res.only_a, "align.only_y": res.only_b,
        "n": res.series.n, "series_digest": series_digest(res.series),
        "version": __version__,
    }
    return res.series, res, manifest


def _outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _null_manifest(args) -> dict:
    md = {"null": args.null}
    if args.null:
        md.update({"replicates": args.replicates, "seed": args.seed,
                   "generator": GENERATOR})
    return md


def cmd_tonsure(args) -> int:
    series, _, manifest = _load_series(args)
    null = NullSettings(args.replicates, args.seed) if args.null else None
    curves, envs = run_tonsure_scan(
        series, metric=args.metric, space=args.space, measures=args.measures,
        step_percent=args.step, min_survivors=args.min_survivors, null=null,
    )
    out = _outdir(args)
    write_curves(out / "curves.csv", curves, envs)
    manifest.update({
        "command": "tonsure", "metric": args.metric, "space": args.space,
        "measures": tuple(args.measures), "step": args.step,
        "min_survivors": args.min_survivors, "plots": args.plots,
    })
    manifest.update(_null_manifest(args))
    for m, curve in curves.items():
        if curve.reversal_at is not None:
            manifest[f"reversal_at.{m}"] = curve.reversal_at
    write_manifest(out / "manifest.txt", manifest)
    if args.plots:
        from .plots import render_curve

        for m, curve in curves.items():
            render_curve(out / f"tonsure_{m}.svg", curve, envs.get(m) if envs else None)
    levels = len(next(iter(curves.values())).points)
    print(f"wrote {out / 'curves.csv'}: {len(curves)} measures, {levels} levels, n={series.n}")
    return 0


def cmd_taildep(args) -> int:
    series, _, manifest = _load_series(args)
    corners = [r for r in args.regions if r in CORNERS]
    edges = [r for r in args.regions if r in EDGES]
    null = NullSettings(args.replicates, args.seed) if args.null else None
    curves, envs = run_tail_scan(series, corners, edges, args.u_grid, null=null)
    out = _outdir(args)
    write_curves(out / "curves.csv", curves, envs)
    grid = next(iter(curves.values())).xs if curves else []
    manifest.update({
        "command": "taildep", "regions": tuple(args.regions),
        "u_grid": tuple(float(u) for u in grid), "plots": args.plots,
    })
    manifest.update(_null_manifest(args))
    write_manifest(out / "manifest.txt", manifest)
    if args.plots:
        from .plots import render_curve

        for r, curve in curves.items():
            render_curve(out / f"tail_{r}.svg", curve, envs.get(r) if envs else None)
    print(f"wrote {out / 'curves.csv'}: {len(curves)} regions, {len(grid)} u values, n={series.n}")
    return 0


def cmd_octants(args) -> int:
    series, _, manifest = _load_series(args)
    curve, summaries = run_octant_scan(series, args.step, args.min_survivors)
    env = None
    if args.null:
        rho = pearson(series).value

        def fn(sim: PairedSeries):
            c, _ = run_octant_scan(sim, args.step, args.min_survivors)
            return [(p.x, p.value) for p in c.points]

        env = null_envelope(fn, series.n, rho, replicates=args.replicates,
                            seed=args.seed)
    out = _outdir(args)
    write_curves(out / "curves.csv", {"octant_ratio": curve},
                 {"octant_ratio": env} if env else None)
    write_octants(out / "octants.csv", summaries)
    manifest.update({
        "command": "octants", "step": args.step,
        "min_survivors": args.min_survivors, "plots": args.plots,
    })
    manifest.update(_null_manifest(args))
    write_manifest(out / "manifest.txt", manifest)
    if args.plots:
        from .plots import render_curve

        render_curve(out / "octants.svg", curve, env)
    print(f"wrote {out / 'octants.csv'}: {len(summaries)} levels, n={series.n}")
    return 0


def cmd_beta(args) -> int:
    series, _, manifest = _load_series(args)
    curve = run_beta_scan(series, args.thresholds)
    out = _outdir(args)
    write_curves(out / "curves.csv", {"beta": curve})
    manifest.update({
        "command": "beta", "thresholds": tuple(args.thresholds),
        "plots": args.plots,
    })
    if curve.reversal_at is not None:
        manifest["reversal_at.beta"] = curve.reversal_at
    write_manifest(out / "manifest.txt", manifest)
    if args.plots:
        from .plots import render_curve

        render_curve(out / "beta.svg", curve)
    print(f"wrote {out / 'curves.csv'}: {len(curve.points)} thresholds, n={series.n}")
    return 0


def _skewness(values: np.ndarray) -> float:
    import scipy.stats

    return float(scipy.stats.skew(values))


def cmd_simulate(args) -> int:
    out = _outdir(args)
    manifest = {
        "command": "simulate", "n": args.n, "rho": args.rho, "seed": args.seed,
        "generator": GENERATOR, "version": __version__,
        "g_x": args.g_x, "h_x": args.h_x, "g_y": args.g_y, "h_y": args.h_y,
    }
    base = gen_gaussian_pair(GaussianPairSpec(args.n, args.rho, args.seed))
    if args.g_grid is not None:
        # one table row per (g_x, g_y) cell: measured skewness and Pearson
        import csv

        rows = []
        for g1 in args.g_grid:
            xs = gh_transform(base.xs, GandHSpec(g1, args.h_x))
            for g2 in args.g_grid:
                ys = gh_transform(base.ys, GandHSpec(g2, args.h_y))
                r = pearson(PairedSeries(xs, ys)).value
                rows.append((g1, g2, _skewness(xs), _skewness(ys), r))
        table = out / "skew_table.csv"
        with open(table, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(("g_x", "g_y", "skew_x", "skew_y", "pearson"))
            for row in rows:
                w.writerow([repr(float(v)) for v in row])
        manifest["g_grid"] = tuple(args.g_grid)
        write_manifest(out / "manifest.txt", manifest)
        print(f"wrote {table}: {len(rows)} cells")
        return 0
    xs, ys = base.xs, base.ys
    if args.g_x != 0.0 or args.h_x != 0.0:
        xs = gh_transform(xs, GandHSpec(args.g_x, args.h_x))
    if args.g_y != 0.0 or args.h_y != 0.0:
        ys = gh_transform(ys, GandHSpec(args.g_y, args.h_y))
    import csv

    pair = out / "pair.csv"
    with open(pair, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("key", "x", "y"))
        for i in range(args.n):
            w.writerow((str(i), repr(float(xs[i])), repr(float(ys[i]))))
    write_manifest(out / "manifest.txt", manifest)
    print(f"wrote {pair}: n={args.n}")
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="tonsura", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"tonsura {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("tonsure", help="association measures vs tonsure percent")
    _add_input_flags(p)
    p.add_argument("--metric", default="l2", choices=("l2", "r1"))
    p.add_argument("--space", default="values", choices=("values", "ranks"))
    p.add_argument("--measures", type=_measure_list,
                   default=["pearson", "spearman", "somers_dba"], metavar="LIST")
    p.add_argument("--step", type=float, default=5.0, metavar="PCT")
    p.add_argument("--min-survivors", type=int, default=24, metavar="N")
    _add_null_flags(p, default_on=True)
    _add_output_flags(p)
    p.set_defaults(func=cmd_tonsure)

    p = sub.add_parser("taildep", help="corner and edge tail curves")
    _add_input_flags(p)
    p.add_argument("--regions", type=_region_list, default=list(CORNERS + EDGES),
                   metavar="LIST")
    p.add_argument("--u-grid", type=_u_grid, default=None, metavar="SPEC",
                   help="comma list of u values in (0, 0.5], or 'auto'")
    _add_null_flags(p, default_on=True)
    _add_output_flags(p)
    p.set_defaults(func=cmd_taildep)

    p = sub.add_parser("octants", help="octant population tables vs tonsure percent")
    _add_input_flags(p)
    p.add_argument("--step", type=float, default=5.0, metavar="PCT")
    p.add_argument("--min-survivors", type=int, default=24, metavar="N")
    _add_null_flags(p, default_on=False)
    _add_output_flags(p)
    p.set_defaults(func=cmd_octants)

    p = sub.add_parser("beta", help="regression slope keeping |market| >= threshold")
    _add_input_flags(p)
    p.add_argument("--thresholds", type=_float_list, default=[0.0], metavar="LIST",
                   help="ascending non-negative market-move magnitudes")
    _add_output_flags(p)
    p.set_defaults(func=cmd_beta)

    p = sub.add_parser("simulate", help="write synthetic pairs or a skewness table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rho", type=float, default=0.0)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--g-x", type=float, default=0.0)
    p.add_argument("--h-x", type=float, default=0.0)
    p.add_argument("--g-y", type=float, default=0.0)
    p.add_argument("--h-y", type=float, default=0.0)
    p.add_argument("--g-grid", type=_float_list, default=None, metavar="LIST",
                   help="emit a Pearson-by-skewness table over this g grid")
    p.add_argument("--out", required=True, metavar="DIR")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidPercent as exc:
        return _fail(1, exc)
    except DataError as exc:
        return _fail(2, exc)
    except OSError as exc:
        return _fail(2, exc)
    except DegenerateStatistics as exc:
        return _fail(3, exc)
    except ValueError as exc:
        return _fail(1, exc)


def _fail(code: int, exc: Exception) -> int:
    print(f"tonsura: error: {exc}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
