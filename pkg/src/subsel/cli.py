"""Command-line surface: select, gen-front, bench, verify.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error,
4 infeasible flag combination.
"""

from __future__ import annotations

import argparse
import json
import logging
import platform
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .bench import BenchCase, run_matrix, write_rows, write_summary
from .core import CandidateSet, Indicator, IndicatorKind, sanitize
from .frontgen import FAMILIES, FrontSpec, gen_front
from .greedy import select_lazy, select_standard, select_update
from .io import read_points, write_points
from .verify import run_all

logger = logging.getLogger("subsel")

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_INFEASIBLE = 4


def _default_ref_point(pts: np.ndarray) -> tuple[np.ndarray, str]:
    if np.all(pts <= 1.0):
        return np.full(pts.shape[1], 1.1), "default-1.1"
    span = pts.max(axis=0) - pts.min(axis=0)
    margin = np.where(span > 0.0, 0.1 * span, 0.1)
    return pts.max(axis=0) + margin, "default-max-plus-10pct-range"


def _parse_ref_point(text: str, m: int) -> np.ndarray:
    vals = [float(x) for x in text.split(",") if x.strip() != ""]
    if len(vals) != m:
        raise ValueError(f"--ref-point needs {m} comma-separated values, got {len(vals)}")
    return np.asarray(vals, dtype=np.float64)


def _environment() -> dict:
    return {
        "subsel": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "platform": platform.platform(),
    }


def cmd_select(args) -> int:
    try:
        raw = read_points(args.input)
    except (OSError, ValueError) as exc:
        logger.error("cannot read %s: %s", args.input, exc)
        return EXIT_IO
    if args.engine == "update" and args.indicator != "hv":
        logger.error("the update engine only exists for the hv indicator")
        return EXIT_INFEASIBLE

    pts = -raw if args.maximization else raw
    if args.ref_point:
        try:
            ref = _parse_ref_point(args.ref_point, pts.shape[1])
        except ValueError as exc:
            logger.error("%s", exc)
            return EXIT_USAGE
        if args.maximization:
            ref = -ref
        ref_source = "flag"
    else:
        ref, ref_source = _default_ref_point(pts)

    V = sanitize(pts, ref, provenance=str(args.input))

    ref_set_pts = None
    if args.ref_set:
        try:
            ref_set_pts = read_points(args.ref_set)
        except (OSError, ValueError) as exc:
            logger.error("cannot read %s: %s", args.ref_set, exc)
            return EXIT_IO
        if args.maximization:
            ref_set_pts = -ref_set_pts
        if ref_set_pts.shape[1] != pts.shape[1]:
            logger.error("reference set has %d columns, input has %d", ref_set_pts.shape[1], pts.shape[1])
            return EXIT_USAGE

    kind = IndicatorKind(args.indicator)
    if kind is IndicatorKind.HYPERVOLUME:
        ind = Indicator(kind)
        if ref_set_pts is not None:
            logger.error("--ref-set only applies to igd/igdplus")
            return EXIT_INFEASIBLE
    else:
        ref_cs = CandidateSet(ref_set_pts, ref) if ref_set_pts is not None else None
        ind = Indicator(kind, reference_set=ref_cs)

    t0 = time.perf_counter()
    if args.engine == "standard":
        res = select_standard(V, args.k, ind)
    elif args.engine == "lazy":
        res = select_lazy(V, args.k, ind)
    else:
        res = select_update(V, args.k)
    elapsed = time.perf_counter() - t0
    logger.info("%s/%s selected %d of %d points in %.3fs (%d evaluations)",
                args.engine, args.indicator, len(res.selected), raw.shape[0], elapsed, res.total_evals)

    report = V.report
    final = res.final_value
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "input": {
            "path": str(args.input),
            "format": Path(args.input).suffix.lstrip(".").lower() or "csv",
            "rows": int(raw.shape[0]),
            "m": int(raw.shape[1]),
            "maximization": bool(args.maximization),
        },
        "k": int(args.k),
        "seed": args.seed,
        "indicator": args.indicator,
        "engine": args.engine,
        "ref_point": [float(x) for x in V.ref_point],
        "ref_point_source": ref_source,
        "reference_set": str(args.ref_set) if args.ref_set else None,
        "sanitize": {
            "kept": report.n_kept,
            "removed_duplicates": list(report.removed_duplicates),
            "removed_dominated": list(report.removed_dominated),
            "outside_ref_box": report.n_outside_ref_box,
        },
        "selection": {
            "selected": [int(i) for i in res.selected],
            "step_gains": [float(g) for g in res.step_gains],
            "evals_per_step": [int(e) for e in res.evals_per_step],
            "total_evals": res.total_evals,
            "final_value": None if np.isnan(final) else float(final),
            "zero_gain_tail": bool(res.zero_gain_tail),
            "kernel_calls": int(res.kernel_calls),
        },
        "environment": _environment(),
    }

    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        manifest_path = out / "manifest.json"
        subset_path = out / "subset.csv"
        manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
        write_points(subset_path, raw[res.selected])
    except OSError as exc:
        logger.error("cannot write outputs: %s", exc)
        return EXIT_IO
    logger.info("wrote %s and %s", manifest_path, subset_path)
    return EXIT_OK


def cmd_gen_front(args) -> int:
    spec = FrontSpec(
        family=args.family,
        m=args.m,
        n_pool=args.pool if args.pool else args.n,
        n_sample=args.n,
        seed=args.seed,
    )
    cs = gen_front(spec)
    try:
        write_points(args.out, cs.points)
    except OSError as exc:
        logger.error("cannot write %s: %s", args.out, exc)
        return EXIT_IO
    logger.info("wrote %d points (%s) to %s", cs.n, cs.provenance, args.out)
    return EXIT_OK


def cmd_bench(args) -> int:
    cases = []
    try:
        for family in args.families.split(","):
            for m in (int(x) for x in args.m.split(",")):
                for n in (int(x) for x in args.n.split(",")):
                    for indicator in args.indicators.split(","):
                        for engine in args.engines.split(","):
                            cases.append(
                                BenchCase(
                                    family=family.strip(),
                                    m=m,
                                    n=n,
                                    k=args.k,
                                    indicator=indicator.strip(),
                                    engine=engine.strip(),
                                    pool=args.pool,
                                )
                            )
    except ValueError as exc:
        logger.error("bad bench matrix: %s", exc)
        return EXIT_INFEASIBLE if "update engine" in str(exc) else EXIT_USAGE
    rows = run_matrix(cases, repeats=args.repeats, seed=args.seed)
    try:
        write_rows(args.out, rows)
        summary = args.summary_out or str(Path(args.out).with_suffix("")) + ".summary.csv"
        write_summary(summary, rows)
    except OSError as exc:
        logger.error("cannot write bench output: %s", exc)
        return EXIT_IO
    logger.info("wrote %d rows to %s (summary: %s)", len(rows), args.out, summary)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_all(seed=args.seed, quick=args.quick, fault_hvc_scale=args.inject_hvc_fault)
    for suite in report.suites:
        status = "pass" if suite.passed else "FAIL"
        line = f"{suite.name:<32} {status}  instances={suite.instances:<6} max_deviation={suite.max_deviation:.3e}"
        if suite.note:
            line += f"  [{suite.note}]"
        print(line)
    print(f"overall: {'pass' if report.passed else 'FAIL'}")
    if args.report:
        try:
            Path(args.report).write_text(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")
        except OSError as exc:
            logger.error("cannot write %s: %s", args.report, exc)
            return EXIT_IO
    return EXIT_OK if report.passed else EXIT_VERIFY_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subsel", description="Greedy subset selection for hypervolume, IGD and IGD+")
    parser.add_argument("--version", action="version", version=f"subsel {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("select", help="select k points from a candidate file")
    p.add_argument("--input", required=True, help="candidate file (.csv or .json)")
    p.add_argument("--indicator", choices=["hv", "igd", "igdplus"], default="hv")
    p.add_argument("--engine", choices=["standard", "update", "lazy"], default="lazy")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ref-point", help="comma-separated hypervolume reference point")
    p.add_argument("--ref-set", help="reference-set file for igd/igdplus (defaults to the candidates)")
    p.add_argument("--maximization", action="store_true", help="inputs are to be maximized; negated at ingestion")
    p.add_argument("--seed", type=int, default=None, help="recorded in the manifest")
    p.add_argument("--out", required=True, help="output directory for manifest.json and subset.csv")
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("gen-front", help="sample a synthetic non-dominated candidate set")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pool", type=int, default=None, help="pool size to sample from (default: n)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen_front)

    p = sub.add_parser("bench", help="run an engine/indicator benchmark matrix")
    p.add_argument("--families", default="dtlz2")
    p.add_argument("--m", default="5")
    p.add_argument("--n", default="1000")
    p.add_argument("--k", type=int, default=100)
    p.add_argument("--indicators", default="hv")
    p.add_argument("--engines", default="standard,lazy")
    p.add_argument("--repeats", type=int, default=11)
    p.add_argument("--pool", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="raw per-run CSV path")
    p.add_argument("--summary-out", default=None, help="per-cell averages CSV (default: <out>.summary.csv)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify", help="run the oracle and property suites")
    p.add_argument("--quick", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", help="write a JSON report here")
    p.add_argument("--inject-hvc-fault", type=float, default=1.0,
                   help="self-test hook: scale one computed contribution by this factor")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
