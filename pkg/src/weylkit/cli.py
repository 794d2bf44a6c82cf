"""Command-line entry point: ``verify``, ``sweep``, ``bench``, ``default-config``."""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

from .errors import WeylError
from .harness.bench import bench, format_table
from .harness.checks import check_reports, load_baseline, write_baseline
from .harness.report import emit_report
from .harness.sweep import SUITES, SweepConfig, run_sweep

log = logging.getLogger("weylkit")


def _floats(text):
    return [float(t) for t in text.split(",") if t.strip()]


def _b_values(text):
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok:
            out.append(tok if tok in ("p", "p'") else float(tok))
    return out


def _suites(text):
    if text == "all":
        return list(SUITES)
    return [t.strip() for t in text.split(",") if t.strip()]


def _infer_format(path, explicit):
    if explicit:
        return explicit
    return "csv" if str(path).lower().endswith(".csv") else "json"


def _finish(cfg, fmt, baseline_path, write_baseline_path, workers):
    reports = run_sweep(cfg, workers=workers)
    emit_report(reports, fmt, cfg.output_path)
    log.info("wrote %d reports to %s", len(reports), cfg.output_path)
    if write_baseline_path:
        write_baseline(reports, write_baseline_path)
    baseline = None
    if baseline_path == "default":
        baseline = load_baseline()
    elif baseline_path:
        baseline = load_baseline(baseline_path)
    failures = check_reports(reports, tol=cfg.tolerance, baseline=baseline)
    if failures:
        print(f"FAIL: {len(failures)} of the checks failed over {len(reports)} reports", file=sys.stderr)
        for f in failures[:50]:
            print(f"  {f}", file=sys.stderr)
        if len(failures) > 50:
            print(f"  ... and {len(failures) - 50} more", file=sys.stderr)
        return 1
    print(f"OK: {len(reports)} reports, all checks passed")
    return 0


def cmd_verify(args):
    cfg = SweepConfig(
        group_spec=args.group, suites=_suites(args.suite), p_grid=_floats(args.p),
        q_grid=_floats(args.q), b_grid=_b_values(args.b), beta_grid=_floats(args.beta),
        trials=args.trials, seed=args.seed, tolerance=args.tol, output_path=args.out,
        mode=args.mode, timing=args.timing,
    )
    return _finish(cfg, _infer_format(args.out, args.format), args.baseline,
                   args.write_baseline, args.workers)


def cmd_sweep(args):
    cfg = SweepConfig.from_json(Path(args.config).read_text())
    if args.out:
        cfg.output_path = args.out
    return _finish(cfg, _infer_format(cfg.output_path, args.format), args.baseline,
                   args.write_baseline, args.workers)


def cmd_bench(args):
    sizes = [s for s in args.sizes.split(",") if s.strip()]
    rows = bench(sizes, repeat=args.repeat, seed=args.seed)
    print(format_table(rows))
    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["group", "order", "reference_ms", "fast_ms", "speedup", "max_abs_diff", "scaled_diff"])
            for r in rows:
                w.writerow([r.group, r.order, f"{r.reference_ms:.17g}", f"{r.fast_ms:.17g}",
                            f"{r.speedup:.17g}", f"{r.max_abs_diff:.17g}", f"{r.scaled_diff:.17g}"])
    return 0


def cmd_default_config(args):
    text = SweepConfig().to_json()
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="weylkit", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=None,
                        help="report format (default: from the output extension)")
    common.add_argument("--baseline", default=None,
                        help="baseline JSON to check against, or 'default' for the shipped one")
    common.add_argument("--write-baseline", default=None, help="write per-cell maxima here")
    common.add_argument("--workers", type=int, default=1)

    v = sub.add_parser("verify", parents=[common], help="run selected suites and check them")
    v.add_argument("--group", required=True, help="comma-separated group specs, e.g. 4,2x3")
    v.add_argument("--suite", required=True, help=f"comma-separated ids from {', '.join(SUITES)}, or 'all'")
    v.add_argument("--p", required=True)
    v.add_argument("--q", default="2,3,4")
    v.add_argument("--b", default="p,2,p'")
    v.add_argument("--beta", default="1,2")
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--tol", type=float, default=1e-8)
    v.add_argument("--out", default="reports.json")
    v.add_argument("--mode", choices=("fast", "reference"), default="fast")
    v.add_argument("--timing", action="store_true", help="record wall_time_ms (breaks byte-stability)")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", parents=[common], help="run a sweep from a JSON config")
    s.add_argument("--config", required=True)
    s.add_argument("--out", default=None, help="override output_path from the config")
    s.set_defaults(func=cmd_sweep)

    b = sub.add_parser("bench", help="time reference vs fast Weyl transforms")
    b.add_argument("--sizes", default="4,8,16,32,64")
    b.add_argument("--mode", choices=("both",), default="both")
    b.add_argument("--repeat", type=int, default=3)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", default=None, help="optional CSV output")
    b.set_defaults(func=cmd_bench)

    d = sub.add_parser("default-config", help="print the default sweep config")
    d.add_argument("--out", default=None)
    d.set_defaults(func=cmd_default_config)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (WeylError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
