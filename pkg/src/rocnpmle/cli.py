"""``roc-npmle`` command line interface.

Exit codes: 0 success / PASS, 1 input or usage error, 2 verification failure
or oracle limit, 3 degenerate sample (a class with fewer than 2 cases).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .analysis import AnalysisReport, analyze
from .counts import (
    CategoryCounts,
    random_counts,
    read_bin_edges,
    read_counts_csv,
    read_scores_csv,
    sniff_format,
    tabulate,
)
from .errors import DegenerateSample, OracleLimit, RocNpmleError
from .likelihood import log_likelihood, oracle_constrained_mle, pooled_probabilities
from .pava import constrained_roc, pava
from .roc import RocCurve, empirical_roc
from .sim import (
    BIAS_M_DISEASED,
    BIAS_N_NONDISEASED,
    DEFAULT_REPLICATES,
    DEFAULT_SEED,
    CoverageGrid,
    bias_sweep,
    run_experiment,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERIFY = 2
EXIT_DEGENERATE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {value}")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {value}")
    return value


def _fraction(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1), got {value}")
    return value


def _fmt(x: float | None) -> str:
    if x is None:
        return "n/a"
    if math.isinf(x):
        return "inf"
    return f"{x:#.5g}"


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------

def load_counts(path: str, fmt: str = "auto", bin_edges: str | None = None) -> CategoryCounts:
    """Read a counts or scores file into :class:`CategoryCounts`."""
    if fmt == "auto":
        fmt = sniff_format(path)
    if fmt == "counts":
        return read_counts_csv(path)
    edges = read_bin_edges(bin_edges) if bin_edges else None
    return tabulate(read_scores_csv(path, edges))


def format_report(report: AnalysisReport) -> str:
    r = report.pava
    lines = [
        f"dataset: {report.label}",
        f"categories: k={report.k}  merged k={report.k_merged}",
        "merged blocks: " + " | ".join(r.merged.labels),
        "merged diseased:    " + " ".join(str(v) for v in r.merged.m),
        "merged nondiseased: " + " ".join(str(v) for v in r.merged.n),
        "merged ratios (m/n): " + " ".join(
            "inf" if math.isinf(v) else f"{v:.2f}" for v in r.unnormalized_ratios()
        ),
        "",
        f"{'':15s}{'AUC':>10s}{'var(anova)':>13s}{'var(simple)':>13s}   {100 * (1 - report.alpha):g}% CI",
    ]
    for name, v in (("unconstrained", report.unconstrained), ("constrained", report.constrained)):
        ci = "n/a" if v.ci is None else f"[{_fmt(v.ci.lower)}, {_fmt(v.ci.upper)}]"
        lines.append(
            f"{name:15s}{_fmt(v.auc.value):>10s}"
            f"{_fmt(None if v.anova is None else v.anova.total):>13s}"
            f"{_fmt(v.simple.total):>13s}   {ci}"
        )
    return "\n".join(lines)


def write_curve_csv(curve: RocCurve, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["fpr", "tpr"])
        for x, y in curve.vertices:
            w.writerow([repr(x), repr(y)])


def write_merged_csv(report: AnalysisReport, path: str | Path) -> None:
    r = report.pava
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["category", "diseased", "nondiseased", "original_categories"])
        for j, (mj, nj, lab) in enumerate(zip(r.merged.m, r.merged.n, r.merged.labels), start=1):
            w.writerow([j, mj, nj, lab])


def cmd_analyze(args: argparse.Namespace) -> int:
    counts = load_counts(args.path, args.format, args.bin_edges)
    report = analyze(counts, alpha=args.alpha, label=args.label or Path(args.path).name)
    if args.curve_out:
        write_curve_csv(empirical_roc(counts), args.curve_out)
    if args.hull_out:
        write_curve_csv(constrained_roc(report.pava), args.hull_out)
    if args.merged_out:
        write_merged_csv(report, args.merged_out)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(format_report(report))
    if report.degenerate:
        print("warning: a class has fewer than 2 cases; ANOVA variance undefined",
              file=sys.stderr)
        return EXIT_DEGENERATE
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def verify_counts(counts: CategoryCounts, max_k: int, tol: float = 1e-9) -> dict:
    """Compare the pooled estimate with exhaustive enumeration."""
    result = pava(counts)
    ll_pava = log_likelihood(counts, *pooled_probabilities(counts, result.blocks)).loglik
    oracle = oracle_constrained_mle(counts, max_k=max_k)
    ok = abs(ll_pava - oracle.loglik) <= tol * max(1.0, abs(oracle.loglik))
    ok = ok and tuple(result.blocks) in oracle.maximizers
    return {
        "k": counts.k,
        "pava_loglik": ll_pava,
        "oracle_loglik": oracle.loglik,
        "pava_blocks": [list(b) for b in result.blocks],
        "oracle_blocks": [list(b) for b in oracle.blocks],
        "pass": bool(ok),
    }


def cmd_verify(args: argparse.Namespace) -> int:
    if args.counts is None and not args.fuzz:
        raise _UsageError("verify needs --counts PATH or --fuzz N")
    results = []
    if args.counts is not None:
        results.append(verify_counts(load_counts(args.counts), args.max_k))
    if args.fuzz:
        rng = np.random.default_rng(args.seed)
        for _ in range(args.fuzz):
            results.append(verify_counts(random_counts(rng, args.max_k, args.max_count), args.max_k))
    passed = all(r["pass"] for r in results)
    if args.json:
        print(json.dumps({"pass": passed, "instances": results}, indent=2))
    else:
        if args.counts is not None:
            r = results[0]
            print(f"pava loglik:   {r['pava_loglik']!r}")
            print(f"oracle loglik: {r['oracle_loglik']!r}")
        if args.fuzz:
            n_fail = sum(not r["pass"] for r in results[-args.fuzz:])
            print(f"fuzz: {args.fuzz} instances, {n_fail} failures")
        print("PASS" if passed else "FAIL")
    return EXIT_OK if passed else EXIT_VERIFY


# ---------------------------------------------------------------------------
# simulate-*
# ---------------------------------------------------------------------------

def _emit_csv(header: Sequence[str], rows: list[list], out: str | None) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    if out:
        with open(out, "w", newline="", encoding="utf-8") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


def _grid(args: argparse.Namespace) -> CoverageGrid:
    return CoverageGrid(
        family=args.family,
        aucs=args.auc,
        m_values=args.m,
        ratios=args.ratio,
        categories=args.k,
        replicates=args.reps,
        alpha=args.alpha,
        seed=args.seed,
        bin_mode=args.bin_mode,
        coverage_reference=args.reference,
    )


def cmd_simulate_coverage(args: argparse.Namespace) -> int:
    rows = []
    for cfg in _grid(args).configs:
        r = run_experiment(cfg, args.threads)
        rows.append([cfg.family, repr(cfg.target_auc), cfg.M, cfg.ratio, cfg.categories,
                     repr(r.coverage_miss_rate)])
    _emit_csv(["family", "auc", "M", "r_a", "k", "miss_rate"], rows, args.out)
    return EXIT_OK


def cmd_simulate_sd(args: argparse.Namespace) -> int:
    rows = []
    for cfg in _grid(args).configs:
        r = run_experiment(cfg, args.threads)
        rows.append([
            cfg.family, repr(cfg.target_auc), cfg.M, cfg.ratio, cfg.categories,
            repr(r.sd_auc_unconstrained), repr(math.sqrt(r.mean_var_unconstrained)),
            repr(r.sd_auc_constrained), repr(math.sqrt(r.mean_var_constrained)),
        ])
    _emit_csv(
        ["family", "auc", "M", "r_a", "k", "sd_unconstrained", "rms_se_unconstrained",
         "sd_constrained", "rms_se_constrained"],
        rows, args.out,
    )
    return EXIT_OK


def cmd_simulate_bias(args: argparse.Namespace) -> int:
    if args.auc:
        grid = args.auc
    else:
        n = int(round((args.grid_stop - args.grid_start) / args.grid_step)) + 1
        grid = [round(args.grid_start + i * args.grid_step, 10) for i in range(n)]
    points = bias_sweep(
        args.family, grid, M=args.m_diseased, N=args.n_nondiseased, k=args.k,
        replicates=args.reps, seed=args.seed, threads=args.threads, bin_mode=args.bin_mode,
    )
    rows = [[repr(p.target_auc), repr(p.fractional_bias_unconstrained),
             repr(p.fractional_bias_constrained)] for p in points]
    _emit_csv(["target_auc", "fractional_bias_unconstrained", "fractional_bias_constrained"],
              rows, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=_nonneg_int, default=DEFAULT_SEED,
                        help=f"random seed (default {DEFAULT_SEED})")
    common.add_argument("--threads", type=_positive_int, default=1,
                        help="worker threads for simulations")

    parser = _Parser(prog="roc-npmle", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", parents=[common], help="AUC, variance and CI of a dataset")
    p.add_argument("path", help="counts CSV (category,diseased,nondiseased) or scores CSV (score,label)")
    p.add_argument("--format", choices=["auto", "counts", "scores"], default="auto")
    p.add_argument("--bin-edges", help="file of ascending bin edges for scores input")
    p.add_argument("--alpha", type=_fraction, default=0.05)
    p.add_argument("--label", help="dataset label in the report")
    p.add_argument("--curve-out", help="write empirical ROC vertices (fpr,tpr)")
    p.add_argument("--hull-out", help="write constrained ROC vertices (fpr,tpr)")
    p.add_argument("--merged-out", help="write pooled counts CSV")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", parents=[common], help="check pooling against exhaustive search")
    p.add_argument("--counts", help="counts or scores file to verify")
    p.add_argument("--max-k", type=_positive_int, default=12)
    p.add_argument("--fuzz", type=_nonneg_int, default=0, help="number of random instances")
    p.add_argument("--max-count", type=_positive_int, default=20,
                   help="largest per-category count in fuzz instances")
    p.set_defaults(func=cmd_verify)

    def sim_flags(p: argparse.ArgumentParser, grid: bool) -> None:
        p.add_argument("--family", choices=["normal", "uniform"], required=True)
        p.add_argument("--reps", type=_positive_int, default=DEFAULT_REPLICATES)
        p.add_argument("--bin-mode", default="mixture-quantile",
                       choices=["mixture-quantile", "population-quantile", "pooled-quantile"])
        p.add_argument("--out", help="output CSV (default stdout)")
        if grid:
            p.add_argument("--auc", type=float, nargs="+", required=True)
            p.add_argument("--m", type=_positive_int, nargs="+", required=True)
            p.add_argument("--ratio", type=_positive_int, nargs="+", default=[1])
            p.add_argument("--k", type=_positive_int, nargs="+", default=[7])
            p.add_argument("--alpha", type=_fraction, default=0.05)
            p.add_argument("--reference", default="estimator-mean",
                           choices=["estimator-mean", "true-auc", "discretized-auc"])

    p = sub.add_parser("simulate-coverage", parents=[common], help="CI miss rates per cell")
    sim_flags(p, grid=True)
    p.set_defaults(func=cmd_simulate_coverage)

    p = sub.add_parser("simulate-sd", parents=[common], help="empirical SD vs estimated SE per cell")
    sim_flags(p, grid=True)
    p.set_defaults(func=cmd_simulate_sd)

    p = sub.add_parser("simulate-bias", parents=[common], help="mean AUC over a grid of true AUCs")
    sim_flags(p, grid=False)
    p.add_argument("--k", type=_positive_int, default=7)
    p.add_argument("--auc", type=float, nargs="+", help="explicit grid (overrides --grid-*)")
    p.add_argument("--grid-start", type=float, default=0.60)
    p.add_argument("--grid-stop", type=float, default=0.99)
    p.add_argument("--grid-step", type=float, default=0.01)
    p.add_argument("--m-diseased", type=_positive_int, default=BIAS_M_DISEASED)
    p.add_argument("--n-nondiseased", type=_positive_int, default=BIAS_N_NONDISEASED)
    p.set_defaults(func=cmd_simulate_bias)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        parser.error(str(exc))
    except OracleLimit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except DegenerateSample as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (RocNpmleError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
