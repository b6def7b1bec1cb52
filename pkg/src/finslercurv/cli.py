"""Command-line front end.

Subcommands:
  verify      sample the indicatrix of a metric and check the
              constant-curvature claims against a tolerance
  curvature   single-point curvature report on the indicatrix
  sample      emit seeded indicatrix points with their curvature
  lemma-test  randomized cross-check of the normal-deflated trace
              against the explicit projection route

Exit codes: 0 all checks passed, 1 a claim check failed, 2 usage or I/O
error. Output is deterministic for identical arguments (and identical
FINSLER_THREADS has no effect on bytes, only on wall time).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import indicatrix as ind
from .exceptions import FinslerError, UsageError
from .metrics import eval_F, parse_metric_spec
from .numkernel import projected_trace, trace_reduction

FORMATS = ("json", "csv", "text")


@dataclass
class RunConfig:
    command: str
    metric_spec: str | None = None
    dim: int | None = None
    samples: int = 100
    seed: int = 42
    tol: float = 1e-8
    method: str = "hyperdual"
    fd_step: float = 1e-5
    output: str | None = None
    fmt: str = "text"
    point: np.ndarray | None = None
    trials: int = 1000


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_common(sub, metric: bool = True):
    if metric:
        sub.add_argument("--metric", required=True, help="metric spec string")
    sub.add_argument("--dim", type=int, default=None, help="ambient dimension")
    sub.add_argument("--seed", type=int, default=42)
    sub.add_argument("--tol", type=float, default=1e-8)
    sub.add_argument("--method", choices=ind.METHODS, default="hyperdual")
    sub.add_argument("--fd-step", type=float, default=1e-5, dest="fd_step")
    sub.add_argument("--output", default=None, help="write the report to a file")
    sub.add_argument("--format", choices=FORMATS, default="text", dest="fmt")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="finslercurv", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    subs = parser.add_subparsers(dest="command", required=True)

    verify = subs.add_parser("verify", help="verify curvature claims on a sample")
    _add_common(verify)
    verify.add_argument("--samples", type=int, default=100)

    curv = subs.add_parser("curvature", help="curvature report at one point")
    _add_common(curv)
    curv.add_argument("--point", required=True, help="comma-separated coordinates")

    sample = subs.add_parser("sample", help="emit seeded indicatrix points")
    _add_common(sample)
    sample.add_argument("--samples", type=int, default=100)

    lemma = subs.add_parser("lemma-test", help="trace-reduction cross-check")
    _add_common(lemma, metric=False)
    lemma.add_argument("--trials", type=int, default=1000)

    return parser


def parse_args(argv) -> RunConfig:
    """Parse and validate the command line into a RunConfig."""
    ns = build_parser().parse_args(argv)
    config = RunConfig(command=ns.command)
    config.metric_spec = getattr(ns, "metric", None)
    config.dim = ns.dim
    config.seed = ns.seed
    config.tol = ns.tol
    config.method = ns.method
    config.fd_step = ns.fd_step
    config.output = ns.output
    config.fmt = ns.fmt
    if hasattr(ns, "samples"):
        config.samples = ns.samples
    if hasattr(ns, "trials"):
        config.trials = ns.trials
    if hasattr(ns, "point"):
        try:
            config.point = np.asarray(
                [float(v) for v in ns.point.split(",")], dtype=float)
        except ValueError:
            raise UsageError(f"--point: bad coordinate list {ns.point!r}") from None

    if config.dim is not None and config.dim < 2:
        raise UsageError("--dim must be >= 2")
    if config.samples < 1:
        raise UsageError("--samples must be >= 1")
    if config.trials < 1:
        raise UsageError("--trials must be >= 1")
    if not config.tol > 0.0:
        raise UsageError("--tol must be positive")
    if not 0.0 < config.fd_step <= 1e-2:
        raise UsageError("--fd-step must lie in (0, 1e-2]")

    if config.metric_spec is not None:
        # Validate the metric spec eagerly so bad specs fail with exit 2.
        fund = parse_metric_spec(config.metric_spec, config.dim)
        config.dim = fund.dim
    elif config.command == "lemma-test":
        if config.dim is None:
            config.dim = 3
    if config.point is not None and config.point.size != config.dim:
        raise UsageError(
            f"--point has {config.point.size} coordinates but dim is {config.dim}")
    return config


def _thread_count() -> int:
    raw = os.environ.get("FINSLER_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        threads = int(raw)
    except ValueError:
        raise UsageError(f"FINSLER_THREADS must be a positive integer, got {raw!r}") from None
    if threads < 1:
        raise UsageError(f"FINSLER_THREADS must be a positive integer, got {raw!r}")
    return threads


def _emit(config: RunConfig, text: str) -> None:
    if config.output is None:
        sys.stdout.write(text)
    else:
        with open(config.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _fmt17(x: float) -> str:
    return f"{x:.17g}"


def _csv_rows(points, reports, fund) -> str:
    n = fund.dim
    header = "index," + ",".join(f"y_{i + 1}" for i in range(n)) + ",F,H,residual_H"
    lines = [header]
    for index, (point, rep) in enumerate(zip(points, reports)):
        coords = ",".join(_fmt17(v) for v in point.y)
        f_val = eval_F(fund, point.y)
        if isinstance(rep, Exception):
            lines.append(f"{index},{coords},{_fmt17(f_val)},nan,nan")
        else:
            lines.append(f"{index},{coords},{_fmt17(f_val)},"
                         f"{_fmt17(rep.H)},{_fmt17(rep.residual_H)}")
    return "\n".join(lines) + "\n"


def _run_verify(config: RunConfig) -> int:
    fund = parse_metric_spec(config.metric_spec, config.dim)
    summary = ind.verify_claims(
        fund, count=config.samples, seed=config.seed, tol=config.tol,
        methods=(config.method,), fd_step=config.fd_step,
        threads=_thread_count(), label=config.metric_spec)
    stats = summary.stats[config.method]
    if config.fmt == "json":
        payload = {
            "metric": config.metric_spec,
            "dim": summary.dim,
            "samples": summary.count,
            "seed": summary.seed,
            "method": config.method,
            "max_residual_H": stats.max_residual_H,
            "mean_residual_H": stats.mean_residual_H,
            "max_residual_trace": stats.max_residual_trace,
            "max_residual_umbilic": stats.max_residual_umbilic,
            "max_oracle_gap": stats.max_oracle_gap,
            "pass": stats.passed,
            "failures": stats.failures,
        }
        _emit(config, json.dumps(payload, indent=2) + "\n")
    elif config.fmt == "csv":
        points = ind.sample_indicatrix(fund, config.samples, config.seed)
        _emit(config, _csv_rows(points, summary.reports[config.method], fund))
    else:
        lines = [
            f"metric {config.metric_spec}  dim {summary.dim}  "
            f"samples {summary.count}  seed {summary.seed}  method {config.method}",
            f"max |H - 1|            = {stats.max_residual_H:.3e}",
            f"mean |H - 1|           = {stats.mean_residual_H:.3e}",
            f"max |tr(Hess) - n|     = {stats.max_residual_trace:.3e}",
            f"max |kappa - 1|        = {stats.max_residual_umbilic:.3e}",
            f"max formula-oracle gap = {stats.max_oracle_gap:.3e}",
            f"failures               = {len(stats.failures)}",
            f"result                 = {'PASS' if stats.passed else 'FAIL'} "
            f"(tol {config.tol:g}, {summary.elapsed_seconds:.2f} s)",
        ]
        _emit(config, "\n".join(lines) + "\n")
    return 0 if stats.passed else 1


def _run_curvature(config: RunConfig) -> int:
    fund = parse_metric_spec(config.metric_spec, config.dim)
    y = config.point
    normalized = False
    if abs(eval_F(fund, y) - 1.0) > 1e-10:
        y = ind.normalize_to_indicatrix(fund, y)
        normalized = True
    point = ind.indicatrix_point(fund, y)
    rep = ind.adapted_report(fund, point, method=config.method, fd_step=config.fd_step)
    ok = (rep.residual_H <= config.tol and rep.residual_trace <= config.tol
          and rep.residual_umbilic <= config.tol
          and rep.oracle_gap <= ind.ORACLE_GAP_BOUND)
    if config.fmt == "json":
        payload = {
            "metric": config.metric_spec,
            "dim": fund.dim,
            "point": [float(v) for v in y],
            "normalized": normalized,
            "method": config.method,
            "H": rep.H,
            "principal_curvatures": [float(v) for v in rep.principal],
            "residual_H": rep.residual_H,
            "residual_trace": rep.residual_trace,
            "residual_umbilic": rep.residual_umbilic,
            "oracle_gap": rep.oracle_gap,
            "pass": ok,
        }
        _emit(config, json.dumps(payload, indent=2) + "\n")
    elif config.fmt == "csv":
        _emit(config, _csv_rows([point], [rep], fund))
    else:
        kappas = ", ".join(f"{v:.12f}" for v in rep.principal)
        lines = [
            f"metric {config.metric_spec}  point {list(map(float, y))}"
            + ("  (scaled onto the indicatrix)" if normalized else ""),
            f"H = {rep.H:.15f}   principal curvatures: [{kappas}]",
            f"|H - 1| = {rep.residual_H:.3e}   |tr - n| = {rep.residual_trace:.3e}   "
            f"max |kappa - 1| = {rep.residual_umbilic:.3e}",
            f"formula-oracle gap = {rep.oracle_gap:.3e}   "
            f"result = {'PASS' if ok else 'FAIL'}",
        ]
        _emit(config, "\n".join(lines) + "\n")
    return 0 if ok else 1


def _run_sample(config: RunConfig) -> int:
    fund = parse_metric_spec(config.metric_spec, config.dim)
    points = ind.sample_indicatrix(fund, config.samples, config.seed)
    reports = []
    for point in points:
        try:
            reports.append(ind.adapted_report(fund, point, method=config.method,
                                              fd_step=config.fd_step))
        except FinslerError as exc:
            reports.append(exc)
    if config.fmt == "json":
        rows = []
        for index, (point, rep) in enumerate(zip(points, reports)):
            row = {"index": index, "y": [float(v) for v in point.y],
                   "F": eval_F(fund, point.y)}
            if isinstance(rep, Exception):
                row["error"] = str(rep)
            else:
                row["H"] = rep.H
                row["residual_H"] = rep.residual_H
            rows.append(row)
        _emit(config, json.dumps(rows, indent=2) + "\n")
    else:
        # text and csv share the re-ingestible row format
        _emit(config, _csv_rows(points, reports, fund))
    return 0


def _run_lemma_test(config: RunConfig) -> int:
    max_delta = 0.0
    worst = 0
    for trial in range(config.trials):
        rng = np.random.default_rng([config.seed, trial])
        r = rng.standard_normal((config.dim, config.dim))
        a = 0.5 * (r + r.T)
        v = rng.standard_normal(config.dim)
        normal = v / np.linalg.norm(v)
        delta = abs(trace_reduction(a, normal) - projected_trace(a, normal))
        if delta > max_delta:
            max_delta = delta
            worst = trial
    ok = max_delta <= config.tol
    if config.fmt == "json":
        payload = {"trials": config.trials, "dim": config.dim, "seed": config.seed,
                   "max_delta": max_delta, "worst_trial": worst, "pass": ok}
        _emit(config, json.dumps(payload, indent=2) + "\n")
    else:
        _emit(config,
              f"lemma-test dim {config.dim} trials {config.trials} seed {config.seed}: "
              f"max |delta trace| = {max_delta:.3e} -> "
              f"{'PASS' if ok else 'FAIL'} (tol {config.tol:g})\n")
    return 0 if ok else 1


def run(config: RunConfig) -> int:
    """Execute a validated RunConfig; returns the process exit code."""
    handlers = {
        "verify": _run_verify,
        "curvature": _run_curvature,
        "sample": _run_sample,
        "lemma-test": _run_lemma_test,
    }
    try:
        return handlers[config.command](config)
    except UsageError:
        raise
    except OSError as exc:
        raise UsageError(f"i/o error: {exc}") from exc


def main(argv=None) -> int:
    try:
        config = parse_args(sys.argv[1:] if argv is None else argv)
        return run(config)
    except UsageError as exc:
        print(f"finslercurv: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
