"""Curvature verification on the indicatrix {y : F(y) = 1}.

The indicatrix is treated as the zero level set of f(y) = (F(y)^2 - 1)/2,
whose Hessian is exactly the metric tensor g. At each sampled point y the
coordinates are adapted by the Cholesky factor of g(y): in z = L^T y
coordinates the metric at that point is the identity, the unit normal is
the radius vector z itself with |grad f| = 1, the Hessian trace equals
the ambient dimension, and the mean curvature is identically 1 with every
principal curvature equal to 1 (total umbilicity). Reports record the
numerical residuals of each of those statements, plus the gap to the
finite-difference Weingarten oracle.
"""

from __future__ import annotations

import dataclasses
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from .autodiff import ScalarField, fd_grad_hess
from .exceptions import FinslerError, RejectionOverflow, VanishingGradient
from .hypersurface import (
    DefiningEvaluation,
    GRADIENT_FLOOR,
    mean_curvature_trace,
    shape_operator,
    unit_normal,
    evaluate_defining,
    weingarten_oracle,
)
from .metrics import FundamentalFunction, MetricTensor, eval_F, metric_tensor
from .numkernel import cholesky

METHODS = ("hyperdual", "fd")

# Fixed cross-check bound for the formula-vs-Weingarten gap at the default
# oracle step; separate from the user tolerance on the claim residuals.
ORACLE_GAP_BOUND = 1e-5

# Draws are rejected with this multiple of the metric's guard margin so
# that finite-difference stencils around accepted points never leave the
# evaluation guard.
SAMPLING_MARGIN_FACTOR = 15.0


@dataclass(frozen=True)
class IndicatrixPoint:
    """A point on the indicatrix with its metric data.

    ``y_adapted = chol.T @ y`` is the point in coordinates where the metric
    at y is the identity; it is a Euclidean unit vector.
    """

    y: np.ndarray
    metric: MetricTensor
    chol: np.ndarray
    y_adapted: np.ndarray


@dataclass(frozen=True)
class CurvatureReport:
    """Per-point residual record for the constant-curvature claims."""

    point: IndicatrixPoint
    H: float
    principal: np.ndarray
    residual_H: float
    residual_trace: float
    residual_umbilic: float
    method: str
    oracle_gap: float
    path_gap: float            # |trace-route H - eigen-route H|
    normal_residual: float     # max |N - y_adapted|
    grad_norm_residual: float  # ||grad f| - 1|


def defining_field(fund: FundamentalFunction) -> ScalarField:
    """f(y) = (F(y)^2 - 1)/2; its Hessian is the metric tensor g."""
    def func(z):
        v = fund.value(z)
        return (v * v - 1.0) * 0.5
    return ScalarField(fund.dim, func, fund.guard)


def normalize_to_indicatrix(fund: FundamentalFunction, direction) -> np.ndarray:
    """Scale a direction onto the indicatrix: y = d / F(d)."""
    d = np.asarray(direction, dtype=float)
    return d / eval_F(fund, d)


def indicatrix_point(fund: FundamentalFunction, y) -> IndicatrixPoint:
    """Attach metric, Cholesky factor and adapted coordinates to a point."""
    y = np.asarray(y, dtype=float)
    g = metric_tensor(fund, y)
    low = cholesky(g.entries)
    return IndicatrixPoint(y, g, low, low.T @ y)


def sample_indicatrix(fund: FundamentalFunction, count: int, seed: int) -> list[IndicatrixPoint]:
    """Deterministic seeded sample of indicatrix points.

    Directions are standard Gaussian draws from a generator keyed by
    (seed, index, retry); draws violating the guard domain are rejected.
    The result for a given (seed, count) does not depend on evaluation
    order, and shorter runs are prefixes of longer ones.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if fund.guard_margin > 0.0:
        draw_guard = dataclasses.replace(
            fund, guard_margin=SAMPLING_MARGIN_FACTOR * fund.guard_margin).guard
    else:
        draw_guard = fund.guard
    points = []
    rejections = 0
    for index in range(count):
        retry = 0
        while True:
            rng = np.random.default_rng([seed, index, retry])
            d = rng.standard_normal(fund.dim)
            if draw_guard(d):
                break
            retry += 1
            rejections += 1
            if rejections > 1000 * count:
                raise RejectionOverflow(
                    f"{rejections} rejected draws for {count} samples; "
                    "guard domain too aggressive for this dimension")
        points.append(indicatrix_point(fund, normalize_to_indicatrix(fund, d)))
    return points


def adapted_field(fund: FundamentalFunction, point: IndicatrixPoint) -> ScalarField:
    """The defining field pulled back to the adapted coordinates of ``point``."""
    base = defining_field(fund)
    back = np.linalg.inv(point.chol.T)  # maps adapted coords to original ones
    n = fund.dim

    def func(z):
        w = []
        for i in range(n):
            acc = 0.0
            for k in range(n):
                c = back[i, k]
                if c != 0.0:
                    acc = acc + z[k] * c
            w.append(acc)
        return base.func(w)

    def guard(zt) -> bool:
        return base.guard(back @ np.asarray(zt, dtype=float))

    return ScalarField(n, func, guard)


def adapted_report(fund: FundamentalFunction, point: IndicatrixPoint,
                   method: str = "hyperdual", fd_step: float = 1e-5,
                   oracle_step: float = 1e-5) -> CurvatureReport:
    """Curvature residuals at one indicatrix point, in adapted coordinates."""
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}")
    fld = adapted_field(fund, point)
    z = point.y_adapted
    if method == "hyperdual":
        ev = evaluate_defining(fld, z, on_surface=True)
    else:
        value, grad, hess = fd_grad_hess(fld, z, fd_step)
        grad_norm = float(np.linalg.norm(grad))
        if grad_norm <= GRADIENT_FLOOR:
            raise VanishingGradient(f"|grad f| = {grad_norm:.3e}")
        ev = DefiningEvaluation(z, value, grad, hess, grad_norm)
    normal = unit_normal(ev, 1)  # outward: the radius vector
    h_trace = mean_curvature_trace(ev, normal)
    shape = shape_operator(ev, normal)
    oracle = weingarten_oracle(fld, z, 1, oracle_step)
    n = fund.dim
    return CurvatureReport(
        point=point,
        H=h_trace,
        principal=shape.principal_curvatures,
        residual_H=abs(h_trace - 1.0),
        residual_trace=abs(float(np.trace(ev.hessian)) - n),
        residual_umbilic=float(np.max(np.abs(shape.principal_curvatures - 1.0))),
        method=method,
        oracle_gap=float(np.max(np.abs(shape.entries - oracle.entries))),
        path_gap=abs(h_trace - shape.mean),
        normal_residual=float(np.max(np.abs(normal.direction - z))),
        grad_norm_residual=abs(ev.grad_norm - 1.0),
    )


@dataclass
class MethodStats:
    """Aggregated residuals for one derivative method over a sample."""

    method: str
    count: int = 0
    max_residual_H: float = 0.0
    mean_residual_H: float = 0.0
    max_residual_trace: float = 0.0
    max_residual_umbilic: float = 0.0
    max_oracle_gap: float = 0.0
    max_path_gap: float = 0.0
    failures: list = dc_field(default_factory=list)
    passed: bool = True


@dataclass
class VerificationSummary:
    """Outcome of a full claim-verification batch."""

    metric: str
    dim: int
    count: int
    seed: int
    tol: float
    stats: dict
    passed: bool
    elapsed_seconds: float
    reports: dict


def _aggregate(method: str, reports: list, tol: float) -> MethodStats:
    stats = MethodStats(method)
    residuals = []
    for index, item in enumerate(reports):
        if isinstance(item, Exception):
            stats.failures.append({"index": index, "error": str(item)})
            continue
        stats.count += 1
        residuals.append(item.residual_H)
        stats.max_residual_H = max(stats.max_residual_H, item.residual_H)
        stats.max_residual_trace = max(stats.max_residual_trace, item.residual_trace)
        stats.max_residual_umbilic = max(stats.max_residual_umbilic, item.residual_umbilic)
        stats.max_oracle_gap = max(stats.max_oracle_gap, item.oracle_gap)
        stats.max_path_gap = max(stats.max_path_gap, item.path_gap)
        if (item.residual_H > tol or item.residual_trace > tol
                or item.residual_umbilic > tol):
            stats.failures.append({
                "index": index,
                "residual_H": item.residual_H,
                "residual_trace": item.residual_trace,
                "residual_umbilic": item.residual_umbilic,
            })
    stats.mean_residual_H = float(np.mean(residuals)) if residuals else 0.0
    stats.passed = (not stats.failures
                    and stats.max_oracle_gap <= ORACLE_GAP_BOUND)
    return stats


def verify_claims(fund: FundamentalFunction, count: int = 100, seed: int = 42,
                  tol: float = 1e-8, methods=METHODS, fd_step: float = 1e-5,
                  threads: int = 1, label: str | None = None) -> VerificationSummary:
    """Sample the indicatrix and verify the constant-curvature claims.

    Per-point failures (residuals above ``tol`` or raised errors) are
    recorded without aborting the batch. Output is deterministic for a
    fixed (seed, count, tol) at any thread count.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    start = time.perf_counter()
    points = sample_indicatrix(fund, count, seed)

    def one(args):
        method, point = args
        try:
            return adapted_report(fund, point, method=method, fd_step=fd_step)
        except FinslerError as exc:
            return exc

    stats = {}
    all_reports = {}
    for method in methods:
        jobs = [(method, p) for p in points]
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                reports = list(pool.map(one, jobs))
        else:
            reports = [one(j) for j in jobs]
        all_reports[method] = reports
        stats[method] = _aggregate(method, reports, tol)
    return VerificationSummary(
        metric=label if label is not None else fund.describe(),
        dim=fund.dim,
        count=count,
        seed=seed,
        tol=tol,
        stats=stats,
        passed=all(s.passed for s in stats.values()),
        elapsed_seconds=time.perf_counter() - start,
        reports=all_reports,
    )
