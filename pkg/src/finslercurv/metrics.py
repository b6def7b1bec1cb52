"""Catalog of Minkowski norms (fundamental functions) on a tangent space.

Each FundamentalFunction is a positively 1-homogeneous, smooth, positive
norm F on R^n minus a guarded neighbourhood of its non-smooth locus. The
metric tensor it generates is half the Hessian of F^2, computed with the
hyper-dual engine so there is no truncation error.

Families:
  euclidean            F(y) = ||y||
  quadratic (SPD A)    F(y) = sqrt(y^T A y)
  randers (SPD a, b)   F(y) = sqrt(y^T a y) + b . y,   b^T a^-1 b < 1
  pnorm (even p)       F(y) = (sum y_i^p)^(1/p)
  mroot (even m)       F(y) = (sum y_i^m)^(1/m)

For pnorm/mroot the metric tensor degenerates on the coordinate
hyperplanes, so their guard excludes points with any |y_i| below
guard_margin * ||y||.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import autodiff
from .autodiff import ScalarField, grad_hess
from .exceptions import DimensionMismatch, DomainViolation, InvalidParams, UsageError
from .numkernel import cholesky

FAMILIES = ("euclidean", "quadratic", "randers", "pnorm", "mroot")

# Default exclusion band around the coordinate hyperplanes for the
# pnorm/mroot families, as a fraction of ||y||.
DEFAULT_GUARD_MARGIN = 1e-2

# Strong-convexity margin for Randers data: require b^T a^-1 b < 1 - this.
RANDERS_MARGIN = 1e-6


def _quad(a: np.ndarray, z) -> object:
    """sum_ij a[i,j] z_i z_j for generic scalars z_i (floats or hyper-duals)."""
    total = 0.0
    n = len(z)
    for i in range(n):
        row = 0.0
        for j in range(n):
            c = a[i, j]
            if c != 0.0:
                row = row + z[j] * c
        total = total + z[i] * row
    return total


@dataclass(frozen=True)
class FundamentalFunction:
    """One Minkowski norm, i.e. one tangent space frozen at a base point."""

    family: str
    dim: int
    matrix: np.ndarray | None = None    # quadratic / randers SPD matrix
    drift: np.ndarray | None = None     # randers covector b
    exponent: int | None = None         # pnorm / mroot even exponent
    guard_margin: float = 0.0

    def value(self, z):
        """Evaluate F on a sequence of generic scalars (floats or hyper-duals)."""
        fam = self.family
        if fam == "euclidean":
            return autodiff.sqrt(_sum_squares(z))
        if fam == "quadratic":
            return autodiff.sqrt(_quad(self.matrix, z))
        if fam == "randers":
            lin = 0.0
            for bk, zk in zip(self.drift, z):
                if bk != 0.0:
                    lin = lin + zk * bk
            return autodiff.sqrt(_quad(self.matrix, z)) + lin
        # pnorm / mroot
        p = self.exponent
        total = 0.0
        for zk in z:
            total = total + zk ** p
        return total ** (1.0 / p)

    def guard(self, y) -> bool:
        """True where F and its metric tensor are smooth and well posed."""
        y = np.asarray(y, dtype=float)
        if y.shape != (self.dim,):
            return False
        nrm = float(np.linalg.norm(y))
        if not nrm > 0.0:
            return False
        if self.guard_margin > 0.0 and float(np.min(np.abs(y))) < self.guard_margin * nrm:
            return False
        return True

    def describe(self) -> str:
        if self.family in ("pnorm", "mroot"):
            key = "p" if self.family == "pnorm" else "m"
            return f"{self.family}:{key}={self.exponent}"
        return self.family


def _sum_squares(z):
    total = 0.0
    for zk in z:
        total = total + zk * zk
    return total


def _spd_matrix(a, what: str) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidParams(f"{what} must be a square matrix")
    if not np.allclose(a, a.T, rtol=0.0, atol=0.0):
        raise InvalidParams(f"{what} must be symmetric")
    try:
        cholesky(a)
    except Exception as exc:
        raise InvalidParams(f"{what} must be positive definite") from exc
    return 0.5 * (a + a.T)  # exact symmetry for downstream kernels


def euclidean(dim: int) -> FundamentalFunction:
    """The Euclidean norm on R^dim."""
    if dim < 2:
        raise InvalidParams("dim must be >= 2")
    return FundamentalFunction("euclidean", dim)


def quadratic(a) -> FundamentalFunction:
    """F(y) = sqrt(y^T a y) for SPD a (a Riemannian norm)."""
    a = _spd_matrix(a, "quadratic matrix")
    return FundamentalFunction("quadratic", a.shape[0], matrix=a)


def randers(a, b) -> FundamentalFunction:
    """F(y) = sqrt(y^T a y) + b . y with the strong-convexity bound on b."""
    a = _spd_matrix(a, "randers matrix")
    b = np.asarray(b, dtype=float)
    if b.shape != (a.shape[0],):
        raise InvalidParams("randers covector length must match the matrix order")
    s = float(b @ np.linalg.solve(a, b))
    if s >= 1.0 - RANDERS_MARGIN:
        raise InvalidParams(f"randers data not strongly convex: b^T a^-1 b = {s:.6f}")
    return FundamentalFunction("randers", a.shape[0], matrix=a, drift=b)


def _even_exponent(value, name: str) -> int:
    try:
        e = int(value)
    except (TypeError, ValueError):
        raise InvalidParams(f"{name} must be an integer") from None
    if e != value or e < 2 or e % 2 != 0:
        raise InvalidParams(f"{name} must be an even integer >= 2, got {value!r}")
    return e


def pnorm(dim: int, p, guard_margin: float = DEFAULT_GUARD_MARGIN) -> FundamentalFunction:
    """F(y) = (sum y_i^p)^(1/p) for even p."""
    if dim < 2:
        raise InvalidParams("dim must be >= 2")
    return FundamentalFunction("pnorm", dim, exponent=_even_exponent(p, "p"),
                               guard_margin=guard_margin)


def mroot(dim: int, m, guard_margin: float = DEFAULT_GUARD_MARGIN) -> FundamentalFunction:
    """F(y) = (sum y_i^m)^(1/m) for even m."""
    if dim < 2:
        raise InvalidParams("dim must be >= 2")
    return FundamentalFunction("mroot", dim, exponent=_even_exponent(m, "m"),
                               guard_margin=guard_margin)


@dataclass(frozen=True)
class MetricTensor:
    """g_ij(y): half the Hessian of F^2, evaluated at one point."""

    at: np.ndarray
    entries: np.ndarray


def energy_field(fund: FundamentalFunction) -> ScalarField:
    """The scalar field y -> F(y)^2 / 2, whose Hessian is the metric tensor."""
    def func(z):
        v = fund.value(z)
        return (v * v) * 0.5
    return ScalarField(fund.dim, func, fund.guard)


def eval_F(fund: FundamentalFunction, y) -> float:
    """F(y) on the guarded domain."""
    y = np.asarray(y, dtype=float)
    if not fund.guard(y):
        raise DomainViolation(f"point {y} is outside the guarded domain")
    return float(fund.value(list(y)))


def metric_tensor(fund: FundamentalFunction, y) -> MetricTensor:
    """The metric generated by F at y; raises NotPositiveDefinite if degenerate."""
    y = np.asarray(y, dtype=float)
    _, _, g = grad_hess(energy_field(fund), y)
    cholesky(g)  # SPD check; NotPositiveDefinite propagates
    return MetricTensor(y, g)


def check_homogeneity(fund: FundamentalFunction, y, lam: float):
    """Residuals of 1-homogeneity of F and 0-homogeneity of g at (y, lam).

    Returns (|F(lam y) - lam F(y)| / (lam F(y)),
             max-entry relative difference of g at lam*y versus y).
    """
    if lam <= 0.0:
        raise InvalidParams("lambda must be positive")
    y = np.asarray(y, dtype=float)
    f0 = eval_F(fund, y)
    f1 = eval_F(fund, lam * y)
    res_f = abs(f1 - lam * f0) / (lam * f0)
    g0 = metric_tensor(fund, y).entries
    g1 = metric_tensor(fund, lam * y).entries
    res_g = float(np.max(np.abs(g1 - g0)) / np.max(np.abs(g0)))
    return res_f, res_g


# ---------------------------------------------------------------------------
# Metric-spec mini-grammar (consumed by the CLI):
#   euclidean
#   quadratic:A=d1,d2,...         (diagonal)  or  quadratic:A=@file.json
#   randers:a=@file.json,b=v1,v2,...          (a may also be a diagonal list)
#   pnorm:p=4
#   mroot:m=6
# Matrix files: {"order": n, "entries": [n*n numbers, row-major]}.
# ---------------------------------------------------------------------------

def _split_params(text: str) -> dict[str, list[str]]:
    params: dict[str, list[str]] = {}
    current: list[str] | None = None
    for token in text.split(","):
        if "=" in token:
            name, _, first = token.partition("=")
            name = name.strip()
            if not name or name in params:
                raise UsageError(f"bad parameter token {token!r}")
            current = params.setdefault(name, [])
            current.append(first)
        else:
            if current is None:
                raise UsageError(f"value {token!r} without a parameter name")
            current.append(token)
    return params


def load_matrix_file(path: str) -> np.ndarray:
    """Read {"order": n, "entries": [...]} and return the n x n matrix."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
        order = int(payload["order"])
        entries = np.asarray(payload["entries"], dtype=float)
        if order < 1 or entries.shape != (order * order,):
            raise ValueError("entries length must be order**2")
        return entries.reshape(order, order)
    except UsageError:
        raise
    except Exception as exc:
        raise UsageError(f"cannot read matrix file {path!r}: {exc}") from exc


def _matrix_param(values: list[str], dim: int | None, what: str) -> np.ndarray:
    if len(values) == 1 and values[0].startswith("@"):
        return load_matrix_file(values[0][1:])
    try:
        diag = np.asarray([float(v) for v in values], dtype=float)
    except ValueError as exc:
        raise UsageError(f"bad numeric value in {what}: {exc}") from exc
    if dim is not None and diag.size != dim:
        raise UsageError(f"{what} has {diag.size} entries but dim is {dim}")
    return np.diag(diag)


def parse_metric_spec(spec: str, dim: int | None = None) -> FundamentalFunction:
    """Build a catalog object from a metric-spec string.

    Raises UsageError on any malformed input, including parameters the
    constructors reject.
    """
    if not isinstance(spec, str) or not spec or any(c.isspace() for c in spec):
        raise UsageError("metric spec must be a non-empty whitespace-free string")
    family, sep, rest = spec.partition(":")
    if family not in FAMILIES:
        raise UsageError(f"unknown metric family {family!r}")
    params = _split_params(rest) if sep else {}
    try:
        if family == "euclidean":
            if params:
                raise UsageError("euclidean takes no parameters")
            if dim is None:
                raise UsageError("euclidean needs an ambient dimension")
            return euclidean(dim)
        if family == "quadratic":
            if set(params) != {"A"}:
                raise UsageError("quadratic needs exactly the parameter A")
            fund = quadratic(_matrix_param(params["A"], dim, "A"))
        elif family == "randers":
            if set(params) != {"a", "b"}:
                raise UsageError("randers needs exactly the parameters a and b")
            a = _matrix_param(params["a"], dim, "a")
            try:
                b = np.asarray([float(v) for v in params["b"]], dtype=float)
            except ValueError as exc:
                raise UsageError(f"bad numeric value in b: {exc}") from exc
            fund = randers(a, b)
        elif family == "pnorm":
            if set(params) != {"p"}:
                raise UsageError("pnorm needs exactly the parameter p")
            if len(params["p"]) != 1:
                raise UsageError("p must be a single integer")
            fund = pnorm(dim if dim is not None else 0, _parse_int(params["p"][0], "p"))
        else:  # mroot
            if set(params) != {"m"}:
                raise UsageError("mroot needs exactly the parameter m")
            if len(params["m"]) != 1:
                raise UsageError("m must be a single integer")
            fund = mroot(dim if dim is not None else 0, _parse_int(params["m"][0], "m"))
    except InvalidParams as exc:
        raise UsageError(str(exc)) from exc
    if dim is not None and fund.dim != dim:
        raise UsageError(f"metric has dimension {fund.dim} but dim is {dim}")
    return fund


def _parse_int(text: str, name: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise UsageError(f"{name} must be an integer, got {text!r}") from exc
