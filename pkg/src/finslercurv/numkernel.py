"""Dense linear algebra for small symmetric systems.

Everything here works on plain numpy arrays of modest order (<= 16 in
practice): Cholesky factorization, orthonormal frame completion around a
unit normal, a cyclic Jacobi eigensolver, quadratic forms, and the
normal-deflated trace used by the curvature formulas. All functions are
pure; nothing is cached or mutated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import (
    DimensionMismatch,
    NoConvergence,
    NotPositiveDefinite,
    NotUnit,
)

# Orthonormality tolerance for tangent frames.
FRAME_TOL = 1e-12
# Allowed deviation of a "unit" vector from length 1.
UNIT_TOL = 1e-10
# A Cholesky pivot below this fraction of the largest diagonal entry is
# treated as loss of positive definiteness.
PIVOT_REL_TOL = 1e-13


def _as_square(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    return a


def _as_symmetric(a) -> np.ndarray:
    a = _as_square(a)
    if not np.array_equal(a, a.T):
        raise ValueError("matrix is not symmetric")
    return a


def _as_unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.ndim != 1:
        raise DimensionMismatch(f"expected a vector, got shape {v.shape}")
    if abs(np.linalg.norm(v) - 1.0) > UNIT_TOL:
        raise NotUnit("vector is not unit length")
    return v


@dataclass(frozen=True)
class TangentFrame:
    """Orthonormal basis of the hyperplane orthogonal to a unit normal.

    ``basis`` has shape (n-1, n); its rows together with ``normal`` form an
    orthonormal basis of R^n.
    """

    ambient_dim: int
    normal: np.ndarray
    basis: np.ndarray

    def __post_init__(self):
        n = self.ambient_dim
        if self.normal.shape != (n,) or self.basis.shape != (n - 1, n):
            raise DimensionMismatch("frame arrays have inconsistent shapes")
        gram = self.basis @ self.basis.T
        if np.max(np.abs(gram - np.eye(n - 1))) > FRAME_TOL:
            raise ValueError("tangent basis is not orthonormal")
        if np.max(np.abs(self.basis @ self.normal)) > FRAME_TOL:
            raise ValueError("tangent basis is not orthogonal to the normal")


def cholesky(g) -> np.ndarray:
    """Lower-triangular L with L @ L.T == g, for SPD input g.

    Raises NotPositiveDefinite as soon as a pivot drops below
    PIVOT_REL_TOL times the largest diagonal entry.
    """
    g = _as_symmetric(g)
    n = g.shape[0]
    if n < 1:
        raise DimensionMismatch("matrix order must be >= 1")
    floor = PIVOT_REL_TOL * float(np.max(np.diag(g)))
    low = np.zeros_like(g)
    for j in range(n):
        pivot = g[j, j] - low[j, :j] @ low[j, :j]
        if pivot <= floor:
            raise NotPositiveDefinite(f"pivot {pivot:.3e} at column {j}")
        low[j, j] = np.sqrt(pivot)
        for i in range(j + 1, n):
            low[i, j] = (g[i, j] - low[i, :j] @ low[j, :j]) / low[j, j]
    return low


def complete_frame(normal) -> TangentFrame:
    """Deterministic orthonormal basis of the hyperplane orthogonal to ``normal``.

    Uses the Householder reflection exchanging ``normal`` with a signed
    first coordinate axis and returns the images of the remaining axes.
    The target axis is -e1 whenever normal[0] > 0.5, which keeps the
    reflection well conditioned near normal = e1; as a consequence
    complete_frame(e1) is exactly {e2, ..., en}.
    """
    normal = _as_unit(normal)
    n = normal.size
    if n < 2:
        raise DimensionMismatch("ambient dimension must be >= 2")
    sign = -1.0 if normal[0] > 0.5 else 1.0
    u = normal.copy()
    u[0] -= sign  # u = normal - sign*e1, never close to zero
    beta = 2.0 / (u @ u)
    basis = np.empty((n - 1, n))
    for k in range(1, n):
        basis[k - 1] = -(beta * u[k]) * u
        basis[k - 1, k] += 1.0
    normal = normal.copy()
    normal.flags.writeable = False
    basis.flags.writeable = False
    return TangentFrame(n, normal, basis)


def sym_eigensystem(a, tol: float = 1e-12, max_sweeps: int = 50):
    """Eigenvalues (ascending) and orthonormal eigenvectors of symmetric ``a``.

    Cyclic Jacobi rotations; sweeps stop once every off-diagonal entry is
    below ``tol`` times the largest entry of ``a``. Returns (w, q) with
    a == q @ diag(w) @ q.T.
    """
    a = _as_symmetric(a).copy()
    n = a.shape[0]
    q = np.eye(n)
    scale = float(np.max(np.abs(a))) if n > 0 else 0.0
    if n > 1 and scale > 0.0:
        for _ in range(max_sweeps):
            off = np.max(np.abs(a - np.diag(np.diag(a))))
            if off <= tol * scale:
                break
            for p in range(n - 1):
                for r in range(p + 1, n):
                    apr = a[p, r]
                    if apr == 0.0:
                        continue
                    theta = (a[r, r] - a[p, p]) / (2.0 * apr)
                    t = np.sign(theta) if theta != 0.0 else 1.0
                    t /= abs(theta) + np.sqrt(theta * theta + 1.0)
                    c = 1.0 / np.sqrt(t * t + 1.0)
                    s = t * c
                    for m in (a,):
                        col_p = m[:, p].copy()
                        col_r = m[:, r].copy()
                        m[:, p] = c * col_p - s * col_r
                        m[:, r] = s * col_p + c * col_r
                        row_p = m[p, :].copy()
                        row_r = m[r, :].copy()
                        m[p, :] = c * row_p - s * row_r
                        m[r, :] = s * row_p + c * row_r
                    col_p = q[:, p].copy()
                    col_r = q[:, r].copy()
                    q[:, p] = c * col_p - s * col_r
                    q[:, r] = s * col_p + c * col_r
        else:
            raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], q[:, order]


def sym_eigenvalues(a, tol: float = 1e-12, max_sweeps: int = 50) -> np.ndarray:
    """Ascending eigenvalues of a symmetric matrix (Jacobi sweeps)."""
    w, _ = sym_eigensystem(a, tol=tol, max_sweeps=max_sweeps)
    return w


def quadratic_form(a, u, v) -> float:
    """sum_ij a[i,j] u[i] v[j]."""
    a = _as_square(a)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != (a.shape[0],) or v.shape != (a.shape[0],):
        raise DimensionMismatch("vector lengths do not match matrix order")
    return float(u @ a @ v)


def trace_reduction(a, normal) -> float:
    """tr(a) minus the normal-normal component: tr(a) - N a N^T.

    Equals the trace of ``a`` restricted (as an operator) to the
    hyperplane orthogonal to the unit vector ``normal``.
    """
    a = _as_symmetric(a)
    normal = _as_unit(normal)
    if normal.size != a.shape[0]:
        raise DimensionMismatch("normal length does not match matrix order")
    return float(np.trace(a)) - quadratic_form(a, normal, normal)


def projected_trace(a, normal) -> float:
    """Trace of ``a`` projected onto the hyperplane orthogonal to ``normal``.

    Builds an explicit orthonormal basis {X_1, ..., X_{n-1}} of the
    hyperplane and sums X_alpha . (a X_alpha). Independent route for the
    same quantity as trace_reduction; the two are cross-checked in the
    test suite and by the CLI lemma-test command.
    """
    a = _as_symmetric(a)
    frame = complete_frame(normal)
    total = 0.0
    for x in frame.basis:
        total += quadratic_form(a, x, x)
    return total
