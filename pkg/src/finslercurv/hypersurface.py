"""Curvature of an implicitly defined, oriented hypersurface.

The surface is the zero level set of a defining scalar field f with
nonvanishing gradient. The unit normal is eps * grad f / |grad f|; the
shape operator in an orthonormal tangent frame is the projected Hessian
of f scaled by 1/|grad f|, and the mean curvature is the corresponding
normal-deflated trace. A finite-difference Weingarten construction
(differencing the normal field itself) provides an independent oracle
for the same matrix.

Sign convention: SIGN_CONVENTION = +1 selects the orientation in which
the unit sphere with outward normal has every principal curvature +1
(so convex surfaces seen from outside are positively curved). Flipping
eps negates the shape operator and the mean curvature.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .autodiff import ScalarField, grad_hess
from .exceptions import DimensionMismatch, OffSurface, VanishingGradient
from .numkernel import (
    TangentFrame,
    complete_frame,
    quadratic_form,
    sym_eigenvalues,
    trace_reduction,
)

# +1: outward-oriented unit sphere has principal curvatures +1.
SIGN_CONVENTION = 1.0

# Numerical floor below which the gradient counts as vanishing.
GRADIENT_FLOOR = 1e-10

# |f| above this at an asserted on-surface point raises OffSurface.
ON_SURFACE_TOL = 1e-8


@dataclass(frozen=True)
class DefiningEvaluation:
    """f, grad f, Hess f and |grad f| at one point."""

    at: np.ndarray
    value: float
    gradient: np.ndarray
    hessian: np.ndarray
    grad_norm: float


@dataclass(frozen=True)
class OrientedNormal:
    """Unit normal eps * grad f / |grad f| with its orientation sign."""

    direction: np.ndarray
    epsilon: int
    grad_norm: float


@dataclass(frozen=True)
class ShapeOperatorMatrix:
    """The (n-1) x (n-1) shape-operator matrix in an orthonormal frame."""

    frame: TangentFrame
    entries: np.ndarray
    principal_curvatures: np.ndarray
    mean: float


def evaluate_defining(fld: ScalarField, y, on_surface: bool = False) -> DefiningEvaluation:
    """Evaluate f and its exact derivatives (hyper-dual path) at y."""
    y = np.asarray(y, dtype=float)
    value, grad, hess = grad_hess(fld, y)
    if on_surface and abs(value) > ON_SURFACE_TOL:
        raise OffSurface(f"|f| = {abs(value):.3e} exceeds {ON_SURFACE_TOL}")
    grad_norm = float(np.linalg.norm(grad))
    if grad_norm <= GRADIENT_FLOOR:
        raise VanishingGradient(f"|grad f| = {grad_norm:.3e}")
    return DefiningEvaluation(y, value, grad, hess, grad_norm)


def unit_normal(ev: DefiningEvaluation, epsilon: int = 1) -> OrientedNormal:
    """Oriented unit normal from a defining evaluation."""
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be +1 or -1")
    if ev.grad_norm <= GRADIENT_FLOOR:
        raise VanishingGradient(f"|grad f| = {ev.grad_norm:.3e}")
    return OrientedNormal(epsilon * ev.gradient / ev.grad_norm, epsilon, ev.grad_norm)


def _assemble(frame: TangentFrame, entries: np.ndarray) -> ShapeOperatorMatrix:
    principal = sym_eigenvalues(entries)
    k = entries.shape[0]
    mean = float(np.trace(entries)) / k
    return ShapeOperatorMatrix(frame, entries, principal, mean)


def shape_operator(ev: DefiningEvaluation, normal: OrientedNormal,
                   frame: TangentFrame | None = None) -> ShapeOperatorMatrix:
    """Shape-operator matrix from the projected Hessian of f.

    Entry (a, b) is SIGN_CONVENTION * eps / |grad f| times
    X_a . (Hess f) X_b. ``frame`` defaults to complete_frame of the
    normal direction; passing one explicitly lets both orientations be
    compared in the same basis.
    """
    n = ev.at.size
    if n < 2:
        raise DimensionMismatch("ambient dimension must be >= 2")
    if frame is None:
        frame = complete_frame(normal.direction)
    k = n - 1
    coef = SIGN_CONVENTION * normal.epsilon / normal.grad_norm
    entries = np.empty((k, k))
    for a in range(k):
        for b in range(a, k):
            q = coef * quadratic_form(ev.hessian, frame.basis[a], frame.basis[b])
            entries[a, b] = entries[b, a] = q
    return _assemble(frame, entries)


def mean_curvature_trace(ev: DefiningEvaluation, normal: OrientedNormal) -> float:
    """Mean curvature via the normal-deflated Hessian trace.

    SIGN_CONVENTION * eps / ((n-1) |grad f|) * (tr Hess f - N Hess f N^T).
    Agrees with shape_operator(...).mean to rounding; the two routes share
    only the Hessian.
    """
    n = ev.at.size
    coef = SIGN_CONVENTION * normal.epsilon / ((n - 1) * normal.grad_norm)
    return coef * trace_reduction(ev.hessian, normal.direction)


def weingarten_oracle(fld: ScalarField, y, epsilon: int = 1,
                      h: float = 1e-5) -> ShapeOperatorMatrix:
    """Shape operator by central differencing of the unit normal field.

    For each frame vector X_b, the normal is re-evaluated at
    y +- h*max(1, ||y||)*X_b; the difference quotient is projected back
    onto the frame and the matrix symmetrized by transpose averaging.
    Entirely independent of the Hessian-formula route except for the
    field itself.
    """
    y = np.asarray(y, dtype=float)
    ev0 = evaluate_defining(fld, y)
    n0 = unit_normal(ev0, epsilon)
    frame = complete_frame(n0.direction)
    n = y.size
    k = n - 1
    step = h * max(1.0, float(np.linalg.norm(y)))
    derivs = np.empty((k, n))
    for b in range(k):
        offset = step * frame.basis[b]
        n_plus = unit_normal(evaluate_defining(fld, y + offset), epsilon).direction
        n_minus = unit_normal(evaluate_defining(fld, y - offset), epsilon).direction
        derivs[b] = (n_plus - n_minus) / (2.0 * step)
    raw = SIGN_CONVENTION * frame.basis @ derivs.T  # raw[a, b] = X_a . D_b N
    entries = 0.5 * (raw + raw.T)
    return _assemble(frame, entries)
