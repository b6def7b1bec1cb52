"""First and second derivatives of scalar fields.

Primary mechanism: hyper-dual numbers, a scalar extended with two
nilpotent perturbations (eps1^2 = eps2^2 = 0) whose mixed term carries an
exact second derivative. Evaluating a smooth expression on hyper-dual
inputs yields value, two first partials and one mixed second partial with
no truncation error.

A central finite-difference engine lives alongside it and is used only as
an independent cross-check; the two paths share nothing but the field.

The coefficient slots of a HyperDual may hold floats or equally shaped
numpy arrays; the array form lets one field evaluation carry a whole
batch of derivative directions at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable

import numpy as np

from .exceptions import DimensionMismatch, DomainViolation

_SCALARS = (int, float, np.floating, np.ndarray)


class HyperDual:
    """real + d1*eps1 + d2*eps2 + d12*eps1*eps2 with eps1^2 = eps2^2 = 0."""

    __slots__ = ("real", "d1", "d2", "d12")

    def __init__(self, real, d1=0.0, d2=0.0, d12=0.0):
        self.real = real
        self.d1 = d1
        self.d2 = d2
        self.d12 = d12

    def __repr__(self):
        return f"HyperDual({self.real!r}, {self.d1!r}, {self.d2!r}, {self.d12!r})"

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        if isinstance(other, HyperDual):
            return HyperDual(self.real + other.real, self.d1 + other.d1,
                             self.d2 + other.d2, self.d12 + other.d12)
        if isinstance(other, _SCALARS):
            return HyperDual(self.real + other, self.d1, self.d2, self.d12)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return HyperDual(-self.real, -self.d1, -self.d2, -self.d12)

    def __sub__(self, other):
        if isinstance(other, HyperDual):
            return HyperDual(self.real - other.real, self.d1 - other.d1,
                             self.d2 - other.d2, self.d12 - other.d12)
        if isinstance(other, _SCALARS):
            return HyperDual(self.real - other, self.d1, self.d2, self.d12)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, _SCALARS):
            return HyperDual(other - self.real, -self.d1, -self.d2, -self.d12)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, HyperDual):
            return HyperDual(
                self.real * other.real,
                self.real * other.d1 + self.d1 * other.real,
                self.real * other.d2 + self.d2 * other.real,
                self.real * other.d12 + self.d12 * other.real
                + self.d1 * other.d2 + self.d2 * other.d1,
            )
        if isinstance(other, _SCALARS):
            return HyperDual(self.real * other, self.d1 * other,
                             self.d2 * other, self.d12 * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, HyperDual):
            return self * other._reciprocal()
        if isinstance(other, _SCALARS):
            return self * (1.0 / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _SCALARS):
            return self._reciprocal() * other
        return NotImplemented

    # -- smooth univariate lifts -----------------------------------------

    def _lift(self, f, df, d2f):
        """Compose with a univariate function given f, f', f'' at self.real."""
        return HyperDual(f, df * self.d1, df * self.d2,
                         df * self.d12 + d2f * self.d1 * self.d2)

    def _reciprocal(self):
        a = self.real
        if np.any(a == 0.0):
            raise ZeroDivisionError("hyper-dual division by zero real part")
        inv = 1.0 / a
        return self._lift(inv, -inv * inv, 2.0 * inv * inv * inv)

    def __pow__(self, e):
        a = self.real
        if isinstance(e, (int, np.integer)):
            e = int(e)
            if e < 0:
                return self._reciprocal() ** (-e)
            if e == 0:
                one = np.ones_like(a) if isinstance(a, np.ndarray) else 1.0
                return HyperDual(one, 0.0, 0.0, 0.0)
            f = a ** e
            df = e * a ** (e - 1)
            d2f = e * (e - 1) * a ** (e - 2) if e != 1 else 0.0
            return self._lift(f, df, d2f)
        if np.any(np.asarray(self.real) <= 0.0):
            raise DomainViolation("fractional power needs positive real part")
        f = a ** e
        return self._lift(f, e * a ** (e - 1.0), e * (e - 1.0) * a ** (e - 2.0))


def sqrt(x):
    """Square root for floats, arrays, or hyper-dual numbers."""
    if isinstance(x, HyperDual):
        a = x.real
        if np.any(np.asarray(a) <= 0.0):
            raise DomainViolation("sqrt needs positive real part")
        r = np.sqrt(a)
        return x._lift(r, 0.5 / r, -0.25 / (a * r))
    return np.sqrt(x)


def exp(x):
    """Exponential for floats, arrays, or hyper-dual numbers."""
    if isinstance(x, HyperDual):
        e = np.exp(x.real)
        return x._lift(e, e, e)
    return np.exp(x)


def log(x):
    """Natural logarithm for floats, arrays, or hyper-dual numbers."""
    if isinstance(x, HyperDual):
        a = x.real
        if np.any(np.asarray(a) <= 0.0):
            raise DomainViolation("log needs positive real part")
        inv = 1.0 / a
        return x._lift(np.log(a), inv, -inv * inv)
    return np.log(x)


def _always(_y) -> bool:
    return True


@dataclass(frozen=True)
class ScalarField:
    """A scalar function of an n-vector together with its validity domain.

    ``func`` must accept a sequence of n scalars, where a scalar may be a
    float, a numpy array, or a HyperDual, and must be built from the
    generic arithmetic above so either kind flows through. ``guard`` is a
    predicate on real n-vectors; func is only ever invoked where the
    guard holds.
    """

    dim: int
    func: Callable
    guard: Callable[[np.ndarray], bool] = dc_field(default=_always)


def _checked_point(fld: ScalarField, y) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    if y.shape != (fld.dim,):
        raise DimensionMismatch(f"point shape {y.shape} does not match dim {fld.dim}")
    return y


def grad_hess(fld: ScalarField, y):
    """Value, gradient, and Hessian of ``fld`` at ``y`` via hyper-duals.

    One batched field evaluation carries all n(n+1)/2 index pairs; the
    mixed coefficient of pair (i, j) is exactly d2f/dyi dyj, so the
    returned Hessian is symmetric by construction (the (j, i) entry is
    the mirrored copy of the same number).
    """
    y = _checked_point(fld, y)
    if not fld.guard(y):
        raise DomainViolation(f"point {y} is outside the field's domain")
    n = fld.dim
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    m = len(pairs)
    d1 = np.zeros((n, m))
    d2 = np.zeros((n, m))
    diag_slot = {}
    for b, (i, j) in enumerate(pairs):
        d1[i, b] = 1.0
        d2[j, b] = 1.0
        if i == j:
            diag_slot[i] = b
    z = [HyperDual(np.full(m, y[k]), d1[k], d2[k], np.zeros(m)) for k in range(n)]
    out = fld.func(z)
    if not isinstance(out, HyperDual):  # constant field
        return float(np.asarray(out).flat[0]), np.zeros(n), np.zeros((n, n))
    real = np.broadcast_to(np.asarray(out.real, dtype=float), (m,))
    first = np.broadcast_to(np.asarray(out.d1, dtype=float), (m,))
    mixed = np.broadcast_to(np.asarray(out.d12, dtype=float), (m,))
    value = float(real[0])
    grad = np.array([first[diag_slot[i]] for i in range(n)])
    hess = np.zeros((n, n))
    for b, (i, j) in enumerate(pairs):
        hess[i, j] = hess[j, i] = mixed[b]
    return value, grad, hess


def fd_grad_hess(fld: ScalarField, y, h: float = 1e-5):
    """Central-difference value/gradient/Hessian, O(h^2) accurate.

    Steps are h times max(1, ||y||). Entirely independent of the
    hyper-dual path; used as the oracle against it. Raises
    DomainViolation if any stencil point leaves the guard.
    """
    y = _checked_point(fld, y)
    n = fld.dim
    scale = max(1.0, float(np.linalg.norm(y)))
    step = h * scale

    def f(point: np.ndarray) -> float:
        if not fld.guard(point):
            raise DomainViolation(f"stencil point {point} is outside the domain")
        return float(fld.func(list(point)))

    value = f(y)
    plus = np.empty(n)
    minus = np.empty(n)
    for i in range(n):
        e = np.zeros(n)
        e[i] = step
        plus[i] = f(y + e)
        minus[i] = f(y - e)
    grad = (plus - minus) / (2.0 * step)
    hess = np.zeros((n, n))
    for i in range(n):
        hess[i, i] = (plus[i] - 2.0 * value + minus[i]) / (step * step)
        for j in range(i + 1, n):
            ei = np.zeros(n)
            ei[i] = step
            ej = np.zeros(n)
            ej[j] = step
            cross = (f(y + ei + ej) - f(y + ei - ej)
                     - f(y - ei + ej) + f(y - ei - ej)) / (4.0 * step * step)
            hess[i, j] = hess[j, i] = cross
    return value, grad, hess
