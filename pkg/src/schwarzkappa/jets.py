"""Truncated complex Taylor series ("jets").

A :class:`Jet` of order ``K`` at base point ``a`` stores the Taylor
coefficients ``c[k] = f^(k)(a) / k!`` for ``k = 0..K``.  Arithmetic between
jets is exact up to truncation: coefficient ``k`` of a result only depends on
coefficients ``0..k`` of the operands, so truncating a result is the same as
computing at lower order.

Jets are immutable.  Two jets can only be combined if they share the same base
point and the same order; there is no implicit truncation.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from numbers import Number

import numpy as np

from .errors import BasePointMismatch, DivisionByZeroJet, NonFiniteJet, OrderExceeded

#: relative threshold below which a leading coefficient counts as zero
DEGENERATE_RTOL = 1e-12


class Jet:
    """Truncated Taylor expansion of an analytic function at a point."""

    __slots__ = ("base", "coeffs")
    __array_priority__ = 100

    def __init__(self, coeffs, base=0j):
        c = np.array(coeffs, dtype=complex).reshape(-1)
        if c.size == 0:
            raise ValueError("a jet needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise NonFiniteJet(f"non-finite Taylor coefficient in {c}")
        base = complex(base)
        if not cmath.isfinite(base):
            raise NonFiniteJet(f"non-finite base point {base}")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "base", base)

    def __setattr__(self, name, value):
        raise AttributeError("Jet is immutable")

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @property
    def value(self) -> complex:
        return complex(self.coeffs[0])

    def __len__(self):
        return self.coeffs.size

    def __getitem__(self, k):
        return complex(self.coeffs[k])

    def __repr__(self):
        return f"Jet({self.coeffs.tolist()!r}, base={self.base!r})"

    def derivative(self, k: int) -> complex:
        return jet_derivative(self, k)

    def derivatives(self) -> np.ndarray:
        """All derivatives ``f(a), f'(a), ..., f^(K)(a)``."""
        return self.coeffs * _factorials(self.order)

    def deriv(self) -> "Jet":
        """Formal derivative d/dz; the order drops by one."""
        if self.order == 0:
            raise OrderExceeded("cannot differentiate an order-0 jet")
        k = np.arange(1, self.order + 1)
        return Jet(self.coeffs[1:] * k, self.base)

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise OrderExceeded(f"cannot raise order {self.order} to {order}")
        if order < 0:
            raise ValueError("order must be non-negative")
        return Jet(self.coeffs[: order + 1], self.base)

    def scale_tolerance(self) -> float:
        return DEGENERATE_RTOL * (1.0 + float(np.max(np.abs(self.coeffs))))

    def is_degenerate(self) -> bool:
        return abs(self.coeffs[0]) < self.scale_tolerance()

    def allclose(self, other, rtol=1e-12, atol=0.0) -> bool:
        other = _as_jet(other, self)
        return bool(np.allclose(self.coeffs, other.coeffs, rtol=rtol, atol=atol))

    # operator sugar -----------------------------------------------------

    def __add__(self, other):
        return jet_add(self, _as_jet(other, self))

    __radd__ = __add__

    def __sub__(self, other):
        return jet_sub(self, _as_jet(other, self))

    def __rsub__(self, other):
        return jet_sub(_as_jet(other, self), self)

    def __mul__(self, other):
        if isinstance(other, Number):
            return Jet(self.coeffs * complex(other), self.base)
        return jet_mul(self, _as_jet(other, self))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            if other == 0:
                raise DivisionByZeroJet("division by scalar zero")
            return Jet(self.coeffs / complex(other), self.base)
        return jet_div(self, _as_jet(other, self))

    def __rtruediv__(self, other):
        return jet_div(_as_jet(other, self), self)

    def __neg__(self):
        return Jet(-self.coeffs, self.base)

    def __pos__(self):
        return self

    def __pow__(self, p):
        if isinstance(p, (int, np.integer)):
            return jet_powi(self, int(p))
        return jet_powc(self, p)


def _factorials(K):
    return np.array([math.factorial(k) for k in range(K + 1)], dtype=float)


def _as_jet(x, like: Jet) -> Jet:
    if isinstance(x, Jet):
        return x
    if isinstance(x, Number):
        return jet_const(x, like.base, like.order)
    raise TypeError(f"cannot combine Jet with {type(x).__name__}")


def _check_compatible(u: Jet, v: Jet):
    if u.base != v.base:
        raise BasePointMismatch(f"base points differ: {u.base} vs {v.base}")
    if u.order != v.order:
        raise ValueError(f"jet orders differ: {u.order} vs {v.order}")


def _check_leading(u: Jet, what: str):
    if u.is_degenerate():
        raise DivisionByZeroJet(f"{what}: leading coefficient {u.coeffs[0]} is numerically zero")


def _conv(u, v, k):
    # coefficient k of the Cauchy product
    return np.dot(u[: k + 1], v[k::-1])


# constructors ---------------------------------------------------------------


def jet_const(c, a=0j, K: int = 0) -> Jet:
    if K < 0:
        raise ValueError("order must be non-negative")
    coeffs = np.zeros(K + 1, dtype=complex)
    coeffs[0] = c
    return Jet(coeffs, a)


def jet_var(a=0j, K: int = 0) -> Jet:
    """The identity function z expanded at ``a``."""
    if K < 0:
        raise ValueError("order must be non-negative")
    coeffs = np.zeros(K + 1, dtype=complex)
    coeffs[0] = a
    if K >= 1:
        coeffs[1] = 1.0
    return Jet(coeffs, a)


# arithmetic -----------------------------------------------------------------


def jet_add(u: Jet, v: Jet) -> Jet:
    _check_compatible(u, v)
    return Jet(u.coeffs + v.coeffs, u.base)


def jet_sub(u: Jet, v: Jet) -> Jet:
    _check_compatible(u, v)
    return Jet(u.coeffs - v.coeffs, u.base)


def jet_mul(u: Jet, v: Jet) -> Jet:
    _check_compatible(u, v)
    a, b = u.coeffs, v.coeffs
    return Jet([_conv(a, b, k) for k in range(u.order + 1)], u.base)


def jet_div(u: Jet, v: Jet) -> Jet:
    _check_compatible(u, v)
    _check_leading(v, "division")
    a, b = u.coeffs, v.coeffs
    q = np.zeros_like(a)
    q[0] = a[0] / b[0]
    for k in range(1, a.size):
        q[k] = (a[k] - np.dot(b[1 : k + 1], q[k - 1 :: -1])) / b[0]
    return Jet(q, u.base)


def jet_powi(u: Jet, p: int) -> Jet:
    """Integer power by repeated squaring; negative powers go through 1/u."""
    if p < 0:
        return jet_div(jet_const(1.0, u.base, u.order), jet_powi(u, -p))
    result = jet_const(1.0, u.base, u.order)
    base = u
    while p:
        if p & 1:
            result = jet_mul(result, base)
        p >>= 1
        if p:
            base = jet_mul(base, base)
    return result


def jet_powc(u: Jet, p) -> Jet:
    """``u**p`` for a complex or rational exponent, principal branch at order 0.

    Uses the recurrence that follows from ``u * (u^p)' = p * u' * u^p``.
    """
    if isinstance(p, Fraction):
        p = p.numerator / p.denominator
    p = complex(p)
    _check_leading(u, "power")
    a = u.coeffs
    r = np.zeros_like(a)
    r[0] = _leading(cmath.exp, p * cmath.log(a[0]))
    for k in range(1, a.size):
        j = np.arange(1, k + 1)
        r[k] = np.dot(((p + 1) * j - k) * a[1 : k + 1], r[k - 1 :: -1]) / (k * a[0])
    return Jet(r, u.base)


def jet_sqrt(u: Jet) -> Jet:
    return jet_powc(u, 0.5)


# elementary functions -------------------------------------------------------


def _leading(fn, x):
    try:
        return fn(x)
    except OverflowError:
        raise NonFiniteJet(f"{fn.__name__}({x}) overflows") from None


def jet_exp(u: Jet) -> Jet:
    a = u.coeffs
    e = np.zeros_like(a)
    e[0] = _leading(cmath.exp, a[0])
    for k in range(1, a.size):
        j = np.arange(1, k + 1)
        e[k] = np.dot(j * a[1 : k + 1], e[k - 1 :: -1]) / k
    return Jet(e, u.base)


def _sincos(u: Jet):
    a = u.coeffs
    s = np.zeros_like(a)
    c = np.zeros_like(a)
    s[0] = _leading(cmath.sin, a[0])
    c[0] = _leading(cmath.cos, a[0])
    for k in range(1, a.size):
        ja = np.arange(1, k + 1) * a[1 : k + 1]
        s[k] = np.dot(ja, c[k - 1 :: -1]) / k
        c[k] = -np.dot(ja, s[k - 1 :: -1]) / k
    return Jet(s, u.base), Jet(c, u.base)


def jet_sin(u: Jet) -> Jet:
    return _sincos(u)[0]


def jet_cos(u: Jet) -> Jet:
    return _sincos(u)[1]


# derivative extraction and composition --------------------------------------


def jet_derivative(u: Jet, k: int) -> complex:
    """k-th derivative at the base point, ``k! * coeffs[k]``."""
    if k < 0:
        raise ValueError("derivative order must be non-negative")
    if k > u.order:
        raise OrderExceeded(f"derivative {k} requested from an order-{u.order} jet")
    return complex(math.factorial(k) * u.coeffs[k])


def jet_compose(outer: Jet, inner: Jet) -> Jet:
    """Jet of ``outer(inner(z))`` at inner's base point.

    ``outer`` must be expanded at the value of ``inner``.
    """
    if outer.order != inner.order:
        raise ValueError(f"jet orders differ: {outer.order} vs {inner.order}")
    b = inner.coeffs[0]
    if abs(outer.base - b) > DEGENERATE_RTOL * (1.0 + abs(b)):
        raise BasePointMismatch(f"outer jet is at {outer.base}, inner value is {b}")
    h = inner.coeffs.copy()
    h[0] = 0.0
    h = Jet(h, inner.base)
    result = jet_const(outer.coeffs[-1], inner.base, inner.order)
    for c in outer.coeffs[-2::-1]:
        result = jet_mul(result, h) + c
    return result
