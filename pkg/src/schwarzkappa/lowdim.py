"""Closed-form curvatures for n = 1, 2 and the Schwarzian derivative.

These formulas work directly from derivatives of the inhomogeneous
coordinates and never build the canonical frame, so they serve as an
independent check on :mod:`schwarzkappa.frame`.

For a pair of coordinate functions ``x, y`` we write
``sigma_ij = x^(i) y^(j) - x^(j) y^(i)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import CriticalPoint, DegenerateCurve
from .jets import DEGENERATE_RTOL, Jet, jet_compose, jet_powc, jet_var

SIGMA_KEYS = ((1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (1, 5))


def _check_first_derivative(u: Jet, exc=CriticalPoint):
    if u.order < 3:
        raise ValueError("need a jet of order >= 3")
    d = u.derivatives()
    if abs(d[1]) < DEGENERATE_RTOL * (1.0 + float(np.max(np.abs(d[: 4])))):
        raise exc(f"derivative vanishes at z = {u.base}")
    return d


def schwarzian(u: Jet, exc=CriticalPoint) -> complex:
    """``S u = u'''/u' - 3/2 (u''/u')^2`` at the base point."""
    d = _check_first_derivative(u, exc)
    r2 = d[2] / d[1]
    return complex(d[3] / d[1] - 1.5 * r2 * r2)


def schwarzian_jet(u: Jet, exc=CriticalPoint) -> Jet:
    """The Schwarzian derivative as a function, jet of order ``K - 3``."""
    _check_first_derivative(u, exc)
    d1 = u.deriv()
    d2 = d1.deriv()
    d3 = d2.deriv()
    K = u.order - 3
    r2 = d2.truncate(K) / d1.truncate(K)
    return d3 / d1.truncate(K) - 1.5 * r2 * r2


def kappa0_n1(x: Jet) -> complex:
    """Curvature of a curve ``x(z)`` in CP^1; equals ``-S x / 2``."""
    return -0.5 * schwarzian(x)


@dataclass(frozen=True)
class SigmaTable:
    """``sigma_ij`` for a pair of coordinate functions at one point."""

    xd: np.ndarray
    yd: np.ndarray

    def __getitem__(self, ij) -> complex:
        i, j = ij
        return complex(self.xd[i] * self.yd[j] - self.xd[j] * self.yd[i])

    @property
    def entries(self) -> dict:
        return {k: self[k] for k in SIGMA_KEYS}


def sigma_table(x: Jet, y: Jet) -> SigmaTable:
    if x.order < 5 or y.order < 5:
        raise ValueError("sigma table needs jets of order >= 5")
    return SigmaTable(x.derivatives(), y.derivatives())


def _sigma12_check(s: SigmaTable, base):
    scale = 1.0 + max(abs(s.xd[k]) * abs(s.yd[m]) for k in (1, 2) for m in (1, 2))
    if abs(s[1, 2]) < 1e-10 * scale:
        raise DegenerateCurve(f"sigma_12 vanishes at z = {base}")


def kappa_n2(x: Jet, y: Jet) -> tuple:
    """(kappa_0, kappa_1) of ``(x, y)`` in CP^2 from the sigma formulas."""
    s = sigma_table(x, y)
    _sigma12_check(s, x.base)
    s12 = s[1, 2]
    r = s[1, 3] / s12
    k1 = 4.0 / 3.0 * r * r - (s[1, 4] + 2 * s[2, 3]) / s12
    k0 = (
        -16.0 / 27.0 * r**3
        + s[1, 3] * (3 * s[1, 4] + 2 * s[2, 3]) / (3 * s12 * s12)
        - (s[1, 5] + 2 * s[2, 4]) / (3 * s12)
    )
    return complex(k0), complex(k1)


def kappa_n2_lambda_form(x: Jet, y: Jet) -> tuple:
    """(kappa_0, kappa_1) via ``kappa_1 = 3 lam''/lam + g_1`` and
    ``kappa_0 = -(lam'/lam) kappa_1 + lam'''/lam`` with ``lam = sigma_12^(-1/3)``.
    """
    s = sigma_table(x, y)
    _sigma12_check(s, x.base)
    x1, y1 = x.deriv(), y.deriv()
    x2, y2 = x1.deriv(), y1.deriv()
    s12 = (x1.truncate(3) * y2.truncate(3)) - (x2.truncate(3) * y1.truncate(3))
    lam = jet_powc(s12, -1.0 / 3.0).derivatives()
    g1 = -s[2, 3] / s[1, 2]
    k1 = 3 * lam[2] / lam[0] + g1
    k0 = -lam[1] / lam[0] * k1 + lam[3] / lam[0]
    return complex(k0), complex(k1)


class CompositionCheck(NamedTuple):
    lhs: complex  # S(f o g)
    rhs: complex  # Sf(g) g'^2 + Sg

    @property
    def deviation(self) -> float:
        return abs(self.lhs - self.rhs) / (1.0 + abs(self.lhs))


def schwarzian_composition(f: Jet, g: Jet) -> CompositionCheck:
    """Both sides of ``S(f o g) = Sf(g) * g'^2 + Sg``.

    ``f`` is expanded at ``g(a)``, ``g`` at ``a``.
    """
    fg = jet_compose(f, g)
    g1 = g.derivative(1)
    return CompositionCheck(schwarzian(fg), schwarzian(f) * g1 * g1 + schwarzian(g))


# real polynomials ---------------------------------------------------------


def polynomial_from_critical_points(critical_points, leading=1.0, constant=0.0) -> np.ndarray:
    """Coefficients (lowest degree first) of ``P`` with
    ``P' = leading * prod(x - a_i)`` and ``P(0) = constant``."""
    dp = np.polynomial.polynomial.polyfromroots(critical_points) * leading
    return np.polynomial.polynomial.polyint(dp, k=constant)


def polynomial_jet(coeffs, x, K: int = 3) -> Jet:
    t = jet_var(complex(x), K)
    acc = t * 0.0 + complex(coeffs[-1])
    for c in coeffs[-2::-1]:
        acc = acc * t + complex(c)
    return acc


def polynomial_schwarzian_sign(coeffs, xs, root_tol: float = 1e-9) -> bool:
    """True iff ``S P(x) < 0`` at every sample, for a real polynomial ``P``
    (coefficients lowest degree first) whose critical points are real and
    distinct."""
    coeffs = np.asarray(coeffs, dtype=float)
    crit = np.polynomial.polynomial.polyroots(np.polynomial.polynomial.polyder(coeffs))
    if coeffs.size < 3 or crit.size == 0:
        raise ValueError("P' must have at least one root (degree >= 2)")
    if np.any(np.abs(crit.imag) > root_tol * (1 + np.abs(crit.real))):
        raise ValueError("critical points of P must be real")
    r = np.sort(crit.real)
    if np.any(np.diff(r) <= root_tol * (1 + np.abs(r[1:]))):
        raise ValueError("critical points of P must be distinct")
    for x in xs:
        sp = schwarzian(polynomial_jet(coeffs, float(x)))
        if not sp.real < 0:
            return False
    return True
