"""Canonical moving frame and Schwarzian curvatures of curves in CP^n.

For a lifting ``f = (f_0, ..., f_n)`` with Wronskian
``W = det[f, f', ..., f^(n)] != 0`` the normalising factor is
``lam = W^(-1/(n+1))`` (principal branch), the frame is
``nu = lam * f, e_k = nu^(k)`` with ``det[nu, e_1, ..., e_n] = 1``, and the
curvatures are defined by ``e_n' = kappa_0 nu + ... + kappa_{n-1} e_{n-1}``.

Order budget: lifting jets are built at order ``2n+1``.  The Wronskian needs
``f^(n)`` and keeps ``n+1`` more Taylor orders so that ``lam`` is known through
``lam^(n+1)``; ``nu^(n+1)`` then uses ``f`` and ``lam`` through order ``n+1``.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DegenerateCurve, DivisionByZeroJet, EvaluationError
from .expr import CurveSpec, lift
from .jets import Jet, jet_powc
from .linalg import SingularMatrix, lu_det, lu_solve

WRONSKIAN_RTOL = 1e-10
FRENET_RTOL = 1e-7


class FrenetResidualWarning(RuntimeWarning):
    pass


@dataclass(frozen=True)
class FrameData:
    n: int
    point: complex
    derivatives: np.ndarray  # (n+1) x (n+2): column k is f^(k)(point)
    wronskian: Jet
    lambda_: Jet
    g: np.ndarray
    H: np.ndarray
    frame_vectors: np.ndarray  # columns nu, e_1, ..., e_n
    e_prime_n: np.ndarray

    @property
    def frame_determinant(self) -> complex:
        return complex(lu_det(self.frame_vectors))


@dataclass(frozen=True)
class CurvatureResult:
    kappas: tuple
    frenet_residual: float
    wronskian_magnitude: float
    frame: Optional[FrameData] = field(default=None, repr=False, compare=False)

    @property
    def flagged(self) -> bool:
        """True when the Frenet residual exceeds ``FRENET_RTOL * scale``."""
        return self.frenet_residual > FRENET_RTOL * frame_scale(self.frame)


def required_order(n: int) -> int:
    if n < 1:
        raise ValueError("n must be at least 1")
    return 2 * n + 1


def _derivative_jets(lifting, n):
    # D[i][k] = k-th formal derivative of lifting[i], truncated to order n+1
    D = []
    for f in lifting:
        row = [f]
        for _ in range(n):
            row.append(row[-1].deriv())
        D.append([u.truncate(n + 1) for u in row])
    return D


def wronskian_jet(lifting, n: int) -> Jet:
    """``det[f, f', ..., f^(n)]`` as an order-``n+1`` jet.

    Raises :class:`DegenerateCurve` if its value is below
    ``1e-10 * (1 + max |f_i^(k)|)``.
    """
    if len(lifting) != n + 1:
        raise ValueError(f"need {n + 1} lifting components, got {len(lifting)}")
    need = required_order(n)
    for f in lifting:
        if f.order < need:
            raise ValueError(f"lifting jets must have order >= {need}, got {f.order}")
    D = _derivative_jets(lifting, n)
    scale = 1.0 + max(abs(D[i][k].coeffs[0]) for i in range(n + 1) for k in range(n + 1))
    try:
        W = lu_det(D)
    except (SingularMatrix, DivisionByZeroJet):
        raise DegenerateCurve(f"Wronskian vanishes at z = {lifting[0].base}") from None
    if abs(W.coeffs[0]) < WRONSKIAN_RTOL * scale:
        raise DegenerateCurve(f"Wronskian |W| = {abs(W.coeffs[0]):.3g} at z = {W.base}")
    return W


def lambda_jet(w: Jet, n: int) -> Jet:
    """``w^(-1/(n+1))`` on the principal branch."""
    try:
        return jet_powc(w, -1.0 / (n + 1))
    except DivisionByZeroJet:
        raise DegenerateCurve(f"Wronskian vanishes at z = {w.base}") from None


def _derivative_matrix(lifting, n):
    return np.array([f.derivatives()[: n + 2] for f in lifting], dtype=complex)


def solve_g(lifting, n: int) -> np.ndarray:
    """Coefficients ``g`` with ``f^(n+1) = g_0 f + ... + g_n f^(n)`` at the point."""
    M = _derivative_matrix(lifting, n)
    try:
        return lu_solve(M[:, : n + 1], M[:, n + 1])
    except (SingularMatrix, ZeroDivisionError):
        raise DegenerateCurve(f"singular derivative system at z = {lifting[0].base}") from None


def build_H(lam: Jet, g, n: int) -> np.ndarray:
    """The (n+1) x (n+2) matrix with ``nu^(c) = sum_r H[r, c] f^(r)``."""
    if lam.order < n + 1:
        raise ValueError(f"lambda jet needs order >= {n + 1}")
    if len(g) != n + 1:
        raise ValueError(f"g must have length {n + 1}")
    ld = lam.derivatives()
    H = np.zeros((n + 1, n + 2), dtype=complex)
    for c in range(n + 2):
        for r in range(min(c, n) + 1):
            H[r, c] = math.comb(c, r) * ld[c - r]
    H[:, n + 1] += ld[0] * np.asarray(g, dtype=complex)
    return H


def build_frame(lifting, n: int, gauge: complex = 1.0) -> FrameData:
    """Canonical frame data at the lifting's base point.

    ``gauge`` multiplies lambda; it must be an (n+1)-th root of unity.
    """
    gauge = complex(gauge)
    if abs(gauge ** (n + 1) - 1.0) > 1e-12:
        raise ValueError("gauge factor must be an (n+1)-th root of unity")
    W = wronskian_jet(lifting, n)
    lam = lambda_jet(W, n) * gauge
    g = solve_g(lifting, n)
    H = build_H(lam, g, n)
    nu = [lam * f.truncate(n + 1) for f in lifting]
    nu_d = np.array([v.derivatives() for v in nu], dtype=complex)
    return FrameData(
        n=n,
        point=lifting[0].base,
        derivatives=_derivative_matrix(lifting, n),
        wronskian=W,
        lambda_=lam,
        g=g,
        H=H,
        frame_vectors=nu_d[:, : n + 1],
        e_prime_n=nu_d[:, n + 1],
    )


def frame_scale(fd):
    if fd is None:
        return 1.0
    return 1.0 + float(np.max(np.linalg.norm(fd.frame_vectors, axis=0)))


def frenet_residual(fd: FrameData, kappas) -> float:
    """``|| e_n' - sum_i kappa_i * column_i ||``."""
    k = np.asarray(kappas, dtype=complex)
    if k.size != fd.n:
        raise ValueError(f"expected {fd.n} curvatures")
    return float(np.linalg.norm(fd.e_prime_n - fd.frame_vectors[:, : fd.n] @ k))


def kappas_from_frame(fd: FrameData) -> tuple:
    """``kappa_j = (-1)^(n-j) det(H_j) det W``, H_j = H without column j."""
    n = fd.n
    w0 = fd.wronskian.value
    out = []
    for j in range(n):
        Hj = np.delete(fd.H, j, axis=1)
        out.append((-1) ** (n - j) * complex(lu_det(Hj)) * w0)
    return tuple(out)


def kappas_by_solve(fd: FrameData) -> tuple:
    """Curvatures by solving ``[nu, e_1..e_n] x = e_n'`` directly (last entry ~ 0)."""
    x = lu_solve(fd.frame_vectors, fd.e_prime_n)
    return tuple(complex(v) for v in x[: fd.n])


def kappa_from_lifting(lifting, n: int, gauge: complex = 1.0, warn: bool = True) -> CurvatureResult:
    fd = build_frame(lifting, n, gauge)
    kappas = kappas_from_frame(fd)
    result = CurvatureResult(
        kappas=kappas,
        frenet_residual=frenet_residual(fd, kappas),
        wronskian_magnitude=abs(fd.wronskian.value),
        frame=fd,
    )
    if warn and result.flagged:
        warnings.warn(
            f"Frenet residual {result.frenet_residual:.3g} at z = {fd.point}",
            FrenetResidualWarning,
            stacklevel=2,
        )
    return result


def kappa_general(spec: CurveSpec, a, gauge: complex = 1.0) -> CurvatureResult:
    """Schwarzian curvatures of ``spec`` at ``z = a`` via the H-minor formula."""
    lifting = lift(spec, a, required_order(spec.n))
    return kappa_from_lifting(lifting, spec.n, gauge)


def root_of_unity(n: int, k: int) -> complex:
    return cmath.exp(2j * math.pi * k / (n + 1))


__all__ = [
    "CurvatureResult",
    "DegenerateCurve",
    "EvaluationError",
    "FrameData",
    "FrenetResidualWarning",
    "build_H",
    "build_frame",
    "frame_scale",
    "frenet_residual",
    "kappa_from_lifting",
    "kappa_general",
    "kappas_by_solve",
    "kappas_from_frame",
    "lambda_jet",
    "required_order",
    "root_of_unity",
    "solve_g",
    "wronskian_jet",
]
