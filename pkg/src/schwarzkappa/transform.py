"""Projective transformations and changes of the curve parameter.

Projective maps act on the homogeneous lifting; the curvatures do not change.
A reparameterisation ``z = z(w)`` does change them, by the laws
implemented in :func:`transform_law_n1` and :func:`transform_law_n2`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ChartEscape, CriticalReparameterization, DegenerateCurve
from .expr import CurveSpec, eval_jet, lift, parse
from .frame import CurvatureResult, kappa_from_lifting, required_order
from .jets import DEGENERATE_RTOL, Jet, jet_compose
from .linalg import lu_det
from .lowdim import SIGMA_KEYS, schwarzian, schwarzian_jet, sigma_table


@dataclass(frozen=True, eq=False)
class AffineMap:
    """``f -> A f + b`` on C^(n+1)."""

    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        A = np.array(self.A, dtype=complex)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError("A must be square")
        b = np.zeros(A.shape[0], dtype=complex) if self.b is None else np.array(self.b, dtype=complex)
        if b.shape != (A.shape[0],):
            raise ValueError("b must have one entry per row of A")
        scale = 1.0 + float(np.max(np.abs(A)))
        if abs(complex(lu_det(A))) <= 1e-12 * scale ** A.shape[0]:
            raise ValueError("linear part of the affine map is singular")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def dim(self) -> int:
        return self.A.shape[0]

    @classmethod
    def linear(cls, A) -> "AffineMap":
        return cls(A, None)

    def effective_matrix(self) -> np.ndarray:
        """Linear map equal to this one on liftings with leading entry 1."""
        M = self.A.copy()
        M[:, 0] += self.b
        return M


def random_affine(n: int, rng: np.random.Generator, with_offset: bool = False,
                  min_det: float = 0.1) -> AffineMap:
    """Entries uniform in the unit square of C; rejects ``|det| < min_det``."""
    while True:
        shape = (n + 1, n + 1)
        A = rng.uniform(size=shape) + 1j * rng.uniform(size=shape)
        b = rng.uniform(size=n + 1) + 1j * rng.uniform(size=n + 1) if with_offset else np.zeros(n + 1)
        m = AffineMap(A, b) if abs(np.linalg.det(A)) >= min_det else None
        if m is not None and abs(np.linalg.det(m.effective_matrix())) >= min_det:
            return m


def transformed_lifting(lifting, m: AffineMap):
    """``A f + b`` renormalised to leading component 1."""
    if m.dim != len(lifting):
        raise ValueError(f"map acts on C^{m.dim}, lifting lives in C^{len(lifting)}")
    new = []
    for i in range(m.dim):
        acc = lifting[0] * 0.0 + m.b[i]
        for k in range(m.dim):
            acc = acc + lifting[k] * m.A[i, k]
        new.append(acc)
    scale = 1.0 + max(abs(f.value) for f in new)
    if abs(new[0].value) < DEGENERATE_RTOL * scale:
        raise ChartEscape(f"leading homogeneous coordinate vanishes at z = {new[0].base}")
    lead = new[0]
    return [lead / lead] + [f / lead for f in new[1:]]


def apply_affine(spec: CurveSpec, m: AffineMap, a) -> CurvatureResult:
    """Curvatures of the image of ``spec`` under ``m`` at ``z = a``."""
    lifting = lift(spec, a, required_order(spec.n))
    return kappa_from_lifting(transformed_lifting(lifting, m), spec.n)


@dataclass(frozen=True)
class CoordinateChange:
    """``z = z(w)`` near ``w = base_w``; the expression uses ``z`` as its variable."""

    z_of_w: object
    base_w: complex

    def __post_init__(self):
        e = parse(self.z_of_w) if isinstance(self.z_of_w, str) else self.z_of_w
        object.__setattr__(self, "z_of_w", e)
        object.__setattr__(self, "base_w", complex(self.base_w))

    def jet(self, K: int) -> Jet:
        zj = eval_jet(self.z_of_w, self.base_w, K)
        if K >= 1:
            scale = 1.0 + float(np.max(np.abs(zj.coeffs[: min(K, 3) + 1])))
            if abs(zj.coeffs[1]) < DEGENERATE_RTOL * scale:
                raise CriticalReparameterization(f"z'(w) vanishes at w = {self.base_w}")
        return zj


def reparametrized_lifting(spec: CurveSpec, cc: CoordinateChange, K: int):
    zj = cc.jet(K)
    z0 = zj.value
    return [jet_compose(f, zj) for f in lift(spec, z0, K)]


def reparametrized_kappa(spec: CurveSpec, cc: CoordinateChange) -> CurvatureResult:
    """Curvatures of ``w -> x(z(w))`` at ``w = base_w``."""
    lifting = reparametrized_lifting(spec, cc, required_order(spec.n))
    return kappa_from_lifting(lifting, spec.n)


def transform_law_n1(kappa0, cc: CoordinateChange) -> complex:
    """``z'^2 kappa_0 - S z / 2``."""
    zj = cc.jet(3)
    z1 = zj.derivative(1)
    return complex(z1 * z1 * kappa0 - 0.5 * schwarzian(zj, CriticalReparameterization))


def transform_law_n2(kappas, cc: CoordinateChange, printed: bool = False) -> tuple:
    """Reparameterised ``(kappa_0, kappa_1)`` for curves in CP^2.

    ``kappa_1 -> z'^2 kappa_1 - 2 S z`` and
    ``kappa_0 -> z'^3 kappa_0 + z' z'' kappa_1 - (S z)'``, derivatives in w.
    With ``printed=True`` the last term is the undifferentiated ``S z``;
    kept only to quantify how far that variant is off.
    """
    k0, k1 = kappas
    zj = cc.jet(4)
    d = zj.derivatives()
    S = schwarzian_jet(zj, CriticalReparameterization)
    Sz, dSz = S.coeffs[0], S.coeffs[1]
    t1 = d[1] ** 2 * k1 - 2 * Sz
    t0 = d[1] ** 3 * k0 + d[1] * d[2] * k1 - (Sz if printed else dSz)
    return complex(t0), complex(t1)


def sigma_tilde(s, zd, printed: bool = False) -> dict:
    """Sigma entries after ``z = z(w)`` from the untransformed ones.

    ``s`` maps (i, j) to sigma_ij, ``zd[k]`` is ``z^(k)(w)``.  ``printed``
    selects the ``3 z''^2 sigma_12`` variant of the (2, 4) entry.
    """
    z1, z2, z3, z4 = zd[1], zd[2], zd[3], zd[4]
    s12, s13, s14, s15, s23, s24 = (s[k] for k in ((1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4)))
    return {
        (1, 2): z1**3 * s12,
        (1, 3): z1**4 * s13 + 3 * z1**2 * z2 * s12,
        (2, 3): z1**5 * s23 + z1**3 * z2 * s13 - z1**2 * z3 * s12 + 3 * z1 * z2**2 * s12,
        (1, 4): z1**5 * s14 + 6 * z1**3 * z2 * s13 + 4 * z1**2 * z3 * s12 + 3 * z1 * z2**2 * s12,
        (2, 4): z1**6 * s24 + 6 * z1**4 * z2 * s23 + z1**4 * z2 * s14 + 6 * z1**2 * z2**2 * s13
        - z1**2 * z4 * s12 + 4 * z1 * z2 * z3 * s12 + 3 * z2 ** (2 if printed else 3) * s12,
        (1, 5): z1**6 * s15 + 10 * z1**4 * z2 * s14 + 10 * z1**3 * z3 * s13
        + 15 * z1**2 * z2**2 * s13 + 5 * z1**2 * z4 * s12 + 10 * z1 * z2 * z3 * s12,
    }


@dataclass(frozen=True)
class SigmaTransformReport:
    direct: dict
    predicted: dict
    deviations: dict

    @property
    def max_deviation(self) -> float:
        return max(self.deviations.values())


def sigma_transform_check(x: Jet, y: Jet, cc: CoordinateChange, printed: bool = False) -> SigmaTransformReport:
    """Compare sigma entries of ``x(z(w)), y(z(w))`` with the transformation table.

    ``x`` and ``y`` are expanded at ``z(base_w)``.  Deviations are
    ``|direct - predicted| / max(1, |direct|)``.
    """
    K = max(x.order, 5)
    zj = cc.jet(K)
    if x.order != K or y.order != K:
        raise ValueError("x and y must be jets of the same order >= 5")
    xt, yt = jet_compose(x, zj), jet_compose(y, zj)
    direct = sigma_table(xt, yt).entries
    predicted = sigma_tilde(sigma_table(x, y).entries, zj.derivatives(), printed)
    dev = {k: float(abs(direct[k] - predicted[k]) / max(1.0, abs(direct[k]))) for k in SIGMA_KEYS}
    return SigmaTransformReport(direct, {k: complex(v) for k, v in predicted.items()}, dev)


__all__ = [
    "AffineMap",
    "ChartEscape",
    "CoordinateChange",
    "DegenerateCurve",
    "SigmaTransformReport",
    "apply_affine",
    "random_affine",
    "reparametrized_kappa",
    "reparametrized_lifting",
    "sigma_tilde",
    "sigma_transform_check",
    "transform_law_n1",
    "transform_law_n2",
    "transformed_lifting",
]
