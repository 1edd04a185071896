"""Gaussian elimination with partial pivoting over complex numbers or jets.

Entries may be plain complex numbers or :class:`~schwarzkappa.jets.Jet`
values; pivots are chosen by the magnitude of the order-0 value, ties going
to the lowest row index so results are reproducible.
"""

from __future__ import annotations

import numpy as np

from .errors import KappaError
from .jets import Jet


class SingularMatrix(KappaError, ArithmeticError):
    pass


def _magnitude(x) -> float:
    if isinstance(x, Jet):
        return abs(x.coeffs[0])
    return abs(x)


def _rows(matrix):
    rows = [list(r) for r in matrix]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    return rows


def _eliminate(rows, rhs=None):
    """In-place forward elimination; returns the permutation sign."""
    n = len(rows)
    sign = 1
    for k in range(n):
        p = max(range(k, n), key=lambda i: (_magnitude(rows[i][k]), -i))
        if _magnitude(rows[p][k]) == 0.0:
            raise SingularMatrix(f"zero pivot in column {k}")
        if p != k:
            rows[k], rows[p] = rows[p], rows[k]
            if rhs is not None:
                rhs[k], rhs[p] = rhs[p], rhs[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, n):
            factor = rows[i][k] / pivot
            for j in range(k + 1, n):
                rows[i][j] = rows[i][j] - factor * rows[k][j]
            if rhs is not None:
                rhs[i] = rhs[i] - factor * rhs[k]
    return sign


def lu_det(matrix):
    """Determinant of a square matrix of complex numbers or jets.

    An exactly zero pivot column gives determinant 0 for scalars; over jets
    it raises :class:`SingularMatrix` since higher coefficients are unknown.
    """
    rows = _rows(matrix)
    try:
        sign = _eliminate(rows)
    except SingularMatrix:
        if any(isinstance(v, Jet) for r in rows for v in r):
            raise
        return 0j
    det = rows[0][0]
    for k in range(1, len(rows)):
        det = det * rows[k][k]
    return det if sign > 0 else -det


def lu_solve(matrix, rhs) -> np.ndarray:
    """Solve ``matrix @ x = rhs`` for complex ``x``."""
    rows = [[complex(v) for v in r] for r in _rows(matrix)]
    b = [complex(v) for v in rhs]
    if len(b) != len(rows):
        raise ValueError("right-hand side has the wrong length")
    _eliminate(rows, b)
    n = len(rows)
    x = [0j] * n
    for i in range(n - 1, -1, -1):
        s = b[i] - sum(rows[i][j] * x[j] for j in range(i + 1, n))
        x[i] = s / rows[i][i]
    return np.array(x, dtype=complex)
