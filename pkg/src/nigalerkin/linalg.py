"""Dense LU factorization with partial pivoting (row swaps recorded as a permutation)."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PIVOT_FLOOR = 1e-300


class SingularMatrixError(ArithmeticError):
    pass


@dataclass(frozen=True)
class LUFactorization:
    lu: np.ndarray  # unit-lower L below the diagonal, U on and above
    perm: np.ndarray  # row k of PA is row perm[k] of A

    @property
    def pivots(self) -> np.ndarray:
        return np.diag(self.lu).copy()


def lu_factor(matrix) -> LUFactorization:
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    perm = np.arange(n)
    for k in range(n):
        piv = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[piv, k]) < PIVOT_FLOOR:
            raise SingularMatrixError(f"zero pivot in column {k}")
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            perm[[k, piv]] = perm[[piv, k]]
        a[k + 1:, k] /= a[k, k]
        a[k + 1:, k + 1:] -= np.outer(a[k + 1:, k], a[k, k + 1:])
    return LUFactorization(lu=a, perm=perm)


def lu_solve(fact: LUFactorization, rhs) -> np.ndarray:
    b = np.asarray(rhs, dtype=float)
    lu = fact.lu
    n = lu.shape[0]
    if b.shape[0] != n:
        raise ValueError(f"right-hand side has length {b.shape[0]}, expected {n}")
    y = b[fact.perm].copy()
    for i in range(1, n):
        y[i] -= lu[i, :i] @ y[:i]
    for i in range(n - 1, -1, -1):
        y[i] = (y[i] - lu[i, i + 1:] @ y[i + 1:]) / lu[i, i]
    return y
