"""Total-degree multi-index sets and the orthonormal tensor Legendre basis.

The basis functions are orthonormal with respect to the uniform *probability*
measure on [-1, 1]^d, i.e. ``psi_alpha(p) = prod_i sqrt(2 a_i + 1) l_{a_i}(p_i)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

MultiIndex = tuple[int, ...]


def total_degree(alpha: MultiIndex) -> int:
    return sum(alpha)


def _compositions(total: int, d: int):
    # all alpha in N0^d with |alpha|_1 == total, alpha_1 descending (lexicographic descending)
    if d == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, d - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class IndexSet:
    """Ordered set {alpha : |alpha|_1 <= m}.

    Ordering is by ascending total degree, ties broken lexicographically
    descending, so for d=2, m=2: (0,0),(1,0),(0,1),(2,0),(1,1),(0,2).
    """

    dim: int
    max_degree: int
    indices: tuple[MultiIndex, ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __getitem__(self, k: int) -> MultiIndex:
        return self.indices[k]

    def position(self, alpha: MultiIndex) -> int:
        return self.indices.index(tuple(alpha))

    def as_array(self) -> np.ndarray:
        return np.array(self.indices, dtype=int).reshape(len(self.indices), self.dim)


def total_degree_set(d: int, m: int) -> IndexSet:
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    if m < 0:
        raise ValueError(f"max degree must be >= 0, got {m}")
    indices = tuple(alpha for t in range(m + 1) for alpha in _compositions(t, d))
    assert len(indices) == comb(m + d, d)
    return IndexSet(dim=d, max_degree=m, indices=indices)


def legendre_table(n: int, x) -> np.ndarray:
    """Values l_0(x), ..., l_n(x) stacked along a new leading axis."""
    x = np.asarray(x, dtype=float)
    out = np.empty((n + 1,) + x.shape)
    out[0] = 1.0
    if n >= 1:
        out[1] = x
    for k in range(1, n):
        out[k + 1] = ((2 * k + 1) * x * out[k] - k * out[k - 1]) / (k + 1)
    return out


def legendre_eval(n: int, x):
    """Classical Legendre polynomial l_n(x) via the three-term recurrence."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    return legendre_table(n, x)[n]


def legendre_eval_with_derivative(n: int, x):
    """Return (l_n(x), l_n'(x)); the derivative formula needs |x| < 1."""
    tab = legendre_table(n, x)
    x = np.asarray(x, dtype=float)
    if n == 0:
        return tab[0], np.zeros_like(x)
    dp = n * (x * tab[n] - tab[n - 1]) / (x * x - 1.0)
    return tab[n], dp


def _check_point(p, d: int) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.shape[-1:] != (d,):
        raise ValueError(f"parameter point has shape {p.shape}, expected trailing dimension {d}")
    return p


def basis_eval(alpha: MultiIndex, p) -> float:
    alpha = tuple(int(a) for a in alpha)
    p = _check_point(p, len(alpha))
    if p.ndim != 1:
        raise ValueError("basis_eval takes a single parameter point")
    value = 1.0
    for a, x in zip(alpha, p):
        value *= np.sqrt(2 * a + 1) * legendre_eval(a, x)
    return float(value)


@dataclass(frozen=True)
class Basis:
    """Orthonormal tensor Legendre basis over an index set."""

    index_set: IndexSet

    @property
    def dim(self) -> int:
        return self.index_set.dim

    @property
    def size(self) -> int:
        return len(self.index_set)

    def __len__(self) -> int:
        return self.size

    @classmethod
    def total_degree(cls, d: int, m: int) -> "Basis":
        return cls(total_degree_set(d, m))

    def matrix(self, points) -> np.ndarray:
        """Z x M matrix with entry (z, k) = psi_k(points[z])."""
        pts = np.atleast_2d(_check_point(points, self.dim))
        m = self.index_set.max_degree
        alphas = self.index_set.as_array()
        # univariate tables once per dimension: shape (d, m+1, Z)
        tables = np.stack([legendre_table(m, pts[:, i]) for i in range(self.dim)])
        scale = np.sqrt(2.0 * np.arange(m + 1) + 1.0)
        tables = tables * scale[None, :, None]
        out = np.ones((pts.shape[0], len(alphas)))
        for i in range(self.dim):
            out *= tables[i][alphas[:, i]].T
        return out


def basis_eval_all(basis: Basis, p) -> np.ndarray:
    p = _check_point(p, basis.dim)
    if p.ndim != 1:
        raise ValueError("basis_eval_all takes a single parameter point")
    return basis.matrix(p[None, :])[0]
