"""Gauss-Legendre rules with weights normalized to the uniform probability measure."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .multiindex import legendre_eval_with_derivative

MAX_1D_POINTS = 64
MAX_TENSOR_POINTS = 10**7


class QuadratureError(ValueError):
    pass


@dataclass(frozen=True)
class QuadratureRule:
    points: np.ndarray  # (Z, d)
    weights: np.ndarray  # (Z,), sums to one

    def __post_init__(self):
        if self.points.ndim != 2 or self.points.shape[0] != self.weights.shape[0]:
            raise QuadratureError("points and weights disagree in length")
        self.points.setflags(write=False)
        self.weights.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def size(self) -> int:
        return self.points.shape[0]

    def __len__(self) -> int:
        return self.size

    @property
    def n_per_dim(self) -> int:
        return round(self.size ** (1.0 / self.dim))


def _newton_nodes(n: int, tol: float = 1e-15, max_iter: int = 100) -> tuple[np.ndarray, np.ndarray]:
    i = np.arange(1, n + 1)
    x = np.cos(np.pi * (i - 0.25) / (n + 0.5))
    for _ in range(max_iter):
        p, dp = legendre_eval_with_derivative(n, x)
        step = p / dp
        x = x - step
        if np.max(np.abs(step)) <= tol:
            break
    else:
        raise QuadratureError(f"Newton iteration for {n}-point Gauss-Legendre nodes did not converge")
    _, dp = legendre_eval_with_derivative(n, x)
    w = 1.0 / ((1.0 - x * x) * dp * dp)
    order = np.argsort(x)
    x, w = x[order], w[order]
    # enforce exact symmetry of the node set
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    return x, w


def gauss_legendre_1d(n: int) -> QuadratureRule:
    """n-point rule, exact for degree 2n-1; nodes ascending, weights sum to 1."""
    if not 1 <= n <= MAX_1D_POINTS:
        raise QuadratureError(f"number of points must be in [1, {MAX_1D_POINTS}], got {n}")
    x, w = _newton_nodes(n)
    return QuadratureRule(points=x[:, None].copy(), weights=w.copy())


def tensor_rule(n_per_dim: int, d: int) -> QuadratureRule:
    if d < 1:
        raise QuadratureError(f"dimension must be >= 1, got {d}")
    if n_per_dim**d > MAX_TENSOR_POINTS:
        raise QuadratureError(f"tensor rule with {n_per_dim}^{d} points is too large")
    base = gauss_legendre_1d(n_per_dim)
    x, w = base.points[:, 0], base.weights
    # last coordinate varies fastest
    idx = np.array(list(itertools.product(range(n_per_dim), repeat=d)), dtype=int)
    points = x[idx]
    weights = np.prod(w[idx], axis=1)
    return QuadratureRule(points=points, weights=weights)


def integrate(rule: QuadratureRule, f: Callable[[np.ndarray], float]) -> float:
    return float(sum(w * f(p) for p, w in zip(rule.points, rule.weights)))
