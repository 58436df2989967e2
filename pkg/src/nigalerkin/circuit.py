"""Resistor network with a global cubic nonlinearity.

    A(p; u) = K u + (p1 + c) (u^T u) u,    f(p) = (p2 + b) f0,

with p uniform on [-1, 1]^2 and preconditioner P = K.

K is ``conductance * L`` where L is the integer nodal matrix of the network
(node 6 grounded). The default ``conductance=100`` is what reproduces the
published solver-call counts; the literal ``L / 100`` scaling makes the
fixed-point iteration diverge (see ``CircuitProblem.from_resistance``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .linalg import LUFactorization, lu_factor, lu_solve

NODAL_MATRIX = np.array(
    [
        [3, -1, -1, 0, -1],
        [-1, 3, -1, -1, 0],
        [-1, -1, 4, -1, -1],
        [0, -1, -1, 3, -1],
        [-1, 0, -1, -1, 4],
    ],
    dtype=float,
)
F0 = np.array([1.0, 0.0, 0.0, 0.0, 0.0])


@dataclass(frozen=True)
class CircuitProblem:
    conductance: float = 100.0
    nonlinearity_offset: float = 2.0
    load_offset: float = 25.0
    nonlinear: bool = True
    dimension: int = field(default=5, init=False)
    param_dim: int = field(default=2, init=False)
    stiffness: np.ndarray = field(init=False, repr=False)
    lu: LUFactorization = field(init=False, repr=False)

    def __post_init__(self):
        K = self.conductance * NODAL_MATRIX
        K.setflags(write=False)
        object.__setattr__(self, "stiffness", K)
        object.__setattr__(self, "lu", lu_factor(K))

    @classmethod
    def from_resistance(cls, resistance: float, **kw) -> "CircuitProblem":
        """K = L / R taken at face value; with R=100 the iteration u <- K^{-1}(f - cubic) blows up."""
        return cls(conductance=1.0 / resistance, **kw)

    @property
    def f0(self) -> np.ndarray:
        return F0.copy()

    def load(self, p) -> np.ndarray:
        return (p[1] + self.load_offset) * F0

    def residual(self, p, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        r = self.load(p) - self.stiffness @ u
        if self.nonlinear:
            r -= (p[0] + self.nonlinearity_offset) * (u @ u) * u
        return r

    def precond_increment(self, p, u, r) -> np.ndarray:
        return lu_solve(self.lu, r)

    def linear_solution(self, p) -> np.ndarray:
        """Exact solution (p2 + b) K^{-1} f0 of the linear variant."""
        return lu_solve(self.lu, self.load(p))


def linear_variant(problem: CircuitProblem | None = None) -> CircuitProblem:
    base = problem or CircuitProblem()
    return CircuitProblem(
        conductance=base.conductance,
        nonlinearity_offset=base.nonlinearity_offset,
        load_offset=base.load_offset,
        nonlinear=False,
    )


@lru_cache(maxsize=1)
def _default_circuit() -> CircuitProblem:
    return CircuitProblem()


def circuit_residual(p, u, problem: CircuitProblem | None = None) -> np.ndarray:
    return (problem or _default_circuit()).residual(p, u)


def circuit_precond_increment(p, u, r, problem: CircuitProblem | None = None) -> np.ndarray:
    return (problem or _default_circuit()).precond_increment(p, u, r)
