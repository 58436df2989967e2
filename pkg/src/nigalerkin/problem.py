"""Black-box parametric problem interface and the deterministic fixed-point solver.

A problem supplies ``residual(p, u) = f(p) - A(p; u)`` and a preconditioned
increment ``precond_increment(p, u, r) = P^{-1} r``. One call of the pair is a
*solver evaluation*, the cost unit used throughout the package.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Protocol, runtime_checkable

import numpy as np

EPS = np.finfo(float).eps


class DivergenceError(ArithmeticError):
    """Non-finite iterate, e.g. from a diverging iteration or a singular preconditioner."""


@runtime_checkable
class ParametricProblem(Protocol):
    dimension: int
    param_dim: int

    def residual(self, p: np.ndarray, u: np.ndarray) -> np.ndarray: ...

    def precond_increment(self, p: np.ndarray, u: np.ndarray, r: np.ndarray) -> np.ndarray: ...


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-10
    max_iter: int = 200

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")


@dataclass
class SolveReport:
    solution: np.ndarray
    iterations: int
    final_increment_norm: float
    converged: bool
    increment_norms: list[float] = field(default_factory=list, repr=False)


class CallCounter:
    """Thread-safe tally of solver evaluations."""

    def __init__(self):
        self._n = 0
        self._lock = threading.Lock()

    def add(self, k: int = 1) -> None:
        with self._lock:
            self._n += k

    @property
    def solver_evaluations(self) -> int:
        return self._n

    def __int__(self) -> int:
        return self._n


def preconditioned_residual(problem, p, u, counter: CallCounter | None = None) -> np.ndarray:
    """One solver evaluation: Delta u = P^{-1} R(p; u)."""
    # overflow is reported below as DivergenceError, not as a warning
    with np.errstate(over="ignore", invalid="ignore"):
        du = np.asarray(problem.precond_increment(p, u, problem.residual(p, u)), dtype=float)
    if counter is not None:
        counter.add()
    if not np.all(np.isfinite(du)):
        raise DivergenceError(f"non-finite increment at p={np.asarray(p).tolist()}")
    return du


def solver_step(problem, p, u, counter: CallCounter | None = None) -> np.ndarray:
    """The solver map S(p; u) = u + P^{-1} R(p; u)."""
    u = np.asarray(u, dtype=float)
    if u.shape != (problem.dimension,):
        raise ValueError(f"state has shape {u.shape}, expected ({problem.dimension},)")
    out = u + preconditioned_residual(problem, p, u, counter)
    if not np.all(np.isfinite(out)):
        raise DivergenceError(f"non-finite iterate at p={np.asarray(p).tolist()}")
    return out


def solve_deterministic(problem, p, u0=None, cfg: SolverConfig = SolverConfig(),
                        counter: CallCounter | None = None) -> SolveReport:
    """Iterate the solver map until the Euclidean increment norm drops below ``cfg.tol``."""
    u = np.zeros(problem.dimension) if u0 is None else np.array(u0, dtype=float)
    norms = []
    for k in range(1, cfg.max_iter + 1):
        du = preconditioned_residual(problem, p, u, counter)
        with np.errstate(over="ignore", invalid="ignore"):
            u = u + du
        if not np.all(np.isfinite(u)):
            raise DivergenceError(f"non-finite iterate at p={np.asarray(p).tolist()}")
        norms.append(float(np.linalg.norm(du)))
        if norms[-1] < cfg.tol:
            return SolveReport(u, k, norms[-1], True, norms)
    return SolveReport(u, cfg.max_iter, norms[-1], False, norms)


def contraction_ratios(increment_norms, scale: float = 1.0) -> np.ndarray:
    """Successive ratios |du_{k+1}| / |du_k| while |du_k| is above the roundoff floor."""
    floor = 100 * EPS * max(1.0, scale)
    n = np.asarray(increment_norms, dtype=float)
    keep = n[:-1] > floor
    return n[1:][keep] / n[:-1][keep]


def estimate_contraction(problem, p, cfg: SolverConfig = SolverConfig(tol=1e-14, max_iter=500)) -> float:
    rep = solve_deterministic(problem, p, cfg=cfg)
    if len(rep.increment_norms) < 2:
        raise ValueError("need at least two iterations to estimate a contraction factor")
    ratios = contraction_ratios(rep.increment_norms, float(np.linalg.norm(rep.solution)))
    if ratios.size == 0:
        raise ValueError("all increments are at roundoff level")
    return float(ratios.max())
