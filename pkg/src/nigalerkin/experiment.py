"""Monte-Carlo reference solutions, RMSE and the Table-1 style sweep."""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass

import numpy as np

from .collocation import discrete_projection
from .galerkin import CoefficientMatrix, block_jacobi_solve, evaluate_surrogate
from .multiindex import Basis
from .problem import SolverConfig, solve_deterministic
from ._parallel import ordered_map
from .quadrature import tensor_rule

DEFAULT_TOLS = {2: 1e-6, 3: 1e-7, 4: 1e-8, 5: 1e-9}
REFERENCE_CFG = SolverConfig(tol=1e-14, max_iter=500)
REFERENCE_RESIDUAL_TOL = 1e-10
METHODS = ("galerkin", "collocation")


class ReferenceSolveError(RuntimeError):
    pass


@dataclass(frozen=True)
class McReference:
    seed: int
    points: np.ndarray  # (n_samples, d)
    solutions: np.ndarray  # (n_samples, N)

    @property
    def n_samples(self) -> int:
        return self.points.shape[0]


@dataclass
class ExperimentRecord:
    method: str
    degree: int
    eps_tol: float
    quad_points: int
    iterations: int
    solver_evals: int
    rmse: float
    residual_norm: float
    final_increment_norm: float
    wall_time_s: float
    converged: bool = True

    def row(self) -> dict:
        d = asdict(self)
        d.pop("converged")
        return d


def sample_points(n: int, d: int, seed: int) -> np.ndarray:
    return np.random.default_rng(seed).uniform(-1.0, 1.0, size=(n, d))


def build_reference(problem, n_samples: int = 1000, seed: int = 42, workers: int | None = None) -> McReference:
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    points = sample_points(n_samples, problem.param_dim, seed)

    def solve(p):
        rep = solve_deterministic(problem, p, cfg=REFERENCE_CFG)
        res = float(np.linalg.norm(problem.residual(p, rep.solution)))
        if not rep.converged or res > REFERENCE_RESIDUAL_TOL:
            raise ReferenceSolveError(f"reference solve failed at p={p.tolist()} (residual {res:.3g})")
        return rep.solution

    solutions = np.array(ordered_map(solve, points, workers))
    return McReference(seed=seed, points=points, solutions=solutions)


def rmse(reference: McReference, coeffs: CoefficientMatrix) -> float:
    if reference.n_samples == 0:
        raise ValueError("empty reference")
    if reference.points.shape[1] != coeffs.basis.dim:
        raise ValueError("reference and surrogate parameter dimensions differ")
    err = reference.solutions - evaluate_surrogate(coeffs, reference.points)
    return float(np.sqrt(np.mean(np.sum(err**2, axis=1))))


def run_method(method: str, problem, degree: int, tol: float, reference: McReference,
               quad_points: int | None = None, max_iter: int = 200, workers: int | None = None) -> ExperimentRecord:
    n = quad_points or degree + 1
    basis = Basis.total_degree(problem.param_dim, degree)
    rule = tensor_rule(n, problem.param_dim)
    cfg = SolverConfig(tol=tol, max_iter=max_iter)
    t0 = time.perf_counter()
    if method == "galerkin":
        rep = block_jacobi_solve(problem, basis, rule, cfg, workers=workers)
    elif method == "collocation":
        rep = discrete_projection(problem, basis, rule, cfg, workers=workers)
    else:
        raise ValueError(f"unknown method {method!r}")
    elapsed = time.perf_counter() - t0
    return ExperimentRecord(
        method=method,
        degree=degree,
        eps_tol=tol,
        quad_points=n,
        iterations=rep.iterations,
        solver_evals=rep.solver_evaluations,
        rmse=rmse(reference, rep.coefficients),
        residual_norm=rep.residual_norm,
        final_increment_norm=rep.final_increment_norm,
        wall_time_s=elapsed,
        converged=rep.converged,
    )


def run_table(problem, degrees=(2, 3, 4, 5), tol_schedule=None, methods=METHODS, seed: int = 42,
              n_samples: int = 1000, quad_points=None, max_iter: int = 200, workers: int | None = None,
              reference: McReference | None = None) -> list[ExperimentRecord]:
    """One record per (method, degree), all scored against one shared reference.

    ``quad_points`` is None (m+1 per dimension), an int, or a callable degree -> int.
    """
    tols = dict(DEFAULT_TOLS if tol_schedule is None else tol_schedule)
    missing = [m for m in degrees if m not in tols]
    if missing:
        raise ValueError(f"no tolerance given for degrees {missing}")
    if reference is None:
        reference = build_reference(problem, n_samples, seed, workers)
    records = []
    for method in methods:
        for m in degrees:
            n = quad_points(m) if callable(quad_points) else quad_points
            try:
                records.append(run_method(method, problem, m, tols[m], reference, n, max_iter, workers))
            except Exception as exc:
                raise type(exc)(f"[{method}, m={m}] {exc}") from exc
    return records
