"""Discrete projection: converge the solver at every quadrature point, then project."""
from __future__ import annotations

import numpy as np

from ._parallel import ordered_map
from .galerkin import CoefficientMatrix, GalerkinReport, project, residual_norm
from .multiindex import Basis
from .problem import CallCounter, DivergenceError, SolverConfig, solve_deterministic
from .quadrature import QuadratureRule


def discrete_projection(problem, basis: Basis, rule: QuadratureRule, cfg: SolverConfig = SolverConfig(),
                        workers: int | None = None, warm_start: bool = False,
                        counter: CallCounter | None = None) -> GalerkinReport:
    """u_alpha = sum_z w_z psi_alpha(p_z) u*(p_z).

    ``iterations`` in the report is the largest per-point iteration count and
    ``increment_norms`` holds each point's final increment. With ``warm_start``
    the points are solved serially, each starting from the previous solution.
    """
    counter = counter if counter is not None else CallCounter()
    start = counter.solver_evaluations

    def solve_at(z, u0=None):
        p = rule.points[z]
        try:
            return solve_deterministic(problem, p, u0, cfg, counter)
        except DivergenceError as exc:
            raise DivergenceError(f"point solve failed at p_{z}={p.tolist()}: {exc}") from exc

    if warm_start:
        reports, u0 = [], None
        for z in range(rule.size):
            reports.append(solve_at(z, u0))
            u0 = reports[-1].solution
    else:
        reports = ordered_map(solve_at, range(rule.size), workers)

    solutions = np.array([r.solution for r in reports])
    coeffs = CoefficientMatrix(project(solutions, basis, rule), basis)
    finals = [r.final_increment_norm for r in reports]
    return GalerkinReport(
        coefficients=coeffs,
        iterations=max(r.iterations for r in reports),
        final_increment_norm=max(finals),
        converged=all(r.converged for r in reports),
        solver_evaluations=counter.solver_evaluations - start,
        residual_norm=residual_norm(problem, coeffs, rule),
        increment_norms=finals,
    )
