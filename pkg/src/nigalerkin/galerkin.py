"""Non-intrusive block-Jacobi iteration for the stochastic Galerkin system.

Each global sweep evaluates the black-box solver once per quadrature point at
the current surrogate state and projects the preconditioned residuals onto the
orthonormal basis:

    Delta_alpha = sum_z w_z psi_alpha(p_z) P^{-1} R(p_z; u(p_z)),
    u_alpha <- u_alpha + Delta_alpha.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._parallel import ordered_map
from .multiindex import Basis
from .problem import CallCounter, DivergenceError, SolverConfig, preconditioned_residual
from .quadrature import QuadratureRule

GRAM_TOL = 1e-10


@dataclass
class CoefficientMatrix:
    """N x M array; column k holds the coefficient vector of ``basis.index_set[k]``."""

    values: np.ndarray
    basis: Basis

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 2 or self.values.shape[1] != self.basis.size:
            raise ValueError(
                f"coefficient array has shape {self.values.shape}, expected (N, {self.basis.size})"
            )
        if not np.all(np.isfinite(self.values)):
            raise DivergenceError("non-finite coefficients")

    @classmethod
    def zeros(cls, n: int, basis: Basis) -> "CoefficientMatrix":
        return cls(np.zeros((n, basis.size)), basis)

    @property
    def state_dim(self) -> int:
        return self.values.shape[0]

    def column(self, alpha) -> np.ndarray:
        return self.values[:, self.basis.index_set.position(alpha)]

    def __call__(self, p) -> np.ndarray:
        return evaluate_surrogate(self, p)


@dataclass
class GalerkinReport:
    coefficients: CoefficientMatrix
    iterations: int
    final_increment_norm: float
    converged: bool
    solver_evaluations: int
    residual_norm: float
    increment_norms: list[float]


def evaluate_surrogate(coeffs: CoefficientMatrix, p) -> np.ndarray:
    """sum_alpha u_alpha psi_alpha(p); ``p`` may be one point or a (K, d) batch."""
    p = np.asarray(p, dtype=float)
    psi = coeffs.basis.matrix(p)
    out = psi @ coeffs.values.T
    return out[0] if p.ndim == 1 else out


def gram_matrix(basis: Basis, rule: QuadratureRule) -> np.ndarray:
    psi = basis.matrix(rule.points)
    return psi.T @ (rule.weights[:, None] * psi)


def check_orthonormal(basis: Basis, rule: QuadratureRule, tol: float = GRAM_TOL) -> None:
    """Reject rules under which the basis is not discretely orthonormal."""
    dev = np.abs(gram_matrix(basis, rule) - np.eye(basis.size)).max()
    if dev > tol:
        raise ValueError(
            f"Gram matrix deviates from identity by {dev:.3g}; "
            f"use at least {basis.index_set.max_degree + 1} points per dimension"
        )


def project(samples: np.ndarray, basis: Basis, rule: QuadratureRule) -> np.ndarray:
    """Columns sum_z w_z psi_alpha(p_z) samples[z] for (Z, N) samples; fixed summation order."""
    psi = basis.matrix(rule.points)
    return samples.T @ (rule.weights[:, None] * psi)


def galerkin_increment(problem, coeffs: CoefficientMatrix, rule: QuadratureRule,
                       counter: CallCounter | None = None, workers: int | None = None) -> np.ndarray:
    """Quadrature-projected preconditioned residual, shape (N, M). Costs exactly Z solver calls."""
    basis = coeffs.basis
    if rule.dim != basis.dim:
        raise ValueError(f"rule dimension {rule.dim} does not match basis dimension {basis.dim}")
    states = evaluate_surrogate(coeffs, rule.points)

    def one(z):
        return preconditioned_residual(problem, rule.points[z], states[z], counter)

    du = np.array(ordered_map(one, range(rule.size), workers))
    return project(du, basis, rule)


def residual_norm(problem, coeffs: CoefficientMatrix, rule: QuadratureRule) -> float:
    """Quadrature estimate of the L2(mu; R^N) norm of R(p; u_I(p)). Not counted as solver calls."""
    states = evaluate_surrogate(coeffs, rule.points)
    sq = [float(np.sum(np.asarray(problem.residual(p, u)) ** 2)) for p, u in zip(rule.points, states)]
    return float(np.sqrt(np.dot(rule.weights, sq)))


def block_jacobi_solve(problem, basis: Basis, rule: QuadratureRule, cfg: SolverConfig = SolverConfig(),
                       initial: CoefficientMatrix | None = None, workers: int | None = None,
                       counter: CallCounter | None = None) -> GalerkinReport:
    """Iterate u <- u + Delta_Z(u) until the Frobenius norm of the increment is below ``cfg.tol``."""
    check_orthonormal(basis, rule)
    counter = counter if counter is not None else CallCounter()
    start = counter.solver_evaluations
    coeffs = initial if initial is not None else CoefficientMatrix.zeros(problem.dimension, basis)
    values = coeffs.values.copy()
    norms: list[float] = []
    converged = False
    for _ in range(cfg.max_iter):
        delta = galerkin_increment(problem, CoefficientMatrix(values, basis), rule, counter, workers)
        values = values + delta
        norms.append(float(np.linalg.norm(delta)))
        if not np.all(np.isfinite(values)):
            raise DivergenceError(f"non-finite Galerkin coefficients after {len(norms)} sweeps")
        if norms[-1] < cfg.tol:
            converged = True
            break
    result = CoefficientMatrix(values, basis)
    return GalerkinReport(
        coefficients=result,
        iterations=len(norms),
        final_increment_norm=norms[-1],
        converged=converged,
        solver_evaluations=counter.solver_evaluations - start,
        residual_norm=residual_norm(problem, result, rule),
        increment_norms=norms,
    )


def a_posteriori_bound(increment_norm: float, rho: float, integration_error: float | None = None) -> float:
    """rho / (1 - rho) * |Delta|, plus eps / (1 - rho) when an integration error estimate is given."""
    if not 0.0 <= rho < 1.0:
        raise ValueError(f"contraction factor must lie in [0, 1), got {rho}")
    bound = rho / (1.0 - rho) * increment_norm
    if integration_error is not None:
        bound += integration_error / (1.0 - rho)
    return bound


def estimate_integration_error(problem, coeffs: CoefficientMatrix, rule: QuadratureRule,
                               refined_rule: QuadratureRule) -> float:
    """Frobenius difference of the projected increment under a coarse and a finer rule."""
    if refined_rule.size < rule.size:
        raise ValueError("refined rule must have at least as many points as the coarse rule")
    coarse = galerkin_increment(problem, coeffs, rule)
    fine = galerkin_increment(problem, coeffs, refined_rule)
    return float(np.linalg.norm(coarse - fine))
