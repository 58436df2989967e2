"""Non-intrusive Galerkin and discrete-projection solvers for parametric nonlinear equations."""
from .circuit import CircuitProblem, circuit_precond_increment, circuit_residual, linear_variant
from .collocation import discrete_projection
from .experiment import ExperimentRecord, McReference, build_reference, rmse, run_table
from .galerkin import (
    CoefficientMatrix,
    GalerkinReport,
    a_posteriori_bound,
    block_jacobi_solve,
    estimate_integration_error,
    evaluate_surrogate,
    galerkin_increment,
    gram_matrix,
    residual_norm,
)
from .linalg import LUFactorization, SingularMatrixError, lu_factor, lu_solve
from .multiindex import Basis, IndexSet, basis_eval, basis_eval_all, legendre_eval, total_degree_set
from .problem import (
    CallCounter,
    DivergenceError,
    ParametricProblem,
    SolveReport,
    SolverConfig,
    estimate_contraction,
    solve_deterministic,
    solver_step,
)
from .quadrature import QuadratureError, QuadratureRule, gauss_legendre_1d, integrate, tensor_rule

__all__ = [name for name in dir() if not name.startswith("_")]
