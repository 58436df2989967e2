"""Increment norms of the block-Jacobi sweep next to the pointwise contraction factors."""
import numpy as np

from nigalerkin import Basis, CircuitProblem, SolverConfig, block_jacobi_solve, estimate_contraction, tensor_rule

problem = CircuitProblem()
for m in (2, 3, 4):
    rule = tensor_rule(2 * m + 1, 2)
    rep = block_jacobi_solve(problem, Basis.total_degree(2, m), rule, SolverConfig(1e-12))
    norms = np.array(rep.increment_norms)
    rho = max(estimate_contraction(problem, p) for p in rule.points)
    print(f"m={m}: {rep.iterations} sweeps, max pointwise rho={rho:.3f}, "
          f"last ratios {np.round(norms[-4:] / norms[-5:-1], 3).tolist()}")
