import numpy as np
import pytest

from nigalerkin.collocation import discrete_projection
from nigalerkin.galerkin import block_jacobi_solve
from nigalerkin.multiindex import Basis
from nigalerkin.problem import DivergenceError, SolverConfig, solve_deterministic
from nigalerkin.circuit import CircuitProblem
from nigalerkin.quadrature import tensor_rule


def test_paper_setting_m2(circuit):
    rep = discrete_projection(circuit, Basis.total_degree(2, 2), tensor_rule(3, 2), SolverConfig(1e-6))
    assert rep.converged
    assert 73 * 0.85 <= rep.solver_evaluations <= 73 * 1.15


def test_paper_setting_m5(circuit):
    rep = discrete_projection(circuit, Basis.total_degree(2, 5), tensor_rule(6, 2), SolverConfig(1e-9))
    assert 430 * 0.85 <= rep.solver_evaluations <= 430 * 1.15


def test_evaluations_sum_point_iterations(circuit):
    rule = tensor_rule(3, 2)
    cfg = SolverConfig(1e-8)
    rep = discrete_projection(circuit, Basis.total_degree(2, 2), rule, cfg)
    total = sum(solve_deterministic(circuit, p, cfg=cfg).iterations for p in rule.points)
    assert rep.solver_evaluations == total


@pytest.mark.parametrize("m", [1, 2, 3])
def test_linear_variant_exact(linear, m):
    basis = Basis.total_degree(2, m)
    rule = tensor_rule(m + 1, 2)
    rep = discrete_projection(linear, basis, rule, SolverConfig(1e-12))
    kf = np.linalg.solve(linear.stiffness, linear.f0)
    expected = np.zeros((5, basis.size))
    expected[:, 0] = 25 * kf
    expected[:, basis.index_set.position((0, 1))] = kf / np.sqrt(3)
    np.testing.assert_allclose(rep.coefficients.values, expected, atol=1e-12)
    gal = block_jacobi_solve(linear, basis, rule, SolverConfig(1e-12))
    np.testing.assert_allclose(rep.coefficients.values, gal.coefficients.values, atol=1e-12)


def test_galerkin_collocation_agree_m3(circuit):
    basis, rule, cfg = Basis.total_degree(2, 3), tensor_rule(4, 2), SolverConfig(1e-10)
    c = discrete_projection(circuit, basis, rule, cfg).coefficients.values
    g = block_jacobi_solve(circuit, basis, rule, cfg).coefficients.values
    assert np.abs(c - g).max() <= 1e-6


def test_reproducible_and_parallel_bitwise(circuit):
    basis, rule, cfg = Basis.total_degree(2, 3), tensor_rule(4, 2), SolverConfig(1e-9)
    a = discrete_projection(circuit, basis, rule, cfg).coefficients.values
    b = discrete_projection(circuit, basis, rule, cfg).coefficients.values
    c = discrete_projection(circuit, basis, rule, cfg, workers=4).coefficients.values
    assert np.array_equal(a, b) and np.array_equal(a, c)


def test_warm_start_saves_solves(circuit):
    basis, rule, cfg = Basis.total_degree(2, 3), tensor_rule(4, 2), SolverConfig(1e-9)
    cold = discrete_projection(circuit, basis, rule, cfg)
    warm = discrete_projection(circuit, basis, rule, cfg, warm_start=True)
    assert warm.solver_evaluations < cold.solver_evaluations
    np.testing.assert_allclose(warm.coefficients.values, cold.coefficients.values, atol=1e-8)


def test_soft_failure_on_max_iter(circuit):
    rep = discrete_projection(circuit, Basis.total_degree(2, 1), tensor_rule(2, 2), SolverConfig(1e-12, 3))
    assert not rep.converged


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_divergence_names_point():
    with pytest.raises(DivergenceError, match="p_0"):
        discrete_projection(CircuitProblem.from_resistance(100.0), Basis.total_degree(2, 1), tensor_rule(2, 2))
