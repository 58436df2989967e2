import numpy as np
import pytest

from nigalerkin.circuit import NODAL_MATRIX, CircuitProblem, circuit_precond_increment, circuit_residual
from nigalerkin.problem import SolverConfig, contraction_ratios, solve_deterministic

from conftest import newton_solve


def test_stiffness_table(circuit):
    expected = 100.0 * np.array(
        [[3, -1, -1, 0, -1], [-1, 3, -1, -1, 0], [-1, -1, 4, -1, -1], [0, -1, -1, 3, -1], [-1, 0, -1, -1, 4]]
    )
    np.testing.assert_array_equal(circuit.stiffness, expected)
    np.testing.assert_array_equal(circuit.stiffness, circuit.stiffness.T)
    assert np.all(circuit.lu.pivots > 0)
    assert (circuit.dimension, circuit.param_dim) == (5, 2)


def test_resistance_constructor():
    np.testing.assert_allclose(CircuitProblem.from_resistance(100.0).stiffness, NODAL_MATRIX / 100.0)


def test_residual_examples(circuit):
    np.testing.assert_array_equal(circuit_residual((0, 0), np.zeros(5)), [25, 0, 0, 0, 0])
    np.testing.assert_array_equal(circuit_residual((0, -1), np.zeros(5)), [24, 0, 0, 0, 0])
    # rows 1-4 of L sum to zero, row 5 to one
    row_sums = circuit.stiffness.sum(axis=1)
    np.testing.assert_array_equal(row_sums, [0, 0, 0, 0, circuit.conductance])
    expected = np.array([25.0, 0, 0, 0, 0]) - row_sums - 3 * 5 * np.ones(5)
    np.testing.assert_allclose(circuit_residual((1, 0), np.ones(5)), expected, rtol=1e-15)


def test_precond_increment_inverse(circuit):
    x = np.random.default_rng(3).normal(size=5)
    np.testing.assert_allclose(circuit_precond_increment((0, 0), x, circuit.stiffness @ x), x, rtol=1e-12)
    np.testing.assert_array_equal(circuit_precond_increment((0, 0), x, np.zeros(5)), np.zeros(5))
    np.testing.assert_allclose(
        circuit_precond_increment((0, 0), np.zeros(5), 25 * circuit.f0),
        np.linalg.solve(circuit.stiffness, 25 * circuit.f0),
        rtol=1e-13,
    )


def test_linear_variant_solution(linear):
    u = solve_deterministic(linear, (0.0, 1.0), cfg=SolverConfig(1e-12)).solution
    np.testing.assert_allclose(u, 26 * np.linalg.solve(linear.stiffness, linear.f0), rtol=1e-12)


def test_residual_vanishes_at_solution(circuit):
    pts = np.random.default_rng(11).uniform(-1, 1, (100, 2))
    for p in pts:
        u = solve_deterministic(circuit, p, cfg=SolverConfig(1e-14, 500)).solution
        assert np.linalg.norm(circuit.residual(p, u)) <= 1e-10
    np.testing.assert_allclose(u, newton_solve(circuit, p), atol=1e-12)


def test_contractive_on_grid(circuit):
    for p1 in np.linspace(-1, 1, 5):
        for p2 in np.linspace(-1, 1, 5):
            rep = solve_deterministic(circuit, (p1, p2), cfg=SolverConfig(1e-14, 500))
            ratios = contraction_ratios(rep.increment_norms, np.linalg.norm(rep.solution))
            assert np.all(ratios < 1)
