import numpy as np
import pytest

from nigalerkin import CircuitProblem, build_reference, linear_variant


def newton_solve(problem, p, tol=1e-15, max_iter=100):
    """Damped Newton on K u + c (u.u) u = f; independent of the fixed-point solver."""
    K = problem.stiffness
    c = (p[0] + problem.nonlinearity_offset) if problem.nonlinear else 0.0
    f = problem.load(p)
    u = np.linalg.solve(K, f)
    for _ in range(max_iter):
        F = K @ u + c * (u @ u) * u - f
        J = K + c * (2 * np.outer(u, u) + (u @ u) * np.eye(len(u)))
        step = np.linalg.solve(J, -F)
        t = 1.0
        while np.linalg.norm(K @ (u + t * step) + c * ((u + t * step) @ (u + t * step)) * (u + t * step) - f) > np.linalg.norm(F) and t > 1e-4:
            t /= 2
        u = u + t * step
        if np.linalg.norm(t * step) < tol * (1 + np.linalg.norm(u)):
            break
    return u


@pytest.fixture(scope="session")
def circuit():
    return CircuitProblem()


@pytest.fixture(scope="session")
def linear():
    return linear_variant()


@pytest.fixture(scope="session")
def reference(circuit):
    return build_reference(circuit, n_samples=1000, seed=42)


@pytest.fixture(scope="session")
def linear_reference(linear):
    return build_reference(linear, n_samples=200, seed=7)
