"""Tests for the dense linear algebra and optimizer layer."""

import numpy as np
import pytest

from qhlab import algebra


def test_sym_eigendecompose_reconstructs():
    rng = np.random.default_rng(1)
    a = rng.standard_normal((6, 6))
    op = a + a.T
    w, v = algebra.sym_eigendecompose(op)
    assert np.all(np.diff(w) >= 0)
    assert np.allclose(v @ np.diag(w) @ v.T, op, atol=1e-12)
    assert np.allclose(v.T @ v, np.eye(6), atol=1e-12)


def test_sym_eigendecompose_rejects_asymmetric():
    mat = np.array([[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(ValueError):
        algebra.sym_eigendecompose(mat)
    with pytest.raises(ValueError):
        algebra.sym_eigendecompose(np.zeros(3))


def test_solve_least_squares_exact_and_overdetermined():
    mat = np.array([[2.0, 0.0], [0.0, 3.0]])
    sol, res = algebra.solve_least_squares(mat, np.array([4.0, 9.0]))
    assert np.allclose(sol, [2.0, 3.0], atol=1e-12)
    assert res < 1e-12

    # Inconsistent overdetermined system: oracle residual from the normal
    # equations solved independently.
    mat = np.array([[1.0], [1.0]])
    target = np.array([0.0, 1.0])
    sol, res = algebra.solve_least_squares(mat, target)
    assert abs(sol[0] - 0.5) < 1e-12
    assert abs(res - np.sqrt(0.5)) < 1e-12


def test_solve_least_squares_minimum_norm():
    # Rank-deficient: x + y = 2 has minimum-norm solution (1, 1).
    mat = np.array([[1.0, 1.0]])
    sol, res = algebra.solve_least_squares(mat, np.array([2.0]))
    assert np.allclose(sol, [1.0, 1.0], atol=1e-12)
    assert res < 1e-12


def test_minimize_residual_finds_root():
    def f(x):
        return np.array([x[0] - 2.0, 10.0 * (x[1] + 1.0)])

    res = algebra.minimize_residual(f, np.array([5.0, 5.0]), tol=1e-10)
    assert res.converged
    assert np.allclose(res.argmin, [2.0, -1.0], atol=1e-8)
    assert res.residual_norm <= 1e-10


def test_minimize_residual_monotone_and_nonfinite():
    def f(x):
        return np.array([np.exp(x[0]) - 3.0])

    x0 = np.array([4.0])
    start = float(np.linalg.norm(f(x0)))
    res = algebra.minimize_residual(f, x0, tol=1e-12, max_iter=50)
    assert res.residual_norm <= start

    bad = algebra.minimize_residual(lambda x: np.array([np.nan]), np.zeros(1))
    assert not bad.converged
    assert bad.message


def test_multistart_deterministic():
    def f(x):
        return np.array([(x[0] - 1.0) * (x[0] + 2.0)])

    sampler = algebra.gaussian_sampler(1, scale=3.0)
    a = algebra.multistart(f, sampler, restarts=6, seed=9, tol=1e-12)
    b = algebra.multistart(f, sampler, restarts=6, seed=9, tol=1e-12)
    assert a.residual_norms == b.residual_norms
    assert a.best_index == b.best_index
    assert np.array_equal(a.best.argmin, b.best.argmin)
    assert a.best.residual_norm < 1e-10


def test_multistart_validates_restarts():
    with pytest.raises(ValueError):
        algebra.multistart(lambda x: x, algebra.gaussian_sampler(1),
                           restarts=0, seed=1)
