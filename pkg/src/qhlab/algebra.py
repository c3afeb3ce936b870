"""Dense real linear algebra and a small damped least-squares optimizer.

Everything downstream (frames, shape operators, feasibility chains) reduces
to small dense matrices, so this module only wraps the pieces that need a
fixed contract: symmetric eigendecomposition with an explicit symmetry
check, minimum-norm least squares, a Levenberg-Marquardt loop with
finite-difference Jacobians, and a deterministic multistart driver.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

DEFAULT_SOLVE_TOL = 1e-10
DEFAULT_OPT_TOL = 1e-8


def sym_eigendecompose(op, sym_tol: float = 1e-10):
    """Eigendecompose a symmetric matrix, eigenvalues ascending.

    Returns (eigenvalues, basis) with op = basis @ diag(w) @ basis.T.
    Raises ValueError if the relative asymmetry exceeds `sym_tol`.
    """
    op = np.asarray(op, dtype=float)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {op.shape}")
    scale = max(1.0, float(np.abs(op).max()))
    asym = float(np.abs(op - op.T).max())
    if asym > sym_tol * scale:
        raise ValueError(
            f"matrix is not symmetric: asymmetry norm {asym:.3e} "
            f"exceeds {sym_tol:.1e} relative tolerance"
        )
    w, v = np.linalg.eigh(0.5 * (op + op.T))
    return w, v


def solve_least_squares(mat, target):
    """Minimum-norm least-squares solution of ``mat @ x = target``.

    Rank deficiency is handled by the minimum-norm convention.  Returns
    (solution, residual_norm).
    """
    mat = np.asarray(mat, dtype=float)
    target = np.asarray(target, dtype=float)
    sol, _, _, _ = np.linalg.lstsq(mat, target, rcond=None)
    residual = float(np.linalg.norm(mat @ sol - target))
    return sol, residual


@dataclass(frozen=True)
class MinimizeResult:
    """Outcome of a single local least-squares descent."""

    argmin: np.ndarray
    residual_norm: float
    iterations: int
    converged: bool
    message: str = ""


def _fd_jacobian(f, x, r0, step_scale=1e-6):
    # Central differences with per-coordinate step 1e-6 * (1 + |x_i|);
    # the residuals here are smooth polynomials in the parameters.
    n = x.size
    jac = np.empty((r0.size, n))
    for i in range(n):
        h = step_scale * (1.0 + abs(x[i]))
        xp = x.copy()
        xp[i] += h
        xm = x.copy()
        xm[i] -= h
        jac[:, i] = (np.asarray(f(xp), float) - np.asarray(f(xm), float)) / (2.0 * h)
    return jac


def minimize_residual(
    f: Callable[[np.ndarray], np.ndarray],
    x0,
    tol: float = DEFAULT_OPT_TOL,
    max_iter: int = 100,
) -> MinimizeResult:
    """Levenberg-Marquardt descent on the residual vector ``f(x)``.

    The Jacobian is formed by central finite differences.  Steps are only
    accepted when they strictly decrease the residual norm, so the reported
    norm is never above the value at ``x0``.  ``converged`` is true iff the
    final residual norm is at or below ``tol``.  Non-finite residuals are
    reported through ``message``, never raised.
    """
    x = np.atleast_1d(np.asarray(x0, dtype=float)).copy()
    r = np.atleast_1d(np.asarray(f(x), dtype=float))
    if not np.all(np.isfinite(r)):
        return MinimizeResult(x, float("inf"), 0, False, "non-finite residual at x0")
    rnorm = float(np.linalg.norm(r))
    lam = 1e-3
    iterations = 0
    message = ""
    while iterations < max_iter and rnorm > tol:
        iterations += 1
        jac = _fd_jacobian(f, x, r)
        if not np.all(np.isfinite(jac)):
            message = "non-finite Jacobian"
            break
        grad = jac.T @ r
        hess = jac.T @ jac
        if float(np.linalg.norm(grad)) <= 1e-14 * (1.0 + rnorm):
            break
        diag = np.maximum(np.diag(hess), 1e-12)
        accepted = False
        for _ in range(14):
            try:
                step = np.linalg.solve(hess + lam * np.diag(diag), -grad)
            except np.linalg.LinAlgError:
                lam *= 10.0
                continue
            x_new = x + step
            r_new = np.atleast_1d(np.asarray(f(x_new), dtype=float))
            if not np.all(np.isfinite(r_new)):
                lam *= 10.0
                message = "non-finite residual encountered during descent"
                continue
            rnorm_new = float(np.linalg.norm(r_new))
            if rnorm_new < rnorm:
                x, r, rnorm = x_new, r_new, rnorm_new
                lam = max(lam / 3.0, 1e-14)
                accepted = True
                break
            lam *= 10.0
        if not accepted:
            break
        if float(np.linalg.norm(step)) < 1e-15 * (1.0 + float(np.linalg.norm(x))):
            break
    return MinimizeResult(x, rnorm, iterations, rnorm <= tol, message)


@dataclass(frozen=True)
class MultistartResult:
    """Best local result over seeded restarts plus the full residual record."""

    best: MinimizeResult
    best_index: int
    residual_norms: tuple
    restarts: int
    seed: int


def gaussian_sampler(dim: int, scale: float = 1.0, offset=None):
    """Seeded Gaussian initial-point generator for :func:`multistart`."""
    base = None if offset is None else np.asarray(offset, dtype=float)

    def sampler(seed, index):
        rng = np.random.default_rng((seed, index))
        x0 = scale * rng.standard_normal(dim)
        if base is not None:
            x0 = x0 + base
        return x0

    return sampler


def multistart(
    f: Callable[[np.ndarray], np.ndarray],
    sampler: Callable[[int, int], np.ndarray],
    restarts: int,
    seed: int,
    tol: float = DEFAULT_OPT_TOL,
    max_iter: int = 100,
) -> MultistartResult:
    """Run :func:`minimize_residual` from ``restarts`` seeded starts.

    Deterministic in (seed, restarts): restart ``i`` always starts from
    ``sampler(seed, i)`` and results are reduced in restart-index order,
    so the outcome does not depend on evaluation order.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    best = None
    best_index = -1
    norms = []
    for i in range(restarts):
        res = minimize_residual(f, sampler(seed, i), tol=tol, max_iter=max_iter)
        norms.append(res.residual_norm)
        if best is None or res.residual_norm < best.residual_norm:
            best = res
            best_index = i
    return MultistartResult(best, best_index, tuple(norms), restarts, seed)
