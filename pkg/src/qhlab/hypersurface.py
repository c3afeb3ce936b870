"""Hypersurface-induced structure from a unit normal.

Given the ambient model and a unit normal N, this module builds the
almost contact structure (phi, eta, xi, g), canonicalizes the conjugation
gauge so that the normal decomposes as N = cos(t) Z1 + sin(t) J Z2 with
Z1, Z2 orthonormal in the +1 eigenspace of the chosen conjugation,
classifies the normal by its singular angle t, and constructs shape
operators and first-jet data (the covariant derivative of the shape
operator constrained by the Codazzi relation).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import algebra
from .quadric import ConjugationOperator, QuadricModel, conjugation_at

EPS_T = 1e-8

PRINCIPAL = "principal"
ISOTROPIC = "isotropic"
GENERIC = "generic"


@dataclass(frozen=True)
class Frame:
    """Almost contact data induced by a unit normal.

    ``basis`` is an orthonormal basis of the tangent space N-perp whose
    first column is the structure vector xi; the remaining columns span
    the maximal complex subbundle ker(eta).
    """

    m: int
    N: np.ndarray
    xi: np.ndarray
    P: np.ndarray
    phi: np.ndarray
    J: np.ndarray
    basis: np.ndarray

    @property
    def c_basis(self) -> np.ndarray:
        """Orthonormal basis of the maximal complex subbundle ker(eta)."""
        return self.basis[:, 1:]

    def eta(self, x) -> float:
        return float(np.dot(x, self.xi))

    def project(self, x) -> np.ndarray:
        return self.P @ x


@dataclass(frozen=True)
class CanonicalGauge:
    """Canonical conjugation for a normal, with its singular decomposition."""

    theta_star: float
    t: float
    Z1: np.ndarray
    Z2: np.ndarray
    A_star: ConjugationOperator

    @property
    def A(self) -> np.ndarray:
        return self.A_star.op


@dataclass(frozen=True)
class NormalType:
    kind: str
    t: float


@dataclass(frozen=True)
class ShapeOperator:
    """Symmetric operator annihilating the normal; alpha = g(S xi, xi)."""

    S: np.ndarray
    alpha: float


@dataclass(frozen=True)
class JetData:
    """Shape operator with first-jet extension.

    ``T`` holds g((nabla_{e_i} S) e_j, e_k) in the frame basis (symmetric
    in its last two slots); ``q`` is the free connection one-form in frame
    coordinates; ``d_alpha`` is the ambient gradient covector of alpha.
    """

    frame: Frame
    shape: ShapeOperator
    gauge: CanonicalGauge
    T: np.ndarray
    q: np.ndarray
    d_alpha: np.ndarray
    xi_alpha: float
    solvability_residual: float


def induce_frame(model: QuadricModel, N) -> Frame:
    """Induce the almost contact structure from a (near-)unit normal."""
    N = np.asarray(N, dtype=float)
    nrm = float(np.linalg.norm(N))
    if nrm < 1e-8:
        raise ValueError("normal vector has (near-)zero length")
    N = N / nrm
    n = model.dim
    xi = -model.J @ N
    P = np.eye(n) - np.outer(N, N)
    phi = P @ model.J @ P
    # Complete {N, xi} to an orthonormal basis; QR keeps this deterministic.
    stacked = np.column_stack([N, xi, np.eye(n)])
    q, _ = np.linalg.qr(stacked)
    basis = np.column_stack([xi, q[:, 2:n]])
    return Frame(m=model.m, N=N, xi=xi, P=P, phi=phi, J=model.J, basis=basis)


def _complete_in_v(A: np.ndarray, z1: np.ndarray) -> np.ndarray:
    # First Gram-Schmidt completion vector in V(A) orthogonal to z1.
    n = A.shape[0]
    for k in range(n):
        e = np.zeros(n)
        e[k] = 1.0
        v = 0.5 * (e + A @ e)
        v = v - np.dot(v, z1) * z1
        nrm = float(np.linalg.norm(v))
        if nrm > 0.5:
            return v / nrm
    raise RuntimeError("failed to complete a basis of the +1 eigenspace")


def canonicalize_conjugation(model: QuadricModel, N, eps_t: float = EPS_T) -> CanonicalGauge:
    """Pick the gauge maximizing g(A_theta N, N) and decompose the normal.

    The gauge dependence of g(A_theta N, N) is a single sinusoid, so the
    maximizer has the closed form theta* = atan2(b, a) with
    a = g(AN, N), b = g(JAN, N), and the maximum equals cos(2t).
    The singular angle itself is recovered from the eigenspace components
    of N, which stays well conditioned near t = 0.
    """
    N = np.asarray(N, dtype=float)
    N = N / float(np.linalg.norm(N))
    a = float(N @ (model.A @ N))
    b = float(N @ (model.J @ model.A @ N))
    theta_star = float(np.arctan2(b, a)) % (2.0 * np.pi)
    A_star = conjugation_at(model, theta_star)
    n_plus = 0.5 * (N + A_star.op @ N)
    n_minus = 0.5 * (N - A_star.op @ N)
    c = float(np.linalg.norm(n_plus))
    s = float(np.linalg.norm(n_minus))
    t = float(np.arctan2(s, c))
    z1 = n_plus / c
    if t > eps_t:
        z2 = -model.J @ n_minus / s
    else:
        z2 = _complete_in_v(A_star.op, z1)
    return CanonicalGauge(theta_star=theta_star, t=t, Z1=z1, Z2=z2, A_star=A_star)


def closed_form_cos2t(model: QuadricModel, N) -> float:
    """cos(2t) from the sinusoid maximization, without decomposing N."""
    N = np.asarray(N, dtype=float)
    N = N / float(np.linalg.norm(N))
    a = float(N @ (model.A @ N))
    b = float(N @ (model.J @ model.A @ N))
    return float(np.hypot(a, b))


def classify_normal(gauge: CanonicalGauge, eps_t: float = EPS_T) -> NormalType:
    """Threshold the singular angle into principal / isotropic / generic."""
    t = gauge.t
    if t < eps_t:
        return NormalType(PRINCIPAL, t)
    if abs(t - np.pi / 4.0) < eps_t:
        return NormalType(ISOTROPIC, t)
    return NormalType(GENERIC, t)


# ---------------------------------------------------------------------------
# Shape operators


def _sym_params_dim(d: int) -> int:
    return d * (d + 1) // 2


def _sym_from_params(params, d: int) -> np.ndarray:
    iu = np.triu_indices(d)
    mat = np.zeros((d, d))
    mat[iu] = params
    mat = mat + np.triu(mat, 1).T
    return mat


def _params_from_sym(mat: np.ndarray) -> np.ndarray:
    iu = np.triu_indices(mat.shape[0])
    return np.asarray(mat, dtype=float)[iu]


def hopf_shape_from_c_block(frame: Frame, c_block: np.ndarray, alpha: float) -> ShapeOperator:
    """Assemble a Hopf shape operator from its symmetric restriction to ker(eta)."""
    bc = frame.c_basis
    S = bc @ c_block @ bc.T + alpha * np.outer(frame.xi, frame.xi)
    return ShapeOperator(S=S, alpha=float(alpha))


def shape_random_hopf(frame: Frame, alpha: float, seed) -> ShapeOperator:
    """Seeded random Hopf shape operator: S xi = alpha xi, S N = 0."""
    d = 2 * frame.m - 2
    rng = np.random.default_rng(seed)
    c = rng.standard_normal((d, d))
    return hopf_shape_from_c_block(frame, 0.5 * (c + c.T), alpha)


def shape_random(frame: Frame, seed) -> ShapeOperator:
    """Seeded random symmetric shape operator with no Hopf constraint."""
    d = 2 * frame.m - 1
    rng = np.random.default_rng(seed)
    c = rng.standard_normal((d, d))
    c = 0.5 * (c + c.T)
    b = frame.basis
    S = b @ c @ b.T
    alpha = float(frame.xi @ S @ frame.xi)
    return ShapeOperator(S=S, alpha=alpha)


@dataclass(frozen=True)
class ShapeSolveResult:
    """Shape operator found by a residual search, with the search record."""

    shape: ShapeOperator
    search: algebra.MultistartResult

    @property
    def residual_norm(self) -> float:
        return self.search.best.residual_norm

    @property
    def converged(self) -> bool:
        return self.search.best.converged


def shape_solve_hopf(
    frame: Frame,
    gauge: CanonicalGauge,
    alpha: float,
    seed,
    restarts: int = 6,
    tol: float = 1e-10,
    max_iter: int = 80,
) -> ShapeSolveResult:
    """Search for a Hopf shape operator satisfying the Hopf structure relation.

    Minimizes the sup-residual of the pointwise relation that every Hopf
    shape operator must satisfy (quadratic in S), via seeded multistart
    least squares over the symmetric restriction of S to ker(eta).
    """
    from . import tensors

    d = 2 * frame.m - 2
    p = _sym_params_dim(d)
    bt = frame.basis

    def residual(x):
        shape = hopf_shape_from_c_block(frame, _sym_from_params(x, d), alpha)
        mat = tensors.hopf_residual_matrix(frame, shape, gauge.A_star, alpha)
        return (bt.T @ mat @ bt).ravel()

    ident = _params_from_sym(np.eye(d))

    def sampler(s, i):
        if i == 0:
            # The projector onto ker(eta) solves the principal-gauge case
            # exactly and is a serviceable start elsewhere.
            return ident.copy()
        rng = np.random.default_rng((s, i))
        return rng.standard_normal(p)

    ms = algebra.multistart(residual, sampler, restarts, seed, tol=tol, max_iter=max_iter)
    shape = hopf_shape_from_c_block(frame, _sym_from_params(ms.best.argmin, d), alpha)
    return ShapeSolveResult(shape=shape, search=ms)


def shape_isometric_reeb_soliton(
    frame: Frame,
    gauge: CanonicalGauge,
    seed,
    restarts: int = 8,
    tol: float = 1e-9,
    max_iter: int = 80,
) -> ShapeSolveResult:
    """Search for Hopf data with commuting S/phi, the Hopf relation, and
    vanishing star-Ricci tensor, i.e. the pointwise constraint system of the
    isometric-Reeb-flow soliton branch.

    Only defined at an isotropic gauge; a principal gauge is rejected since
    that branch is algebraically excluded.
    """
    from . import tensors

    if classify_normal(gauge).kind == PRINCIPAL:
        raise ValueError("principal gauge rejected: the isometric-Reeb branch "
                         "requires an isotropic normal")
    d = 2 * frame.m - 2
    p = _sym_params_dim(d)
    bt = frame.basis

    def residual(x):
        alpha = x[0]
        shape = hopf_shape_from_c_block(frame, _sym_from_params(x[1:], d), alpha)
        hres = tensors.hopf_residual_matrix(frame, shape, gauge.A_star, alpha)
        comm = shape.S @ frame.phi - frame.phi @ shape.S
        ric = tensors.star_ricci_closed(frame, shape, gauge.A_star).matrix
        return np.concatenate([
            (bt.T @ hres @ bt).ravel(),
            (bt.T @ comm @ bt).ravel(),
            (bt.T @ ric @ bt).ravel(),
        ])

    def sampler(s, i):
        rng = np.random.default_rng((s, i))
        return rng.standard_normal(1 + p)

    ms = algebra.multistart(residual, sampler, restarts, seed, tol=tol, max_iter=max_iter)
    x = ms.best.argmin
    shape = hopf_shape_from_c_block(frame, _sym_from_params(x[1:], d), x[0])
    return ShapeSolveResult(shape=shape, search=ms)


# ---------------------------------------------------------------------------
# First-jet data


@lru_cache(maxsize=8)
def _codazzi_constraint_matrix(nt: int):
    """Linear map taking the packed symmetric jet tensor to its
    antisymmetrization in the first two slots.

    Unknowns: T[i, j, k] symmetric in (j, k), packed per i.
    Equations: T[i, j, k] - T[j, i, k] for i < j, all k.
    """
    psz = nt * (nt + 1) // 2
    iu = np.triu_indices(nt)
    pos = {}
    for idx in range(psz):
        pos[(iu[0][idx], iu[1][idx])] = idx
        pos[(iu[1][idx], iu[0][idx])] = idx
    n_unknowns = nt * psz
    rows = []
    mat_rows = []
    for i in range(nt):
        for j in range(i + 1, nt):
            for k in range(nt):
                row = np.zeros(n_unknowns)
                row[i * psz + pos[(j, k)]] += 1.0
                row[j * psz + pos[(i, k)]] -= 1.0
                mat_rows.append(row)
                rows.append((i, j, k))
    return np.asarray(mat_rows), tuple(rows), pos


@lru_cache(maxsize=8)
def _codazzi_solver(nt: int):
    """Cached minimum-norm solver data for the Codazzi jet system."""
    mat, eq_index, _ = _codazzi_constraint_matrix(nt)
    idx = np.asarray(eq_index)
    return mat, np.linalg.pinv(mat), idx[:, 0], idx[:, 1], idx[:, 2]


def _unpack_jet(u: np.ndarray, nt: int) -> np.ndarray:
    psz = nt * (nt + 1) // 2
    iu = np.triu_indices(nt)
    T = np.zeros((nt, nt, nt))
    for i in range(nt):
        block = np.zeros((nt, nt))
        block[iu] = u[i * psz:(i + 1) * psz]
        block = block + np.triu(block, 1).T
        T[i] = block
    return T


def extend_jet(
    frame: Frame,
    shape: ShapeOperator,
    gauge: CanonicalGauge,
    sym_free=None,
    xi_alpha: float = 0.0,
    q=None,
    solvability_tol: float = 1e-8,
) -> JetData:
    """Extend shape data to first-jet data consistent with the Codazzi relation.

    The antisymmetric part of the jet tensor is pinned by the Codazzi
    right-hand side; the linear system is solved in the minimum-norm sense
    and the user-supplied totally symmetric tensor ``sym_free`` spans the
    remaining gauge freedom.  The gradient covector of alpha is assembled
    from its forced pointwise form.
    """
    from . import tensors

    nt = 2 * frame.m - 1
    if sym_free is None:
        sym_free = np.zeros((nt, nt, nt))
    else:
        sym_free = np.asarray(sym_free, dtype=float)
        for perm in ((1, 0, 2), (0, 2, 1)):
            if np.abs(sym_free - sym_free.transpose(perm)).max() > 1e-10:
                raise ValueError("sym_free must be symmetric in all three slots")
    if q is None:
        q = np.zeros(nt)
    else:
        q = np.asarray(q, dtype=float)

    rhs_tensor = tensors.codazzi_rhs_tensor(frame, gauge.A_star)
    mat, pinv, ii, jj, kk = _codazzi_solver(nt)
    rhs = rhs_tensor[ii, jj, kk]
    u = pinv @ rhs
    residual = float(np.linalg.norm(mat @ u - rhs))
    if residual > solvability_tol:
        raise ValueError(
            f"Codazzi jet system inconsistent: least-squares residual "
            f"{residual:.3e} exceeds {solvability_tol:.1e}"
        )
    T = _unpack_jet(u, nt) + sym_free

    a_n = gauge.A @ frame.N
    xi_a_xi = float(frame.xi @ (gauge.A @ frame.xi))
    d_alpha = xi_alpha * frame.xi + 2.0 * xi_a_xi * frame.project(a_n)
    return JetData(
        frame=frame,
        shape=shape,
        gauge=gauge,
        T=T,
        q=q,
        d_alpha=d_alpha,
        xi_alpha=float(xi_alpha),
        solvability_residual=residual,
    )
