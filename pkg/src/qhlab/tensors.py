"""Pointwise tensors of a hypersurface model and their residual functionals.

All bilinear forms are stored as full ambient matrices with the normal
direction annihilated, using the value convention ``B(X, Y) = X^T M Y``.
Residual sup-norms run over the orthonormal tangent frame grid plus a
fixed batch of seeded random tangent pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

_RANDOM_PAIRS = 64
_PAIR_SEED = 20260824


@dataclass(frozen=True)
class BilinearForm:
    """Bilinear form on the tangent space; kills the normal direction."""

    matrix: np.ndarray

    def __call__(self, x, y) -> float:
        return float(np.asarray(x) @ self.matrix @ np.asarray(y))

    def as_operator(self) -> np.ndarray:
        """Metric-equivalent operator Q with g(QX, Y) = B(X, Y)."""
        return self.matrix.T

    @property
    def sym_defect(self) -> float:
        return float(np.abs(self.matrix - self.matrix.T).max())


@dataclass(frozen=True)
class ResidualReport:
    name: str
    value: float
    breakdown: dict = field(default_factory=dict)


def _random_tangent_pairs(frame, count=_RANDOM_PAIRS, seed=_PAIR_SEED):
    rng = np.random.default_rng(seed)
    nt = frame.basis.shape[1]
    u = rng.standard_normal((nt, count))
    v = rng.standard_normal((nt, count))
    u /= np.linalg.norm(u, axis=0)
    v /= np.linalg.norm(v, axis=0)
    return frame.basis @ u, frame.basis @ v


def sup_norm_tangent(frame, matrix) -> float:
    """Sup of |X^T M Y| over frame pairs and seeded random tangent pairs."""
    bt = frame.basis
    grid = float(np.abs(bt.T @ matrix @ bt).max())
    xs, ys = _random_tangent_pairs(frame)
    rand = float(np.abs(np.einsum("ic,ij,jc->c", xs, matrix, ys)).max())
    return max(grid, rand)


# ---------------------------------------------------------------------------
# Curvature and the Codazzi right-hand side


def curvature(frame, shape, A_star):
    """Pointwise curvature operator (X, Y, Z) -> tangent vector.

    Terms whose vector factors may leave the tangent space (the
    conjugation terms) are tangentially projected in the output; scalar
    pairings against tangent arguments are unaffected by this choice.
    """
    phi, P, J = frame.phi, frame.P, frame.J
    A = A_star.op
    S = shape.S

    def R(x, y, z):
        x = P @ np.asarray(x, dtype=float)
        y = P @ np.asarray(y, dtype=float)
        z = P @ np.asarray(z, dtype=float)
        ax, ay = A @ x, A @ y
        jax, jay = J @ ax, J @ ay
        px, py = phi @ x, phi @ y
        sx, sy = S @ x, S @ y
        out = (y @ z) * x - (x @ z) * y
        out += (py @ z) * px - (px @ z) * py - 2.0 * (px @ y) * (phi @ z)
        out += (ay @ z) * (P @ ax) - (ax @ z) * (P @ ay)
        out += (jay @ z) * (P @ jax) - (jax @ z) * (P @ jay)
        out += (sy @ z) * sx - (sx @ z) * sy
        return out

    return R


def codazzi_rhs(frame, A_star):
    """Scalar right-hand side of the Codazzi relation, (X, Y, Z) -> real."""
    phi, P, J = frame.phi, frame.P, frame.J
    A = A_star.op
    an = A @ frame.N
    axi = A @ frame.xi

    def rhs(x, y, z):
        x = P @ np.asarray(x, dtype=float)
        y = P @ np.asarray(y, dtype=float)
        z = P @ np.asarray(z, dtype=float)
        ex, ey, ez = x @ frame.xi, y @ frame.xi, z @ frame.xi
        val = ex * (phi @ y @ z) - ey * (phi @ x @ z) - 2.0 * ez * (phi @ x @ y)
        val += (x @ an) * (A @ y @ z) - (y @ an) * (A @ x @ z)
        val += (x @ axi) * (J @ A @ y @ z) - (y @ axi) * (J @ A @ x @ z)
        return float(val)

    return rhs


def codazzi_rhs_tensor(frame, A_star) -> np.ndarray:
    """Codazzi right-hand side over the frame basis, C[x, y, z]."""
    E = frame.basis
    phi, J = frame.phi, frame.J
    A = A_star.op
    eta = E.T @ frame.xi
    an = E.T @ (A @ frame.N)
    axi = E.T @ (A @ frame.xi)
    Phi = E.T @ phi @ E        # Phi[k, j] = g(phi e_j, e_k)
    AB = E.T @ A @ E
    JAB = E.T @ (J @ A) @ E
    C = np.einsum("x,zy->xyz", eta, Phi)
    C -= np.einsum("y,zx->xyz", eta, Phi)
    C -= 2.0 * np.einsum("z,yx->xyz", eta, Phi)
    C += np.einsum("x,zy->xyz", an, AB) - np.einsum("y,zx->xyz", an, AB)
    C += np.einsum("x,zy->xyz", axi, JAB) - np.einsum("y,zx->xyz", axi, JAB)
    return C


# ---------------------------------------------------------------------------
# Star-Ricci tensor, two ways


def star_ricci_trace(frame, shape, A_star) -> BilinearForm:
    """Star-Ricci tensor from its trace definition over a tangent frame.

    Composes phi with the tangentially projected curvature operator, so
    the result is the trace of genuinely tangent operators.  Since phi is
    already sandwiched between tangent projectors, the projections of the
    conjugation-term factors are absorbed and the raw factors can be used.
    """
    E = frame.basis
    phi, P = frame.phi, frame.P
    A = A_star.op
    S = shape.S
    J = frame.J
    PhiE = phi @ E
    Phi2E = phi @ PhiE
    AE, APhiE = A @ E, A @ PhiE
    JAE, JAPhiE = J @ AE, J @ APhiE
    SE, SPhiE = S @ E, S @ PhiE
    tr_phi2 = float(np.trace(phi @ phi @ P))
    # Each curvature term g(v, Z) u contributes (1/2) v^T phi u to the trace.
    val = E.T @ phi.T @ PhiE
    val -= E.T @ phi @ PhiE
    val += PhiE.T @ phi.T @ Phi2E
    val -= PhiE.T @ phi @ Phi2E
    val -= 2.0 * tr_phi2 * (PhiE.T @ PhiE)
    val += AE.T @ phi.T @ APhiE
    val -= AE.T @ phi @ APhiE
    val += JAE.T @ phi.T @ JAPhiE
    val -= JAE.T @ phi @ JAPhiE
    val += SE.T @ phi.T @ SPhiE
    val -= SE.T @ phi @ SPhiE
    val *= 0.5
    return BilinearForm(matrix=E @ val @ E.T)


def star_ricci_closed(frame, shape, A_star) -> BilinearForm:
    """Star-Ricci tensor from its closed form in (phi, S, A)."""
    m = frame.m
    phi, P = frame.phi, frame.P
    S = shape.S
    an = A_star.op @ frame.N
    M = -2.0 * (m - 1) * (phi @ phi)
    M -= 2.0 * np.outer(an, an)
    M -= (S @ phi) @ (S @ phi)
    return BilinearForm(matrix=P @ M @ P)


def star_ricci_closed_defect(frame, A_star) -> BilinearForm:
    """Exact difference between the trace and closed star-Ricci forms.

    The trace and closed forms disagree off the principal gauge by the
    shape-independent bilinear form
    ``4 g(AN,X) g(AN,Y) - 2 g(A xi, X) g(AN, phi Y)``,
    which this returns; it vanishes identically when ``AN = N``.
    """
    phi, P = frame.phi, frame.P
    an = A_star.op @ frame.N
    axi = A_star.op @ frame.xi
    M = 4.0 * np.outer(an, an) - 2.0 * np.outer(axi, phi.T @ an)
    return BilinearForm(matrix=P @ M @ P)


def lie_xi_metric(frame, shape) -> BilinearForm:
    """Lie derivative of the metric along the structure vector field."""
    phi, P = frame.phi, frame.P
    S = shape.S
    return BilinearForm(matrix=P @ (phi @ S - S @ phi) @ P)


# ---------------------------------------------------------------------------
# Residual functionals


def hopf_residual_matrix(frame, shape, A_star, alpha) -> np.ndarray:
    """Bilinear residual matrix of the Hopf structure relation for S."""
    phi, P = frame.phi, frame.P
    S = shape.S
    an = A_star.op @ frame.N
    axi = A_star.op @ frame.xi
    c = float(frame.xi @ axi)
    M = -2.0 * S @ phi @ S + alpha * (phi @ S + S @ phi) + 2.0 * phi
    M += 2.0 * np.outer(an, axi) - 2.0 * np.outer(axi, an)
    M += 2.0 * c * (np.outer(frame.xi, an) - np.outer(an, frame.xi))
    return P @ M @ P


def hopf_residual(frame, shape, A_star, alpha) -> ResidualReport:
    """Sup-norm of the Hopf structure relation with a per-term breakdown."""
    phi, P = frame.phi, frame.P
    S = shape.S
    an = A_star.op @ frame.N
    axi = A_star.op @ frame.xi
    c = float(frame.xi @ axi)
    terms = {
        "quadratic": -2.0 * S @ phi @ S,
        "alpha": alpha * (phi @ S + S @ phi),
        "phi": 2.0 * phi,
        "conjugation": 2.0 * np.outer(an, axi) - 2.0 * np.outer(axi, an),
        "reeb": 2.0 * c * (np.outer(frame.xi, an) - np.outer(an, frame.xi)),
    }
    total = sum(terms.values())
    breakdown = {k: sup_norm_tangent(frame, P @ v @ P) for k, v in terms.items()}
    value = sup_norm_tangent(frame, P @ total @ P)
    return ResidualReport(name="hopf_relation", value=value, breakdown=breakdown)


def soliton_residual(frame, shape, A_star, lam) -> ResidualReport:
    """Sup-norm of the soliton relation with potential xi and constant lam."""
    half_lie = 0.5 * lie_xi_metric(frame, shape).matrix
    ric = star_ricci_closed(frame, shape, A_star).matrix
    metric_term = lam * frame.P
    total = half_lie + ric - metric_term
    xi = frame.xi
    return ResidualReport(
        name="soliton",
        value=sup_norm_tangent(frame, total),
        breakdown={
            "half_lie": sup_norm_tangent(frame, half_lie),
            "star_ricci": sup_norm_tangent(frame, ric),
            "metric_term": abs(float(lam)),
            "xi_xi": abs(float(xi @ total @ xi)),
        },
    )


def commutator_residuals(ric_star: BilinearForm, frame) -> dict:
    """Commuting and anti-commuting defects of the star-Ricci operator."""
    phi, P = frame.phi, frame.P
    q = ric_star.as_operator()
    return {
        "commuting": sup_norm_tangent(frame, P @ (phi @ q - q @ phi) @ P),
        "anticommuting": sup_norm_tangent(frame, P @ (phi @ q + q @ phi) @ P),
    }


def helper_identity_defects(frame, A_star) -> dict:
    """Defects of the two gauge pairing identities used by the symmetry lemma.

    Both identities are linear in the tangent argument, so each defect is
    the norm of a single projected vector:
    ``g(A xi, phi X) = g(A N, X)`` and
    ``g(A phi X, N) = -g(X, A xi) - eta(X) g(A N, N)``.
    """
    phi, P = frame.phi, frame.P
    an = A_star.op @ frame.N
    axi = A_star.op @ frame.xi
    gann = float(frame.N @ an)
    v1 = P @ (phi.T @ axi - an)
    v2 = P @ (phi.T @ an + axi + gann * frame.xi)
    return {
        "conjugate_reeb_pairing": float(np.linalg.norm(v1)),
        "conjugate_normal_pairing": float(np.linalg.norm(v2)),
    }


# ---------------------------------------------------------------------------
# First-jet residuals


def _frame_operators(jet):
    frame = jet.frame
    E = frame.basis
    S = jet.shape.S
    phi = frame.phi
    Sb = E.T @ S @ E
    Phib = E.T @ phi @ E
    return frame, E, S, phi, Sb, Phib


def parallel_star_ricci_tensor(jet) -> np.ndarray:
    """Residual tensor rho[z, x, y] of the parallel star-Ricci relation."""
    frame, E, S, phi, Sb, Phib = _frame_operators(jet)
    m = frame.m
    A = jet.gauge.A
    eta = E.T @ frame.xi
    an = E.T @ (A @ frame.N)
    sphis = S @ phi @ S
    g_sphi = E.T @ (S @ phi) @ E          # g(S e_z, phi e_x)
    g_phis = E.T @ (phi @ S) @ E          # g(phi S e_z, e_y) = [y, z]
    sa = E.T @ (S @ A) @ E                # g(S e_z, A e_x)
    g6 = E.T @ (S @ sphis) @ E            # g(S e_z, S phi S e_x)
    sxi = E.T @ (S @ frame.xi)            # eta(S e_x)
    g8 = E.T @ (phi @ S @ S) @ E          # g(phi S^2 e_z, e_y) = [y, z]
    phib_sb = Phib @ Sb
    m7 = np.einsum("ab,zbc,cd->zad", Phib, jet.T, phib_sb)
    m9 = np.einsum("ab,zbc->zac", Phib @ Sb @ Phib, jet.T)

    rho = -2.0 * (m - 1) * np.einsum("zx,y->zxy", g_sphi, eta)
    rho += 2.0 * (m - 1) * np.einsum("x,yz->zxy", eta, g_phis)
    rho -= 2.0 * np.einsum("zx,y->zxy", sa, an)
    rho += 4.0 * np.einsum("z,x,y->zxy", jet.q, an, an)
    rho -= 2.0 * np.einsum("zy,x->zxy", sa, an)
    rho -= np.einsum("zx,y->zxy", g6, eta)
    rho += m7.transpose(0, 2, 1)
    rho += np.einsum("x,yz->zxy", sxi, g8)
    rho += m9.transpose(0, 2, 1)
    return rho


def parallel_star_ricci_residual(jet):
    """Parallel star-Ricci residual: pointwise evaluator plus sup report."""
    rho = parallel_star_ricci_tensor(jet)
    frame = jet.frame
    E = frame.basis

    def evaluate(z, x, y) -> float:
        zc, xc, yc = E.T @ z, E.T @ x, E.T @ y
        return float(np.einsum("zxy,z,x,y->", rho, zc, xc, yc))

    grid = float(np.abs(rho).max())
    rng = np.random.default_rng(_PAIR_SEED)
    nt = rho.shape[0]
    coords = rng.standard_normal((3, nt, _RANDOM_PAIRS))
    coords /= np.linalg.norm(coords, axis=1, keepdims=True)
    rand = float(
        np.abs(
            np.einsum("zxy,zc,xc,yc->c", rho, coords[0], coords[1], coords[2])
        ).max()
    )
    report = ResidualReport(
        name="parallel_star_ricci",
        value=max(grid, rand),
        breakdown={"frame_grid": grid, "random_triples": rand},
    )
    return evaluate, report


def nabla_xi_shape_check(jet) -> ResidualReport:
    """Check the forced form of the shape-operator derivative along xi.

    Only valid at an isotropic gauge; reports both the derivative residual
    and the companion quadratic relation it is derived from.
    """
    from .hypersurface import ISOTROPIC, classify_normal

    if classify_normal(jet.gauge).kind != ISOTROPIC:
        raise ValueError("nabla_xi_shape_check requires an isotropic gauge")
    frame, E, S, phi, Sb, Phib = _frame_operators(jet)
    alpha = jet.shape.alpha
    A = jet.gauge.A
    an = E.T @ (A @ frame.N)
    axi = E.T @ (A @ frame.xi)
    # Frame basis column 0 is xi, so the derivative along xi is T[0].
    d_xi = jet.T[0]
    r1 = d_xi - 0.5 * alpha * (Phib @ Sb - Sb @ Phib)
    r2 = Sb @ Phib @ Sb - 0.5 * alpha * (Phib @ Sb + Sb @ Phib) - Phib
    r2 += np.outer(axi, an) - np.outer(an, axi)
    v1 = float(np.abs(r1).max())
    v2 = float(np.abs(r2).max())
    return ResidualReport(
        name="nabla_xi_shape",
        value=max(v1, v2),
        breakdown={"derivative_along_xi": v1, "quadratic_relation": v2},
    )
