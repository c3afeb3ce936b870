"""Ambient tangent-space data: metric, complex structure, conjugation circle.

The model lives on R^{2m} with the standard inner product.  ``J`` is the
block complex structure, ``A`` an orthogonal involution anti-commuting
with ``J`` (a real structure / complex conjugation), and the circle
``theta -> cos(theta) A + sin(theta) JA`` sweeps out the full family of
conjugations compatible with ``J``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm


@dataclass(frozen=True)
class QuadricModel:
    """Tangent-space model of complex dimension ``m`` (real dimension 2m)."""

    m: int
    J: np.ndarray
    A: np.ndarray

    @property
    def dim(self) -> int:
        return 2 * self.m

    def metric(self, x, y) -> float:
        """Standard inner product g(x, y)."""
        return float(np.dot(x, y))


@dataclass(frozen=True)
class ConjugationOperator:
    """One member of the gauge circle of conjugations."""

    theta: float
    op: np.ndarray


def _standard_j(m: int) -> np.ndarray:
    eye = np.eye(m)
    zero = np.zeros((m, m))
    return np.block([[zero, -eye], [eye, zero]])


def _reference_conjugation(m: int) -> np.ndarray:
    # +1 eigenspace = first m coordinates, swapped onto the -1 eigenspace by J.
    return np.diag(np.concatenate([np.ones(m), -np.ones(m)]))


def build_model(m: int, seed=None) -> QuadricModel:
    """Construct the ambient model at complex dimension ``m >= 3``.

    The conjugation is ``A = U A0 U^T`` where ``A0`` fixes the first m
    coordinates and ``U`` is a seeded random orthogonal map commuting with
    ``J`` (the real form of a random unitary, obtained by exponentiating a
    skew-symmetric matrix commuting with ``J``).  ``seed=None`` gives
    ``U = Id`` and hence the reference conjugation itself.
    """
    if m < 3:
        raise ValueError(f"complex dimension must satisfy m >= 3, got m={m}")
    J = _standard_j(m)
    A0 = _reference_conjugation(m)
    if seed is None:
        A = A0
    else:
        rng = np.random.default_rng(seed)
        x = rng.standard_normal((m, m))
        y = rng.standard_normal((m, m))
        skew = 0.5 * (x - x.T)
        sym = 0.5 * (y + y.T)
        # Real form of an anti-Hermitian complex matrix: commutes with J.
        k = np.block([[skew, -sym], [sym, skew]])
        u = expm(k)
        A = u @ A0 @ u.T
    return QuadricModel(m=m, J=J, A=A)


def conjugation_at(model: QuadricModel, theta: float) -> ConjugationOperator:
    """Member ``cos(theta) A + sin(theta) JA`` of the gauge circle."""
    op = np.cos(theta) * model.A + np.sin(theta) * (model.J @ model.A)
    return ConjugationOperator(theta=float(theta) % (2.0 * np.pi), op=op)


def model_invariant_report(model: QuadricModel) -> dict:
    """Structured record of all construction-invariant defect norms."""
    J, A = model.J, model.A
    eye = np.eye(model.dim)
    return {
        "m": model.m,
        "J_square_defect": float(np.abs(J @ J + eye).max()),
        "J_orthogonality_defect": float(np.abs(J.T @ J - eye).max()),
        "A_square_defect": float(np.abs(A @ A - eye).max()),
        "A_orthogonality_defect": float(np.abs(A.T @ A - eye).max()),
        "anticommutation_defect": float(np.abs(A @ J + J @ A).max()),
    }
