"""Oriented 2-planes in R^4: complements, intersection tests, the angle pair
(theta_minus, theta_plus), and the point-anchored maps psi_{p,-}, psi_{p,+}."""

from __future__ import annotations

import math

import numpy as np

from .errors import NotOrthogonal, OffSphere
from .exterior import (Bivector, STAR_MATRIX, inner, omega, pi_split, star)
from .numkern import complement_frame
from .planes import OrientedPlane, plane, plane_distance

__all__ = [
    "OrientedPlane", "plane", "plane_distance", "orthogonal_complement",
    "theta_pm", "intersects", "psi", "psi_inverse", "psi_matrix", "vector_angle",
]

MINUS, PLUS = "minus", "plus"

# pi_- and pi_+ as 6x6 matrices
PI_MINUS = (np.eye(6) - STAR_MATRIX) / 2
PI_PLUS = (np.eye(6) + STAR_MATRIX) / 2


def _side(side: str) -> str:
    s = {"-": MINUS, "minus": MINUS, "+": PLUS, "plus": PLUS}.get(side)
    if s is None:
        raise ValueError(f"side must be 'minus' or 'plus', got {side!r}")
    return s


def orthogonal_complement(P: OrientedPlane) -> OrientedPlane:
    """P-perp, oriented so that (u, v, p3, p4) is a positive basis of R^4."""
    if P.dim != 4:
        raise ValueError("orthogonal_complement needs a plane in R^4")
    B = P.basis()
    rest = np.eye(4) - B @ B.T
    # the two columns of the projector with the largest norm span P-perp
    order = np.argsort(-np.linalg.norm(rest, axis=0), kind="stable")
    Q = plane(rest[:, order[0]], rest[:, order[1]])
    if np.linalg.det(np.column_stack([P.u, P.v, Q.u, Q.v])) < 0:
        Q = OrientedPlane(Q.u, -Q.v)
    return Q


def vector_angle(a, b) -> float:
    """Angle in [0, pi] between two nonzero vectors, accurate near 0 and pi."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    return 2.0 * math.atan2(np.linalg.norm(a - b), np.linalg.norm(a + b))


def theta_pm(P: OrientedPlane, Q: OrientedPlane) -> tuple[float, float]:
    pm, pp = pi_split(omega(P))
    qm, qp = pi_split(omega(Q))
    return vector_angle(pm.coords, qm.coords), vector_angle(pp.coords, qp.coords)


def intersects(P: OrientedPlane, Q: OrientedPlane, tol: float = 1e-9) -> bool:
    return abs(inner(omega(P), star(omega(Q)))) < tol


def psi_matrix(p, side: str) -> np.ndarray:
    """6x4 matrix of the linear map u -> pi_side(p ^ u)."""
    p = np.asarray(p, dtype=float)
    W = np.zeros((6, 4))
    for k, (i, j) in enumerate(((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))):
        # (p ^ u)_{ij} = p_i u_j - p_j u_i
        W[k, j] += p[i]
        W[k, i] -= p[j]
    return (PI_MINUS if _side(side) == MINUS else PI_PLUS) @ W


def psi(p, u, side: str) -> Bivector:
    p = np.asarray(p, dtype=float)
    u = np.asarray(u, dtype=float)
    if abs(p @ u) > 1e-10:
        raise NotOrthogonal(f"<p, u> = {p @ u:.3g}")
    return Bivector(psi_matrix(p, side) @ u)


def psi_inverse(p, a, side: str) -> np.ndarray:
    """The vector u orthogonal to p with psi(p, u, side) = a."""
    side = _side(side)
    p = np.asarray(p, dtype=float)
    c = a.coords if isinstance(a, Bivector) else np.asarray(a, dtype=float)
    other = PI_PLUS if side == MINUS else PI_MINUS
    if np.linalg.norm(other @ c) > 1e-8:
        raise OffSphere(f"bivector is not in the {side} eigenspace")
    F = complement_frame(p)
    A = psi_matrix(p, side) @ F
    w, *_ = np.linalg.lstsq(A, c, rcond=None)
    resid = np.linalg.norm(A @ w - c)
    if resid > 1e-8:
        raise OffSphere(f"no preimage (least-squares residual {resid:.3g})")
    return F @ w
