"""The oriented 2-plane value type, kept separate so that both the exterior
algebra and the Grassmannian helpers can depend on it."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SchemaError
from .numkern import orthonormalize


@dataclass(frozen=True, eq=False)
class OrientedPlane:
    """Oriented 2-plane through the origin, stored as an orthonormal pair (u, v)."""

    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.u, dtype=float)
        v = np.asarray(self.v, dtype=float)
        if u.shape != v.shape or u.ndim != 1:
            raise ValueError("u and v must be vectors of equal length")
        if abs(np.linalg.norm(u) - 1) > 1e-10 or abs(np.linalg.norm(v) - 1) > 1e-10:
            raise ValueError("basis vectors must be unit length")
        if abs(u @ v) > 1e-10:
            raise ValueError("basis vectors must be orthogonal")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    @property
    def dim(self) -> int:
        return self.u.size

    def basis(self) -> np.ndarray:
        return np.column_stack([self.u, self.v])

    def projector(self) -> np.ndarray:
        B = self.basis()
        return B @ B.T

    def plucker(self) -> np.ndarray:
        """Upper-triangular entries of u v^T - v u^T in lexicographic order.

        In R^4 this is exactly the bivector omega of the plane.
        """
        A = np.outer(self.u, self.v) - np.outer(self.v, self.u)
        return A[np.triu_indices(self.dim, 1)]

    def contains(self, x) -> float:
        """Distance from ``x`` to the plane (0 when contained)."""
        x = np.asarray(x, dtype=float)
        return float(np.linalg.norm(x - self.projector() @ x))

    def to_json(self) -> dict:
        return {"u": self.u.tolist(), "v": self.v.tolist()}

    @classmethod
    def from_json(cls, obj, field: str = "plane") -> "OrientedPlane":
        if not isinstance(obj, dict) or "u" not in obj or "v" not in obj:
            raise SchemaError(field, "expected an object with u and v")
        try:
            return plane(obj["u"], obj["v"])
        except (TypeError, ValueError) as exc:
            raise SchemaError(field, str(exc)) from None


def plane(u, v) -> OrientedPlane:
    """Orthonormalize (u, v) without changing the span or its orientation."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise ValueError("u and v must have the same dimension")
    scale = max(np.linalg.norm(u), np.linalg.norm(v), 1e-300)
    q = orthonormalize([u, v], tol=1e-10 * scale, full_rank=True)
    return OrientedPlane(q[0], q[1])


def plane_distance(P: OrientedPlane, Q: OrientedPlane) -> float:
    """Orientation-sensitive distance; the Euclidean norm of omega_P - omega_Q in R^4."""
    return float(np.linalg.norm(P.plucker() - Q.plucker()))
