"""Bivectors on R^4: wedge products, the plane map omega, the Hodge star,
the self-dual/anti-self-dual split, and normal forms.

Coordinates are taken in the lexicographic basis
``e12, e13, e14, e23, e24, e34``; coordinate (i, j) is alpha(e_i, e_j).
Four-forms are identified with their coefficient on the volume form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotDecomposable, NotSkew, NotUnitNorm, SchemaError
from .planes import OrientedPlane, plane

PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
_IU = (np.array([i for i, _ in PAIRS]), np.array([j for _, j in PAIRS]))

# star as a signed permutation of coordinates
_STAR_PERM = np.array([5, 4, 3, 2, 1, 0])
_STAR_SIGN = np.array([1.0, -1.0, 1.0, 1.0, -1.0, 1.0])
STAR_MATRIX = np.zeros((6, 6))
STAR_MATRIX[np.arange(6), _STAR_PERM] = _STAR_SIGN


@dataclass(frozen=True, eq=False)
class Bivector:
    coords: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=float).reshape(-1)
        if c.shape != (6,):
            raise ValueError("a bivector on R^4 has 6 coordinates")
        if not np.all(np.isfinite(c)):
            raise ValueError("bivector coordinates must be finite")
        object.__setattr__(self, "coords", c)

    def __add__(self, other):
        return Bivector(self.coords + _coords(other))

    def __sub__(self, other):
        return Bivector(self.coords - _coords(other))

    def __neg__(self):
        return Bivector(-self.coords)

    def __mul__(self, scalar):
        return Bivector(self.coords * float(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Bivector(self.coords / float(scalar))

    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))

    def as_matrix(self) -> np.ndarray:
        """The 4x4 skew matrix A with A[i, j] = alpha(e_i, e_j)."""
        A = np.zeros((4, 4))
        A[_IU] = self.coords
        return A - A.T

    @classmethod
    def from_matrix(cls, A) -> "Bivector":
        A = np.asarray(A, dtype=float)
        return cls(A[_IU])

    @classmethod
    def basis(cls, i: int, j: int) -> "Bivector":
        """e_i ^ e_j with 1-based indices, i < j."""
        c = np.zeros(6)
        c[PAIRS.index((i - 1, j - 1))] = 1.0
        return cls(c)

    def to_json(self) -> dict:
        return {"coords": self.coords.tolist()}

    @classmethod
    def from_json(cls, obj, field: str = "bivector") -> "Bivector":
        if not isinstance(obj, dict) or "coords" not in obj:
            raise SchemaError(field, "expected an object with coords")
        c = obj["coords"]
        if not isinstance(c, list) or len(c) != 6:
            raise SchemaError(f"{field}.coords", "expected 6 numbers")
        try:
            return cls(np.array(c, dtype=float))
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"{field}.coords", str(exc)) from None


def _coords(a) -> np.ndarray:
    return a.coords if isinstance(a, Bivector) else np.asarray(a, dtype=float)


def wedge1(x, y) -> Bivector:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return Bivector(x[_IU[0]] * y[_IU[1]] - x[_IU[1]] * y[_IU[0]])


def omega(P: OrientedPlane) -> Bivector:
    if P.dim != 4:
        raise ValueError("omega is defined for planes in R^4")
    return wedge1(P.u, P.v)


def inner(a, b) -> float:
    return float(_coords(a) @ _coords(b))


def star(a) -> Bivector:
    return Bivector(_STAR_SIGN * _coords(a)[_STAR_PERM])


def wedge22(a, b) -> float:
    """Coefficient of the volume form in a ^ b."""
    a, b = _coords(a), _coords(b)
    return float(a[0] * b[5] - a[1] * b[4] + a[2] * b[3]
                 + a[3] * b[2] - a[4] * b[1] + a[5] * b[0])


def pi_split(a) -> tuple[Bivector, Bivector]:
    """Return (anti-self-dual part, self-dual part)."""
    c = _coords(a)
    s = _STAR_SIGN * c[_STAR_PERM]
    return Bivector((c - s) / 2), Bivector((c + s) / 2)


def pi_minus(a) -> Bivector:
    return pi_split(a)[0]


def pi_plus(a) -> Bivector:
    return pi_split(a)[1]


def is_decomposable(a, tol: float = 1e-8) -> bool:
    c = _coords(a)
    n2 = float(c @ c)
    if math.sqrt(n2) <= tol:
        return False
    return abs(wedge22(c, c)) < tol * n2


def omega_inverse(a) -> OrientedPlane:
    a = a if isinstance(a, Bivector) else Bivector(a)
    n = a.norm()
    if abs(n - 1) > 1e-8:
        raise NotUnitNorm(f"bivector norm {n:.12g} is not 1")
    if not is_decomposable(a, 1e-8):
        raise NotDecomposable(f"<a, *a> = {wedge22(a, a):.3g}")
    U, _, _ = np.linalg.svd(a.as_matrix())
    u, v = U[:, 0], U[:, 1]
    if inner(wedge1(u, v), a) < 0:
        v = -v
    return plane(u, v)


# -- normal forms ---------------------------------------------------------------

@dataclass(frozen=True)
class DarbouxForm:
    """alpha = a * omega(P) + b * omega(Q) with P, Q meeting only at the origin."""

    a: float
    P: OrientedPlane
    b: float
    Q: OrientedPlane

    def reconstruct(self) -> Bivector:
        return self.a * omega(self.P) + self.b * omega(self.Q)

    def to_json(self) -> dict:
        return {"a": self.a, "P": self.P.to_json(), "b": self.b, "Q": self.Q.to_json()}


_ASD_FALLBACK = Bivector([0.5, 0, 0, 0, 0, -0.5])  # (e12 - e34) / 2
_SD_FALLBACK = Bivector([0.5, 0, 0, 0, 0, 0.5])    # (e12 + e34) / 2


def darboux_decompose(alpha, tol: float = 1e-12) -> DarbouxForm:
    alpha = alpha if isinstance(alpha, Bivector) else Bivector(alpha)
    e = np.eye(4)
    if alpha.norm() <= tol:
        return DarbouxForm(0.0, OrientedPlane(e[0], e[1]), 0.0, OrientedPlane(e[2], e[3]))
    minus, plus = pi_split(alpha)
    nm, np_ = minus.norm(), plus.norm()
    r = 1 / math.sqrt(2)
    hat_m = minus * (r / nm) if nm > tol else _ASD_FALLBACK
    hat_p = plus * (r / np_) if np_ > tol else _SD_FALLBACK
    a = (math.sqrt(2) * nm + math.sqrt(2) * np_) / 2
    b = (math.sqrt(2) * np_ - math.sqrt(2) * nm) / 2
    P = omega_inverse(_renormalize(hat_m + hat_p))
    Q = omega_inverse(_renormalize(-hat_m + hat_p))
    return DarbouxForm(a, P, b, Q)


def _renormalize(a: Bivector) -> Bivector:
    return a / a.norm()


B0 = np.zeros((4, 4))
B1 = np.array([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]], dtype=float)
B2 = np.array([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]], dtype=float)
FORMS = {"B0": B0, "B1": B1, "B2": B2}


def skew_normal_form(A, tol: float = 1e-10) -> tuple[np.ndarray, str]:
    """Reduce a 4x4 skew matrix by elementary congruences to B0, B1 or B2.

    Returns ``(Q, name)`` with ``Q.T @ A @ Q == FORMS[name]``.
    """
    A = np.asarray(A, dtype=float)
    if A.shape != (4, 4):
        raise NotSkew("expected a 4x4 matrix")
    scale = max(1.0, float(np.abs(A).max()))
    if np.abs(A + A.T).max() > 1e-12 * scale:
        raise NotSkew(f"A + A^T residual {np.abs(A + A.T).max():.3g}")
    m = 4
    Q = np.eye(m)
    B = (A - A.T) / 2
    blocks = 0
    for k in range(0, m, 2):
        sub = np.abs(np.triu(B[k:, k:], 1))
        if sub.size == 0 or sub.max() <= tol * scale:
            break
        i, j = np.unravel_index(np.argmax(sub), sub.shape)
        i, j = i + k, j + k
        # move the pivot to (k, k+1)
        for src, dst in ((i, k), (j, k + 1)):
            if src != dst:
                P = np.eye(m)
                P[:, [src, dst]] = P[:, [dst, src]]
                Q, B = Q @ P, P.T @ B @ P
        if B[k, k + 1] < 0:
            P = np.eye(m)
            P[:, [k, k + 1]] = P[:, [k + 1, k]]
            Q, B = Q @ P, P.T @ B @ P
        S = np.eye(m)
        S[k + 1, k + 1] = 1 / B[k, k + 1]
        Q, B = Q @ S, S.T @ B @ S
        E = np.eye(m)
        for l in range(k + 2, m):
            E[k, l] = B[k + 1, l]
            E[k + 1, l] = -B[k, l]
        Q, B = Q @ E, E.T @ B @ E
        blocks += 1
    name = ("B0", "B1", "B2")[blocks]
    return Q, name
