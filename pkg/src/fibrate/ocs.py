"""Orthogonal complex structures on R^{2n}.

A complex structure is stored as a validated 2n x 2n matrix J with
J^2 = -id, J^T = -J and J J^T = id. The sign of J is the sign of
det[v_1, J v_1, ..., v_n, J v_n] for an orthogonal decomposition of R^{2n}
into J-invariant planes span(v_k, J v_k).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AmbiguousSign, NotComplexStructure, NotOrthogonal, SchemaError
from .numkern import (KernelResult, det_sign, kernel, matrix_from_json, matrix_to_json,
                      orthogonality_defect, random_orthogonal)
from .planes import OrientedPlane

VALID_TOL = 1e-10
I2 = np.array([[0.0, -1.0], [1.0, 0.0]])


@dataclass(frozen=True, eq=False)
class ComplexStructure:
    J: np.ndarray

    @property
    def n(self) -> int:
        return self.J.shape[0] // 2

    @property
    def dim(self) -> int:
        return self.J.shape[0]

    def __neg__(self) -> "ComplexStructure":
        return ComplexStructure(-self.J)

    def to_json(self) -> dict:
        return {**matrix_to_json(self.J), "n": self.n}

    @classmethod
    def from_json(cls, obj, field: str = "J", tol: float = 1e-9) -> "ComplexStructure":
        M = matrix_from_json(obj, field)
        if "n" in obj and obj["n"] * 2 != M.shape[0]:
            raise SchemaError(f"{field}.n", "does not match the matrix size")
        try:
            return validate(M, tol)
        except (NotComplexStructure, ValueError) as exc:
            raise SchemaError(field, str(exc)) from None


def residuals(J) -> dict[str, float]:
    J = np.asarray(J, dtype=float)
    eye = np.eye(J.shape[0])
    return {
        "J^2+id": float(np.abs(J @ J + eye).max()),
        "J+J^T": float(np.abs(J + J.T).max()),
        "JJ^T-id": float(np.abs(J @ J.T - eye).max()),
    }


def validate(J, tol: float = VALID_TOL) -> ComplexStructure:
    J = np.array(J, dtype=float)
    if J.ndim != 2 or J.shape[0] != J.shape[1] or J.shape[0] % 2:
        raise ValueError("a complex structure is a square matrix of even size")
    # all three conditions are checked even though any two imply the third
    for name, r in residuals(J).items():
        if not r < tol:
            raise NotComplexStructure(name, r)
    return ComplexStructure(J)


def standard(n: int) -> ComplexStructure:
    if n < 1:
        raise ValueError("n must be >= 1")
    return ComplexStructure(np.kron(np.eye(n), I2))


def conjugate(J: ComplexStructure, T) -> ComplexStructure:
    T = np.asarray(T, dtype=float)
    if orthogonality_defect(T) > 1e-10:
        raise NotOrthogonal("conjugating matrix is not orthogonal")
    return validate(T @ J.J @ T.T, 1e-9)


def _seed_vector(span_basis: list[np.ndarray], m: int) -> np.ndarray:
    """First standard basis vector with a substantial residual against the span."""
    for i in range(m):
        r = np.eye(m)[i]
        for _ in range(2):
            for q in span_basis:
                r = r - (q @ r) * q
        nr = np.linalg.norm(r)
        if nr > 1e-6:
            return r / nr
    raise RuntimeError("span already fills the space")


def invariant_decomposition(J: ComplexStructure) -> list[OrientedPlane]:
    """Mutually orthogonal J-invariant planes span(v_k, J v_k) covering R^{2n}."""
    m = J.dim
    acc: list[np.ndarray] = []
    planes = []
    for _ in range(J.n):
        v = _seed_vector(acc, m)
        Jv = J.J @ v
        # J v is already unit and orthogonal to v; polish against drift
        Jv = Jv - (v @ Jv) * v
        Jv /= np.linalg.norm(Jv)
        planes.append(OrientedPlane(v, Jv))
        acc.extend([v, Jv])
    return planes


def sign(J: ComplexStructure) -> int:
    cols = []
    for P in invariant_decomposition(J):
        cols.extend([P.u, J.J @ P.u])
    s = det_sign(np.column_stack(cols))
    if s == 0:
        raise AmbiguousSign("degenerate sign matrix")
    return s


def random_ocs(n: int, want_sign: int = 1, seed: int = 0) -> ComplexStructure:
    return conjugate(standard(n), random_orthogonal(2 * n, want_sign, seed))


def conjugator_to_standard(J: ComplexStructure) -> np.ndarray:
    """Orthogonal T with T^T J T equal to the standard structure."""
    cols = []
    for P in invariant_decomposition(J):
        cols.extend([P.u, P.v])
    return np.column_stack(cols)


def fiber_plane(J: ComplexStructure, p) -> OrientedPlane:
    p = np.asarray(p, dtype=float)
    if abs(np.linalg.norm(p) - 1) > 1e-10:
        raise ValueError("p must be a unit vector")
    return OrientedPlane(p, J.J @ p)


def agreement_space(J: ComplexStructure, K: ComplexStructure, mode: str = "difference",
                    check_invariance: bool = True) -> KernelResult:
    """ker(J - K) (shared oriented fibers) or ker(J + K)."""
    if J.dim != K.dim:
        raise ValueError("structures act on different dimensions")
    if mode not in ("difference", "sum"):
        raise ValueError("mode must be 'difference' or 'sum'")
    M = J.J - K.J if mode == "difference" else J.J + K.J
    res = kernel(M)
    if check_invariance and res.dimension:
        leak = kernel_invariance_residual(J, res)
        if leak > 1e-8:
            raise RuntimeError(f"kernel is not J-invariant (residual {leak:.3g})")
    return res


def kernel_invariance_residual(J: ComplexStructure, res: KernelResult) -> float:
    """max-norm of (id - P) J P for the kernel projector P."""
    Pk = res.projector()
    return float(np.abs((np.eye(J.dim) - Pk) @ J.J @ Pk).max())


@dataclass(frozen=True, eq=False)
class PairedBases:
    """Bases E, F (as matrix columns) with E[:, 0] = F[:, 0] = p, J standard in E,
    K standard in F, and F = E Q for the block-rotation matrix Q."""

    E: np.ndarray
    F: np.ndarray
    Q: np.ndarray
    angles: tuple[tuple[float, float], ...]
    corner: int

    def pattern(self) -> np.ndarray:
        """The ideal change-of-basis matrix built from ``angles`` and ``corner``."""
        m = self.Q.shape[0]
        ideal = np.zeros((m, m))
        ideal[0, 0] = 1.0
        for k, (c, s) in enumerate(self.angles):
            i = 2 * k + 1
            ideal[i:i + 2, i:i + 2] = [[c, -s], [s, c]]
        ideal[m - 1, m - 1] = self.corner
        return ideal

    def pattern_residual(self) -> float:
        return float(np.abs(self.Q - self.pattern()).max())

    def to_json(self) -> dict:
        return {
            "E": matrix_to_json(self.E), "F": matrix_to_json(self.F), "Q": matrix_to_json(self.Q),
            "angles": [list(a) for a in self.angles], "corner": self.corner,
        }


def _mgs(cols: list[np.ndarray]) -> list[np.ndarray]:
    out = []
    for v in cols:
        r = v.copy()
        for q in out:
            r -= (q @ r) * q
        out.append(r / np.linalg.norm(r))
    return out


def paired_bases(J: ComplexStructure, K: ComplexStructure, p) -> PairedBases:
    """Inductive construction of E, F. Each step sets e_{2k} = J e_{2k-1},
    f_{2k} = K f_{2k-1}, picks e_{2k+1} in span(e_{2k}, f_{2k}) when those are
    independent (an arbitrary fresh direction otherwise), and rotates it into
    f_{2k+1}."""
    if J.dim != K.dim:
        raise ValueError("structures act on different dimensions")
    p = np.asarray(p, dtype=float)
    if abs(np.linalg.norm(p) - 1) > 1e-10:
        raise ValueError("p must be a unit vector")
    n = J.n
    E, F = [p.copy()], [p.copy()]
    angles = []
    for k in range(1, n + 1):
        E.append(J.J @ E[-1])
        F.append(K.J @ F[-1])
        E, F = _mgs(E), _mgs(F)
        if k == n:
            break
        e2k, f2k = E[-1], F[-1]
        c = float(np.clip(f2k @ e2k, -1.0, 1.0))
        r = f2k - c * e2k
        if np.linalg.norm(r) >= 1e-8:
            e_next = r / np.linalg.norm(r)
        else:
            e_next = _seed_vector(E, J.dim)
        s = math.sqrt(max(0.0, 1.0 - c * c))
        E.append(e_next)
        F.append(-s * e2k + c * e_next)
        E, F = _mgs(E), _mgs(F)
        angles.append((c, s))
    Em, Fm = np.column_stack(E), np.column_stack(F)
    Q = Em.T @ Fm
    corner = 1 if Q[-1, -1] > 0 else -1
    return PairedBases(Em, Fm, Q, tuple(angles), corner)


def block_structure(signs) -> ComplexStructure:
    """Block-diagonal structure with blocks +I2 / -I2 in the given order."""
    signs = list(signs)
    J = np.zeros((2 * len(signs), 2 * len(signs)))
    for k, s in enumerate(signs):
        J[2 * k:2 * k + 2, 2 * k:2 * k + 2] = s * I2
    return ComplexStructure(J)


# The four block pairs of the parity/sign chart: (label, n, J blocks, K blocks).
CHART = (
    ("n odd, same sign", 3, (1, 1, 1), (1, 1, 1)),
    ("n odd, opposite signs", 3, (1, 1, 1), (-1, 1, 1)),
    ("n even, same sign", 2, (1, 1), (1, 1)),
    ("n even, opposite signs", 4, (1, 1, 1, 1), (-1, 1, 1, 1)),
)
