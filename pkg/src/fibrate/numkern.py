"""Dense real linear algebra used by the geometry modules.

Matrices are plain ``numpy`` float64 arrays. Everything here is a pure
function; randomness is always driven by an explicit integer seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AmbiguousRank, DependentInput, SchemaError

KERNEL_TOL_REL = 1e-7
MIN_SPECTRAL_GAP = 1e3


@dataclass(frozen=True)
class KernelResult:
    """Orthonormal kernel basis (as columns) plus a rank-separation diagnostic."""

    basis: np.ndarray
    dimension: int
    spectral_gap: float

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.T


def orthonormalize(vectors, tol: float = 1e-10, full_rank: bool = False) -> list[np.ndarray]:
    """Modified Gram-Schmidt with one re-orthogonalization pass.

    Vectors whose residual falls below ``tol`` are dropped, unless
    ``full_rank`` is set, in which case :class:`DependentInput` is raised.
    """
    vecs = [np.asarray(v, dtype=float) for v in vectors]
    if not vecs:
        raise ValueError("need at least one vector")
    dim = vecs[0].shape
    out: list[np.ndarray] = []
    for i, v in enumerate(vecs):
        if v.shape != dim:
            raise ValueError("vectors must share a dimension")
        r = v.copy()
        for _ in range(2):
            for q in out:
                r -= (q @ r) * q
        norm = np.linalg.norm(r)
        if norm < tol:
            if full_rank:
                raise DependentInput(f"vector {i} has residual norm {norm:.3g}")
            continue
        out.append(r / norm)
    return out


def kernel(M, tol_rel: float = KERNEL_TOL_REL, check_gap: bool = True) -> KernelResult:
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    rows, cols = M.shape
    _, s, vh = np.linalg.svd(M)
    # pad so there is one singular value per column
    s_full = np.zeros(cols)
    s_full[: len(s)] = s
    smax = s_full.max() if cols else 0.0
    thresh = tol_rel * max(1.0, smax)
    null = s_full < thresh
    dim = int(null.sum())
    kept, dropped = s_full[~null], s_full[null]
    if dim == 0 or dim == cols or dropped.max() == 0.0:
        gap = math.inf
    else:
        gap = float(kept.min() / dropped.max())
    if check_gap and gap < MIN_SPECTRAL_GAP:
        raise AmbiguousRank(gap)
    basis = vh[cols - dim:].T.copy() if dim else np.zeros((cols, 0))
    return KernelResult(basis=basis, dimension=dim, spectral_gap=gap)


def det_sign(M) -> int:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("det_sign needs a square matrix")
    scale = max(1.0, float(np.prod(np.linalg.norm(M, axis=1))))
    d = np.linalg.det(M)
    if abs(d) < 1e-10 * scale:
        return 0
    return 1 if d > 0 else -1


def random_orthogonal(m: int, want_sign: int = 1, seed: int = 0) -> np.ndarray:
    """Haar-distributed orthogonal matrix with prescribed determinant sign."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if want_sign not in (1, -1):
        raise ValueError("want_sign must be +1 or -1")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((m, m))
    q, r = np.linalg.qr(g)
    q = q * np.where(np.diag(r) < 0, -1.0, 1.0)
    if np.linalg.det(q) * want_sign < 0:
        q[:, -1] = -q[:, -1]
    return q


def random_unit(m: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(m)
    return v / np.linalg.norm(v)


def orthogonality_defect(T) -> float:
    T = np.asarray(T, dtype=float)
    return float(np.abs(T.T @ T - np.eye(T.shape[1])).max())


def complement_frame(p, tol: float = 1e-6) -> np.ndarray:
    """Orthonormal frame (as columns) of the orthogonal complement of ``p``.

    Built by Gram-Schmidt on the standard basis so the result depends only
    on ``p``, and oriented so that ``[p | frame]`` has positive determinant.
    """
    p = np.asarray(p, dtype=float)
    m = p.size
    p = p / np.linalg.norm(p)
    cols = [p]
    for i in range(m):
        r = np.eye(m)[i]
        for _ in range(2):
            for q in cols:
                r = r - (q @ r) * q
        n = np.linalg.norm(r)
        if n > tol:
            cols.append(r / n)
        if len(cols) == m:
            break
    F = np.column_stack(cols[1:])
    if np.linalg.det(np.column_stack([p, F])) < 0:
        F[:, -1] = -F[:, -1]
    return F


# -- JSON ---------------------------------------------------------------------

def _as_number(x):
    xf = float(x)
    return int(xf) if xf.is_integer() and abs(xf) < 2**53 else xf


def matrix_to_json(M) -> dict:
    M = np.atleast_2d(np.asarray(M, dtype=float))
    rows, cols = M.shape
    return {"rows": rows, "cols": cols, "data": [_as_number(x) for x in M.ravel()]}


def matrix_from_json(obj, field: str = "matrix") -> np.ndarray:
    if not isinstance(obj, dict):
        raise SchemaError(field, "expected an object with rows/cols/data")
    for key in ("rows", "cols", "data"):
        if key not in obj:
            raise SchemaError(f"{field}.{key}", "missing")
    rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 0 or cols < 0:
        raise SchemaError(f"{field}.rows", "rows and cols must be non-negative integers")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise SchemaError(f"{field}.data", f"expected {rows * cols} entries")
    try:
        arr = np.array(data, dtype=float)
    except (TypeError, ValueError):
        raise SchemaError(f"{field}.data", "entries must be numbers") from None
    if not np.all(np.isfinite(arr)):
        raise SchemaError(f"{field}.data", "entries must be finite")
    return arr.reshape(rows, cols)
