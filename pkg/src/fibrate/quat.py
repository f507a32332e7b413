"""Orthogonal quaternionic structures on R^{4n} and the Hopf fibrations of
S^{4n-1} by great 3-spheres that they generate.

Includes exact (integer) reproductions of the two S^7 examples: a pair of
structures that share two orthogonal 3-spheres without being equal, and an
opposite-sign pair that shares no oriented 3-sphere at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import ocs
from .errors import AmbiguousSign, NotComplexStructure, NotOrthogonal, NotQuaternionic, SchemaError
from .numkern import KernelResult, det_sign, kernel, orthogonality_defect, random_unit
from .report import Report

L_I = np.array([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
L_J = np.array([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]])
L_K = np.array([[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]])


@dataclass(frozen=True, eq=False)
class QuatStructure:
    I: ocs.ComplexStructure
    J: ocs.ComplexStructure
    K: ocs.ComplexStructure

    @property
    def dim(self) -> int:
        return self.I.dim

    @property
    def n(self) -> int:
        return self.dim // 4

    def matrices(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.I.J, self.J.J, self.K.J

    def to_json(self) -> dict:
        return {"I": self.I.to_json(), "J": self.J.to_json(), "K": self.K.to_json()}

    @classmethod
    def from_json(cls, obj, field: str = "quat", tol: float = 1e-9) -> "QuatStructure":
        from .numkern import matrix_from_json
        if not isinstance(obj, dict):
            raise SchemaError(field, "expected an object with I, J, K")
        mats = []
        for key in "IJK":
            if key not in obj:
                raise SchemaError(f"{field}.{key}", "missing")
            mats.append(matrix_from_json(obj[key], f"{field}.{key}"))
        try:
            return validate_quat(*mats, tol=tol)
        except (NotQuaternionic, ValueError) as exc:
            raise SchemaError(field, str(exc)) from None


@dataclass(frozen=True, eq=False)
class Plane4:
    """Ordered orthonormal 4-frame (columns); the order carries the orientation."""

    basis: np.ndarray

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.T


def validate_quat(I, J, K, tol: float = 1e-10, seed: int = 0) -> QuatStructure:
    mats = [np.asarray(M, dtype=float) for M in (I, J, K)]
    m = mats[0].shape[0]
    if any(M.shape != (m, m) for M in mats) or m % 4:
        raise ValueError("I, J, K must be square of one size divisible by 4")
    structs = []
    for name, M in zip("IJK", mats):
        try:
            structs.append(ocs.validate(M, tol))
        except NotComplexStructure as exc:
            raise NotQuaternionic(f"{name}: {exc.condition}", exc.residual) from None
    A, B, C = mats
    eye = np.eye(m)
    r = float(np.abs(A @ B @ C + eye).max())
    if not r < tol:
        raise NotQuaternionic("IJK+id", r)
    r = float(np.abs(A @ B - C).max())
    if not r < tol:
        raise NotQuaternionic("IJ-K", r)
    rng = np.random.default_rng(seed)
    for _ in range(10):
        p = random_unit(m, rng)
        frame = np.column_stack([p, A @ p, B @ p, C @ p])
        r = float(np.abs(frame.T @ frame - np.eye(4)).max())
        if not r < max(tol, 1e-12):
            raise NotQuaternionic("frame orthogonality", r)
    return QuatStructure(*structs)


def standard_quat(n: int = 1) -> QuatStructure:
    if n < 1:
        raise ValueError("n must be >= 1")
    eye = np.eye(n)
    return QuatStructure(*(ocs.ComplexStructure(np.kron(eye, L).astype(float)) for L in (L_I, L_J, L_K)))


def conjugate_quat(Qs: QuatStructure, T) -> QuatStructure:
    T = np.asarray(T, dtype=float)
    if orthogonality_defect(T) > 1e-10:
        raise NotOrthogonal("conjugating matrix is not orthogonal")
    return validate_quat(*(T @ M @ T.T for M in Qs.matrices()), tol=1e-9)


def fiber4(Qs: QuatStructure, p) -> Plane4:
    p = np.asarray(p, dtype=float)
    if abs(np.linalg.norm(p) - 1) > 1e-10:
        raise ValueError("p must be a unit vector")
    I, J, K = Qs.matrices()
    return Plane4(np.column_stack([p, I @ p, J @ p, K @ p]))


def invariant_4planes(Qs: QuatStructure) -> list[Plane4]:
    """Greedy decomposition into mutually orthogonal invariant 4-planes."""
    acc: list[np.ndarray] = []
    out = []
    for _ in range(Qs.n):
        v = None
        for i in range(Qs.dim):
            r = np.eye(Qs.dim)[i]
            for _ in range(2):
                for q in acc:
                    r = r - (q @ r) * q
            if np.linalg.norm(r) > 1e-6:
                v = r / np.linalg.norm(r)
                break
        frame = fiber4(Qs, v)
        out.append(frame)
        acc.extend(frame.basis.T)
    return out


def quat_sign(Qs: QuatStructure) -> int:
    s = det_sign(np.column_stack([P.basis for P in invariant_4planes(Qs)]))
    if s == 0:
        raise AmbiguousSign("degenerate sign matrix")
    factors = [ocs.sign(C) for C in (Qs.I, Qs.J, Qs.K)]
    if any(f != s for f in factors):
        raise AmbiguousSign(f"sign {s} disagrees with factor signs {factors}")
    return s


def fibers_agree(Q1: QuatStructure, Q2: QuatStructure, p, tol: float = 1e-8) -> str:
    F1, F2 = fiber4(Q1, p), fiber4(Q2, p)
    if np.abs(F1.projector() - F2.projector()).max() >= tol:
        return "disagree"
    if np.linalg.det(F1.basis.T @ F2.basis) > 0:
        return "agree_oriented"
    return "agree_unoriented_only"


def projector_distance(Q1: QuatStructure, Q2: QuatStructure, p) -> float:
    return float(np.abs(fiber4(Q1, p).projector() - fiber4(Q2, p).projector()).max())


def triple_kernel(Q1: QuatStructure, Q2: QuatStructure) -> KernelResult:
    if Q1.dim != Q2.dim:
        raise ValueError("structures act on different dimensions")
    return kernel(np.vstack([A + B for A, B in zip(Q1.matrices(), Q2.matrices())]))


def detector_q(c: float, s: float) -> np.ndarray:
    """Change of basis diag(1, -1, [[c, -s], [s, c]]) between opposite-sign frames."""
    Q = np.zeros((4, 4))
    Q[0, 0], Q[1, 1] = 1.0, -1.0
    Q[2:, 2:] = [[c, -s], [s, c]]
    return Q


def detector_witnesses(c: float, s: float) -> np.ndarray:
    """Two vectors (columns) in ker(QL + LQ) for L = L_i, L_j, L_k; at least one is nonzero."""
    return np.array([[-s, 1 + c, 0, 0], [1 - c, -s, 0, 0]], dtype=float).T


# -- the S^7 examples -------------------------------------------------------------

def counterexample_q() -> np.ndarray:
    Q = np.eye(8, dtype=int)
    Q[0, 0] = -1
    Q[3:5, 3:5] = [[0, -1], [1, 0]]
    return Q


# expected QI+ + I+Q, QJ+ + J+Q, QK+ + K+Q for the nonexistence example, and their kernels
REFERENCE_SUMS = {
    "I": np.array([
        [0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, -1, 1, 0, 0, 0],
        [0, 0, 1, 0, 0, 1, 0, 0],
        [0, 0, 1, 0, 0, -1, 0, 0],
        [0, 0, 0, 1, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, -2],
        [0, 0, 0, 0, 0, 0, 2, 0]]),
    "J": np.array([
        [0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 1, -1, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0],
        [0, -1, 0, 0, 0, 0, 1, 0],
        [0, -1, 0, 0, 0, 0, -1, 0],
        [0, 0, 0, 0, 0, 0, 0, 2],
        [0, 0, 0, 1, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, -2, 0, 0]]),
    "K": np.array([
        [0, 0, 0, 1, 1, 0, 0, 0],
        [0, 0, -2, 0, 0, 0, 0, 0],
        [0, 2, 0, 0, 0, 0, 0, 0],
        [-1, 0, 0, 0, 0, 0, 0, 1],
        [1, 0, 0, 0, 0, 0, 0, -1],
        [0, 0, 0, 0, 0, 0, -2, 0],
        [0, 0, 0, 0, 0, 2, 0, 0],
        [0, 0, 0, 1, 1, 0, 0, 0]]),
}


def _e(*idx_coef) -> np.ndarray:
    v = np.zeros(8, dtype=int)
    for i, c in idx_coef:
        v[i - 1] += c
    return v


REFERENCE_KERNELS = {
    "I": np.column_stack([_e((1, 1)), _e((2, 1))]),
    "J": np.column_stack([_e((1, 1)), _e((3, 1))]),
    "K": np.column_stack([_e((1, 1), (8, 1)), _e((4, 1), (5, -1))]),
}


def exact_rank(M) -> int:
    """Rank of an integer matrix by fraction-exact Gaussian elimination."""
    rows = [[Fraction(int(x)) for x in row] for row in np.asarray(M).tolist()]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def s3_counterexample() -> Report:
    rep = Report("s7-nonexistence", 0, {"numeric_kernel_rel": 1e-7})
    Q = counterexample_q()
    plus = standard_quat(2)
    plus_int = {name: np.kron(np.eye(2, dtype=int), L) for name, L in zip("IJK", (L_I, L_J, L_K))}
    detQ = round(np.linalg.det(Q))
    rep.add("Q orthogonal with det -1", bool((Q.T @ Q == np.eye(8, dtype=int)).all()) and detQ == -1,
            f"det Q = {detQ}", det=detQ)
    stacked = []
    for name in "IJK":
        L = plus_int[name]
        S = Q @ L + L @ Q
        stacked.append(S)
        rep.add(f"Q{name}+ + {name}+Q matches reference matrix", bool((S == REFERENCE_SUMS[name]).all()),
                "entrywise integer mismatch")
        Kp = REFERENCE_KERNELS[name]
        resid = int(np.abs(S @ Kp).max())
        rank = exact_rank(S)
        span_rank = exact_rank(Kp)
        ok = resid == 0 and rank == 6 and span_rank == 2
        rep.add(f"ker(Q{name}+ + {name}+Q) = reference span", ok,
                f"residual {resid}, rank {rank}, basis rank {span_rank}",
                residual=resid, rank=rank, kernel_dim=8 - rank)
    full = exact_rank(np.vstack(stacked))
    rep.add("triple intersection trivial", full == 8, f"stacked rank {full}", stacked_rank=full)

    minus = conjugate_quat(plus, Q)
    tk = triple_kernel(plus, minus)
    rep.add("triple_kernel of the structures is 0-dimensional", tk.dimension == 0,
            f"dimension {tk.dimension}", dimension=tk.dimension)
    s1, s2 = quat_sign(plus), quat_sign(minus)
    rep.add("structures have opposite sign", s1 == 1 and s2 == -1, f"signs {s1}, {s2}",
            sign_plus=s1, sign_minus=s2)
    return rep.finish()


def nonuniqueness_pair() -> tuple[QuatStructure, QuatStructure]:
    Z = np.zeros((4, 4))
    T = np.block([[np.eye(4), Z], [Z, L_I]])
    return standard_quat(2), conjugate_quat(standard_quat(2), T)


def nonuniqueness_report() -> Report:
    rep = Report("s7-nonuniqueness", 0, {"projector": 1e-8})
    Q1, Q2 = nonuniqueness_pair()
    Z = np.zeros((4, 4), dtype=int)
    expected = (np.block([[L_I, Z], [Z, L_I]]), np.block([[L_J, Z], [Z, -L_J]]),
                np.block([[L_K, Z], [Z, -L_K]]))
    exact = all(np.array_equal(M, E) for M, E in zip(Q2.matrices(), expected))
    rep.add("conjugated structure equals reference (I2, J2, K2)", exact, "integer mismatch")
    e = np.eye(8)
    p, q = e[0], e[4]
    r = (e[0] + e[4]) / np.sqrt(2)
    rep.add("shared fiber P at p=(1,0)", fibers_agree(Q1, Q2, p) == "agree_oriented",
            fibers_agree(Q1, Q2, p))
    rep.add("shared fiber Q at q=(0,1)", fibers_agree(Q1, Q2, q) == "agree_oriented",
            fibers_agree(Q1, Q2, q))
    Pp, Pq = fiber4(Q1, p), fiber4(Q1, q)
    rep.add("P and Q orthogonal", float(np.abs(Pp.basis.T @ Pq.basis).max()) < 1e-12)
    d = projector_distance(Q1, Q2, r)
    rep.add("R1 != R2 at r=(1,1)/sqrt2", d > 0.1 and fibers_agree(Q1, Q2, r) == "disagree",
            f"projector distance {d:.3g}", projector_distance=d)
    loc = [fibers_agree(Q1, Q2, x) != "disagree" for x in (p, q, r)]
    rep.add("agreement locus is not a linear subspace", loc == [True, True, False],
            f"agreement at e1, e5, (e1+e5)/sqrt2: {loc}")
    return rep.finish()


def shared_uniqueness_probe(Q1: QuatStructure, Q2: QuatStructure, samples: int = 300,
                            seed: int = 0) -> Report:
    """Sample points and collect oriented fiber agreements of an opposite-sign pair.

    Candidates are uniform on the sphere plus uniform inside each of the
    invariant 4-planes of Q1 (uniform sampling alone almost surely misses a
    shared fiber). Finding none is only consistent with nonexistence; the
    report never claims more.
    """
    if quat_sign(Q1) == quat_sign(Q2):
        raise ValueError("probe needs structures of opposite sign")
    rep = Report("shared-3-sphere-probe", seed, {"projector": 1e-8})
    rng = np.random.default_rng(seed)
    cands = [random_unit(Q1.dim, rng) for _ in range(samples)]
    for P in invariant_4planes(Q1):
        for _ in range(max(1, samples // (2 * Q1.n))):
            cands.append(P.basis @ random_unit(4, rng))
    hits = [x for x in cands if fibers_agree(Q1, Q2, x) == "agree_oriented"]
    projs = [fiber4(Q1, x).projector() for x in hits]
    spread = max((float(np.abs(a - projs[0]).max()) for a in projs), default=0.0)
    if hits:
        rep.add("all oriented agreements lie on one 3-sphere", spread < 1e-8,
                f"{len(hits)} agreements, projector spread {spread:.3g}",
                agreements=len(hits), spread=spread, candidates=len(cands))
    else:
        rep.add("no oriented agreement found (consistent with nonexistence)", True,
                f"0 of {len(cands)} candidates agree", agreements=0, candidates=len(cands))
    return rep.finish()
