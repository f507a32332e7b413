"""Great-circle fibrations of S^3.

Two kinds of fibration are represented: Hopf fibrations, given by an
orthogonal complex structure J on R^4, and graph fibrations, given by a
basepoint p, a distance-decreasing map f of the unit sphere of p-perp,
and a chirality. A positive graph fibration consists of the planes whose
omega is psi_{p-}(v) + psi_{p+}(f(v)); a negative one swaps the two sides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import ocs
from .errors import DegenerateSampling, NoConvergence, NotLinear, SchemaError
from .exterior import Bivector, omega, omega_inverse, pi_split
from .grassmann import orthogonal_complement, psi, psi_matrix, theta_pm
from .numkern import complement_frame, det_sign, random_orthogonal, random_unit
from .planes import OrientedPlane, plane_distance
from .report import Report

SAME_FIBER = 1e-6


def geodesic(a, b) -> np.ndarray:
    """Row-wise great-circle distance between unit vectors."""
    a = np.atleast_2d(a)
    b = np.atleast_2d(b)
    return 2.0 * np.arctan2(np.linalg.norm(a - b, axis=-1), np.linalg.norm(a + b, axis=-1))


@dataclass(frozen=True, eq=False)
class SphereMap:
    """Self-map of the unit 2-sphere, in frame coordinates of p-perp.

    ``constant`` sends everything to ``c``. ``contraction`` first rotates
    w to R w, then moves it to the point at distance lam * sin(r) from c
    along the geodesic from c toward R w, where r = d(c, R w). This has
    Lipschitz constant lam everywhere, including at the antipode of c.
    """

    kind: str
    c: np.ndarray
    lam: float = 0.0
    rotation: np.ndarray = field(default_factory=lambda: np.eye(3))

    def __post_init__(self):
        if self.kind not in ("constant", "contraction"):
            raise ValueError(f"unknown map kind {self.kind!r}")
        c = np.asarray(self.c, dtype=float)
        if c.shape != (3,) or abs(np.linalg.norm(c) - 1) > 1e-9:
            raise ValueError("c must be a unit vector in R^3")
        R = np.asarray(self.rotation, dtype=float)
        if R.shape != (3, 3) or np.abs(R.T @ R - np.eye(3)).max() > 1e-9:
            raise ValueError("rotation must be a 3x3 orthogonal matrix")
        if not self.lam >= 0:
            raise ValueError("lambda must be non-negative")
        object.__setattr__(self, "c", c / np.linalg.norm(c))
        object.__setattr__(self, "rotation", R)
        object.__setattr__(self, "lam", float(self.lam))

    @classmethod
    def constant(cls, c) -> "SphereMap":
        return cls("constant", c)

    @classmethod
    def contraction(cls, c, lam: float, rotation=None) -> "SphereMap":
        return cls("contraction", c, lam, np.eye(3) if rotation is None else rotation)

    def __call__(self, w) -> np.ndarray:
        w = np.asarray(w, dtype=float)
        W = np.atleast_2d(w)
        if self.kind == "constant" or self.lam == 0.0:
            out = np.broadcast_to(self.c, W.shape).copy()
        else:
            Rw = W @ self.rotation.T
            t = Rw - np.outer(Rw @ self.c, self.c)
            st = np.linalg.norm(t, axis=1)
            ang = self.lam * st
            safe = np.where(st > 0, st, 1.0)
            out = np.outer(np.cos(ang), self.c) + (np.sin(ang) / safe)[:, None] * t
            out /= np.linalg.norm(out, axis=1)[:, None]
        return out if w.ndim == 2 else out[0]

    def to_json(self) -> dict:
        d = {"kind": self.kind, "c": self.c.tolist()}
        if self.kind == "contraction":
            d["lambda"] = self.lam
            d["rotation"] = self.rotation.tolist()
        return d

    @classmethod
    def from_json(cls, obj, field: str = "map") -> "SphereMap":
        if not isinstance(obj, dict):
            raise SchemaError(field, "expected an object")
        kind = obj.get("kind")
        if kind not in ("constant", "contraction"):
            raise SchemaError(f"{field}.kind", "must be 'constant' or 'contraction'")
        try:
            c = np.array(obj["c"], dtype=float)
        except KeyError:
            raise SchemaError(f"{field}.c", "missing") from None
        except (TypeError, ValueError):
            raise SchemaError(f"{field}.c", "must be 3 numbers") from None
        try:
            if kind == "constant":
                return cls.constant(c)
            if "lambda" not in obj:
                raise SchemaError(f"{field}.lambda", "missing")
            lam = obj["lambda"]
            if not isinstance(lam, (int, float)) or isinstance(lam, bool):
                raise SchemaError(f"{field}.lambda", "must be a number")
            rot = np.array(obj.get("rotation", np.eye(3).tolist()), dtype=float)
            return cls.contraction(c, lam, rot)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, SchemaError):
                raise
            raise SchemaError(field, str(exc)) from None


def is_distance_decreasing(f: SphereMap, samples: int = 2000, seed: int = 0) -> tuple[bool, float]:
    """Sampled Lipschitz ratio d(f(u), f(v)) / d(u, v) over near and far pairs."""
    if samples < 2:
        raise ValueError("need at least 2 samples")
    rng = np.random.default_rng(seed)
    U = rng.standard_normal((samples, 3))
    U /= np.linalg.norm(U, axis=1)[:, None]
    far = U[rng.permutation(samples)]
    near = U + rng.standard_normal((samples, 3)) * 10.0 ** rng.uniform(-6, -1, (samples, 1))
    near /= np.linalg.norm(near, axis=1)[:, None]
    A = np.vstack([U, U])
    B = np.vstack([far, near])
    d = geodesic(A, B)
    keep = d > 1e-9
    ratios = geodesic(f(A[keep]), f(B[keep])) / d[keep]
    worst = float(ratios.max()) if ratios.size else 0.0
    return worst < 1 - 1e-6, worst


@dataclass(frozen=True, eq=False)
class Fibration:
    variant: str
    J: ocs.ComplexStructure | None = None
    p: np.ndarray | None = None
    f: SphereMap | None = None
    chirality: str = "positive"

    @classmethod
    def hopf(cls, J) -> "Fibration":
        J = J if isinstance(J, ocs.ComplexStructure) else ocs.validate(J)
        if J.dim != 4:
            raise ValueError("great-circle fibrations here live on S^3")
        return cls("hopf", J=J)

    @classmethod
    def graph(cls, p, f: SphereMap, chirality: str = "positive", certify: bool = True) -> "Fibration":
        """Graph fibration; ``certify=False`` skips the distance-decreasing check."""
        p = np.asarray(p, dtype=float)
        if p.shape != (4,) or abs(np.linalg.norm(p) - 1) > 1e-9:
            raise ValueError("p must be a unit vector in R^4")
        if chirality not in ("positive", "negative"):
            raise ValueError("chirality must be 'positive' or 'negative'")
        if certify:
            ok, worst = is_distance_decreasing(f, 2000, 0)
            if not ok:
                raise ValueError(f"map is not distance-decreasing (sampled ratio {worst:.4g})")
        return cls("graph", p=p / np.linalg.norm(p), f=f, chirality=chirality)

    @property
    def frame(self) -> np.ndarray:
        return complement_frame(self.p)

    def side_matrices(self) -> tuple[np.ndarray, np.ndarray]:
        """6x3 matrices taking frame coordinates to psi_{p-} and psi_{p+}."""
        F = self.frame
        return psi_matrix(self.p, "minus") @ F, psi_matrix(self.p, "plus") @ F

    def graph_omegas(self, W) -> np.ndarray:
        """omega of the graph planes parametrized by unit vectors W (rows, frame coords)."""
        Am, Ap = self.side_matrices()
        W = np.atleast_2d(W)
        fW = self.f(W)
        if self.chirality == "positive":
            return W @ Am.T + fW @ Ap.T
        return fW @ Am.T + W @ Ap.T

    def graph_plane(self, w) -> OrientedPlane:
        om = self.graph_omegas(w)[0]
        return omega_inverse(om / np.linalg.norm(om))

    def to_json(self) -> dict:
        if self.variant == "hopf":
            return {"schema": 1, "variant": "hopf", "J": self.J.to_json()}
        return {"schema": 1, "variant": "graph", "p": self.p.tolist(),
                "chirality": self.chirality, "map": self.f.to_json()}

    @classmethod
    def from_json(cls, obj, field: str = "spec") -> "Fibration":
        if not isinstance(obj, dict):
            raise SchemaError(field, "expected an object")
        variant = obj.get("variant")
        if variant == "hopf":
            if "J" not in obj:
                raise SchemaError(f"{field}.J", "missing")
            J = ocs.ComplexStructure.from_json(obj["J"], f"{field}.J")
            if J.dim != 4:
                raise SchemaError(f"{field}.J", "must be 4x4")
            return cls.hopf(J)
        if variant == "graph":
            try:
                p = np.array(obj["p"], dtype=float)
            except KeyError:
                raise SchemaError(f"{field}.p", "missing") from None
            except (TypeError, ValueError):
                raise SchemaError(f"{field}.p", "must be 4 numbers") from None
            if p.shape != (4,) or not np.all(np.isfinite(p)) or np.linalg.norm(p) == 0:
                raise SchemaError(f"{field}.p", "must be a nonzero vector of 4 numbers")
            chir = obj.get("chirality", "positive")
            if chir not in ("positive", "negative"):
                raise SchemaError(f"{field}.chirality", "must be 'positive' or 'negative'")
            if "map" not in obj:
                raise SchemaError(f"{field}.map", "missing")
            f = SphereMap.from_json(obj["map"], f"{field}.map")
            try:
                return cls.graph(p / np.linalg.norm(p), f, chir)
            except ValueError as exc:
                raise SchemaError(f"{field}.map", str(exc)) from None
        raise SchemaError(f"{field}.variant", "must be 'hopf' or 'graph'")


def _unit(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if abs(np.linalg.norm(x) - 1) > 1e-9:
        raise ValueError("expected a unit vector")
    return x


def fiber_lookup(F: Fibration, X, eps: float = 1e-12, max_iter: int = 10_000) -> list[OrientedPlane]:
    """Fiber planes through each row of X (all unit vectors in R^4).

    For graph fibrations this iterates a -> g_x^{-1}(fhat(a)) on the
    2-sphere of the source side, where g_x is the isometry whose graph is
    the set of planes through x; it is a contraction, so it converges to
    the unique fixed point from any start.
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if F.variant == "hopf":
        return [ocs.fiber_plane(F.J, x / np.linalg.norm(x)) for x in X]
    Am, Ap = F.side_matrices()
    positive = F.chirality == "positive"
    src, dst = (Am, Ap) if positive else (Ap, Am)
    # per-point maps from the target sphere back to the source sphere
    Mm = np.stack([psi_matrix(x, "minus") for x in X])
    Mp = np.stack([psi_matrix(x, "plus") for x in X])
    G = 2 * (np.einsum("nij,nkj->nik", Mm, Mp) if positive else np.einsum("nij,nkj->nik", Mp, Mm))
    r = 1 / math.sqrt(2)

    def fhat(a):
        return F.f(2 * a @ src) @ dst.T

    a = np.tile(src[:, 0], (len(X), 1))
    active = np.ones(len(X), dtype=bool)
    for _ in range(max_iter):
        idx = np.nonzero(active)[0]
        nxt = np.einsum("nij,nj->ni", G[idx], fhat(a[idx]))
        nxt *= r / np.linalg.norm(nxt, axis=1)[:, None]
        step = np.linalg.norm(nxt - a[idx], axis=1)
        a[idx] = nxt
        active[idx[step < eps]] = False
        if not active.any():
            break
    else:
        raise NoConvergence(f"{int(active.sum())} of {len(X)} lookups did not converge in {max_iter} steps")
    om = a + fhat(a)
    return [omega_inverse(o / np.linalg.norm(o)) for o in om]


def fiber_of(F: Fibration, x, eps: float = 1e-12, max_iter: int = 10_000) -> OrientedPlane:
    return fiber_lookup(F, [_unit(x)], eps, max_iter)[0]


def graph_residual(F: Fibration, P: OrientedPlane) -> float:
    """Distance of omega(P) from the graph of the fibration's map."""
    Am, Ap = F.side_matrices()
    m, pl = pi_split(omega(P))
    if F.chirality == "positive":
        w = 2 * m.coords @ Am
        return float(np.linalg.norm(pl.coords - F.f(w) @ Ap.T))
    w = 2 * pl.coords @ Ap
    return float(np.linalg.norm(m.coords - F.f(w) @ Am.T))


def _rotate_in(P: OrientedPlane, x) -> np.ndarray:
    a, b = x @ P.u, x @ P.v
    return a * P.v - b * P.u


def rotate90(F: Fibration, x) -> np.ndarray:
    x = _unit(x)
    if F.variant == "hopf":
        return F.J.J @ x
    return _rotate_in(fiber_of(F, x), x)


def rotate90_many(F: Fibration, X) -> np.ndarray:
    X = np.atleast_2d(X)
    if F.variant == "hopf":
        return X @ F.J.J.T
    return np.array([_rotate_in(P, x) for P, x in zip(fiber_lookup(F, X), X)])


def fibration_sign(F: Fibration, seed: int = 0) -> int:
    rng = np.random.default_rng(seed)
    p = random_unit(4, rng)
    Pp = fiber_of(F, p)
    for _ in range(100):
        q = random_unit(4, rng)
        Pq = fiber_of(F, q)
        if plane_distance(Pp, Pq) > SAME_FIBER:
            s = det_sign(np.column_stack([p, _rotate_in(Pp, p), q, _rotate_in(Pq, q)]))
            if s != 0:
                return s
    raise DegenerateSampling("could not find a point off the first fiber")


def phi_p(p, u, v) -> OrientedPlane:
    """The plane whose omega is psi_{p-}(u) + psi_{p+}(v)."""
    om = psi(p, u, "minus") + psi(p, v, "plus")
    return omega_inverse(om / om.norm())


def hopf_through(P: OrientedPlane, want_sign: int = 1) -> ocs.ComplexStructure:
    """The Hopf structure of the given sign that rotates P.u into P.v."""
    if want_sign not in (1, -1):
        raise ValueError("want_sign must be +1 or -1")
    C = orthogonal_complement(P)
    T = np.column_stack([P.u, P.v, C.u, want_sign * C.v])
    return ocs.conjugate(ocs.standard(2), T)


def hopf_slice_check(J: ocs.ComplexStructure, samples: int = 100, seed: int = 0):
    """Return (side, point, spread): the constant half of omega over the fibers."""
    rng = np.random.default_rng(seed)
    side = "plus" if ocs.sign(J) == 1 else "minus"
    comps = []
    for _ in range(samples):
        x = random_unit(4, rng)
        m, pl = pi_split(omega(ocs.fiber_plane(J, x)))
        comps.append((pl if side == "plus" else m).coords)
    comps = np.array(comps)
    spread = float(np.linalg.norm(comps - comps[0], axis=1).max())
    return side, Bivector(comps.mean(axis=0)), spread


def extract_linear_structure(F: Fibration, samples: int = 40, seed: int = 0) -> ocs.ComplexStructure:
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((samples, 4))
    X /= np.linalg.norm(X, axis=1)[:, None]
    Y = rotate90_many(F, X)
    Mt, *_ = np.linalg.lstsq(X, Y, rcond=None)
    resid = float(np.abs(X @ Mt - Y).max())
    if resid > 1e-6:
        raise NotLinear(resid)
    return ocs.validate(Mt.T, 1e-8)


def verify_fibration(F: Fibration, samples: int = 50, seed: int = 0) -> Report:
    rep = Report(f"fibration/{F.variant}", seed,
                 {"containment": 1e-7, "graph": 1e-7, "theta_gap": 1e-9, "same_fiber": SAME_FIBER})
    rng = np.random.default_rng(seed)

    # disjointness: theta_+ - theta_- never vanishes and keeps one sign
    if F.variant == "hopf":
        X = rng.standard_normal((samples, 4))
        X /= np.linalg.norm(X, axis=1)[:, None]
        planes = [ocs.fiber_plane(F.J, x) for x in X]
    else:
        W = rng.standard_normal((samples, 3))
        W /= np.linalg.norm(W, axis=1)[:, None]
        planes = [omega_inverse(o / np.linalg.norm(o)) for o in F.graph_omegas(W)]
    diffs = []
    for i in range(len(planes)):
        for j in range(i + 1, len(planes)):
            if plane_distance(planes[i], planes[j]) > SAME_FIBER:
                tm, tp = theta_pm(planes[i], planes[j])
                diffs.append(tp - tm)
    diffs = np.array(diffs) if diffs else np.zeros(0)
    n_neg, n_pos = int((diffs < -1e-9).sum()), int((diffs > 1e-9).sum())
    n_zero = len(diffs) - n_neg - n_pos
    ok = n_zero == 0 and (n_neg == 0 or n_pos == 0)
    rep.add("disjointness", ok,
            "" if ok else f"{n_neg} pairs with theta+<theta-, {n_pos} with theta+>theta-, {n_zero} intersecting",
            pairs=len(diffs), negative=n_neg, positive=n_pos, intersecting=n_zero,
            min_abs_gap=float(np.abs(diffs).min()) if len(diffs) else 0.0)

    # coverage: every sampled point lies on a fiber the lookup can find
    X = rng.standard_normal((samples, 4))
    X /= np.linalg.norm(X, axis=1)[:, None]
    try:
        found = fiber_lookup(F, X)
    except NoConvergence as exc:
        rep.add("coverage", False, str(exc))
        found = None
    if found is not None:
        worst = max(P.contains(x) for P, x in zip(found, X))
        rep.add("coverage", worst < 1e-7, f"worst containment residual {worst:.3g}",
                worst_residual=worst)
        if F.variant == "graph":
            g = max(graph_residual(F, P) for P in found)
            rep.add("graph_condition", g < 1e-7, f"worst graph residual {g:.3g}", worst_residual=g)

    # sign: stable under resampling
    try:
        signs = [fibration_sign(F, seed + k) for k in range(10)]
        ok = len(set(signs)) == 1
        rep.add("sign_stable", ok, "" if ok else f"signs {signs}", sign=signs[0])
    except (NoConvergence, DegenerateSampling) as exc:
        rep.add("sign_stable", False, str(exc))
    return rep.finish()


def random_graph_fibration(lam: float, chirality: str, seed: int) -> Fibration:
    rng = np.random.default_rng(seed)
    p = random_unit(4, rng)
    c = random_unit(3, rng)
    R = random_orthogonal(3, 1, int(rng.integers(2**31)))
    f = SphereMap.constant(c) if lam == 0 else SphereMap.contraction(c, lam, R)
    return Fibration.graph(p, f, chirality)
