"""Seeded property suites, one per module, assembled into Reports.

Each suite takes ``trials`` (the sample count for the large checks), a
``seed`` and a generic tolerance ``tol``; every check derives its own
generator from (seed, check index) so reports are reproducible and checks
do not perturb each other.
"""

from __future__ import annotations

import math

import numpy as np

from . import exterior as ex
from . import gcfib, grassmann as gr, ocs, quat
from .numkern import random_orthogonal, random_unit
from .planes import OrientedPlane, plane
from .report import Report

SUITES = ("exterior", "grassmann", "ocs", "gcfib", "quat")

# ker(J - K) dimensions of the four block pairs in the parity/sign chart,
# derived by hand from the blocks: each shared +I block contributes 2.
CHART_DIMS = {
    "n odd, same sign": 6,
    "n odd, opposite signs": 4,
    "n even, same sign": 4,
    "n even, opposite signs": 6,
}


def _rng(seed: int, k: int) -> np.random.Generator:
    return np.random.default_rng([seed, k])


def random_plane(rng: np.random.Generator, m: int = 4) -> OrientedPlane:
    return plane(random_unit(m, rng), random_unit(m, rng))


def _seed_of(rng: np.random.Generator) -> int:
    return int(rng.integers(2**31))


def random_bivectors(rng: np.random.Generator, count: int) -> list[ex.Bivector]:
    """Generic bivectors plus the degenerate cases the Darboux form must survive."""
    out = [ex.Bivector(rng.standard_normal(6)) for _ in range(count)]
    e = np.eye(4)
    out += [
        ex.Bivector(np.zeros(6)),
        ex.Bivector.basis(1, 2),
        ex.Bivector.basis(1, 2) + ex.Bivector.basis(3, 4),
        ex.Bivector.basis(1, 2) - ex.Bivector.basis(3, 4),
        ex.omega(plane(e[0] + e[2], e[1] - e[3])) * 3.0,
    ]
    for _ in range(max(1, count // 10)):
        a = ex.Bivector(rng.standard_normal(6))
        m, p = ex.pi_split(a)
        out += [m, p, ex.omega(random_plane(rng)) * rng.uniform(0.1, 5)]
    return out


# -- exterior ---------------------------------------------------------------------

def exterior_suite(trials: int = 300, seed: int = 0, tol: float = 1e-9) -> Report:
    rep = Report("exterior", seed, {"cauchy_binet": 1e-10, "hodge": 1e-10, "star_involution": 1e-14,
                                   "part_norm": 1e-12, "darboux": tol, "normal_form": tol})

    rng = _rng(seed, 0)
    worst = 0.0
    for _ in range(trials):
        P, Q = random_plane(rng), random_plane(rng)
        cb = np.linalg.det(P.basis().T @ Q.basis())
        worst = max(worst, abs(ex.inner(ex.omega(P), ex.omega(Q)) - cb))
    rep.add("inner product equals Cauchy-Binet determinant", worst < 1e-10,
            f"worst deviation {worst:.3g}", worst=worst)

    rng = _rng(seed, 1)
    worst = 0.0
    for _ in range(trials):
        P = random_plane(rng)
        d = ex.star(ex.omega(P)) - ex.omega(gr.orthogonal_complement(P))
        worst = max(worst, d.norm())
    rep.add("star(omega P) = omega(P-perp)", worst < 1e-10, f"worst deviation {worst:.3g}", worst=worst)

    rng = _rng(seed, 2)
    inv = pair = 0.0
    for _ in range(trials):
        a, b = ex.Bivector(rng.standard_normal(6)), ex.Bivector(rng.standard_normal(6))
        inv = max(inv, (ex.star(ex.star(a)) - a).norm())
        pair = max(pair, abs(ex.wedge22(a, ex.star(b)) - ex.inner(a, b)))
    rep.add("star is an involution", inv < 1e-14, f"worst {inv:.3g}", worst=inv)
    rep.add("wedge(a, star b) = <a, b>", pair < 1e-12, f"worst {pair:.3g}", worst=pair)

    rng = _rng(seed, 3)
    worst, fails = 0.0, 0
    r = 1 / math.sqrt(2)
    for _ in range(trials):
        m, p = ex.pi_split(ex.omega(random_plane(rng)))
        worst = max(worst, abs(m.norm() - r), abs(p.norm() - r))
        # converse: any pair of parts with norm 1/sqrt2 is decomposable
        a = ex.Bivector(rng.standard_normal(6))
        am, ap = ex.pi_split(a)
        if not ex.is_decomposable(am * (r / am.norm()) + ap * (r / ap.norm())):
            fails += 1
    rep.add("omega lands in the product of 1/sqrt2-spheres", worst < 1e-12 and fails == 0,
            f"worst part-norm deviation {worst:.3g}, {fails} converse failures",
            worst=worst, converse_failures=fails)

    rng = _rng(seed, 4)
    shared, gaps = 0.0, []
    for _ in range(trials):
        x = random_unit(4, rng)
        P, Q = plane(x, random_unit(4, rng)), plane(x, random_unit(4, rng))
        shared = max(shared, abs(ex.inner(ex.omega(P), ex.star(ex.omega(Q)))))
        gaps.append(abs(ex.inner(ex.omega(random_plane(rng)), ex.star(ex.omega(random_plane(rng))))))
    frac = float(np.mean(np.array(gaps) > 1e-6))
    rep.add("intersection criterion", shared < 1e-10 and frac >= 0.99,
            f"shared-vector worst {shared:.3g}, independent pairs above 1e-6: {frac:.3f}",
            shared_worst=shared, independent_fraction=frac, independent_median=float(np.median(gaps)))

    rng = _rng(seed, 5)
    worst = 0.0
    for _ in range(trials):
        om = ex.omega(random_plane(rng))
        worst = max(worst, (ex.omega(ex.omega_inverse(om)) - om).norm())
    rep.add("omega_inverse round trip", worst < 1e-10, f"worst {worst:.3g}", worst=worst)

    rng = _rng(seed, 6)
    worst, bad_q = 0.0, 0
    for a in random_bivectors(rng, trials):
        D = ex.darboux_decompose(a)
        worst = max(worst, (D.reconstruct() - a).norm())
        if gr.intersects(D.P, D.Q):
            bad_q += 1
    rep.add("Darboux reconstruction", worst < tol and bad_q == 0,
            f"worst error {worst:.3g}, {bad_q} intersecting P/Q pairs", worst=worst)

    rng = _rng(seed, 7)
    worst, wrong = 0.0, 0
    for k in range(trials):
        rank = (0, 2, 4)[k % 3]
        U = random_orthogonal(4, 1, _seed_of(rng))
        s = rng.uniform(0.2, 3, 2)
        D = np.zeros((4, 4))
        if rank >= 2:
            D[0, 1], D[1, 0] = s[0], -s[0]
        if rank == 4:
            D[2, 3], D[3, 2] = s[1], -s[1]
        A = U @ D @ U.T
        Q, name = ex.skew_normal_form(A)
        if name != ("B0", "B1", "B2")[rank // 2]:
            wrong += 1
        worst = max(worst, float(np.abs(Q.T @ A @ Q - ex.FORMS[name]).max()))
    rep.add("skew normal form classifies B0/B1/B2", wrong == 0 and worst < tol,
            f"{wrong} misclassified, worst residual {worst:.3g}", misclassified=wrong, worst=worst)
    return rep.finish()


# -- grassmann --------------------------------------------------------------------

def grassmann_suite(trials: int = 300, seed: int = 0, tol: float = 1e-9) -> Report:
    rep = Report("grassmann", seed, {"theta": 1e-7, "isometry": 1e-8, "psi": 1e-12})

    rng = _rng(seed, 10)
    disagree = 0
    for k in range(trials):
        if k % 2:
            P, Q = random_plane(rng), random_plane(rng)
        else:
            x = random_unit(4, rng)
            P, Q = plane(x, random_unit(4, rng)), plane(random_unit(4, rng), x)
        tm, tp = gr.theta_pm(P, Q)
        if gr.intersects(P, Q) != (abs(tp - tm) < 1e-7):
            disagree += 1
    rep.add("intersection iff theta- = theta+", disagree == 0,
            f"{disagree} of {trials} disagree", disagreements=disagree)

    rng = _rng(seed, 11)
    p = random_unit(4, rng)
    mins, plus = [], []
    for _ in range(50):
        m, pl = ex.pi_split(ex.omega(plane(p, random_unit(4, rng))))
        mins.append(m.coords)
        plus.append(pl.coords)
    M, Pl = np.array(mins), np.array(plus)
    worst = float(np.abs(M @ M.T - Pl @ Pl.T).max())
    rep.add("planes through p: pi- to pi+ is an isometry", worst < 1e-8,
            f"worst Gram deviation {worst:.3g}", worst=worst)

    rng = _rng(seed, 12)
    worst = 0.0
    for _ in range(trials):
        p = random_unit(4, rng)
        u = random_unit(4, rng)
        u = u - (u @ p) * p
        u /= np.linalg.norm(u)
        for side in ("minus", "plus"):
            a = gr.psi(p, u, side)
            worst = max(worst, abs(a.norm() - 1 / math.sqrt(2)),
                        float(np.abs(gr.psi_inverse(p, a, side) - u).max()))
    rep.add("psi is an isometry onto the side sphere with inverse", worst < 1e-12,
            f"worst {worst:.3g}", worst=worst)

    rng = _rng(seed, 13)
    bad = 0
    for _ in range(trials):
        P = random_plane(rng)
        C = gr.orthogonal_complement(P)
        if np.linalg.det(np.column_stack([P.u, P.v, C.u, C.v])) <= 0 or np.abs(P.basis().T @ C.basis()).max() > 1e-12:
            bad += 1
    rep.add("orthogonal complement is positively oriented", bad == 0, f"{bad} failures", failures=bad)
    return rep.finish()


# -- ocs --------------------------------------------------------------------------

def _base_case_q(c: float, s: float) -> np.ndarray:
    Q = np.eye(4)
    Q[1:3, 1:3] = [[c, -s], [s, c]]
    Q[3, 3] = -1
    return Q


def ocs_trials(trials: int, seed: int, ns=range(1, 6)) -> dict:
    """Random (J, K) pairs per n and sign combination with both kernel dimensions."""
    rng = _rng(seed, 20)
    rows = []
    for n in ns:
        for same in (True, False):
            for _ in range(trials):
                sj = 1 if rng.random() < 0.5 else -1
                sk = sj if same else -sj
                J = ocs.random_ocs(n, sj, _seed_of(rng))
                K = ocs.random_ocs(n, sk, _seed_of(rng))
                plus = ocs.agreement_space(J, K, "sum", check_invariance=False)
                minus = ocs.agreement_space(J, K, "difference", check_invariance=False)
                rows.append((n, same, J, K, plus, minus))
    return {"rows": rows}


def ocs_suite(trials: int = 300, seed: int = 0, tol: float = 1e-9) -> Report:
    rep = Report("ocs", seed, {"kernel_rel": 1e-7, "spectral_gap": 1e3, "invariance": 1e-8,
                              "base_case": 1e-10, "correspondence": tol, "pattern": tol})
    rows = ocs_trials(max(1, trials // 5), seed)["rows"]

    bad_mod, bad_gap = 0, 0
    for n, same, J, K, plus, minus in rows:
        want = 0 if same else 2
        if plus.dimension % 4 != want:
            bad_mod += 1
        if min(plus.spectral_gap, minus.spectral_gap) <= 1e3:
            bad_gap += 1
    rep.add("mod-4 law for dim ker(J+K)", bad_mod == 0 and bad_gap == 0,
            f"{bad_mod} violations, {bad_gap} trials with spectral gap <= 1e3 of {len(rows)}",
            trials=len(rows), violations=bad_mod, small_gaps=bad_gap)

    bad = sum(1 for n, same, J, K, plus, minus in rows if not same and plus.dimension < 2)
    rep.add("opposite signs: ker(J+K) nontrivial", bad == 0, f"{bad} exceptions", exceptions=bad)

    bad = sum(1 for n, same, J, K, plus, minus in rows
              if ((not same and n % 2 == 0) or (same and n % 2 == 1)) and minus.dimension < 2)
    rep.add("parity/sign cases: ker(J-K) nontrivial", bad == 0, f"{bad} exceptions", exceptions=bad)

    worst = 0.0
    for n, same, J, K, plus, minus in rows:
        for res in (plus, minus):
            if res.dimension:
                worst = max(worst, ocs.kernel_invariance_residual(J, res))
    rep.add("agreement kernels are J-invariant", worst < 1e-8, f"worst leak {worst:.3g}", worst=worst)

    rng = _rng(seed, 21)
    I0 = ocs.standard(2).J
    worst = 0.0
    for _ in range(100):
        t = rng.uniform(0, 2 * math.pi)
        Q = _base_case_q(math.cos(t), math.sin(t))
        worst = max(worst, abs(np.linalg.det(I0 @ Q + Q @ I0)))
    rep.add("base case det(I0 Q + Q I0) = 0", worst < 1e-10, f"worst |det| {worst:.3g}", worst=worst)

    rng = _rng(seed, 22)
    bad = 0
    for k in range(trials):
        n = 1 + k % 5
        J = ocs.random_ocs(n, 1 if rng.random() < 0.5 else -1, _seed_of(rng))
        if ocs.sign(-J) != ocs.sign(J) * (-1) ** n:
            bad += 1
    rep.add("sign(-J) = (-1)^n sign(J)", bad == 0, f"{bad} failures", failures=bad)

    rng = _rng(seed, 23)
    worst = 0.0
    for k in range(100):
        n = 1 + k % 4
        T = random_orthogonal(2 * n, 1 if k % 2 else -1, _seed_of(rng))
        J = ocs.conjugate(ocs.standard(n), T)
        x = random_unit(2 * n, rng)
        std = ocs.fiber_plane(ocs.standard(n), T.T @ x)
        image = OrientedPlane(T @ std.u, T @ std.v)
        worst = max(worst, float(np.abs(image.projector() - ocs.fiber_plane(J, x).projector()).max()),
                    float(np.linalg.norm(T @ std.v - J.J @ x)))
    rep.add("fibers of conjugated structures are T-images", worst < tol, f"worst {worst:.3g}", worst=worst)

    rng = _rng(seed, 24)
    worst_pat, worst_cs, bad_corner = 0.0, 0.0, 0
    for k in range(min(trials, 200)):
        n = 1 + k % 4
        J = ocs.random_ocs(n, 1 if rng.random() < 0.5 else -1, _seed_of(rng))
        K = ocs.random_ocs(n, 1 if rng.random() < 0.5 else -1, _seed_of(rng))
        pb = ocs.paired_bases(J, K, random_unit(2 * n, rng))
        worst_pat = max(worst_pat, pb.pattern_residual())
        for c, s in pb.angles:
            worst_cs = max(worst_cs, abs(c * c + s * s - 1))
        if (pb.corner == 1) != (ocs.sign(J) == ocs.sign(K)):
            bad_corner += 1
    ok = worst_pat < tol and worst_cs < 1e-10 and bad_corner == 0
    rep.add("paired bases pattern", ok,
            f"pattern residual {worst_pat:.3g}, |c^2+s^2-1| {worst_cs:.3g}, {bad_corner} corner mismatches",
            pattern=worst_pat, unit_circle=worst_cs, corner_mismatches=bad_corner)

    rep.extend(chart_report())
    return rep.finish()


def chart_report(entries=None) -> Report:
    rep = Report("chart", 0, {"kernel_rel": 1e-7})
    for label, n, jb, kb in ocs.CHART if entries is None else entries:
        J, K = ocs.block_structure(jb), ocs.block_structure(kb)
        dim = ocs.agreement_space(J, K, "difference").dimension
        sj, sk = ocs.sign(J), ocs.sign(K)
        want = CHART_DIMS[label]
        same_ok = (sj == sk) == label.endswith("same sign")
        rep.add(f"chart {label}: dim ker(J-K) = {want}", dim == want and dim > 2 and same_ok,
                f"dimension {dim}, signs {sj}, {sk}", n=n, dimension=dim, sign_J=sj, sign_K=sk)
    return rep.finish()


# -- gcfib ------------------------------------------------------------------------

GRAPH_CASES = ((0.0, "positive"), (0.0, "negative"), (0.3, "positive"), (0.3, "negative"),
               (0.7, "positive"), (0.7, "negative"), (0.95, "positive"), (0.95, "negative"),
               (0.5, "positive"), (0.5, "negative"))


def gcfib_suite(trials: int = 300, seed: int = 0, tol: float = 1e-9) -> Report:
    rep = Report("gcfib", seed, {"phi_omega": tol, "containment": 1e-7, "graph": 1e-7,
                                "slice_spread": 1e-10, "opposite_kernel_dim": 2})

    rng = _rng(seed, 30)
    worst = 0.0
    for _ in range(trials):
        p = random_unit(4, rng)
        u, v = (_perp(p, random_unit(4, rng)) for _ in range(2))
        lhs = ex.omega(gcfib.phi_p(p, u, v))
        worst = max(worst, (lhs - gr.psi(p, u, "minus") - gr.psi(p, v, "plus")).norm())
    rep.add("omega(phi_p(u, v)) = psi-(u) + psi+(v)", worst < tol, f"worst {worst:.3g}", worst=worst)

    rng = _rng(seed, 31)
    bad_opp = bad_same = 0
    for _ in range(trials):
        a = ocs.random_ocs(2, 1, _seed_of(rng))
        b = ocs.random_ocs(2, -1, _seed_of(rng))
        if ocs.agreement_space(a, b).dimension != 2:
            bad_opp += 1
        c = ocs.random_ocs(2, 1, _seed_of(rng))
        d = ocs.agreement_space(a, c).dimension
        if d not in (0, 4) or (d == 4) != (np.abs(a.J - c.J).max() < 1e-9):
            bad_same += 1
    rep.add("opposite-sign Hopf pairs share exactly one circle", bad_opp == 0,
            f"{bad_opp} of {trials} exceptions", exceptions=bad_opp)
    rep.add("same-sign Hopf pairs share none or are equal", bad_same == 0,
            f"{bad_same} of {trials} exceptions", exceptions=bad_same)

    rng = _rng(seed, 32)
    worst = 0.0
    for _ in range(100):
        s = 1 if rng.random() < 0.5 else -1
        _side, _pt, spread = gcfib.hopf_slice_check(ocs.random_ocs(2, s, _seed_of(rng)), 20, _seed_of(rng))
        worst = max(worst, spread)
    side, pt, spread = gcfib.hopf_slice_check(ocs.standard(2))
    target = (ex.Bivector.basis(1, 2) + ex.Bivector.basis(3, 4)) / 2
    dev = (pt - target).norm()
    rep.add("Hopf fibrations are slices", worst < 1e-10 and side == "plus" and dev < 1e-12,
            f"worst spread {worst:.3g}, standard constant deviation {dev:.3g}",
            worst_spread=worst, standard_deviation=dev)

    lookups = max(10, trials // 3)
    per_case = []
    for k, (lam, chir) in enumerate(GRAPH_CASES):
        crng = _rng(seed, 100 + k)
        F = gcfib.random_graph_fibration(lam, chir, _seed_of(crng))
        X = crng.standard_normal((lookups, 4))
        X /= np.linalg.norm(X, axis=1)[:, None]
        planes = gcfib.fiber_lookup(F, X)
        cont = max(P.contains(x) for P, x in zip(planes, X))
        graph = max(gcfib.graph_residual(F, P) for P in planes)
        # new formulation: each fiber is phi_p(v, f(v)) for v read off its minus part
        rt = 0.0
        for P in planes[:20]:
            m, pl = ex.pi_split(ex.omega(P))
            src = m if chir == "positive" else pl
            v = gr.psi_inverse(F.p, src * (1 / (math.sqrt(2) * src.norm())), chir_side(chir))
            w = F.frame.T @ v
            fv = F.frame @ F.f(w)
            Q = gcfib.phi_p(F.p, v, fv) if chir == "positive" else gcfib.phi_p(F.p, fv, v)
            rt = max(rt, (ex.omega(Q) - ex.omega(P)).norm())
        vr = gcfib.verify_fibration(F, 30, _seed_of(crng))
        disjoint = vr.checks[0].ok
        sign = gcfib.fibration_sign(F, _seed_of(crng))
        want = 1 if chir == "positive" else -1
        per_case.append((lam, chir, cont, graph, rt, disjoint, sign == want))
    c = max(r[2] for r in per_case)
    g = max(r[3] for r in per_case)
    rt = max(r[4] for r in per_case)
    rep.add("fiber lookup containment", c < 1e-7, f"worst {c:.3g}", worst=c, fibrations=len(per_case))
    rep.add("graph condition pi+ = f(pi-)", g < 1e-7, f"worst {g:.3g}", worst=g)
    rep.add("fibers equal phi_p(v, f(v))", rt < 1e-7, f"worst omega distance {rt:.3g}", worst=rt)
    bad = [f"{lam}/{chir}" for lam, chir, *_r, dj, _s in per_case if not dj]
    rep.add("graph fibrations are disjoint", not bad, f"failing cases {bad}")
    bad = [f"{lam}/{chir}" for lam, chir, *_r, sg in per_case if not sg]
    rep.add("fibration sign matches chirality", not bad, f"failing cases {bad}")

    F = gcfib.Fibration.graph(np.eye(4)[0], gcfib.SphereMap.contraction(np.eye(3)[0], 1.2), certify=False)
    neg = gcfib.verify_fibration(F, 30, seed)
    rep.add("non-contracting map is rejected (negative control)", not neg.checks[0].ok,
            "lambda = 1.2 map passed disjointness")
    return rep.finish()


def chir_side(chirality: str) -> str:
    return "minus" if chirality == "positive" else "plus"


def _perp(p, u) -> np.ndarray:
    u = u - (u @ p) * p
    return u / np.linalg.norm(u)


# -- quat -------------------------------------------------------------------------

def random_quat(n: int, want_sign: int, seed: int) -> quat.QuatStructure:
    return quat.conjugate_quat(quat.standard_quat(n), random_orthogonal(4 * n, want_sign, seed))


def quat_suite(trials: int = 300, seed: int = 0, tol: float = 1e-9) -> Report:
    rep = Report("quat", seed, {"witness": 1e-10, "frame": 1e-12, "surjectivity": tol})
    rep.extend(quat.s3_counterexample())
    rep.extend(quat.nonuniqueness_report())

    rng = _rng(seed, 40)
    bad_dim = 0
    for _ in range(trials):
        Q1 = random_quat(1, 1, _seed_of(rng))
        Q2 = random_quat(1, -1, _seed_of(rng))
        if quat.triple_kernel(Q1, Q2).dimension < 1:
            bad_dim += 1
    worst = 0.0
    for _ in range(trials):
        t = rng.uniform(0, 2 * math.pi)
        c, s = math.cos(t), math.sin(t)
        Q = quat.detector_q(c, s)
        W = quat.detector_witnesses(c, s)
        for L in (quat.L_I, quat.L_J, quat.L_K):
            worst = max(worst, float(np.abs((Q @ L + L @ Q) @ W).max()))
    rep.add("detector: opposite-sign pairs on R^4 share a triple kernel", bad_dim == 0,
            f"{bad_dim} of {trials} with trivial triple kernel", exceptions=bad_dim)
    rep.add("detector witnesses lie in all three kernels", worst < 1e-10, f"worst {worst:.3g}", worst=worst)

    rng = _rng(seed, 41)
    bad_sign, worst_frame, worst_img = 0, 0.0, 0.0
    for k in range(trials):
        n = 1 + k % 2
        want = 1 if k % 4 < 2 else -1
        T = random_orthogonal(4 * n, want, _seed_of(rng))
        Qs = quat.conjugate_quat(quat.standard_quat(n), T)
        s = quat.quat_sign(Qs)
        if s != want or any(ocs.sign(C) != s for C in (Qs.I, Qs.J, Qs.K)):
            bad_sign += 1
        x = random_unit(4 * n, rng)
        Fr = quat.fiber4(Qs, x).basis
        worst_frame = max(worst_frame, float(np.abs(Fr.T @ Fr - np.eye(4)).max()))
        worst_img = max(worst_img, float(np.abs(T @ quat.fiber4(quat.standard_quat(n), T.T @ x).basis - Fr).max()))
    rep.add("quat sign agrees with the factor signs", bad_sign == 0, f"{bad_sign} mismatches",
            mismatches=bad_sign)
    rep.add("fiber4 frames are orthonormal", worst_frame < 1e-12, f"worst {worst_frame:.3g}", worst=worst_frame)
    rep.add("conjugated fibers are T-images of standard fibers", worst_img < tol,
            f"worst {worst_img:.3g}", worst=worst_img)

    Q1 = quat.standard_quat(2)
    Q2 = quat.conjugate_quat(Q1, quat.counterexample_q())
    rep.extend(quat.shared_uniqueness_probe(Q1, Q2, trials, seed))
    # a pair sharing exactly span(e1..e4): reverse orientation on the second block only
    R = np.diag([1, 1, 1, 1, -1, 1, 1, 1]).astype(float)
    probe = quat.shared_uniqueness_probe(Q1, quat.conjugate_quat(Q1, R), trials, seed)
    hits = probe.checks[0].stats.get("agreements", 0)
    rep.add("probe finds the planted shared 3-sphere", probe.ok and hits > 0,
            f"{hits} agreements, spread ok: {probe.ok}", agreements=hits)
    return rep.finish()


SUITE_FUNCS = {
    "exterior": exterior_suite,
    "grassmann": grassmann_suite,
    "ocs": ocs_suite,
    "gcfib": gcfib_suite,
    "quat": quat_suite,
}


def run_suite(name: str, trials: int = 300, seed: int = 0, tol: float = 1e-9) -> Report:
    if name == "all":
        rep = Report("all", seed, {"tol": tol})
        for key in SUITES:
            sub = SUITE_FUNCS[key](trials, seed, tol)
            for c in sub.checks:
                c.name = f"{key}: {c.name}"
            rep.extend(sub)
        return rep.finish()
    if name not in SUITE_FUNCS:
        raise ValueError(f"unknown suite {name!r}")
    return SUITE_FUNCS[name](trials, seed, tol)
