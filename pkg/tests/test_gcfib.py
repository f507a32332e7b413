import numpy as np
import pytest

from fibrate import exterior as ex
from fibrate import gcfib, ocs
from fibrate.errors import NoConvergence, NotLinear, SchemaError
from fibrate.gcfib import Fibration, SphereMap
from fibrate.grassmann import psi

E = np.eye(4)


def unit_rows(rng, k, m):
    X = rng.standard_normal((k, m))
    return X / np.linalg.norm(X, axis=1)[:, None]


def test_contraction_lipschitz_bound():
    # includes pairs straddling the antipode of c, where naive geodesic blends blow up
    c = np.array([0.0, 0.0, 1.0])
    f = SphereMap.contraction(c, 0.7)
    rng = np.random.default_rng(0)
    A = unit_rows(rng, 2000, 3)
    B = A + 1e-3 * rng.standard_normal(A.shape)
    B /= np.linalg.norm(B, axis=1)[:, None]
    near = -c + 1e-4 * rng.standard_normal((200, 3))
    near /= np.linalg.norm(near, axis=1)[:, None]
    A = np.vstack([A, near[:100]])
    B = np.vstack([B, near[100:]])
    ratio = gcfib.geodesic(f(A), f(B)) / gcfib.geodesic(A, B)
    assert ratio.max() <= 0.7 + 1e-9


def test_is_distance_decreasing():
    assert gcfib.is_distance_decreasing(SphereMap.contraction([1, 0, 0], 0.95))[0]
    assert not gcfib.is_distance_decreasing(SphereMap.contraction([1, 0, 0], 1.2))[0]
    with pytest.raises(ValueError):
        Fibration.graph(E[0], SphereMap.contraction([1, 0, 0], 1.2))


def test_phi_compatibility():
    rng = np.random.default_rng(1)
    for _ in range(300):
        p = rng.standard_normal(4)
        p /= np.linalg.norm(p)
        u, v = rng.standard_normal((2, 4))
        u -= (u @ p) * p
        v -= (v @ p) * p
        u /= np.linalg.norm(u)
        v /= np.linalg.norm(v)
        P = gcfib.phi_p(p, u, v)
        assert (ex.omega(P) - psi(p, u, "minus") - psi(p, v, "plus")).norm() < 1e-9
        # the diagonal u = v gives exactly the planes through p
        assert gcfib.phi_p(p, u, u).contains(p) < 1e-9


@pytest.mark.parametrize("lam", [0.0, 0.3, 0.7, 0.95])
@pytest.mark.parametrize("chirality", ["positive", "negative"])
def test_lookup_containment_and_graph(lam, chirality):
    F = gcfib.random_graph_fibration(lam, chirality, 11)
    X = unit_rows(np.random.default_rng(2), 100, 4)
    planes = gcfib.fiber_lookup(F, X)
    assert max(P.contains(x) for P, x in zip(planes, X)) < 1e-7
    assert max(gcfib.graph_residual(F, P) for P in planes) < 1e-7
    assert gcfib.fibration_sign(F, 3) == (1 if chirality == "positive" else -1)


def test_lookup_through_p_gives_graph_of_c():
    c = np.array([0.0, 1.0, 0.0])
    F = Fibration.graph(E[0], SphereMap.constant(c))
    P = gcfib.fiber_of(F, E[0])
    assert P.contains(E[0]) < 1e-10


def test_hopf_fibration_is_consistent():
    J = ocs.random_ocs(2, -1, 4)
    F = Fibration.hopf(J)
    rep = gcfib.verify_fibration(F, 40, 0)
    assert rep.ok, rep.summary()
    assert gcfib.fibration_sign(F) == -1
    assert np.abs(gcfib.extract_linear_structure(F).J - J.J).max() < 1e-8


def test_constant_graph_is_positive_hopf():
    F = Fibration.graph(E[0], SphereMap.constant([0, 0, 1]))
    assert ocs.sign(gcfib.extract_linear_structure(F)) == 1


def test_contraction_graph_is_not_linear():
    F = Fibration.graph(E[0], SphereMap.contraction([0, 0, 1], 0.5))
    with pytest.raises(NotLinear):
        gcfib.extract_linear_structure(F)


def test_hopf_slices_standard():
    side, pt, spread = gcfib.hopf_slice_check(ocs.standard(2))
    assert side == "plus"
    assert spread < 1e-10
    assert (pt - (ex.Bivector.basis(1, 2) + ex.Bivector.basis(3, 4)) / 2).norm() < 1e-12


def test_hopf_slices_random():
    for seed in range(100):
        s = 1 if seed % 2 else -1
        side, _pt, spread = gcfib.hopf_slice_check(ocs.random_ocs(2, s, seed), 20, seed)
        assert spread < 1e-10
        assert side == ("plus" if s == 1 else "minus")


def test_hopf_through_plane():
    P = gcfib.phi_p(E[0], E[1], E[2])
    for s in (1, -1):
        J = gcfib.hopf_through(P, s)
        assert ocs.sign(J) == s
        assert np.abs(J.J @ P.u - P.v).max() < 1e-12


def test_negative_control_fails_disjointness():
    F = Fibration.graph(E[0], SphereMap.contraction([1, 0, 0], 1.2), certify=False)
    rep = gcfib.verify_fibration(F, 30, 0)
    assert not rep.checks[0].ok


def test_no_convergence_is_reported():
    F = gcfib.random_graph_fibration(0.95, "positive", 1)
    with pytest.raises(NoConvergence):
        gcfib.fiber_lookup(F, E[:1], max_iter=2)


def test_spec_json_round_trip():
    F = gcfib.random_graph_fibration(0.5, "negative", 3)
    G = Fibration.from_json(F.to_json())
    x = np.array([0.5, 0.5, 0.5, 0.5])
    assert gcfib.plane_distance(gcfib.fiber_of(F, x), gcfib.fiber_of(G, x)) < 1e-12
    H = Fibration.from_json(Fibration.hopf(ocs.standard(2)).to_json())
    assert H.variant == "hopf"
    with pytest.raises(SchemaError, match="spec.variant"):
        Fibration.from_json({"variant": "spiral"})
    with pytest.raises(SchemaError, match="spec.map"):
        Fibration.from_json({"variant": "graph", "p": [1, 0, 0, 0]})
