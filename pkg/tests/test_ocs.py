import math

import numpy as np
import pytest

from fibrate import ocs
from fibrate.errors import NotComplexStructure, NotOrthogonal, SchemaError
from fibrate.numkern import random_orthogonal

I2 = np.array([[0, -1], [1, 0]])


def test_standard_is_valid_and_positive():
    for n in range(1, 6):
        J = ocs.standard(n)
        assert all(r == 0 for r in ocs.residuals(J.J).values())
        assert ocs.sign(J) == 1


@pytest.mark.parametrize("M,cond", [
    (np.eye(2), "J^2+id"),
    (2 * I2, "J^2+id"),
    (np.array([[0, -2], [0.5, 0]]), "J+J^T"),
])
def test_validate_names_the_failed_condition(M, cond):
    with pytest.raises(NotComplexStructure) as err:
        ocs.validate(M)
    assert err.value.condition == cond


def test_validate_rejects_odd_size():
    with pytest.raises(ValueError):
        ocs.validate(np.zeros((3, 3)))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_sign_tracks_det(n):
    for seed in range(20):
        for want in (1, -1):
            J = ocs.random_ocs(n, want, seed)
            assert ocs.sign(J) == want


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_sign_of_negative(n):
    J = ocs.random_ocs(n, 1, n)
    assert ocs.sign(-J) == (-1) ** n


def test_conjugate_rejects_non_orthogonal():
    with pytest.raises(NotOrthogonal):
        ocs.conjugate(ocs.standard(1), 2 * np.eye(2))


def test_conjugator_to_standard():
    J = ocs.random_ocs(3, -1, 5)
    T = ocs.conjugator_to_standard(J)
    assert np.abs(T.T @ J.J @ T - ocs.standard(3).J).max() < 1e-12


def test_invariant_decomposition_covers_space():
    J = ocs.random_ocs(4, 1, 2)
    B = np.column_stack([c for P in ocs.invariant_decomposition(J) for c in (P.u, P.v)])
    assert np.abs(B.T @ B - np.eye(8)).max() < 1e-12


def brute_kernel_dim(M):
    # oracle: rank from a plain eigen-decomposition of M^T M
    w = np.linalg.eigvalsh(M.T @ M)
    return int((w < 1e-10 * max(1, w.max())).sum())


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_mod4_law(n):
    rng = np.random.default_rng(n)
    for _ in range(60):
        sj = 1 if rng.random() < 0.5 else -1
        for sk in (sj, -sj):
            J = ocs.random_ocs(n, sj, int(rng.integers(2**31)))
            K = ocs.random_ocs(n, sk, int(rng.integers(2**31)))
            res = ocs.agreement_space(J, K, "sum")
            assert res.dimension == brute_kernel_dim(J.J + K.J)
            assert res.dimension % 4 == (0 if sj == sk else 2)
            assert res.spectral_gap > 1e3
            if (sj != sk and n % 2 == 0) or (sj == sk and n % 2 == 1):
                assert ocs.agreement_space(J, K, "difference").dimension >= 2


def test_agreement_space_is_invariant():
    J = ocs.block_structure([1, 1, 1])
    K = ocs.block_structure([-1, 1, 1])
    res = ocs.agreement_space(J, K)
    assert res.dimension == 4
    assert ocs.kernel_invariance_residual(J, res) < 1e-12
    assert ocs.kernel_invariance_residual(K, res) < 1e-12


def test_base_case_determinant():
    I0 = ocs.standard(2).J
    for t in np.linspace(0, 2 * math.pi, 100):
        Q = np.eye(4)
        Q[1:3, 1:3] = [[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]]
        Q[3, 3] = -1
        assert abs(np.linalg.det(I0 @ Q + Q @ I0)) < 1e-10


def test_paired_bases_random():
    rng = np.random.default_rng(7)
    for k in range(200):
        n = 1 + k % 4
        J = ocs.random_ocs(n, 1 if rng.random() < 0.5 else -1, int(rng.integers(2**31)))
        K = ocs.random_ocs(n, 1 if rng.random() < 0.5 else -1, int(rng.integers(2**31)))
        p = rng.standard_normal(2 * n)
        p /= np.linalg.norm(p)
        pb = ocs.paired_bases(J, K, p)
        assert pb.pattern_residual() < 1e-9
        assert all(abs(c * c + s * s - 1) < 1e-10 for c, s in pb.angles)
        assert (pb.corner == 1) == (ocs.sign(J) == ocs.sign(K))
        assert np.abs(pb.E.T @ J.J @ pb.E - ocs.standard(n).J).max() < 1e-9
        assert np.abs(pb.F.T @ K.J @ pb.F - ocs.standard(n).J).max() < 1e-9


def test_paired_bases_equal_structures():
    J = ocs.random_ocs(3, 1, 0)
    p = np.eye(6)[0]
    pb = ocs.paired_bases(J, J, p)
    assert np.abs(pb.Q - np.eye(6)).max() < 1e-9


def test_correspondence_fibers():
    rng = np.random.default_rng(8)
    for k in range(100):
        n = 1 + k % 3
        T = random_orthogonal(2 * n, 1 if k % 2 else -1, k)
        J = ocs.conjugate(ocs.standard(n), T)
        x = rng.standard_normal(2 * n)
        x /= np.linalg.norm(x)
        std = ocs.fiber_plane(ocs.standard(n), T.T @ x)
        assert np.abs(T @ std.v - ocs.fiber_plane(J, x).v).max() < 1e-9


def test_chart_entries():
    dims = []
    for _label, n, jb, kb in ocs.CHART:
        J, K = ocs.block_structure(jb), ocs.block_structure(kb)
        dims.append(ocs.agreement_space(J, K).dimension)
    assert dims == [6, 4, 4, 6]


def test_json_round_trip_and_schema():
    J = ocs.random_ocs(2, -1, 1)
    back = ocs.ComplexStructure.from_json(J.to_json())
    assert np.array_equal(back.J, J.J)
    bad = ocs.standard(2).to_json()
    bad["data"][0] = 5
    with pytest.raises(SchemaError, match="^J"):
        ocs.ComplexStructure.from_json(bad)
