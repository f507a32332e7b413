import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fibrate.errors import AmbiguousRank, SchemaError
from fibrate.numkern import (complement_frame, det_sign, kernel, matrix_from_json, matrix_to_json,
                             orthonormalize, random_orthogonal)


def test_random_orthogonal_batch():
    worst_orth = worst_det = 0.0
    for seed in range(1000):
        want = 1 if seed % 2 else -1
        T = random_orthogonal(4, want, seed)
        worst_orth = max(worst_orth, np.abs(T.T @ T - np.eye(4)).max())
        d = np.linalg.det(T)
        assert np.sign(d) == want
        worst_det = max(worst_det, abs(abs(d) - 1))
    assert worst_orth < 1e-12
    assert worst_det < 1e-10


def test_random_orthogonal_is_seeded():
    assert np.array_equal(random_orthogonal(5, 1, 7), random_orthogonal(5, 1, 7))
    assert not np.array_equal(random_orthogonal(5, 1, 7), random_orthogonal(5, 1, 8))


@pytest.mark.parametrize("rank", [0, 1, 3, 5, 6])
def test_kernel_dimension_and_residual(rank):
    rng = np.random.default_rng(rank)
    A = rng.standard_normal((6, rank)) @ rng.standard_normal((rank, 6))
    res = kernel(A)
    assert res.dimension == 6 - rank
    if res.dimension:
        assert np.abs(A @ res.basis).max() / max(1, np.linalg.norm(A, 2)) < 1e-7
        assert np.abs(res.basis.T @ res.basis - np.eye(res.dimension)).max() < 1e-12
    assert res.spectral_gap > 1e3


def test_kernel_rejects_ambiguous_rank():
    # singular values straddle the threshold with a gap of only 4
    A = np.diag([1.0, 2e-7, 5e-8])
    with pytest.raises(AmbiguousRank) as err:
        kernel(A)
    assert err.value.spectral_gap < 1e3
    assert kernel(A, check_gap=False).dimension == 1


def test_orthonormalize_idempotent():
    rng = np.random.default_rng(0)
    vs = list(rng.standard_normal((4, 7)))
    once = orthonormalize(vs)
    twice = orthonormalize(once)
    assert np.abs(np.array(once) - np.array(twice)).max() < 1e-14


def test_det_sign():
    assert det_sign(np.eye(3)) == 1
    assert det_sign(np.diag([1.0, -1.0])) == -1
    assert det_sign(np.array([[1.0, 2.0], [2.0, 4.0]])) == 0


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-10, 10), min_size=4, max_size=4).filter(lambda v: np.linalg.norm(v) > 1e-3))
def test_complement_frame(v):
    p = np.array(v) / np.linalg.norm(v)
    F = complement_frame(p)
    full = np.column_stack([p, F])
    assert np.abs(full.T @ full - np.eye(4)).max() < 1e-12
    assert np.linalg.det(full) > 0


def test_matrix_json_round_trip_and_schema():
    M = np.array([[0, -1], [1, 0.5]])
    obj = matrix_to_json(M)
    assert obj["data"][:3] == [0, -1, 1] and isinstance(obj["data"][0], int)
    assert np.array_equal(matrix_from_json(obj), M)
    with pytest.raises(SchemaError, match="J.data"):
        matrix_from_json({"rows": 2, "cols": 2, "data": [1, 2]}, "J")
    with pytest.raises(SchemaError, match="J.cols"):
        matrix_from_json({"rows": 2, "data": []}, "J")
