import math

import numpy as np
import pytest

from fibrate import ocs, quat
from fibrate.errors import NotOrthogonal, NotQuaternionic, SchemaError
from fibrate.numkern import random_orthogonal
from fibrate.suites import random_quat

Li, Lj, Lk = quat.L_I, quat.L_J, quat.L_K


def quat_mult_matrix(q):
    # oracle: matrix of left multiplication by the quaternion q = (a, b, c, d)
    a, b, c, d = q
    return np.array([[a, -b, -c, -d], [b, a, -d, c], [c, d, a, -b], [d, -c, b, a]])


def test_standard_matrices_are_left_multiplication():
    assert np.array_equal(Li, quat_mult_matrix([0, 1, 0, 0]))
    assert np.array_equal(Lj, quat_mult_matrix([0, 0, 1, 0]))
    assert np.array_equal(Lk, quat_mult_matrix([0, 0, 0, 1]))


def test_standard_validates_exactly():
    for n in (1, 2, 3):
        Q = quat.standard_quat(n)
        I, J, K = Q.matrices()
        assert np.array_equal(I @ J @ K, -np.eye(4 * n))
        quat.validate_quat(I, J, K, tol=1e-15)


def test_validate_rejects_wrong_order_and_sign():
    with pytest.raises(NotQuaternionic) as err:
        quat.validate_quat(Li, Lk, Lj)
    assert err.value.condition == "IJK+id"
    with pytest.raises(NotQuaternionic):
        quat.validate_quat(Li, Lj, -Lk)
    with pytest.raises(ValueError):
        quat.validate_quat(np.eye(2), np.eye(2), np.eye(2))


def test_conjugate_identity_and_errors():
    Q = quat.standard_quat(2)
    R = quat.conjugate_quat(Q, np.eye(8))
    assert all(np.array_equal(a, b) for a, b in zip(Q.matrices(), R.matrices()))
    with pytest.raises(NotOrthogonal):
        quat.conjugate_quat(Q, 2 * np.eye(8))


def test_sign_and_coherence():
    for k in range(200):
        n = 1 + k % 2
        want = 1 if k % 4 < 2 else -1
        Q = random_quat(n, want, k)
        assert quat.quat_sign(Q) == want
        assert all(ocs.sign(C) == want for C in (Q.I, Q.J, Q.K))


def test_fiber4_frames():
    Q = quat.standard_quat(2)
    e = np.eye(8)
    assert np.abs(quat.fiber4(Q, e[0]).projector() - np.diag([1, 1, 1, 1, 0, 0, 0, 0])).max() == 0
    assert np.abs(quat.fiber4(Q, e[4]).projector() - np.diag([0, 0, 0, 0, 1, 1, 1, 1])).max() == 0
    rng = np.random.default_rng(0)
    for _ in range(100):
        p = rng.standard_normal(8)
        F = quat.fiber4(Q, p / np.linalg.norm(p)).basis
        assert np.abs(F.T @ F - np.eye(4)).max() < 1e-12


def test_fibers_agree_cases():
    Q = quat.standard_quat(2)
    p = np.ones(8) / math.sqrt(8)
    assert quat.fibers_agree(Q, Q, p) == "agree_oriented"
    flip = quat.conjugate_quat(Q, np.diag([-1.0, 1, 1, 1, 1, 1, 1, 1]))
    e = np.eye(8)
    # same unoriented 4-plane at e2, opposite orientation
    assert quat.fibers_agree(Q, flip, e[1]) == "agree_unoriented_only"
    assert quat.fibers_agree(Q, flip, e[4]) == "agree_oriented"
    assert quat.fibers_agree(Q, flip, p) == "disagree"


def test_exact_rank_oracle():
    assert quat.exact_rank(np.eye(5, dtype=int)) == 5
    assert quat.exact_rank(np.array([[1, 2], [2, 4]])) == 1
    assert quat.exact_rank(np.zeros((3, 3), dtype=int)) == 0


def test_s3_counterexample_matrices():
    Q = quat.counterexample_q()
    assert round(np.linalg.det(Q)) == -1
    for name, L in zip("IJK", (Li, Lj, Lk)):
        L8 = np.kron(np.eye(2, dtype=int), L)
        S = Q @ L8 + L8 @ Q
        assert np.array_equal(S, quat.REFERENCE_SUMS[name])
        K = quat.REFERENCE_KERNELS[name]
        assert not (S @ K).any()
        assert quat.exact_rank(S) == 6
    assert quat.exact_rank(np.vstack(list(quat.REFERENCE_SUMS.values()))) == 8


def test_s3_counterexample_report():
    rep = quat.s3_counterexample()
    assert rep.ok, rep.summary()
    assert len(rep.checks) == 10


def test_triple_kernel_counterexample_and_detector():
    Q1 = quat.standard_quat(2)
    assert quat.triple_kernel(Q1, quat.conjugate_quat(Q1, quat.counterexample_q())).dimension == 0
    for seed in range(300):
        A = random_quat(1, 1, 2 * seed)
        B = random_quat(1, -1, 2 * seed + 1)
        assert quat.triple_kernel(A, B).dimension >= 1


@pytest.mark.parametrize("t", np.linspace(0, 2 * math.pi, 13))
def test_detector_witnesses(t):
    c, s = math.cos(t), math.sin(t)
    Q = quat.detector_q(c, s)
    W = quat.detector_witnesses(c, s)
    assert np.linalg.norm(W, axis=0).max() > 0.5
    for L in (Li, Lj, Lk):
        assert np.abs((Q @ L + L @ Q) @ W).max() < 1e-10


def test_nonuniqueness_pair():
    rep = quat.nonuniqueness_report()
    assert rep.ok, rep.summary()
    _Q1, Q2 = quat.nonuniqueness_pair()
    I2, J2, K2 = Q2.matrices()
    assert np.array_equal(J2[4:, 4:], -Lj)
    assert np.array_equal(K2[4:, 4:], -Lk)


def test_probe():
    Q1 = quat.standard_quat(2)
    rep = quat.shared_uniqueness_probe(Q1, quat.conjugate_quat(Q1, quat.counterexample_q()), 200, 0)
    assert rep.ok and rep.checks[0].stats["agreements"] == 0
    planted = quat.conjugate_quat(Q1, np.diag([1.0, 1, 1, 1, -1, 1, 1, 1]))
    rep = quat.shared_uniqueness_probe(Q1, planted, 200, 0)
    assert rep.ok and rep.checks[0].stats["agreements"] > 0
    with pytest.raises(ValueError):
        quat.shared_uniqueness_probe(Q1, Q1)


def test_quat_json():
    Q = random_quat(1, -1, 3)
    back = quat.QuatStructure.from_json(Q.to_json())
    assert np.abs(back.K.J - Q.K.J).max() == 0
    obj = Q.to_json()
    del obj["K"]
    with pytest.raises(SchemaError, match="quat.K"):
        quat.QuatStructure.from_json(obj)


def test_surjectivity_sample():
    rng = np.random.default_rng(1)
    for k in range(50):
        T = random_orthogonal(8, 1 if k % 2 else -1, k)
        Q = quat.conjugate_quat(quat.standard_quat(2), T)
        x = rng.standard_normal(8)
        x /= np.linalg.norm(x)
        std = quat.fiber4(quat.standard_quat(2), T.T @ x).basis
        assert np.abs(T @ std - quat.fiber4(Q, x).basis).max() < 1e-9
