import math

import numpy as np
import pytest
import scipy.linalg
from numpy.testing import assert_allclose

from ulog.config import tolerances, use_tolerances
from ulog.embeddings import OMEGA
from ulog.errors import ToleranceError, ValidationError
from ulog.linalg import (
    as_cmatrix, frob_inner, frob_norm, herm_eig, jacobi_eigh, mat_exp_general, mat_exp_skew,
    principal_log_angle, unitarity_residual, unitary_eig,
)


def rand_c(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def rand_herm(rng, n):
    a = rand_c(rng, n)
    return 0.5 * (a + a.conj().T)


def rand_skew(rng, n):
    a = rand_c(rng, n)
    return 0.5 * (a - a.conj().T)


def rand_unitary(rng, n):
    q, r = np.linalg.qr(rand_c(rng, n))
    return q * (np.diag(r) / abs(np.diag(r)))


def test_as_cmatrix_rejects_bad_input():
    with pytest.raises(ValidationError):
        as_cmatrix(np.ones((2, 3)))
    with pytest.raises(ValidationError):
        as_cmatrix([[np.nan]])


def test_frob_inner_trivial():
    assert frob_inner(np.eye(2), np.eye(2)) == 2
    assert frob_inner(OMEGA, OMEGA) == 2


def test_frob_inner_frozen_oracle():
    # double-loop sum Re sum a_ij conj(b_ij), computed independently
    rng = np.random.default_rng(20240611)
    A = rand_c(rng, 4)
    B = rand_c(rng, 4)
    assert frob_inner(A, B) == pytest.approx(2.2001363583316107, abs=1e-12)


def test_frob_inner_dimension_mismatch():
    with pytest.raises(ValidationError):
        frob_inner(np.eye(2), np.eye(3))


def test_frob_norm_examples(rng):
    assert frob_norm(1j * math.pi * np.eye(3)) == pytest.approx(math.pi * math.sqrt(3))
    A = rand_skew(rng, 5)
    assert frob_norm(A) ** 2 == pytest.approx(-np.trace(A @ A).real)
    lam = np.linalg.eigvals(A)
    assert frob_norm(A) == pytest.approx(math.sqrt(np.sum(np.abs(lam) ** 2)))


@pytest.mark.parametrize("method", ["lapack", "jacobi"])
def test_herm_eig_examples(method):
    assert_allclose(herm_eig(np.diag([3.0, 1.0, 2.0]), method).values, [3, 2, 1])
    assert_allclose(herm_eig(np.array([[0, 1], [1, 0]]), method).values, [1, -1], atol=1e-14)


@pytest.mark.parametrize("method", ["lapack", "jacobi"])
@pytest.mark.parametrize("n", [1, 2, 8, 16])
def test_herm_eig_reconstruction(method, n, rng):
    H = rand_herm(rng, n)
    e = herm_eig(H, method)
    assert frob_norm(e.reconstruct() - H) <= 1e-10
    assert unitarity_residual(e.basis) <= 1e-12
    assert np.all(np.diff(e.values) <= 0)


def test_herm_eig_phase_convention(rng):
    e = herm_eig(rand_herm(rng, 6))
    for col in e.basis.T:
        first = col[np.flatnonzero(np.abs(col) > 1e-8)[0]]
        assert first.real > 0 and abs(first.imag) < 1e-14


def test_herm_eig_deterministic(rng):
    H = rand_herm(rng, 7)
    a, b = herm_eig(H, "jacobi"), herm_eig(H.copy(), "jacobi")
    assert np.array_equal(a.values, b.values) and np.array_equal(a.basis, b.basis)


def test_herm_eig_errors():
    with pytest.raises(ValidationError):
        herm_eig(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ToleranceError):
        jacobi_eigh(np.array([[1.0, 2.0], [2.0, 3.0]]), max_sweeps=0)


def test_unitary_eig_examples():
    assert_allclose(unitary_eig(-np.eye(2)).angles, [math.pi, math.pi])
    c, s = math.cos(math.pi / 3), math.sin(math.pi / 3)
    assert_allclose(unitary_eig(np.array([[c, -s], [s, c]])).angles, [math.pi / 3, -math.pi / 3])


@pytest.mark.parametrize("method", ["cayley", "split"])
def test_unitary_eig_random(method, rng):
    for n in (6, 12, 16):
        M = rand_unitary(rng, n)
        ue = unitary_eig(M, method)
        assert frob_norm(ue.reconstruct() - M) <= 1e-9
        assert np.all(np.diff(ue.angles) <= 0)
        assert np.all((ue.angles > -math.pi) & (ue.angles <= math.pi))


def test_unitary_eig_near_conjugate_pairs(rng):
    # angles 1 and -(1 + 3e-8) share a cosine cluster; the Cayley route keeps them apart
    V = rand_unitary(rng, 4)
    M = V @ np.diag(np.exp(1j * np.array([1.0, -(1.0 + 3e-8), 2.0, -0.5]))) @ V.conj().T
    assert frob_norm(unitary_eig(M).reconstruct() - M) <= 1e-12


def test_unitary_eig_clusters():
    ue = unitary_eig(np.diag(np.exp(1j * np.array([0.3, 0.3, -1.0, math.pi]))))
    assert [len(r) for r in ue.clusters()] == [1, 2, 1]
    assert list(ue.minus_one_indices()) == [0]


def test_unitary_eig_rejects_non_unitary():
    with pytest.raises(ValidationError):
        unitary_eig(np.diag([1.0, 2.0]))


def test_mat_exp_skew_examples(rng):
    assert_allclose(mat_exp_skew(np.zeros((3, 3))), np.eye(3))
    assert_allclose(mat_exp_skew(math.pi / 2 * OMEGA), OMEGA, atol=1e-15)
    X = rand_skew(rng, 6)
    assert frob_norm(mat_exp_skew(X) - mat_exp_general(X)) <= 1e-9
    assert frob_norm(mat_exp_skew(X) - scipy.linalg.expm(X)) <= 1e-9
    with pytest.raises(ValidationError):
        mat_exp_skew(np.eye(2))


def test_mat_exp_general(rng):
    assert_allclose(mat_exp_general(np.zeros((2, 2))), np.eye(2))
    assert_allclose(mat_exp_general([[1j * math.pi]]), [[-1]], atol=1e-15)
    A = rand_c(rng, 5)
    assert frob_norm(mat_exp_general(A) @ mat_exp_general(-A) - np.eye(5)) <= 1e-9
    with pytest.raises(ToleranceError):
        mat_exp_general(1e7 * np.eye(2))


def test_principal_log_angle():
    assert principal_log_angle(1) == 0
    assert principal_log_angle(-1) == math.pi
    assert principal_log_angle(complex(-1, -0.0)) == math.pi
    assert principal_log_angle(np.exp(-1j * math.pi / 4)) == pytest.approx(-math.pi / 4)
    with pytest.raises(ValidationError):
        principal_log_angle(2.0)


def test_tolerance_override_is_scoped():
    base = tolerances().angle
    with use_tolerances(angle=1e-5):
        assert tolerances().angle == 1e-5
    assert tolerances().angle == base


def test_split_route_loses_accuracy_on_close_conjugate_angles():
    # the cosine-clustering route mixes e^{i} and e^{-i(1+3e-8)}; Cayley does not
    from ulog.blocks import haar_unitary
    worst = {"cayley": 0.0, "split": 0.0}
    for s in range(20):
        V = haar_unitary(4, np.random.default_rng(s))
        M = V @ np.diag(np.exp(1j * np.array([1.0, -(1.0 + 3e-8), 2.0, -0.5]))) @ V.conj().T
        for m in worst:
            worst[m] = max(worst[m], frob_norm(unitary_eig(M, m).reconstruct() - M))
    assert worst["cayley"] <= 1e-12
    assert worst["split"] > 1e-9


def test_unitary_eig_conjugation_invariant(rng):
    M = rand_unitary(rng, 5)
    U = rand_unitary(rng, 5)
    assert_allclose(unitary_eig(U @ M @ U.conj().T).angles, unitary_eig(M).angles, atol=1e-10)


def test_mat_exp_skew_is_unitary(rng):
    for n in (2, 8, 16):
        E = mat_exp_skew(3 * rand_skew(rng, n))
        assert unitarity_residual(E) <= 1e-9 * n


def test_frob_norm_zero_iff_zero(rng):
    assert frob_norm(np.zeros((3, 3))) == 0
    assert frob_norm(rand_c(rng, 3)) > 0
