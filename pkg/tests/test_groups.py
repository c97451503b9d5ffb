import json
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import CATALOG, random_centralizer_v, random_twisted_q
from ulog.blocks import haar_special_orthogonal, pfaffian
from ulog.config import use_tolerances
from ulog.embeddings import OMEGA, e_phi, j_matrix, omega_blocks, rotation
from ulog.errors import ToleranceError, ValidationError
from ulog.groups import (
    GroupSpec, algebra_contains, algebra_sample, contains, haar_sample, parse_group_spec,
    require_algebra, require_member,
)
from ulog.io import write_matrix
from ulog.jordan import RealJordanForm, centralizer_structure, real_jordan_form, twisted_structure
from ulog.linalg import direct_sum, frob_norm


# --- normal forms -----------------------------------------------------------

def test_real_jordan_form_of_identity():
    r = real_jordan_form(np.eye(3))
    assert (r.p, r.q, r.k, r.rotation_blocks) == (3, 0, 0, ())


def test_real_jordan_form_omega():
    r = real_jordan_form(omega_blocks(2).real)
    assert (r.p, r.q, r.k) == (0, 0, 2)


def test_real_jordan_form_rotations(rng):
    # rotation by 2.5 > pi/2 is -E_{pi - 2.5}: a nu plane
    J = direct_sum(j_matrix(1, 2), rotation(0.4), rotation(2.5), rotation(0.4), OMEGA).real
    A0 = haar_special_orthogonal(J.shape[0], rng)
    Q = A0 @ J @ A0.T
    r = real_jordan_form(Q)
    assert (r.p, r.q, r.k) == (1, 2, 1)
    phis = sorted(b[0] for b in r.rotation_blocks)
    assert_allclose(phis, [0.4, math.pi - 2.5], atol=1e-10)
    assert {(mu, nu) for _, mu, nu in r.rotation_blocks} == {(0, 1), (2, 0)}
    assert frob_norm(r.reconstruct() - Q) <= 1e-10
    assert frob_norm(r.A.T @ r.A - np.eye(J.shape[0])) <= 1e-12
    assert r.order == Q.shape[0]


def test_real_jordan_form_json_roundtrip():
    r = real_jordan_form(random_twisted_q())
    s = RealJordanForm.from_json(json.loads(json.dumps(r.to_json())))
    assert frob_norm(s.reconstruct() - r.reconstruct()) == 0


def test_real_jordan_form_ambiguous_angle():
    Q = direct_sum(rotation(math.pi / 2 + 5e-7), np.eye(1)).real
    with pytest.raises(ToleranceError):
        real_jordan_form(Q)


def test_real_jordan_form_rejects_complex():
    with pytest.raises(ValidationError):
        real_jordan_form(np.diag([1, 1j]))


def test_twisted_structure_blocks():
    ts = twisted_structure(random_twisted_q())
    assert ts.so_size == 2 and ts.u_sizes == (2,) and ts.quat_size == 1
    assert [b.kind for b in ts.block_structure().blocks] == ["orthogonal", "complex", "quaternion"]


def test_centralizer_structure_example():
    cs = centralizer_structure(np.diag([1, 1, 1j]))
    assert [n for _, n in cs.eigenvalue_blocks] == [2, 1]
    assert_allclose([l for l, _ in cs.eigenvalue_blocks], [1, 1j], atol=1e-15)


# --- catalog ----------------------------------------------------------------

@pytest.mark.parametrize("G, dim", [
    (GroupSpec.unitary(3), 9),
    (GroupSpec.special_orthogonal(5), 10),
    (GroupSpec.compact_symplectic(2), 10),
    (GroupSpec.quaternion_unitary(2), 10),
    (GroupSpec.centralizer(random_centralizer_v()), 9),
    (GroupSpec.twisted(random_twisted_q()), 8),
])
def test_algebra_dimension(G, dim):
    assert G.dimension == dim
    B = G.algebra_basis
    gram = np.einsum("ikl,jkl->ij", B, B.conj()).real
    assert_allclose(gram, np.eye(dim), atol=1e-10)


def test_compact_symplectic_relation():
    G = GroupSpec.compact_symplectic(1)
    assert contains(G, np.eye(2))
    assert contains(G, omega_blocks(1))
    # Sp(1) = SU(2)
    assert not contains(G, np.diag([1, 1j]))
    assert contains(G, np.diag([1j, -1j]))


def test_special_orthogonal_rejects_reflection():
    G = GroupSpec.special_orthogonal(3)
    assert not contains(G, np.diag([1, 1, -1]))
    assert contains(G, np.diag([1, -1, -1]))
    with pytest.raises(ValidationError):
        require_member(G, np.diag([1, 1, -1]))
    with pytest.raises(ValidationError):
        require_member(G, np.eye(4))


def test_haar_and_algebra_samples(group):
    for s in range(3):
        assert contains(group, haar_sample(group, s))
        assert algebra_contains(group, algebra_sample(group, s))
    assert np.array_equal(haar_sample(group, 5), haar_sample(group, 5))


def test_require_algebra():
    G = GroupSpec.special_orthogonal(2)
    require_algebra(G, OMEGA)
    with pytest.raises(ValidationError):
        require_algebra(G, 1j * np.eye(2))


def test_membership_tolerance_override():
    G = GroupSpec.unitary(2)
    M = np.diag([1 + 1e-6, 1])
    assert not contains(G, M)
    with use_tolerances(membership=1e-5):
        assert contains(G, M)


def test_parse_group_spec(tmp_path):
    assert parse_group_spec("unitary:3").ambient_order == 3
    assert parse_group_spec(" compact-symplectic : 2 ").ambient_order == 4
    assert parse_group_spec("quaternion-unitary:1").dimension == 3
    path = tmp_path / "v.json"
    write_matrix(path, np.diag([1, 1, 1j]))
    G = parse_group_spec(f"centralizer:{path}")
    assert G.dimension == 5 and G.label() == f"centralizer:{path}"
    write_matrix(path, random_twisted_q())
    assert parse_group_spec(f"twisted:{path}").dimension == 8
    for bad in ("unitary", "unitary:0", "unitary:x", "spin:3", f"centralizer:{tmp_path}/missing.json"):
        with pytest.raises(ValidationError):
            parse_group_spec(bad)


def test_twisted_rejects_nonorthogonal():
    with pytest.raises(ValidationError):
        GroupSpec.twisted(np.diag([1, 2]))
    with pytest.raises(ValidationError):
        GroupSpec.centralizer(np.ones((2, 2)))


def test_pfaffian():
    assert pfaffian(OMEGA.T) == 1.0
    assert pfaffian(omega_blocks(3).real) == pytest.approx(-1.0)
    A = np.array([[0, 1, 2, 3], [-1, 0, 4, 5], [-2, -4, 0, 6], [-3, -5, -6, 0]], dtype=float)
    assert pfaffian(A) == pytest.approx(1 * 6 - 2 * 5 + 3 * 4)
    assert pfaffian(A) ** 2 == pytest.approx(np.linalg.det(A))
    assert pfaffian(np.zeros((3, 3))) == 0.0


def test_catalog_is_complete():
    assert {G.kind for G in CATALOG} == {
        "unitary", "special-orthogonal", "compact-symplectic", "quaternion-unitary", "centralizer", "twisted"}
    assert max(G.ambient_order for G in CATALOG) <= 8


# --- further catalog examples and invariants --------------------------------

def test_parse_matrix_kinds(tmp_path):
    p = tmp_path / "i3.json"
    write_matrix(p, np.eye(3))
    T = parse_group_spec(f"twisted:{p}")
    S = GroupSpec.special_orthogonal(3)
    assert T.dimension == S.dimension == 3
    assert contains(T, np.diag([1, -1, -1])) and not contains(T, np.diag([1, 1, -1]))
    write_matrix(p, np.diag([1.0, 2.0]))
    with pytest.raises(ValidationError):
        parse_group_spec(f"centralizer:{p}")


def test_membership_examples():
    assert contains(GroupSpec.unitary(2), OMEGA)
    assert contains(GroupSpec.quaternion_unitary(1), np.diag([1j, -1j]))
    assert algebra_contains(GroupSpec.special_orthogonal(2), math.pi * OMEGA)
    assert algebra_contains(GroupSpec.centralizer(np.diag([1, 1j])), np.diag([1j * math.pi, 1j * math.pi]))
    assert not algebra_contains(GroupSpec.centralizer(np.diag([1, 1j])), 1j * np.ones((2, 2)))


def test_twisted_algebra_is_traceless():
    G = GroupSpec.twisted(random_twisted_q())
    for s in range(10):
        assert abs(np.trace(algebra_sample(G, s))) <= 1e-10


def test_jordan_small_cases():
    r = real_jordan_form(np.eye(2))
    assert (r.p, r.q, r.rotation_blocks, r.k) == (2, 0, (), 0)
    r = real_jordan_form(OMEGA)
    assert (r.p, r.q, r.rotation_blocks, r.k) == (0, 0, (), 1)


def test_jordan_recovers_random_forms():
    rng = np.random.default_rng(21)
    for _ in range(20):
        p, q, k = rng.integers(0, 3, 3)
        phis = np.sort(rng.uniform(0.1, 1.4, rng.integers(0, 3)))
        if len(phis) > 1 and np.min(np.diff(phis)) < 1e-3:
            continue
        mus = rng.integers(0, 3, len(phis))
        nus = [rng.integers(0 if m else 1, 3) for m in mus]
        parts = ([j_matrix(p, q)] if p + q else []) + [e_phi(f, m, n) for f, m, n in zip(phis, mus, nus)]
        parts += [omega_blocks(k)] if k else []
        if not parts:
            continue
        J = direct_sum(*parts).real
        A0 = haar_special_orthogonal(J.shape[0], rng)
        r = real_jordan_form(A0 @ J @ A0.T)
        assert (r.p, r.q, r.k) == (p, q, k)
        assert [(mu, nu) for _, mu, nu in r.rotation_blocks] == list(zip(mus, nus))
        assert_allclose([b[0] for b in r.rotation_blocks], phis, atol=1e-9)
        assert frob_norm(r.reconstruct() - A0 @ J @ A0.T) <= 1e-9


def test_twisted_structure_examples():
    ts = twisted_structure(np.eye(3))
    assert (ts.so_size, ts.u_sizes, ts.quat_size) == (3, (), 0)
    assert frob_norm(ts.Z - np.eye(3)) <= 1e-12
    ts = twisted_structure(omega_blocks(2).real)
    assert (ts.so_size, ts.u_sizes, ts.quat_size) == (0, (), 2)
    Q = direct_sum(e_phi(math.pi / 3, 1), np.eye(1)).real
    ts = twisted_structure(Q)
    assert (ts.so_size, ts.u_sizes, ts.quat_size) == (1, (1,), 0)
    G = GroupSpec.twisted(Q)
    for s in range(10):
        assert contains(G, haar_sample(G, s))


def test_centralizer_examples():
    cs = centralizer_structure(np.eye(4))
    assert len(cs.eigenvalue_blocks) == 1 and cs.eigenvalue_blocks[0][1] == 4
    V = random_centralizer_v()
    G = GroupSpec.centralizer(V)
    for s in range(10):
        M = haar_sample(G, s)
        assert frob_norm(M @ V - V @ M) <= 1e-9


def test_haar_seed_contract(group):
    for s in range(100):
        assert contains(group, haar_sample(group, s))
    assert frob_norm(haar_sample(group, 1) - haar_sample(group, 2)) > 1e-6


def test_twisted_membership_matches_block_form(rng):
    G = GroupSpec.twisted(random_twisted_q())
    S = G.structure
    for s in range(10):
        M = haar_sample(G, s)
        assert contains(G, M)
        assert abs(np.linalg.det(M) - 1) <= 1e-10
        S.split(M)
    from ulog.blocks import haar_unitary
    U = haar_unitary(8, rng)
    assert not contains(G, U)
    with pytest.raises(ValidationError):
        S.split(U)


def test_fixed_points_of_ad_v_are_centralizer_algebra(rng):
    from ulog.embeddings import apply_automorphism
    V = random_centralizer_v()
    G = GroupSpec.centralizer(V)
    for s in range(10):
        X = algebra_sample(G, s)
        assert frob_norm(apply_automorphism("adV", V, X) - X) <= 1e-9
    Y = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    Y = Y - Y.conj().T
    assert frob_norm(apply_automorphism("adV", V, Y) - Y) > 1e-3
    assert not algebra_contains(G, Y)
    # the average over the cyclic group generated by V projects onto the fixed points
    P = sum(np.linalg.matrix_power(V, j) @ Y @ np.linalg.matrix_power(V, j).conj().T for j in range(4)) / 4
    assert algebra_contains(G, P)


def test_fixed_points_of_ad_v_conj_are_twisted_algebra():
    from ulog.embeddings import apply_automorphism
    Q = random_twisted_q()
    G = GroupSpec.twisted(Q)
    for s in range(10):
        X = algebra_sample(G, s)
        assert frob_norm(apply_automorphism("adV∘conj", Q, X) - X) <= 1e-9


def test_commutant_of_omega_blocks(rng):
    n = 3
    W = omega_blocks(n)
    blocks = [[(a * np.eye(2) + b * OMEGA) for a, b in rng.standard_normal((n, 2))] for _ in range(n)]
    X = np.block(blocks)
    assert frob_norm(X @ W - W @ X) <= 1e-12
    Y = X.copy()
    Y[0, 0] += 0.1
    assert frob_norm(Y @ W - W @ Y) > 1e-3


def _anticommutant_dim(E):
    m = E.shape[0]
    K = np.kron(np.eye(m), E) + np.kron(E.T, np.eye(m))  # vec(XE + EX) for row-major X
    return m * m - np.linalg.matrix_rank(K, tol=1e-10)


def test_anticommutant_rigidity():
    for phi in (0.3, 1.0, 2.0, math.pi):
        assert _anticommutant_dim(e_phi(phi, 2)) == 0
    assert _anticommutant_dim(e_phi(math.pi / 2, 2)) > 0
