import numpy as np
import pytest

from ulog.blocks import haar_special_orthogonal, haar_unitary
from ulog.embeddings import e_phi, j_matrix, omega_blocks
from ulog.groups import GroupSpec
from ulog.linalg import direct_sum


def random_twisted_q(seed=11):
    """Q = A0 (J^{(1,1)} + E_{0.4}^{(1,1)} + Omega) A0^T, order 8."""
    rng = np.random.default_rng(seed)
    A0 = haar_special_orthogonal(8, rng)
    J = direct_sum(j_matrix(1, 1), e_phi(0.4, 1, 1), omega_blocks(1))
    return (A0 @ J @ A0.T).real


def random_centralizer_v(seed=12):
    """V with eigenvalues 1 (x2), i (x1), -1 (x2) in a random basis, order 5."""
    rng = np.random.default_rng(seed)
    R = haar_unitary(5, rng)
    return R @ np.diag([1, 1, 1j, -1, -1]) @ R.conj().T


def catalog():
    """One instance of every catalog family with ambient order <= 8."""
    return [
        GroupSpec.unitary(3),
        GroupSpec.unitary(4),
        GroupSpec.special_orthogonal(3),
        GroupSpec.special_orthogonal(4),
        GroupSpec.special_orthogonal(6),
        GroupSpec.compact_symplectic(2),
        GroupSpec.quaternion_unitary(2),
        GroupSpec.centralizer(random_centralizer_v()),
        GroupSpec.twisted(random_twisted_q()),
    ]


CATALOG = catalog()


@pytest.fixture(params=CATALOG, ids=lambda G: G.label() if G.kind not in ("centralizer", "twisted") else G.kind)
def group(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
