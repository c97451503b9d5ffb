"""Block-diagonal normal forms of the catalog groups.

Every catalog group is ``Ad_Z`` of a direct sum of standard blocks:

* ``unitary``    U_s (complex matrices)
* ``orthogonal`` SO_s (real matrices)
* ``complex``    rho(U_c), real matrices of order 2c commuting with Omega^{(+)c}
* ``quaternion`` Psi(U_k(H)), complex matrices of order 2k with X Omega = Omega conj(X)

This module holds the per-block kernels: sampling, membership, and the
torus-aligned logarithm of a block together with its branch flips.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import tolerances
from .embeddings import decomplexify, omega_blocks, quaternion_conj_map, recomplexify
from .errors import ToleranceError, ValidationError
from .linalg import cluster_runs, dagger, direct_sum, frob_norm, unitary_eig

KINDS = ("unitary", "orthogonal", "complex", "quaternion")


@dataclass(frozen=True)
class Block:
    kind: str
    start: int
    size: int

    @property
    def sl(self) -> slice:
        return slice(self.start, self.start + self.size)


@dataclass(frozen=True)
class BlockStructure:
    """``G = Ad_Z(blocks)``: a unitary conjugator plus the diagonal block layout."""

    Z: np.ndarray
    blocks: tuple

    @property
    def order(self) -> int:
        return self.Z.shape[0]

    def split(self, M, check: bool = True) -> list[np.ndarray]:
        """Diagonal blocks of Z^* M Z; refuses matrices that are not block diagonal."""
        N = dagger(self.Z) @ M @ self.Z
        if check:
            off = N.copy()
            for b in self.blocks:
                off[b.sl, b.sl] = 0
            res = frob_norm(off)
            if res > tolerances().membership * math.sqrt(self.order) * max(1.0, frob_norm(M)):
                raise ValidationError(f"matrix is not block diagonal in the group frame (residual {res:.3e})")
        return [N[b.sl, b.sl] for b in self.blocks]

    def join(self, parts) -> np.ndarray:
        return self.Z @ direct_sum(*parts) @ dagger(self.Z)


# ---------------------------------------------------------------------------
# membership of a single block


def quaternion_residual(X) -> float:
    """||X Omega - Omega conj(X)||_F for the block Omega^{(+)k}."""
    W = omega_blocks(X.shape[0] // 2)
    return frob_norm(X @ W - W @ X.conj())


def complex_residual(X) -> float:
    """Distance of a matrix from the image of decomplexify (including its imaginary part)."""
    return frob_norm(decomplexify(recomplexify(X.real)) - X)


def block_form_residual(kind: str, X) -> float:
    if kind == "unitary":
        return 0.0
    if kind == "orthogonal":
        return frob_norm(X.imag)
    if kind == "complex":
        return complex_residual(X)
    if kind == "quaternion":
        return quaternion_residual(X)
    raise ValidationError(f"unknown block kind {kind!r}")


# ---------------------------------------------------------------------------
# sampling


def haar_unitary(n: int, rng) -> np.ndarray:
    """Haar unitary via QR of a complex Ginibre matrix with R-diagonal phase fix."""
    g = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    return q * (d / np.abs(d))


def haar_special_orthogonal(n: int, rng) -> np.ndarray:
    g = rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def symplectic_gram_schmidt(vectors, tol: float = 0.5) -> np.ndarray:
    """Orthonormal frame [w_1, J w_1, w_2, J w_2, ...] from the given columns.

    Columns that are (numerically) in the span of the frame built so far are
    skipped; ``tol`` is the minimal residual norm relative to the input norm.
    """
    vectors = np.asarray(vectors, dtype=complex)
    frame: list[np.ndarray] = []
    for v in vectors.T:
        u = v.copy()
        for _ in range(2):  # twice is enough
            for f in frame:
                u = u - f * np.vdot(f, u)
        nu = np.linalg.norm(u)
        if nu <= tol * max(np.linalg.norm(v), 1e-300):
            continue
        u = u / nu
        frame.extend([u, quaternion_conj_map(u)])
    if not frame:
        return np.zeros((vectors.shape[0], 0), dtype=complex)
    return np.column_stack(frame)


def haar_quaternion(k: int, rng) -> np.ndarray:
    """Haar element of Psi(U_k(H)) by quaternionic Gram-Schmidt of a Gaussian."""
    g = (rng.standard_normal((2 * k, k)) + 1j * rng.standard_normal((2 * k, k))) / math.sqrt(2)
    out = symplectic_gram_schmidt(g, tol=1e-8)
    if out.shape[1] != 2 * k:  # measure-zero event
        raise ToleranceError("degenerate quaternion sample")
    return out


def block_haar(kind: str, size: int, rng) -> np.ndarray:
    if kind == "unitary":
        return haar_unitary(size, rng)
    if kind == "orthogonal":
        return haar_special_orthogonal(size, rng).astype(complex)
    if kind == "complex":
        return decomplexify(haar_unitary(size // 2, rng)).astype(complex)
    if kind == "quaternion":
        return haar_quaternion(size // 2, rng)
    raise ValidationError(f"unknown block kind {kind!r}")


def block_algebra_sample(kind: str, size: int, rng) -> np.ndarray:
    if kind == "unitary":
        g = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
        return 0.5 * (g - dagger(g))
    if kind == "orthogonal":
        g = rng.standard_normal((size, size))
        return (0.5 * (g - g.T)).astype(complex)
    if kind == "complex":
        c = size // 2
        g = rng.standard_normal((c, c)) + 1j * rng.standard_normal((c, c))
        return decomplexify(0.5 * (g - dagger(g))).astype(complex)
    if kind == "quaternion":
        g = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
        W = omega_blocks(size // 2)
        g = 0.5 * (g + W @ g.conj() @ W.T)  # project onto Psi-form
        return 0.5 * (g - dagger(g))
    raise ValidationError(f"unknown block kind {kind!r}")


# ---------------------------------------------------------------------------
# torus-aligned logarithms of one block


@dataclass
class BlockLog:
    """Canonical logarithm of a block plus its independent branch flips.

    ``units[i]`` is the correction that flips the i-th branch at -1
    (an eigenvector for unitary/complex blocks, a pi-plane for orthogonal
    blocks, a quaternionic line for quaternion blocks).
    """

    kind: str
    canonical: np.ndarray
    units: list = field(default_factory=list)
    frame: np.ndarray | None = None
    minus: np.ndarray | None = None   # basis of the -1 eigenspace used for labels
    multiplicity: int = 0             # multiplicity of -1 in the block

    @property
    def count(self) -> int:
        return len(self.units)


def _angle_runs(angles, tol):
    runs = cluster_runs(angles, tol)
    for a, b in zip(runs, runs[1:]):
        gap = angles[a[-1]] - angles[b[0]]
        if tol < gap < 10 * tol:
            raise ToleranceError("eigen-angles are neither equal nor separated at the working tolerance")
    return runs


def _unitary_log(N):
    ue = unitary_eig(N)
    tol = tolerances().angle
    _angle_runs(ue.angles, tol)
    minus = ue.minus_one_indices(tol)
    angles = ue.angles.copy()
    angles[minus] = math.pi
    V = ue.basis
    L = (V * (1j * angles)) @ dagger(V)
    E = V[:, minus]
    units = [-2j * math.pi * np.outer(e, e.conj()) for e in E.T]
    return L, units, V, E


def _real_basis(W: np.ndarray, dim: int) -> np.ndarray:
    """Real orthonormal basis of a conjugation-invariant complex subspace."""
    if dim == 0:
        return np.zeros((W.shape[0], 0))
    u, s, _ = np.linalg.svd(np.hstack([W.real, W.imag]))
    return u[:, :dim]


def _orthogonal_log(N):
    tol = tolerances().angle
    ue = unitary_eig(N)
    runs = _angle_runs(ue.angles, tol)
    planes, angles, zero_cols = [], [], []
    minus_basis = np.zeros((N.shape[0], 0))
    for run in runs:
        theta = float(np.mean(ue.angles[run]))
        W = ue.basis[:, run]
        if theta >= math.pi - tol:
            if len(run) % 2:
                raise ValidationError("-1 has odd multiplicity: the block is not in SO")
            minus_basis = _real_basis(W, len(run))
        elif abs(theta) <= tol:
            zero_cols.append(_real_basis(W, len(run)))
        elif theta > 0:
            for v in W.T:
                planes.append(math.sqrt(2) * np.column_stack([v.real, -v.imag]))
                angles.append(theta)
    m = minus_basis.shape[1] // 2
    cols = [minus_basis] + planes + zero_cols
    F = np.hstack([c for c in cols if c.size] or [np.zeros((N.shape[0], 0))])
    q, r = np.linalg.qr(F)
    F = q * np.sign(np.diag(r))
    Om = np.array([[0.0, -1.0], [1.0, 0.0]])
    nz = sum(c.shape[1] for c in zero_cols)
    core = direct_sum(*([math.pi * Om] * m + [a * Om for a in angles]), np.zeros((nz, nz))).real
    L = F @ core @ F.T
    units = []
    for j in range(m):
        P = F[:, 2 * j:2 * j + 2]
        units.append((-2 * math.pi * P @ Om @ P.T).astype(complex))
    return L.astype(complex), units, F.astype(complex), F[:, :2 * m], 2 * m


def _quaternion_log(N):
    tol = tolerances().angle
    ue = unitary_eig(N)
    runs = _angle_runs(ue.angles, tol)
    cols, diag = [], []
    minus_frame = np.zeros((N.shape[0], 0), dtype=complex)
    for run in runs:
        theta = float(np.mean(ue.angles[run]))
        W = ue.basis[:, run]
        if theta >= math.pi - tol or abs(theta) <= tol:
            frame = symplectic_gram_schmidt(W)
            if frame.shape[1] != len(run):
                raise ToleranceError("eigenspace is not closed under the quaternionic structure")
            value = math.pi if theta >= math.pi - tol else 0.0
            if value:
                minus_frame = frame
            cols.append(frame)
            diag.extend([1j * value, -1j * value] * (len(run) // 2))
        elif theta > 0:
            for v in W.T:
                cols.append(np.column_stack([v, quaternion_conj_map(v)]))
                diag.extend([1j * theta, -1j * theta])
    F = np.hstack(cols)
    if F.shape[1] != N.shape[0]:
        raise ToleranceError("eigenvalues of a quaternion block do not pair up")
    L = (F * np.array(diag)) @ dagger(F)
    units = []
    for j in range(minus_frame.shape[1] // 2):
        w, jw = minus_frame[:, 2 * j], minus_frame[:, 2 * j + 1]
        units.append(-2j * math.pi * (np.outer(w, w.conj()) - np.outer(jw, jw.conj())))
    return L, units, F, minus_frame, minus_frame.shape[1]


def block_log(kind: str, N) -> BlockLog:
    """Canonical torus-aligned principal logarithm of one block."""
    if kind == "unitary":
        L, units, V, E = _unitary_log(N)
        return BlockLog(kind, L, units, V, E, E.shape[1])
    if kind == "complex":
        u = recomplexify(N.real)
        L, units, V, E = _unitary_log(u)
        return BlockLog(kind, decomplexify(L).astype(complex),
                        [decomplexify(d).astype(complex) for d in units],
                        decomplexify(V).astype(complex), E, 2 * E.shape[1])
    if kind == "orthogonal":
        L, units, F, A, mult = _orthogonal_log(N.real)
        return BlockLog(kind, L, units, F, A, mult)
    if kind == "quaternion":
        L, units, F, E, mult = _quaternion_log(N)
        return BlockLog(kind, L, units, F, E, mult)
    raise ValidationError(f"unknown block kind {kind!r}")


# ---------------------------------------------------------------------------
# component labels


def pfaffian(A) -> float:
    """Pfaffian of a real skew-symmetric matrix (Parlett-Reid elimination)."""
    A = np.array(A, dtype=float)
    n = A.shape[0]
    if n % 2:
        return 0.0
    pf = 1.0
    for k in range(0, n - 1, 2):
        kp = k + 1 + int(np.argmax(np.abs(A[k + 1:, k])))
        if kp != k + 1:
            A[[k + 1, kp], :] = A[[kp, k + 1], :]
            A[:, [k + 1, kp]] = A[:, [kp, k + 1]]
            pf = -pf
        if A[k + 1, k] == 0.0:
            return 0.0
        pf *= A[k, k + 1]
        if k + 2 < n:
            tau = A[k, k + 2:] / A[k, k + 1]
            A[k + 2:, k + 2:] += np.outer(tau, A[k + 2:, k + 1])
            A[k + 2:, k + 2:] -= np.outer(A[k + 2:, k + 1], tau)
    return pf


def plus_ipi_count(E, L) -> int:
    """Multiplicity of +i*pi of L restricted to span(E) (E orthonormal, L-invariant)."""
    if E.shape[1] == 0:
        return 0
    B = dagger(E) @ L @ E
    P = 0.5 * (np.eye(B.shape[0]) - 1j * B / math.pi)
    s = np.linalg.svd(P, compute_uv=False)
    return int(np.sum(s >= tolerances().rank))


def orientation_label(A, L) -> int:
    """0 when L restricted to span(A) has the orientation of pi Omega^{(+)m} in the frame A, else 1."""
    m = A.shape[1] // 2
    if m == 0:
        return 0
    S = (A.T @ L @ A).real / math.pi
    pf = pfaffian(S)
    if abs(abs(pf) - 1.0) > 1e-4:
        raise ToleranceError(f"restriction to the -1 eigenspace is not a complex structure (Pf = {pf:.3e})")
    return 0 if pf * (-1) ** m > 0 else 1


def block_label(log: BlockLog, Lb) -> int | None:
    if log.kind == "unitary":
        return plus_ipi_count(log.minus, Lb)
    if log.kind == "complex":
        return plus_ipi_count(log.minus, recomplexify(Lb.real))
    if log.kind == "orthogonal":
        return orientation_label(log.minus, Lb)
    return None
