"""Dense complex linear algebra used by every other module.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; :func:`as_cmatrix`
is the single entry point that validates and converts.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .config import tolerances
from .errors import ToleranceError, ValidationError


def as_cmatrix(a, name: str = "matrix") -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValidationError(f"{name} must be a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValidationError(f"{name} has non-finite entries")
    return m


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def direct_sum(*blocks) -> np.ndarray:
    blocks = [np.atleast_2d(np.asarray(b, dtype=complex)) for b in blocks if np.size(b)]
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=complex)
    i = 0
    for b in blocks:
        k = b.shape[0]
        out[i:i + k, i:i + k] = b
        i += k
    return out


def frob_inner(A, B) -> float:
    """Real Frobenius product Re tr(A B^*)."""
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    if A.shape != B.shape:
        raise ValidationError(f"shape mismatch: {A.shape} vs {B.shape}")
    return float(np.real(np.vdot(B, A)))


def frob_norm(A) -> float:
    return float(np.linalg.norm(np.asarray(A, dtype=complex)))


def hermitian_residual(H: np.ndarray) -> float:
    return frob_norm(H - dagger(H))


def skew_residual(X: np.ndarray) -> float:
    return frob_norm(X + dagger(X))


def unitarity_residual(M: np.ndarray) -> float:
    return frob_norm(M @ dagger(M) - np.eye(M.shape[0]))


def check_unitary(M, name: str = "matrix") -> np.ndarray:
    M = as_cmatrix(M, name)
    n = M.shape[0]
    res = unitarity_residual(M)
    if res > tolerances().unitary * math.sqrt(n):
        raise ValidationError(f"{name} is not unitary (||MM*-I|| = {res:.3e})")
    return M


def check_skew_hermitian(X, name: str = "matrix") -> np.ndarray:
    X = as_cmatrix(X, name)
    res = skew_residual(X)
    if res > tolerances().membership * max(1.0, frob_norm(X)):
        raise ValidationError(f"{name} is not skew-Hermitian (||X+X*|| = {res:.3e})")
    return X


def cluster_runs(values, tol: float) -> list[list[int]]:
    """Group indices of a sorted sequence into runs with consecutive gaps <= tol."""
    runs: list[list[int]] = []
    for i, v in enumerate(values):
        if runs and abs(values[runs[-1][-1]] - v) <= tol:
            runs[-1].append(i)
        else:
            runs.append([i])
    return runs


# ---------------------------------------------------------------------------
# Hermitian eigenproblem


@dataclass(frozen=True)
class EigenDecomp:
    values: np.ndarray  # descending
    basis: np.ndarray   # unitary, columns are eigenvectors

    def reconstruct(self) -> np.ndarray:
        return (self.basis * self.values) @ dagger(self.basis)


def _fix_phases(basis: np.ndarray) -> np.ndarray:
    # first component above the noise floor made real and positive
    out = basis.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        idx = np.flatnonzero(np.abs(col) > 1e-8)
        if idx.size:
            c = col[idx[0]]
            out[:, j] = col * (np.conj(c) / abs(c))
    return out


def jacobi_eigh(H: np.ndarray, threshold: float | None = None, max_sweeps: int | None = None):
    """Cyclic two-sided Jacobi for a complex Hermitian matrix.

    Returns unsorted ``(values, vectors)``. Each rotation first removes the
    phase of the pivot ``H[p, q]`` and then applies a real Givens rotation.
    """
    tol = tolerances()
    threshold = tol.jacobi_threshold if threshold is None else threshold
    max_sweeps = tol.jacobi_max_sweeps if max_sweeps is None else max_sweeps
    A = np.array(H, dtype=complex)
    A = 0.5 * (A + dagger(A))
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    scale = max(frob_norm(A), np.finfo(float).tiny)
    for _ in range(max_sweeps):
        off = frob_norm(A - np.diag(np.diag(A)))
        if off <= threshold * scale:
            return np.real(np.diag(A)).copy(), V
        for p in range(n - 1):
            for q in range(p + 1, n):
                h = A[p, q]
                c = abs(h)
                if c <= 1e-300:
                    continue
                a, b = A[p, p].real, A[q, q].real
                phase = h / c
                theta = 0.5 * math.atan2(2.0 * c, a - b)
                cs, sn = math.cos(theta), math.sin(theta)
                R = np.array([[cs, -sn], [np.conj(phase) * sn, np.conj(phase) * cs]])
                idx = [p, q]
                A[:, idx] = A[:, idx] @ R
                A[idx, :] = dagger(R) @ A[idx, :]
                A[p, q] = A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
                V[:, idx] = V[:, idx] @ R
    raise ToleranceError(f"Jacobi did not converge in {max_sweeps} sweeps")


def herm_eig(H, method: str = "lapack") -> EigenDecomp:
    """Spectral decomposition of a Hermitian matrix, eigenvalues descending.

    ``method="lapack"`` uses ``numpy.linalg.eigh``; ``method="jacobi"`` uses the
    package's own cyclic Jacobi solver. Either way the eigenvector phases are
    normalized so the output is reproducible.
    """
    H = as_cmatrix(H, "H")
    if hermitian_residual(H) > tolerances().membership * max(1.0, frob_norm(H)):
        raise ValidationError("matrix is not Hermitian")
    H = 0.5 * (H + dagger(H))
    if method == "lapack":
        w, v = np.linalg.eigh(H)
    elif method == "jacobi":
        w, v = jacobi_eigh(H)
    else:
        raise ValidationError(f"unknown eigensolver {method!r}")
    order = np.argsort(-w, kind="stable")
    return EigenDecomp(values=np.asarray(w)[order], basis=_fix_phases(np.asarray(v)[:, order]))


# ---------------------------------------------------------------------------
# Unitary eigenproblem


def principal_log_angle(z: complex, tol: float | None = None) -> float:
    """Argument of a unit complex number in (-pi, pi]; -1 gives +pi."""
    tol = tolerances().unitary if tol is None else tol
    if abs(abs(z) - 1.0) > tol:
        raise ValidationError(f"|z| = {abs(z)!r} is not 1")
    theta = cmath.phase(z)
    if theta <= -math.pi + 4 * np.finfo(float).eps:
        theta = math.pi
    return theta


@dataclass(frozen=True)
class UnitaryEigen:
    angles: np.ndarray  # in (-pi, pi], descending
    basis: np.ndarray

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.exp(1j * self.angles)

    def reconstruct(self) -> np.ndarray:
        return (self.basis * self.eigenvalues) @ dagger(self.basis)

    def clusters(self, tol: float | None = None) -> list[list[int]]:
        """Index runs of equal angles; run lengths are the multiplicities."""
        tol = tolerances().angle if tol is None else tol
        return cluster_runs(self.angles, tol)

    def minus_one_indices(self, tol: float | None = None) -> np.ndarray:
        tol = tolerances().angle if tol is None else tol
        return np.flatnonzero(self.angles >= math.pi - tol)


def _split_basis(M: np.ndarray) -> np.ndarray:
    # Hermitian part first, then the skew part inside each cosine cluster.
    H = 0.5 * (M + dagger(M))
    S = (M - dagger(M)) / 2j
    eh = herm_eig(H)
    basis = eh.basis.copy()
    for run in cluster_runs(eh.values, 1e-8):
        if len(run) > 1:
            sub = basis[:, run]
            es = herm_eig(dagger(sub) @ S @ sub)
            basis[:, run] = sub @ es.basis
    return basis


def _cayley_basis(M: np.ndarray) -> np.ndarray:
    # i(w + M)(w - M)^{-1} is Hermitian with eigenvalue -cot((theta - beta)/2),
    # monotone in theta; w = e^{i beta} is put in the widest spectral gap.
    n = M.shape[0]
    ang = np.sort(np.angle(np.linalg.eigvals(M)))
    gaps = np.diff(np.concatenate([ang, ang[:1] + 2 * math.pi]))
    j = int(np.argmax(gaps))
    beta = ang[j] + 0.5 * gaps[j]
    w = cmath.exp(1j * beta)
    eye = np.eye(n)
    K = 1j * np.linalg.solve(w * eye - M, w * eye + M)
    K = 0.5 * (K + dagger(K))
    return herm_eig(K).basis


def unitary_eig(M, method: str = "cayley") -> UnitaryEigen:
    """Eigen-angles in (-pi, pi] (descending) and a common unitary eigenbasis.

    ``method="split"`` diagonalizes the Hermitian part (M + M^*)/2 and then the
    skew part within each cosine cluster. ``method="cayley"`` diagonalizes a
    Cayley transform of ``M`` instead, which keeps conjugate angle pairs apart
    even when they are nearly degenerate in cosine.
    """
    M = check_unitary(M, "M")
    if method == "cayley":
        basis = _cayley_basis(M)
    elif method == "split":
        basis = _split_basis(M)
    else:
        raise ValidationError(f"unknown unitary eigensolver {method!r}")
    # re-orthonormalize (cheap, removes drift from the transform)
    q, r = np.linalg.qr(basis)
    basis = q * (np.diag(r) / np.abs(np.diag(r)))
    diag = np.einsum("ij,ik,kj->j", basis.conj(), M, basis)
    angles = np.angle(diag)
    snap = tolerances().angle
    angles = np.where(np.abs(angles) >= math.pi - snap, math.pi, angles)
    order = np.argsort(-angles, kind="stable")
    angles = angles[order]
    basis = _fix_phases(basis[:, order])
    residual = frob_norm((basis * np.exp(1j * angles)) @ dagger(basis) - M)
    if residual > 1e-6 * math.sqrt(M.shape[0]):
        raise ToleranceError(f"unitary eigendecomposition inconsistent (residual {residual:.3e})")
    return UnitaryEigen(angles=angles, basis=basis)


# ---------------------------------------------------------------------------
# Exponentials


def mat_exp_skew(X) -> np.ndarray:
    """exp(X) for skew-Hermitian X, through the spectrum of the Hermitian iX."""
    X = check_skew_hermitian(X, "X")
    X = 0.5 * (X - dagger(X))
    e = herm_eig(1j * X)
    return (e.basis * np.exp(-1j * e.values)) @ dagger(e.basis)


def mat_exp_general(A) -> np.ndarray:
    """exp(A) by scaling and squaring of a truncated Taylor series.

    Only used as an independent cross-check for the spectral exponentials.
    """
    A = as_cmatrix(A, "A")
    norm = float(np.linalg.norm(A, 1))
    if norm > 1e6:
        raise ToleranceError(f"norm {norm:.3e} too large for the series exponential")
    s = max(0, int(math.ceil(math.log2(norm / 0.25))) if norm > 0.25 else 0)
    B = A / (2.0 ** s)
    n = A.shape[0]
    term = np.eye(n, dtype=complex)
    out = term.copy()
    for k in range(1, 30):
        term = term @ B / k
        out = out + term
        if np.max(np.abs(term)) < 1e-18 * max(1.0, np.max(np.abs(out))):
            break
    for _ in range(s):
        out = out @ out
    return out
