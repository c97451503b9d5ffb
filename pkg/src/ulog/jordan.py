"""Normal forms of the defining matrices.

``real_jordan_form`` brings a real orthogonal Q to
J^{(p,q)} (+) [(+)_j E_{phi_j}^{(mu_j, nu_j)}] (+) Omega^{(+)k} with 0 < phi_1 < ... < pi/2.
``twisted_structure`` and ``centralizer_structure`` turn the normal forms into
block layouts of the associated groups.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .blocks import Block, BlockStructure
from .config import tolerances
from .embeddings import e_phi, j_matrix, omega_blocks, w_matrix
from .errors import ToleranceError, ValidationError
from .io import matrix_from_json, matrix_to_json
from .linalg import as_cmatrix, check_unitary, cluster_runs, direct_sum, frob_norm, unitary_eig


def check_real_orthogonal(Q, name: str = "Q") -> np.ndarray:
    Q = check_unitary(Q, name)
    if frob_norm(Q.imag) > tolerances().membership * math.sqrt(Q.shape[0]):
        raise ValidationError(f"{name} is not real")
    return Q.real.copy()


@dataclass(frozen=True)
class RealJordanForm:
    p: int
    q: int
    k: int
    rotation_blocks: tuple  # of (phi, mu, nu)
    A: np.ndarray           # real orthogonal, Q = A J A^T

    @property
    def order(self) -> int:
        return self.p + self.q + 2 * sum(mu + nu for _, mu, nu in self.rotation_blocks) + 2 * self.k

    def canonical(self) -> np.ndarray:
        parts = []
        if self.p + self.q:
            parts.append(j_matrix(self.p, self.q))
        parts += [e_phi(phi, mu, nu) for phi, mu, nu in self.rotation_blocks]
        if self.k:
            parts.append(omega_blocks(self.k))
        return direct_sum(*parts)

    def reconstruct(self) -> np.ndarray:
        return self.A @ self.canonical() @ self.A.T

    def to_json(self) -> dict:
        return {
            "p": self.p, "q": self.q, "k": self.k,
            "blocks": [{"phi": float(phi), "mu": mu, "nu": nu} for phi, mu, nu in self.rotation_blocks],
            "A": matrix_to_json(self.A),
        }

    @classmethod
    def from_json(cls, obj) -> "RealJordanForm":
        blocks = tuple((float(b["phi"]), int(b["mu"]), int(b["nu"])) for b in obj["blocks"])
        return cls(int(obj["p"]), int(obj["q"]), int(obj["k"]), blocks, matrix_from_json(obj["A"]).real)


def _classify(alpha: float, tol: float) -> str:
    # alpha in [0, pi]
    for name, centre in (("one", 0.0), ("quarter", math.pi / 2), ("minus", math.pi)):
        d = abs(alpha - centre)
        if d <= tol:
            return name
        if d < 10 * tol:
            raise ToleranceError(f"rotation angle {alpha!r} too close to {centre!r} to classify")
    return "mu" if alpha < math.pi / 2 else "nu"


def real_jordan_form(Q) -> RealJordanForm:
    Q = check_real_orthogonal(Q)
    n = Q.shape[0]
    tol = tolerances().angle
    T, S = scipy.linalg.schur(Q, output="real")
    ones, minus, quarters, rot = [], [], [], []  # rot: (phi, is_nu, plane)
    i = 0
    while i < n:
        if i + 1 < n and T[i + 1, i] != 0.0:
            blk = T[i:i + 2, i:i + 2]
            x, y = S[:, i].copy(), S[:, i + 1].copy()
            if blk[1, 0] < 0:  # make the restriction a rotation by +alpha
                y = -y
            alpha = math.atan2(0.5 * (abs(blk[1, 0]) + abs(blk[0, 1])), 0.5 * (blk[0, 0] + blk[1, 1]))
            cls = _classify(alpha, tol)
            if cls == "one":
                ones += [x, y]
            elif cls == "minus":
                minus += [x, y]
            elif cls == "quarter":
                quarters.append(np.column_stack([x, y]))
            elif cls == "mu":
                rot.append((alpha, 0, np.column_stack([x, y])))
            else:  # Q acts as -E_phi on (x, -y)
                rot.append((math.pi - alpha, 1, np.column_stack([x, -y])))
            i += 2
        else:
            (ones if T[i, i] > 0 else minus).append(S[:, i].copy())
            i += 1
    rot.sort(key=lambda r: r[0])
    phis = [r[0] for r in rot]
    runs = cluster_runs(phis, tol)
    for a, b in zip(runs, runs[1:]):
        if phis[b[0]] - phis[a[-1]] < 10 * tol:
            raise ToleranceError("rotation angles neither equal nor separated at the working tolerance")
    cols = ones + minus
    blocks = []
    for run in runs:
        members = [rot[i] for i in run]
        mu_planes = [r[2] for r in members if r[1] == 0]
        nu_planes = [r[2] for r in members if r[1] == 1]
        blocks.append((float(np.mean([r[0] for r in members])), len(mu_planes), len(nu_planes)))
        for P in mu_planes + nu_planes:
            cols += [P[:, 0], P[:, 1]]
    for P in quarters:
        cols += [P[:, 0], P[:, 1]]
    A = np.column_stack(cols) if cols else np.zeros((n, 0))
    # cleanup: the Schur vectors are orthonormal up to round-off
    q_, r_ = np.linalg.qr(A)
    A = q_ * np.sign(np.diag(r_))
    rjf = RealJordanForm(len(ones), len(minus), len(quarters), tuple(blocks), A)
    res = frob_norm(rjf.reconstruct() - Q)
    if res > 10 * tol * math.sqrt(n):
        raise ToleranceError(f"real Jordan form does not reconstruct Q (residual {res:.3e})")
    return rjf


@dataclass(frozen=True)
class TwistedStructure:
    Z: np.ndarray
    so_size: int
    u_sizes: tuple
    quat_size: int
    jordan: RealJordanForm | None = None

    @property
    def block_sizes(self):
        return (self.so_size, list(self.u_sizes), self.quat_size)

    def block_structure(self) -> BlockStructure:
        blocks, start = [], 0
        if self.so_size:
            blocks.append(Block("orthogonal", start, self.so_size))
            start += self.so_size
        for c in self.u_sizes:
            blocks.append(Block("complex", start, 2 * c))
            start += 2 * c
        if self.quat_size:
            blocks.append(Block("quaternion", start, 2 * self.quat_size))
        return BlockStructure(self.Z, tuple(blocks))


def twisted_structure(Q) -> TwistedStructure:
    """Z = A (W_{(p,q)} (+) [(+)_j W_{(2 mu_j, 2 nu_j)}] (+) I_{2k})."""
    rjf = real_jordan_form(Q)
    parts = []
    if rjf.p + rjf.q:
        parts.append(w_matrix(rjf.p, rjf.q))
    parts += [w_matrix(2 * mu, 2 * nu) for _, mu, nu in rjf.rotation_blocks]
    if rjf.k:
        parts.append(np.eye(2 * rjf.k))
    Z = rjf.A @ direct_sum(*parts)
    return TwistedStructure(Z, rjf.p + rjf.q, tuple(mu + nu for _, mu, nu in rjf.rotation_blocks), rjf.k, rjf)


@dataclass(frozen=True)
class CentralizerStructure:
    R: np.ndarray
    eigenvalue_blocks: tuple  # of (lambda, n_j)

    def block_structure(self) -> BlockStructure:
        blocks, start = [], 0
        for _, nj in self.eigenvalue_blocks:
            blocks.append(Block("unitary", start, nj))
            start += nj
        return BlockStructure(self.R, tuple(blocks))


def centralizer_structure(V) -> CentralizerStructure:
    V = check_unitary(as_cmatrix(V, "V"), "V")
    tol = tolerances().angle
    ue = unitary_eig(V)
    runs = cluster_runs(ue.angles, tol)
    for a, b in zip(runs, runs[1:]):
        if ue.angles[a[-1]] - ue.angles[b[0]] < 10 * tol:
            raise ToleranceError("eigenvalues of V neither equal nor separated at the working tolerance")
    runs = runs[::-1]  # ascending eigen-angle
    blocks = tuple((complex(np.exp(1j * np.mean(ue.angles[r]))), len(r)) for r in runs)
    R = ue.basis[:, [i for r in runs for i in r]]
    return CentralizerStructure(R, blocks)


__all__ = [
    "RealJordanForm", "TwistedStructure", "CentralizerStructure",
    "real_jordan_form", "twisted_structure", "centralizer_structure", "check_real_orthogonal",
]
