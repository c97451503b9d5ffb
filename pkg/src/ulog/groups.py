"""The catalog of SVD-closed subgroups of U_n.

Each group is described by a defining matrix and a relation:

* centralizer type (``unitary``, ``centralizer``): X V = V X;
* twisted type (``special-orthogonal``, ``quaternion-unitary``,
  ``compact-symplectic``, ``twisted``): X Q X^T = Q and det X = 1,
  with Lie algebra X Q = Q conj(X).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .blocks import Block, BlockStructure, block_algebra_sample, block_haar
from .config import tolerances
from .embeddings import omega_blocks, omega_n, shuffle_permutation
from .errors import ValidationError
from .io import read_matrix
from .jordan import centralizer_structure, check_real_orthogonal, twisted_structure
from .linalg import as_cmatrix, check_unitary, dagger, frob_norm, skew_residual, unitarity_residual

NAMED = ("unitary", "special-orthogonal", "compact-symplectic", "quaternion-unitary")
KINDS = NAMED + ("centralizer", "twisted")


@dataclass(frozen=True, eq=False)
class GroupSpec:
    kind: str
    n: int                          # the <n> of "<kind>:<n>" (order of V or Q for matrix kinds)
    matrix: np.ndarray | None = None
    source: str | None = None       # file name for matrix kinds, for display only

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown group kind {self.kind!r}")
        if self.n < 1:
            raise ValidationError("group order must be positive")
        if self.kind == "centralizer":
            object.__setattr__(self, "matrix", check_unitary(self.matrix, "V"))
        elif self.kind == "twisted":
            object.__setattr__(self, "matrix", check_real_orthogonal(self.matrix, "Q").astype(complex))

    # constructors -------------------------------------------------------
    @classmethod
    def unitary(cls, n):
        return cls("unitary", int(n))

    @classmethod
    def special_orthogonal(cls, n):
        return cls("special-orthogonal", int(n))

    @classmethod
    def compact_symplectic(cls, n):
        return cls("compact-symplectic", int(n))

    @classmethod
    def quaternion_unitary(cls, n):
        return cls("quaternion-unitary", int(n))

    @classmethod
    def centralizer(cls, V, source=None):
        V = as_cmatrix(V, "V")
        return cls("centralizer", V.shape[0], V, source)

    @classmethod
    def twisted(cls, Q, source=None):
        Q = as_cmatrix(Q, "Q")
        return cls("twisted", Q.shape[0], Q, source)

    # derived data -------------------------------------------------------
    @property
    def ambient_order(self) -> int:
        return 2 * self.n if self.kind in ("compact-symplectic", "quaternion-unitary") else self.n

    @property
    def relation(self) -> str:
        return "centralizer" if self.kind in ("unitary", "centralizer") else "twisted"

    @cached_property
    def defining_matrix(self) -> np.ndarray:
        if self.kind in ("unitary", "special-orthogonal"):
            return np.eye(self.n, dtype=complex)
        if self.kind == "quaternion-unitary":
            return omega_blocks(self.n)
        if self.kind == "compact-symplectic":
            return omega_n(self.n)
        return self.matrix

    @cached_property
    def structure(self) -> BlockStructure:
        n = self.ambient_order
        eye = np.eye(n, dtype=complex)
        if self.kind == "unitary":
            return BlockStructure(eye, (Block("unitary", 0, n),))
        if self.kind == "special-orthogonal":
            return BlockStructure(eye, (Block("orthogonal", 0, n),))
        if self.kind == "quaternion-unitary":
            return BlockStructure(eye, (Block("quaternion", 0, n),))
        if self.kind == "compact-symplectic":
            return BlockStructure(shuffle_permutation(self.n).astype(complex), (Block("quaternion", 0, n),))
        if self.kind == "centralizer":
            return centralizer_structure(self.matrix).block_structure()
        return twisted_structure(self.matrix).block_structure()

    @cached_property
    def algebra_basis(self) -> np.ndarray:
        """Real basis of the Lie algebra, shape (dim, n, n), orthonormal for Re tr(A B^*)."""
        return algebra_null_space(self, [])

    @property
    def dimension(self) -> int:
        return self.algebra_basis.shape[0]

    def label(self) -> str:
        if self.kind in NAMED:
            return f"{self.kind}:{self.n}"
        return f"{self.kind}:{self.source or '<matrix>'}"

    def __repr__(self):
        return f"GroupSpec({self.label()})"


_SPEC = re.compile(r"^\s*([a-z-]+)\s*:\s*(.+?)\s*$")


def parse_group_spec(text: str) -> GroupSpec:
    m = _SPEC.match(text or "")
    if not m:
        raise ValidationError(f"malformed group spec {text!r} (expected <kind>:<arg>)")
    kind, arg = m.groups()
    if kind in NAMED:
        if not arg.isdigit() or int(arg) < 1:
            raise ValidationError(f"{kind} needs a positive integer, got {arg!r}")
        return GroupSpec(kind, int(arg))
    if kind == "centralizer":
        return GroupSpec.centralizer(read_matrix(arg), source=arg)
    if kind == "twisted":
        return GroupSpec.twisted(read_matrix(arg), source=arg)
    raise ValidationError(f"unknown group kind {kind!r}")


# ---------------------------------------------------------------------------
# membership


@dataclass(frozen=True)
class Membership:
    ok: bool
    residual: float

    def __bool__(self):
        return self.ok


def _check_order(G: GroupSpec, M, name):
    M = as_cmatrix(M, name)
    if M.shape[0] != G.ambient_order:
        raise ValidationError(f"{name} has order {M.shape[0]}, group has order {G.ambient_order}")
    return M


def relation_residual(G: GroupSpec, M) -> float:
    D = G.defining_matrix
    if G.relation == "centralizer":
        return frob_norm(M @ D - D @ M)
    return frob_norm(M @ D @ M.T - D)


def algebra_relation_residual(G: GroupSpec, X) -> float:
    D = G.defining_matrix
    if G.relation == "centralizer":
        return frob_norm(X @ D - D @ X)
    return frob_norm(X @ D - D @ X.conj())


def contains(G: GroupSpec, M) -> Membership:
    M = _check_order(G, M, "M")
    n = M.shape[0]
    res = max(unitarity_residual(M), relation_residual(G, M))
    if G.relation == "twisted":
        res = max(res, abs(np.linalg.det(M) - 1.0))
    return Membership(bool(res <= tolerances().membership * math.sqrt(n)), float(res))


def algebra_contains(G: GroupSpec, X) -> Membership:
    X = _check_order(G, X, "X")
    res = max(skew_residual(X), algebra_relation_residual(G, X))
    return Membership(bool(res <= tolerances().membership * max(1.0, frob_norm(X))), float(res))


def require_member(G: GroupSpec, M, name: str = "M") -> np.ndarray:
    M = _check_order(G, M, name)
    mem = contains(G, M)
    if not mem.ok:
        raise ValidationError(f"{name} is not in {G.label()} (residual {mem.residual:.3e})")
    return M


def require_algebra(G: GroupSpec, X, name: str = "X") -> np.ndarray:
    X = _check_order(G, X, name)
    mem = algebra_contains(G, X)
    if not mem.ok:
        raise ValidationError(f"{name} is not in the Lie algebra of {G.label()} (residual {mem.residual:.3e})")
    return X


# ---------------------------------------------------------------------------
# bases and sampling


def _u_basis(n: int) -> np.ndarray:
    out = []
    for j in range(n):
        E = np.zeros((n, n), dtype=complex)
        E[j, j] = 1j
        out.append(E)
    s = 1 / math.sqrt(2)
    for j in range(n):
        for k in range(j + 1, n):
            E = np.zeros((n, n), dtype=complex)
            E[j, k], E[k, j] = s, -s
            out.append(E)
            F = np.zeros((n, n), dtype=complex)
            F[j, k] = F[k, j] = 1j * s
            out.append(F)
    return np.array(out)


def _realify(A: np.ndarray) -> np.ndarray:
    return np.concatenate([A.real.ravel(), A.imag.ravel()])


def algebra_null_space(G: GroupSpec, commute_with) -> np.ndarray:
    """Real orthonormal basis of {X in Lie(G) : [X, C] = 0 for every C in commute_with}.

    Computed directly from the defining relation, independently of the
    block structure.
    """
    n = G.ambient_order
    U = _u_basis(n)
    maps = [lambda X: algebra_relation_residual_matrix(G, X)]
    for C in commute_with:
        maps.append(lambda X, C=C: X @ C - C @ X)
    cols = [np.concatenate([_realify(f(E)) for f in maps]) for E in U]
    K = np.array(cols).T
    # absolute threshold: when all constraints vanish the largest singular value is round-off
    scale = max([1.0, frob_norm(G.defining_matrix)] + [frob_norm(C) for C in commute_with])
    _, s, vh = np.linalg.svd(K)
    rank = int(np.sum(s > 1e-9 * scale))
    ns = vh[rank:].T
    return np.einsum("ij,jkl->ikl", ns.T, U)


def algebra_relation_residual_matrix(G: GroupSpec, X) -> np.ndarray:
    D = G.defining_matrix
    if G.relation == "centralizer":
        return X @ D - D @ X
    return X @ D - D @ X.conj()


def haar_sample(G: GroupSpec, seed) -> np.ndarray:
    """Deterministic group element built blockwise in the group frame."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    S = G.structure
    return S.join([block_haar(b.kind, b.size, rng) for b in S.blocks])


def algebra_sample(G: GroupSpec, seed) -> np.ndarray:
    """Gaussian element of the Lie algebra, built blockwise in the group frame."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    S = G.structure
    X = S.join([block_algebra_sample(b.kind, b.size, rng) for b in S.blocks])
    return 0.5 * (X - dagger(X))


__all__ = [
    "GroupSpec", "Membership", "parse_group_spec", "contains", "algebra_contains",
    "require_member", "require_algebra", "algebra_null_space", "haar_sample", "algebra_sample",
    "relation_residual", "algebra_relation_residual",
]
