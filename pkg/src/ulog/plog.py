"""Generalized principal logarithms in catalog groups.

A principal logarithm of M in G is an algebra element L with exp(L) = M and
spectrum in [-i*pi, i*pi]. It is unique unless -1 is an eigenvalue of M; in
that case the logarithms form finitely many compact orbits which are
enumerated here through torus representatives and described symbolically.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .blocks import block_label, block_log, block_form_residual
from .config import tolerances
from .errors import ToleranceError, ValidationError
from .groups import (
    GroupSpec, algebra_contains, algebra_null_space, require_algebra, require_member,
)
from .io import matrix_to_json
from .linalg import dagger, direct_sum, frob_norm, herm_eig, mat_exp_skew, unitary_eig
from .svd import svd_decompose


@dataclass(frozen=True, eq=False)
class PlogElement:
    L: np.ndarray
    group: GroupSpec
    target: np.ndarray

    @property
    def norm(self) -> float:
        return frob_norm(self.L)

    def to_json(self) -> dict:
        return {"L": matrix_to_json(self.L), "norm": self.norm}


@dataclass(frozen=True)
class PlogCheck:
    ok: bool
    algebra_residual: float
    exp_residual: float
    eigen_excess: float   # max |Im lambda| - pi


def check_plog(G: GroupSpec, M, L) -> PlogCheck:
    """Test the three defining properties of a principal logarithm of M."""
    tol = tolerances()
    L = np.asarray(L, dtype=complex)
    n = L.shape[0]
    alg = algebra_contains(G, L)
    Ls = 0.5 * (L - dagger(L))
    exp_res = frob_norm(mat_exp_skew(Ls) - M) if alg.ok else math.inf
    excess = float(np.max(np.abs(herm_eig(1j * Ls).values))) - math.pi
    ok = alg.ok and exp_res <= tol.exp_residual * math.sqrt(n) and excess <= tol.eigen_bound
    return PlogCheck(ok, alg.residual, exp_res, excess)


def is_plog(G: GroupSpec, M, L) -> bool:
    return check_plog(G, M, L).ok


# ---------------------------------------------------------------------------
# blockwise analysis


@dataclass
class _Analysis:
    group: GroupSpec
    target: np.ndarray
    logs: list

    @property
    def structure(self):
        return self.group.structure

    def embed(self, block_index: int, D: np.ndarray) -> np.ndarray:
        S = self.structure
        parts = [np.zeros((b.size, b.size), dtype=complex) for b in S.blocks]
        parts[block_index] = D
        return S.join(parts)

    def canonical(self) -> np.ndarray:
        L = self.structure.join([lg.canonical for lg in self.logs])
        return 0.5 * (L - dagger(L))

    def units(self) -> list[np.ndarray]:
        return [self.embed(i, d) for i, lg in enumerate(self.logs) for d in lg.units]


def _analyze(G: GroupSpec, M) -> _Analysis:
    M = require_member(G, M)
    S = G.structure
    parts = S.split(M)
    tol = tolerances().membership
    logs = []
    for b, N in zip(S.blocks, parts):
        res = block_form_residual(b.kind, N)
        if res > tol * math.sqrt(b.size):
            raise ValidationError(f"{b.kind} block has the wrong form (residual {res:.3e})")
        logs.append(block_log(b.kind, N))
    return _Analysis(G, M, logs)


def _finish(G, M, L, what="logarithm") -> PlogElement:
    chk = check_plog(G, M, L)
    if not chk.ok:
        raise ToleranceError(
            f"{what} failed validation: algebra {chk.algebra_residual:.3e}, "
            f"exp {chk.exp_residual:.3e}, eigen excess {chk.eigen_excess:.3e}"
        )
    return PlogElement(L, G, M)


def plog_in_group(G: GroupSpec, M) -> PlogElement:
    """Canonical principal logarithm; -1 eigenvalues go to +i*pi (paired for SO and quaternion blocks)."""
    an = _analyze(G, M)
    return _finish(G, an.target, an.canonical())


def plog_unitary(M) -> PlogElement:
    M = np.asarray(M, dtype=complex)
    return plog_in_group(GroupSpec.unitary(M.shape[0]), M)


def svd_reduce_log(G: GroupSpec, X) -> PlogElement:
    """Turn any algebra logarithm X into a principal one by reducing each singular value mod 2 pi."""
    X = require_algebra(G, X)
    X = 0.5 * (X - dagger(X))
    M = mat_exp_skew(X)
    if frob_norm(X) == 0.0:
        return _finish(G, M, X)
    system = svd_decompose(X)
    psis = []
    for s in system.sigmas:
        psi = math.remainder(float(s), 2 * math.pi)  # in [-pi, pi]
        if psi <= -math.pi + 1e-12:
            psi = math.pi
        psis.append(psi)
    Y = system.compose(psis)
    return _finish(G, M, 0.5 * (Y - dagger(Y)), "reduced logarithm")


# ---------------------------------------------------------------------------
# torus representatives


@dataclass(frozen=True)
class TorusLogSet:
    representatives: tuple
    torus_basis: np.ndarray

    def __len__(self):
        return len(self.representatives)


def torus_plogs(G: GroupSpec, M) -> TorusLogSet:
    """All logarithms obtained from the canonical one by flipping branches at -1."""
    an = _analyze(G, M)
    units = an.units()
    if len(units) > tolerances().torus_guard:
        raise ValidationError(f"{len(units)} branch flips exceed the enumeration guard {tolerances().torus_guard}")
    base = an.canonical()
    reps = []
    for pattern in itertools.product((0, 1), repeat=len(units)):
        L = base + sum((u for u, f in zip(units, pattern) if f), np.zeros_like(base))
        reps.append(_finish(G, an.target, 0.5 * (L - dagger(L)), "torus representative"))
    S = an.structure
    basis = S.Z @ direct_sum(*[lg.frame for lg in an.logs])
    return TorusLogSet(tuple(reps), basis)


# ---------------------------------------------------------------------------
# component census


@dataclass(frozen=True)
class Factor:
    type: str            # grassmannian | so2m_mod_um | spmu_mod_umu | point
    params: tuple = ()   # ((name, value), ...)

    @property
    def dim(self) -> int:
        p = dict(self.params)
        if self.type == "grassmannian":
            return 2 * p["k"] * (p["zeta"] - p["k"])
        if self.type == "so2m_mod_um":
            return p["m"] * (p["m"] - 1)
        if self.type == "spmu_mod_umu":
            return p["mu"] * (p["mu"] + 1)
        return 0

    def to_json(self) -> dict:
        return {"type": self.type, **dict(self.params)}

    def __str__(self):
        p = dict(self.params)
        if self.type == "grassmannian":
            return f"Gr({p['k']};C^{p['zeta']})"
        if self.type == "so2m_mod_um":
            return f"SO({2 * p['m']})/U({p['m']})"
        if self.type == "spmu_mod_umu":
            return f"Sp({p['mu']})/U({p['mu']})"
        return "point"


@dataclass(frozen=True)
class ComponentDescriptor:
    index: tuple
    factors: tuple

    @property
    def real_dimension(self) -> int:
        return sum(f.dim for f in self.factors)

    def to_json(self) -> dict:
        return {"index": list(self.index), "factors": [f.to_json() for f in self.factors],
                "dim": self.real_dimension}


@dataclass(frozen=True)
class PlogStructure:
    components: tuple
    minimal_norm: float
    multiplicities: dict = field(default_factory=dict)

    @property
    def total_count(self) -> int:
        return len(self.components)

    def indices(self) -> set:
        return {c.index for c in self.components}

    def to_json(self) -> dict:
        return {"count": self.total_count, "minimal_norm": self.minimal_norm,
                "components": [c.to_json() for c in self.components]}


def _factors(pieces) -> tuple:
    out = tuple(f for f in pieces if f.dim > 0)
    return out or (Factor("point"),)


def plog_structure(G: GroupSpec, M) -> PlogStructure:
    an = _analyze(G, M)
    angles = unitary_eig(an.target).angles
    minimal_norm = float(math.sqrt(np.sum(angles ** 2)))
    kinds = [b.kind for b in an.structure.blocks]
    counts = [lg.count for lg in an.logs]
    comps = []
    if G.relation == "centralizer":
        for idx in itertools.product(*[range(z + 1) for z in counts]):
            fs = [Factor("grassmannian", (("k", k), ("zeta", z))) for k, z in zip(idx, counts)]
            comps.append(ComponentDescriptor(tuple(idx), _factors(fs)))
        mult = {"zeta": counts}
    else:
        m = sum(c for k, c in zip(kinds, counts) if k == "orthogonal")
        mu = sum(c for k, c in zip(kinds, counts) if k == "quaternion")
        zetas = [c for k, c in zip(kinds, counts) if k == "complex"]
        sigmas = (0, 1) if m >= 1 else (0,)
        for sigma in sigmas:
            for ls in itertools.product(*[range(z + 1) for z in zetas]):
                fs = [Factor("so2m_mod_um", (("m", m),))]
                fs += [Factor("grassmannian", (("k", l), ("zeta", z))) for l, z in zip(ls, zetas)]
                fs += [Factor("spmu_mod_umu", (("mu", mu),))]
                comps.append(ComponentDescriptor((sigma, *ls), _factors(fs)))
        mult = {"m": m, "zeta": zetas, "mu": mu}
    return PlogStructure(tuple(comps), minimal_norm, mult)


def component_of(G: GroupSpec, M, L) -> tuple:
    """Index tuple of the component of the logarithm set containing L."""
    an = _analyze(G, M)
    L = L.L if isinstance(L, PlogElement) else np.asarray(L, dtype=complex)
    chk = check_plog(G, an.target, L)
    if not chk.ok:
        raise ValidationError("L is not a principal logarithm of M in this group")
    parts = an.structure.split(L)
    labels = [block_label(lg, Lb) for lg, Lb in zip(an.logs, parts)]
    if G.relation == "centralizer":
        return tuple(labels)
    kinds = [b.kind for b in an.structure.blocks]
    sigma = next((lab for k, lab in zip(kinds, labels) if k == "orthogonal"), 0)
    return (sigma, *[lab for k, lab in zip(kinds, labels) if k == "complex"])


# ---------------------------------------------------------------------------
# orbits


def stabilizer_algebra(G: GroupSpec, M) -> np.ndarray:
    """Real orthonormal basis of the Lie algebra of the stabilizer of M."""
    return algebra_null_space(G, [np.asarray(M, dtype=complex)])


def _random_stabilizer_element(basis, rng, scale=math.pi):
    c = rng.standard_normal(basis.shape[0]) * scale
    xi = np.einsum("i,ijk->jk", c, basis)
    return mat_exp_skew(0.5 * (xi - dagger(xi)))


def orbit_sample(G: GroupSpec, M, L, seed, count: int) -> list[PlogElement]:
    """Elements Ad_K(L) for K in the identity component of the stabilizer of M in G."""
    M = require_member(G, M)
    L = L.L if isinstance(L, PlogElement) else np.asarray(L, dtype=complex)
    if not check_plog(G, M, L).ok:
        raise ValidationError("L is not a principal logarithm of M in this group")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    basis = stabilizer_algebra(G, M)
    out = []
    for _ in range(count):
        K = _random_stabilizer_element(basis, rng) if basis.shape[0] else np.eye(M.shape[0])
        X = K @ L @ dagger(K)
        out.append(PlogElement(0.5 * (X - dagger(X)), G, M))
    return out


def tangent_rank(G: GroupSpec, M, L, count: int = 200, seed=0, eps: float = 1e-5) -> int:
    """Rank of the span of orbit difference quotients through L.

    Each direction is (Ad_{exp(eps xi)} L - Ad_{exp(-eps xi)} L) / (2 eps) for a
    random stabilizer-algebra element xi; the rank equals the orbit dimension.
    """
    M = np.asarray(M, dtype=complex)
    L = L.L if isinstance(L, PlogElement) else np.asarray(L, dtype=complex)
    basis = stabilizer_algebra(G, M)
    if basis.shape[0] == 0:
        return 0
    rng = np.random.default_rng(seed)
    rows = []
    for _ in range(count):
        xi = np.einsum("i,ijk->jk", rng.standard_normal(basis.shape[0]), basis)
        xi = xi / frob_norm(xi)
        Kp, Km = mat_exp_skew(eps * xi), mat_exp_skew(-eps * xi)
        d = (Kp @ L @ dagger(Kp) - Km @ L @ dagger(Km)) / (2 * eps)
        rows.append(np.concatenate([d.real.ravel(), d.imag.ravel()]))
    s = np.linalg.svd(np.array(rows), compute_uv=False)
    if s[0] < 1e-8:
        return 0
    return int(np.sum(s > 1e-6 * s[0]))


__all__ = [
    "PlogElement", "PlogCheck", "check_plog", "is_plog", "plog_in_group", "plog_unitary",
    "svd_reduce_log", "TorusLogSet", "torus_plogs", "Factor", "ComponentDescriptor",
    "PlogStructure", "plog_structure", "component_of", "stabilizer_algebra", "orbit_sample",
    "tangent_rank",
]
