"""Randomized invariant suites (used by ``ulog verify`` and the test-suite)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .embeddings import decomplexify, omega_blocks, omega_n, quaternion_embed, shuffle_permutation
from .errors import ValidationError
from .geodesy import diameter, distance
from .groups import GroupSpec, algebra_contains, algebra_sample, haar_sample
from .linalg import dagger, frob_norm, mat_exp_skew
from .plog import (
    check_plog, component_of, orbit_sample, plog_in_group, plog_structure, svd_reduce_log,
    tangent_rank, torus_plogs,
)
from .svd import svd_decompose

SUITES = ("svd-closure", "plog-minimality", "metric-axioms", "component-census", "embeddings")


@dataclass
class Check:
    name: str
    limit: float
    worst: float = 0.0
    failures: int = 0
    trials: int = 0

    def record(self, value: float, ok: bool | None = None):
        self.trials += 1
        self.worst = max(self.worst, float(value))
        if not (value <= self.limit if ok is None else ok):
            self.failures += 1

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        return {"check": self.name, "passed": self.passed, "trials": self.trials,
                "failures": self.failures, "worst": self.worst, "limit": self.limit}


@dataclass
class SuiteReport:
    suite: str
    group: str
    samples: int
    seed: int
    checks: list = field(default_factory=list)

    def check(self, name: str, limit: float) -> Check:
        c = Check(name, limit)
        self.checks.append(c)
        return c

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"suite": self.suite, "group": self.group, "samples": self.samples, "seed": self.seed,
                "passed": self.passed, "checks": [c.to_json() for c in self.checks]}

    def table(self) -> str:
        lines = [f"{self.suite} on {self.group} ({self.samples} samples, seed {self.seed})"]
        for c in self.checks:
            flag = "PASS" if c.passed else "FAIL"
            lines.append(f"  {flag}  {c.name:<34} worst={c.worst:.3e}  limit={c.limit:.1e}  ({c.failures}/{c.trials} failed)")
        return "\n".join(lines)


def sample_target(G: GroupSpec, rng, minus_one: bool = True) -> np.ndarray:
    """Group element exp(sum a_h X_h) where X_h are the SVD-components of a random
    algebra element; with ``minus_one`` some a_h equal pi, so -1 is an eigenvalue."""
    X = algebra_sample(G, rng)
    system = svd_decompose(X)
    a = rng.uniform(-math.pi, math.pi, len(system))
    if minus_one:
        hits = rng.random(len(system)) < 0.5
        hits[rng.integers(len(system))] = True
        a[hits] = math.pi
    Y = system.compose(a)
    return mat_exp_skew(0.5 * (Y - dagger(Y)))


def _rng(seed, i):
    return np.random.default_rng([int(seed), i])


def suite_svd_closure(G, samples, seed, rep):
    c = rep.check("component in algebra", 1e-8)
    for i in range(samples):
        X = algebra_sample(G, _rng(seed, i))
        for A in svd_decompose(X).components:
            c.record(algebra_contains(G, A).residual)


def suite_plog_minimality(G, samples, seed, rep):
    c_exp = rep.check("exp(X) = M", 1e-8)
    c_min = rep.check("||L|| <= ||X||", 1e-9)
    c_eq = rep.check("equality iff X is principal", 0.5)
    c_red = rep.check("svd_reduce_log norm = ||L||", 1e-9)
    c_valid = rep.check("L is principal", 0.5)
    for i in range(samples):
        rng = _rng(seed, i)
        M = sample_target(G, rng, minus_one=(i % 2 == 0))
        L = plog_in_group(G, M).L
        c_valid.record(0.0 if check_plog(G, M, L).ok else 1.0)
        system = svd_decompose(L) if frob_norm(L) > 0 else None
        if system is None:
            continue
        t = np.zeros(len(system), dtype=int)
        while not t.any():
            t = rng.integers(-2, 3, len(system))
        X = L + 2 * math.pi * system.compose(t)
        X = 0.5 * (X - dagger(X))
        c_exp.record(frob_norm(mat_exp_skew(X) - M))
        nL, nX = frob_norm(L), frob_norm(X)
        c_min.record(max(0.0, nL - nX))
        equal = abs(nX - nL) <= 1e-9 * max(1.0, nL)
        c_eq.record(0.0 if equal == check_plog(G, M, X).ok else 1.0)
        Y = svd_reduce_log(G, X)
        c_red.record(abs(Y.norm - nL))


def suite_metric_axioms(G, samples, seed, rep):
    c_sym = rep.check("symmetry", 1e-9)
    c_tri = rep.check("triangle inequality", 1e-8)
    c_inv = rep.check("bi-invariance", 1e-9)
    c_con = rep.check("distance = ||plog(P0* P1)||", 1e-9)
    c_diam = rep.check("d <= diameter", 1e-8)
    diam = diameter(G)
    for i in range(samples):
        rng = _rng(seed, i)
        P0, P1, P2, U, V = (haar_sample(G, rng) for _ in range(5))
        d01, d10 = distance(G, P0, P1), distance(G, P1, P0)
        d12, d02 = distance(G, P1, P2), distance(G, P0, P2)
        c_sym.record(abs(d01 - d10))
        c_tri.record(max(0.0, d02 - d01 - d12))
        c_inv.record(abs(distance(G, U @ P0 @ V, U @ P1 @ V) - d01))
        c_con.record(abs(plog_in_group(G, dagger(P0) @ P1).norm - d01))
        c_diam.record(max(0.0, d01 - diam))


def suite_component_census(G, samples, seed, rep, orbit_count=10, rank_count=200):
    c_cov = rep.check("torus indices = census indices", 0.5)
    c_orb = rep.check("orbit keeps index", 0.5)
    c_norm = rep.check("orbit keeps norm", 1e-9)
    c_exp = rep.check("orbit stays principal", 0.5)
    c_dim = rep.check("tangent rank = descriptor dim", 0.5)
    for i in range(samples):
        rng = _rng(seed, i)
        M = sample_target(G, rng)
        st = plog_structure(G, M)
        tor = torus_plogs(G, M)
        found = {}
        for r in tor.representatives:
            found.setdefault(component_of(G, M, r), r)
        c_cov.record(0.0 if set(found) == st.indices() else 1.0)
        dims = {c.index: c.real_dimension for c in st.components}
        for idx, r in sorted(found.items()):
            for el in orbit_sample(G, M, r, rng, orbit_count):
                c_orb.record(0.0 if component_of(G, M, el) == idx else 1.0)
                c_norm.record(abs(el.norm - r.norm))
                c_exp.record(0.0 if check_plog(G, M, el.L).ok else 1.0)
            c_dim.record(0.0 if tangent_rank(G, M, r, rank_count, seed=i) == dims.get(idx) else 1.0)


def suite_embeddings(G, samples, seed, rep):
    h = max(1, G.ambient_order // 2)
    c_mul = rep.check("rho(ZW) = rho(Z) rho(W)", 1e-12)
    c_adj = rep.check("rho(Z*) = rho(Z)^T", 1e-12)
    c_psi = rep.check("Psi(A*) = Psi(A)*", 1e-12)
    c_pmul = rep.check("Psi(AB) = Psi(A) Psi(B)", 1e-12)
    c_b = rep.check("B^T Omega_n B = Omega^(+n)", 1e-12)
    for i in range(samples):
        rng = _rng(seed, i)
        Z, W = (rng.standard_normal((h, h)) + 1j * rng.standard_normal((h, h)) for _ in range(2))
        scale = max(1.0, frob_norm(Z) * frob_norm(W))
        c_mul.record(frob_norm(decomplexify(Z @ W) - decomplexify(Z) @ decomplexify(W)) / scale)
        c_adj.record(frob_norm(decomplexify(dagger(Z)) - decomplexify(Z).T))
        z1, w1, z2, w2 = (rng.standard_normal((h, h)) + 1j * rng.standard_normal((h, h)) for _ in range(4))
        P = quaternion_embed(z1, w1)
        # quaternion adjoint: (z + w j)^* = z^* - w^T j (entrywise conjugate, transposed)
        c_psi.record(frob_norm(quaternion_embed(dagger(z1), -w1.T) - dagger(P)))
        # (z1 + w1 j)(z2 + w2 j) = (z1 z2 - w1 conj(w2)) + (z1 w2 + w1 conj(z2)) j
        prod = quaternion_embed(z1 @ z2 - w1 @ w2.conj(), z1 @ w2 + w1 @ z2.conj())
        scale = max(1.0, frob_norm(P) * frob_norm(quaternion_embed(z2, w2)))
        c_pmul.record(frob_norm(prod - P @ quaternion_embed(z2, w2)) / scale)
        n = i % 8 + 1
        B = shuffle_permutation(n)
        c_b.record(frob_norm(B.T @ omega_n(n) @ B - omega_blocks(n)))


_DISPATCH = {
    "svd-closure": suite_svd_closure,
    "plog-minimality": suite_plog_minimality,
    "metric-axioms": suite_metric_axioms,
    "component-census": suite_component_census,
    "embeddings": suite_embeddings,
}


def run_suite(name: str, G: GroupSpec, samples: int, seed: int) -> SuiteReport:
    if name not in _DISPATCH:
        raise ValidationError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if samples < 1:
        raise ValidationError("--samples must be positive")
    rep = SuiteReport(name, G.label(), samples, seed)
    _DISPATCH[name](G, samples, seed, rep)
    return rep


__all__ = ["SUITES", "Check", "SuiteReport", "run_suite", "sample_target"]
