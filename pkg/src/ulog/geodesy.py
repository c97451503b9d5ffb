"""Frobenius-metric geometry of catalog groups.

Geodesics are the curves t -> P exp(t X); the distance between P0 and P1 is
the norm of a principal logarithm of P0^* P1, i.e. the root sum of squares of
its eigen-angles.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .config import tolerances
from .errors import ToleranceError, ValidationError
from .groups import GroupSpec, require_algebra, require_member
from .linalg import dagger, frob_norm, herm_eig, mat_exp_skew, unitary_eig
from .plog import (
    PlogStructure, check_plog, component_of, orbit_sample, plog_in_group, plog_structure, torus_plogs,
)


@dataclass(frozen=True, eq=False)
class Geodesic:
    base: np.ndarray
    velocity: np.ndarray

    @property
    def length(self) -> float:
        return frob_norm(self.velocity)


def make_geodesic(G: GroupSpec, base, velocity) -> Geodesic:
    return Geodesic(require_member(G, base, "base"), require_algebra(G, velocity, "velocity"))


def geodesic_point(g: Geodesic, t: float) -> np.ndarray:
    X = g.velocity
    return g.base @ mat_exp_skew(t * 0.5 * (X - dagger(X)))


def distance(G: GroupSpec, P0, P1, verify: bool = False) -> float:
    P0 = require_member(G, P0, "P0")
    P1 = require_member(G, P1, "P1")
    U = dagger(P0) @ P1
    d = float(math.sqrt(np.sum(unitary_eig(U).angles ** 2)))
    if verify:
        alt = plog_in_group(G, U).norm
        if abs(alt - d) > 1e-9 * max(1.0, d):
            raise ToleranceError(f"distance formula {d!r} disagrees with the logarithm norm {alt!r}")
    return d


def diameter(G: GroupSpec) -> float:
    n = G.ambient_order
    if G.relation == "centralizer" or n % 2 == 0:
        return math.sqrt(n) * math.pi
    return math.sqrt(n - 1) * math.pi


def is_minimizing(G: GroupSpec, P0, X) -> bool:
    """True iff t -> P0 exp(tX), t in [0, 1], is a minimizing segment."""
    require_member(G, P0, "P0")
    X = require_algebra(G, X)
    X = 0.5 * (X - dagger(X))
    return float(np.max(np.abs(herm_eig(1j * X).values))) <= math.pi + tolerances().eigen_bound


class GeodesicSampler:
    """Draws minimizing segments from P0 to P1, cycling through the components."""

    def __init__(self, G: GroupSpec, P0, P1, structure: PlogStructure):
        self.group, self.P0, self.P1 = G, P0, P1
        self.structure = structure
        self.target = dagger(P0) @ P1
        try:
            reps = torus_plogs(G, self.target).representatives
        except ValidationError:  # enumeration guard exceeded: canonical logarithm only
            reps = (plog_in_group(G, self.target),)
        seen = {}
        for r in reps:
            seen.setdefault(component_of(G, self.target, r), r)
        self.representatives = [seen[k] for k in sorted(seen)]

    def __call__(self, count: int, seed=0):
        rng = np.random.default_rng(seed)
        cycle = itertools.cycle(self.representatives)
        out = []
        for _ in range(count):
            rep = next(cycle)
            (el,) = orbit_sample(self.group, self.target, rep, rng, 1)
            out.append(Geodesic(self.P0, el.L))
        return out


def minimizing_geodesics(G: GroupSpec, P0, P1):
    P0 = require_member(G, P0, "P0")
    P1 = require_member(G, P1, "P1")
    st = plog_structure(G, dagger(P0) @ P1)
    return st, GeodesicSampler(G, P0, P1, st)


def segment_is_minimizing(G: GroupSpec, P0, P1, X) -> bool:
    """X joins P0 to P1 and is a principal logarithm of P0^* P1."""
    return check_plog(G, dagger(P0) @ P1, X).ok


__all__ = [
    "Geodesic", "make_geodesic", "geodesic_point", "distance", "diameter", "is_minimizing",
    "minimizing_geodesics", "GeodesicSampler", "segment_is_minimizing",
]
