"""Component census of the principal logarithms of -I (or of a random target) in
small catalog groups, with orbit dimensions checked by tangent-rank sampling.

    python3 scripts/census.py
    python3 scripts/census.py --random --seed 3
"""

import argparse
from dataclasses import dataclass

import numpy as np

from ulog import GroupSpec, component_of, plog_structure, tangent_rank, torus_plogs
from ulog.verify import sample_target


@dataclass
class Config:
    random: bool = False
    seed: int = 0
    directions: int = 200


def groups():
    return [
        GroupSpec.unitary(2), GroupSpec.unitary(3),
        GroupSpec.centralizer(np.diag([1, 1, 1j])),
        GroupSpec.special_orthogonal(4), GroupSpec.special_orthogonal(6),
        GroupSpec.compact_symplectic(1), GroupSpec.compact_symplectic(2),
        GroupSpec.quaternion_unitary(2),
    ]


def main(cfg: Config):
    rng = np.random.default_rng(cfg.seed)
    for G in groups():
        M = sample_target(G, rng) if cfg.random else -np.eye(G.ambient_order)
        st = plog_structure(G, M)
        reps = {}
        for r in torus_plogs(G, M).representatives:
            reps.setdefault(component_of(G, M, r), r)
        print(f"{G.label()}: {st.total_count} components, minimal norm {st.minimal_norm:.6f}, {st.multiplicities}")
        for c in st.components:
            rank = tangent_rank(G, M, reps[c.index], count=cfg.directions)
            factors = " x ".join(str(f) for f in c.factors)
            flag = "" if rank == c.real_dimension else "  <-- mismatch"
            print(f"    {str(c.index):<10} {factors:<28} dim {c.real_dimension:>3}  sampled rank {rank:>3}{flag}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--random", action="store_true")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--directions", type=int, default=200)
    a = ap.parse_args()
    main(Config(a.random, a.seed, a.directions))
