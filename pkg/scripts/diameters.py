"""Closed-form diameters next to the largest sampled distance from the identity.

    python3 scripts/diameters.py --samples 200
"""

import argparse
from dataclasses import dataclass

import numpy as np

from ulog import GroupSpec, diameter, distance, haar_sample


@dataclass
class Config:
    samples: int = 100
    seed: int = 0
    max_order: int = 6


def main(cfg: Config):
    groups = [GroupSpec.unitary(n) for n in range(1, cfg.max_order + 1)]
    groups += [GroupSpec.special_orthogonal(n) for n in range(2, cfg.max_order + 1)]
    groups += [GroupSpec.compact_symplectic(n) for n in range(1, cfg.max_order // 2 + 1)]
    print(f"{'group':<24}{'diameter':>12}{'max sampled':>14}{'d(I,-I)':>12}")
    for G in groups:
        rng = np.random.default_rng(cfg.seed)
        eye = np.eye(G.ambient_order)
        far = max(distance(G, eye, haar_sample(G, rng)) for _ in range(cfg.samples))
        minus = distance(G, eye, -eye) if (G.ambient_order % 2 == 0 or G.relation == "centralizer") else float("nan")
        print(f"{G.label():<24}{diameter(G):>12.6f}{far:>14.6f}{minus:>12.6f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--max-order", type=int, default=Config.max_order)
    a = ap.parse_args()
    main(Config(a.samples, a.seed, a.max_order))
