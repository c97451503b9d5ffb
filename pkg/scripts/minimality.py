"""Brute-force check that principal logarithms minimize the norm among logarithms.

For each target M = exp(X) the script shifts the principal logarithm L by
2 pi times integer combinations of its SVD-components and reports the ratio
||X|| / ||L|| (always >= 1) and how often equality happens.

    python3 scripts/minimality.py --trials 500
"""

import argparse
import math
from dataclasses import dataclass

import numpy as np

from ulog import GroupSpec, check_plog, plog_in_group, svd_decompose
from ulog.linalg import dagger, frob_norm
from ulog.verify import sample_target


@dataclass
class Config:
    trials: int = 200
    seed: int = 0
    shift: int = 2


def main(cfg: Config):
    for G in (GroupSpec.unitary(4), GroupSpec.special_orthogonal(5), GroupSpec.compact_symplectic(2)):
        rng = np.random.default_rng(cfg.seed)
        ratios, ties, bad = [], 0, 0
        for _ in range(cfg.trials):
            M = sample_target(G, rng, minus_one=bool(rng.integers(2)))
            L = plog_in_group(G, M).L
            system = svd_decompose(L)
            t = rng.integers(-cfg.shift, cfg.shift + 1, len(system))
            X = L + 2 * math.pi * system.compose(t)
            X = 0.5 * (X - dagger(X))
            r = frob_norm(X) / frob_norm(L)
            ratios.append(r)
            if abs(r - 1) < 1e-9:
                ties += 1
                bad += not check_plog(G, M, X).ok
        ratios = np.array(ratios)
        print(f"{G.label():<22} min ratio {ratios.min():.12f}  median {np.median(ratios):.3f}  "
              f"ties {ties} (non-principal ties: {bad})")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--shift", type=int, default=2)
    a = ap.parse_args()
    main(Config(a.trials, a.seed, a.shift))
