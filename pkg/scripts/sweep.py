"""Plane-projection sweeps of random 6-crosses against their clusters.

For each configuration the invariants of projections along quasi-uniform
directions are compared with the invariant set of the cluster it belongs to.
"""

import sys
import time
from dataclasses import dataclass

import numpy as np

from _config import parse
from skewlines.groupoid import census
from skewlines.lincore import quantize, random_config
from skewlines.projection import sweep_invariants


@dataclass
class Config:
    configs: int = 100
    directions: int = 100
    seed: int = 0
    census_budget: int = 100_000


def main(cfg: Config) -> None:
    t = time.perf_counter()
    res = census(6, cfg.census_budget, seed=cfg.seed, keep_clusters=True)
    sets = [set(r.cluster.inv_values) for r in res.rows]
    rng = np.random.default_rng(cfg.seed)
    print("config home det size swept inside others")
    for c in range(cfg.configs):
        x = random_config(rng, 6)
        h = res.locate(quantize(x))
        sw = sweep_invariants(x, cfg.directions, seed=c)
        others = [j for j, s in enumerate(sets) if j != h and sw.values <= s]
        print(c, h, res.rows[h].det_P, res.rows[h].size, len(sw.values), int(sw.values <= sets[h]), others)
    for i, r in enumerate(res.rows):
        if r.det_P == -125:
            sw = sweep_invariants(r.witness, cfg.directions, seed=i)
            inside = [j for j, s in enumerate(sets) if sw.values <= s]
            print(f"-125 witness of cluster {i}: swept values lie in clusters {inside}")
    print(f"{time.perf_counter() - t:.0f} s")


if __name__ == "__main__":
    sys.set_int_max_str_digits(0)
    main(parse(Config))
