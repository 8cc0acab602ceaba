"""Agreement of the Ring-based and sandwich-based outside tests for point projections."""

import time
from collections import Counter
from dataclasses import dataclass

import numpy as np

from _config import parse
from skewlines.lincore import random_config
from skewlines.projection import DegeneratePoint, is_outside


@dataclass
class Config:
    n: int = 6
    points: int = 2000
    scale: float = 1.5
    seed: int = 0


def main(cfg: Config) -> None:
    t = time.perf_counter()
    rng = np.random.default_rng(cfg.seed)
    table, skipped = Counter(), 0
    for _ in range(cfg.points):
        c = random_config(rng, cfg.n)
        U = rng.normal(0, cfg.scale, 3)
        try:
            table[is_outside(c, U, "ring"), is_outside(c, U, "sandwich")] += 1
        except DegeneratePoint:
            skipped += 1
    print("ring sandwich count")
    for (r, s), k in sorted(table.items()):
        print(f"{int(r):4d} {int(s):8d} {k:5d}")
    print(f"skipped {skipped}, {time.perf_counter() - t:.1f} s")


if __name__ == "__main__":
    main(parse(Config))
