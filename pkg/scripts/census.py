"""Cluster census of n lines, written as CSV."""

import csv
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from _config import parse
from skewlines.exact import to_decimal
from skewlines.groupoid import census


@dataclass
class Config:
    n: int = 6
    budget: int = 100_000
    seed: int = 0
    sampler: str = "mixed"
    jones: bool = True
    out: str = "census.csv"


def main(cfg: Config) -> None:
    t = time.perf_counter()
    res = census(cfg.n, cfg.budget, seed=cfg.seed, sampler=cfg.sampler, with_jones=cfg.jones,
                 progress=lambda s, c: print(f"{s} samples, {c} clusters", file=sys.stderr))
    with open(cfg.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["det_P", "invP", "jd_0.8", "size", "states", "sum", "specular", "mirror_of"])
        for r in sorted(res.rows, key=lambda r: (r.det_P, float(r.invP), float(r.gsum))):
            jd = to_decimal(r.jd.evaluate(Fraction("0.8")), 8) if r.jd is not None else ""
            w.writerow([r.det_P, to_decimal(r.invP, 8), jd, r.size, r.n_states, to_decimal(r.gsum, 8),
                        int(r.specular), r.mirror_of])
    print(f"{len(res.rows)} clusters, total size {res.total_size}, complete {res.complete}, "
          f"{res.samples} samples, {time.perf_counter() - t:.0f} s -> {cfg.out}")


if __name__ == "__main__":
    sys.set_int_max_str_digits(0)
    main(parse(Config))
