"""J_D(0.8) of plane projections of random 7-crosses against the printed n=7 values.

Configurations with det P < 0 are mirrored first.  Reports which printed rows
were hit and which computed values match no printed row.
"""

import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from _config import parse
from skewlines import golden
from skewlines.invariants import det_P
from skewlines.jones import jd_of_config
from skewlines.lincore import LineConfig, quantize_batch, sample_configs


@dataclass
class Config:
    samples: int = 6000
    seed: int = 2
    sampler: str = "mixed"
    tol: float = 1e-3


def main(cfg: Config) -> None:
    t = time.perf_counter()
    rng = np.random.default_rng(cfg.seed)
    th, ph, x, y = sample_configs(rng, 7, cfg.samples, cfg.sampler)
    P, _, ok = quantize_batch(th, ph, x, y)
    hits, miss = Counter(), Counter()
    for b in np.flatnonzero(ok):
        c, d = LineConfig(th[b], ph[b], x[b], y[b]), det_P(P[b])
        if d < 0:
            c, d = LineConfig(np.pi - th[b], ph[b], x[b], y[b]), -d
        v = float(jd_of_config(c).evaluate(Fraction("0.8")))
        m = [k for k, (dd, j, _) in enumerate(golden.TABLE2) if dd == d and abs(j - v) < cfg.tol]
        if m:
            hits[m[0]] += 1
        else:
            miss[(d, round(v, 5))] += 1
    print(f"{len(hits)}/{len(golden.TABLE2)} printed rows hit, {sum(miss.values())} unmatched, "
          f"{time.perf_counter() - t:.0f} s")
    for k in range(len(golden.TABLE2)):
        d, j, _ = golden.TABLE2[k]
        print(f"  row {k:2d} det {d:4d} J_D {j:11.5f} hits {hits[k]}")
    for (d, v), c in miss.most_common():
        print(f"  unmatched det {d} J_D {v} x{c}")


if __name__ == "__main__":
    main(parse(Config))
