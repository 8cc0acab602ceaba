"""Compare computed values with the printed tables and print one line per cell."""

import sys
from dataclasses import dataclass

from _config import parse
from skewlines.cli import reproduce_a3, reproduce_a21, reproduce_t1


@dataclass
class Config:
    tables: str = "A3,A2.1,T1"
    budget: int = 100_000
    seed: int = 0


def main(cfg: Config) -> int:
    runs = {"A3": lambda: reproduce_a3(cfg.seed), "A2.1": reproduce_a21,
            "T1": lambda: reproduce_t1(cfg.budget, cfg.seed)}
    failed = 0
    for name in cfg.tables.split(","):
        cells = runs[name]()
        bad = [c for c in cells if c.ok is not True]
        failed += len(bad)
        print(f"{name}: {len(cells) - len(bad)}/{len(cells)} cells pass")
        for c in bad:
            print(f"  {c.status:<12} {c.name}: {c.got} (want {c.want})")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.set_int_max_str_digits(0)
    sys.exit(main(parse(Config)))
