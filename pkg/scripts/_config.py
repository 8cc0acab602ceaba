"""Command-line overrides for a dataclass of experiment settings."""

import argparse
import dataclasses


def parse(cls, argv=None):
    p = argparse.ArgumentParser(description=cls.__doc__)
    for f in dataclasses.fields(cls):
        kind = type(f.default)
        if kind is bool:
            p.add_argument(f"--{f.name}", action=argparse.BooleanOptionalAction, default=f.default)
        else:
            p.add_argument(f"--{f.name}", type=kind, default=f.default)
    return cls(**vars(p.parse_args(argv)))
