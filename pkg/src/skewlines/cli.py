"""Command-line front end.

Every command writes one artifact (to ``--out`` or stdout) that embeds a
``RunManifest``.  Exit codes: 0 pass, 1 fail, 2 inconclusive, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
import warnings
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__, golden
from .exact import SingularMatrix, to_decimal
from .io import (
    FormatError,
    bundle_to_dict,
    cluster_to_dict,
    config_to_dict,
    csv_text,
    dump_json,
    load_config,
    load_state,
    _load,
)
from .lincore import (
    CoplanarTriple,
    DegenerateLines,
    DiscreteState,
    LineConfig,
    TooFew,
    quantize,
    random_config,
    validate_tensor,
)

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3

log = logging.getLogger("skewlines")


class InputError(Exception):
    pass


@dataclass
class RunManifest:
    command: str
    seed: int
    budgets: dict = field(default_factory=dict)
    inputs: list = field(default_factory=list)
    outputs: list = field(default_factory=list)
    version: str = __version__
    wall_time: float | None = None  # only recorded with --timing, so reruns stay byte-identical


def dec(q: Fraction) -> str:
    return to_decimal(q, 10)


# --------------------------------------------------------------------------- output


class Emitter:
    """Single writer for artifacts and the terminal."""

    def __init__(self, args, manifest: RunManifest):
        self.args = args
        self.manifest = manifest
        self.t0 = time.perf_counter()

    def _finish_manifest(self) -> dict:
        if self.args.timing:
            self.manifest.wall_time = round(time.perf_counter() - self.t0, 3)
        if self.args.out:
            self.manifest.outputs = [str(self.args.out)]
        return asdict(self.manifest)

    def write(self, doc: dict, table: tuple | None = None, text: str | None = None) -> None:
        """``doc`` for json, ``table = (header, rows)`` for csv, ``text`` for text."""
        fmt = self.args.format
        man = self._finish_manifest()
        if fmt == "csv" and table is not None:
            lines = ["# " + json.dumps(man, sort_keys=True)]
            out = "\n".join(lines) + "\n" + csv_text(*table)
        elif fmt == "text" and text is not None:
            out = text.rstrip("\n") + "\n"
        else:
            out = dump_json({"manifest": man, **doc})
        if self.args.out:
            Path(self.args.out).write_text(out)
        else:
            sys.stdout.write(out)


def say(line: str) -> None:
    print(line, file=sys.stderr, flush=True)


# --------------------------------------------------------------------------- inputs


def _read_state(path) -> DiscreteState:
    try:
        st = load_state(path)
    except (OSError, FormatError, DegenerateLines, CoplanarTriple, TooFew, ValueError) as e:
        raise InputError(f"{path}: {e}") from e
    problems = validate_tensor(st.N)
    if problems:
        raise InputError(f"{path}: invalid direction tensor ({problems[0]})")
    return st


def _read_config(path) -> LineConfig:
    try:
        cfg = load_config(path)
        quantize(cfg)
    except (OSError, FormatError, DegenerateLines, CoplanarTriple, TooFew, ValueError) as e:
        raise InputError(f"{path}: {e}") from e
    return cfg


def _is_config(path) -> bool:
    try:
        return "lines" in _load(path)
    except (OSError, FormatError) as e:
        raise InputError(f"{path}: {e}") from e


# --------------------------------------------------------------------------- commands


def cmd_gen(args, em: Emitter) -> int:
    if args.n < 2:
        raise InputError("n must be at least 2")
    rng = np.random.default_rng(args.seed)
    configs = [config_to_dict(random_config(rng, args.n)) for _ in range(args.count)]
    em.manifest.budgets = {"count": args.count}
    if args.count == 1:
        em.write(configs[0])
    else:
        em.write({"configs": configs})
    return EXIT_PASS


def analyze_state(st: DiscreteState) -> dict:
    from .invariants import class_of, det_P, inv_configuration, invP, ring_from_state, ring_vector

    R = ring_from_state(st)
    doc = {"n": st.n, "det_P": det_P(st.P), "R": R.tolist(), "ring_vector": ring_vector(R).tolist()}
    for name, fn in (("invP", lambda: invP(st.P)), ("class", lambda: class_of(st.N)),
                     ("Inv", lambda: inv_configuration(st))):
        try:
            q = fn()
            doc[name] = str(q)
            doc[name + "_decimal"] = dec(q)
        except SingularMatrix:
            doc[name] = None
            doc[name + "_decimal"] = "singular"
    return doc


def cmd_analyze(args, em: Emitter) -> int:
    st = _read_state(args.file)
    em.manifest.inputs = [str(args.file)]
    doc = analyze_state(st)
    text = [f"n        {doc['n']}", f"det P    {doc['det_P']}"]
    for k in ("invP", "class", "Inv"):
        text.append(f"{k:<8} {doc[k + '_decimal']}  ({doc[k]})")
    text.append("ring vector " + " ".join(map(str, doc["ring_vector"])))
    text.append("R")
    text += ["  " + " ".join(f"{v:3d}" for v in row) for row in doc["R"]]
    em.write(doc, text="\n".join(text))
    return EXIT_PASS


def cmd_cluster(args, em: Emitter) -> int:
    from .groupoid import explore_cluster

    st = _read_state(args.state)
    em.manifest.inputs = [str(args.state)]
    em.manifest.budgets = {"max_states": args.budget}
    try:
        cl = explore_cluster(st, max_states=args.budget)
    except RuntimeError as e:
        say(str(e))
        return EXIT_INCONCLUSIVE
    doc = cluster_to_dict(cl)
    text = f"det P {cl.det_P}\nstates {cl.n_states}\nsize {cl.size}\nsum {dec(cl.gsum)}"
    table = (["inv", "decimal"], [[str(v), dec(v)] for v in cl.inv_values])
    em.write(doc, table=table, text=text)
    return EXIT_PASS


CENSUS_HEADER = ["det_P", "invP", "jd_0.8", "size", "n_states", "gsum", "specular", "mirror_of"]


def _census_rows(res) -> list[list]:
    rows = []
    for r in res.rows:
        jd = dec(r.jd.evaluate(Fraction("0.8"))) if r.jd is not None else ""
        rows.append([r.det_P, dec(r.invP), jd, r.size, r.n_states, dec(r.gsum), int(r.specular),
                     "" if r.mirror_of is None else r.mirror_of])
    return rows


def run_census(n, budget, seed, jones=True, progress=True):
    from .groupoid import IncompleteCensus, census

    def prog(s, c):
        if progress:
            say(f"census n={n}: {s} samples, {c} clusters")

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IncompleteCensus)
        return census(n, budget, seed=seed, with_jones=jones, progress=prog)


def cmd_census(args, em: Emitter) -> int:
    budget = args.budget or 100_000
    em.manifest.budgets = {"samples": budget}
    res = run_census(args.n, budget, args.seed, jones=not args.no_jones)
    rows = _census_rows(res)
    doc = {
        "n": args.n,
        "samples": res.samples,
        "complete": res.complete,
        "expected": res.expected,
        "total_size": res.total_size,
        "rows": [dict(zip(CENSUS_HEADER, r)) for r in rows],
    }
    text = "\n".join(" ".join(str(c) for c in r) for r in [CENSUS_HEADER] + rows)
    em.write(doc, table=(CENSUS_HEADER, rows), text=text)
    if not res.complete:
        say(f"inconclusive: {len(res.rows)} of {res.expected} clusters within budget")
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


def _direction(vals) -> np.ndarray:
    U = np.array(vals, dtype=float)
    if U.shape != (3,) or not np.isfinite(U).all() or not U.any():
        raise InputError("U needs three finite numbers, not all zero")
    return U


def cmd_project(args, em: Emitter) -> int:
    from .projection import DegeneratePoint, DegenerateProjection, project_plane, project_point, projection_inv

    cfg = _read_config(args.config)
    em.manifest.inputs = [str(args.config)]
    U = _direction(args.U)
    try:
        b = project_plane(cfg, U) if args.kind == "plane" else project_point(cfg, U)
    except (DegenerateProjection, DegeneratePoint) as e:
        say(f"degenerate: {e}")
        return EXIT_INCONCLUSIVE
    doc = bundle_to_dict(b)
    P = quantize(cfg).P
    try:
        q = projection_inv(P, b.prM)
        doc["inv"], doc["inv_decimal"] = str(q), dec(q)
    except SingularMatrix:
        doc["inv"], doc["inv_decimal"] = None, "singular"
    if b.P3D is not None:
        doc["P3D"] = b.P3D.astype(int).tolist()
    em.write(doc, text=f"kind {b.kind}\nInv {doc['inv_decimal']}")
    return EXIT_PASS


def cmd_inside(args, em: Emitter) -> int:
    from .projection import DegeneratePoint, is_outside

    cfg = _read_config(args.config)
    em.manifest.inputs = [str(args.config)]
    U = np.array(args.U, dtype=float)
    doc = {"U": U.tolist()}
    try:
        for crit in ("ring", "sandwich"):
            doc[crit] = "outside" if is_outside(cfg, U, crit) else "inside"
    except DegeneratePoint as e:
        say(f"degenerate: {e}")
        return EXIT_INCONCLUSIVE
    doc["agree"] = doc["ring"] == doc["sandwich"]
    em.write(doc, text=f"ring {doc['ring']}\nsandwich {doc['sandwich']}")
    return EXIT_PASS


def cmd_jones(args, em: Emitter) -> int:
    from .jones import diagram_from_geometry, diagram_from_state, jd, jm

    em.manifest.inputs = [str(args.state)]
    if _is_config(args.state):
        cfg = _read_config(args.state)
        rng = np.random.default_rng(args.seed)
        dg = None
        for _ in range(100):
            try:
                dg = diagram_from_geometry(cfg, rng.standard_normal(3))
                break
            except ValueError:
                continue
        source = "plane projection"
    else:
        dg = diagram_from_state(_read_state(args.state))
        source = "pseudo-projection"
    if dg is None:
        return EXIT_INCONCLUSIVE
    doc, text = {"source": source}, []
    for name, fn in (("jd", jd), ("jm", jm)):
        if args.which not in (name, "both"):
            continue
        p = fn(dg)
        doc[name] = str(p)
        text.append(f"{name} = {p}")
        if args.eval is not None:
            v = p.evaluate(Fraction(args.eval))
            doc[name + "_at"] = {"a": args.eval, "value": dec(v)}
            text.append(f"{name}({args.eval}) = {dec(v)}")
    em.write(doc, text="\n".join(text))
    return EXIT_PASS


# --------------------------------------------------------------------------- reproduce


@dataclass
class Cell:
    name: str
    ok: bool | None  # None: inconclusive
    got: str = ""
    want: str = ""

    @property
    def status(self) -> str:
        return {True: "pass", False: "fail", None: "inconclusive"}[self.ok]


def _close(got: float, want: float, tol: float) -> bool:
    return abs(got - want) <= tol


def reproduce_a21() -> list[Cell]:
    from .groupoid import explore_cluster
    from .invariants import inv_configuration
    from .projection import d3

    cells = []
    st = DiscreteState(golden.P27, d3(golden.PRM27))
    inv = inv_configuration(st)
    cells.append(Cell("Inv of printed projection", _close(float(inv), float(golden.INV_PRM27), 1e-9),
                      dec(inv), golden.INV_PRM27))
    cl = explore_cluster(st)
    got = [float(v) for v in cl.inv_values]
    want = sorted(v for v, _ in golden.TABLE_A21)
    cells.append(Cell("size", len(got) == len(want), str(len(got)), str(len(want))))
    for k, (g, w) in enumerate(zip(got, want)):
        cells.append(Cell(f"value {k}", _close(g, w, 1e-5), f"{g:.5f}", f"{w:.5f}"))
    cells.append(Cell("sum", _close(float(cl.gsum), golden.GSUM_A21, 1e-4), dec(cl.gsum), str(golden.GSUM_A21)))
    # map printed indices to exact values, then compare undirected edge sets
    exact = cl.inv_values
    idx = {}
    for i, (w, _) in enumerate(golden.TABLE_A21):
        near = [v for v in exact if abs(float(v) - w) <= 1e-5]
        if len(near) == 1:
            idx[i] = near[0]
    ours = cl.value_graph()
    printed = {frozenset(idx[i] for i in e) for e in golden.a21_edges() if all(i in idx for i in e)}
    rev = {v: i for i, v in idx.items()}
    for e in sorted(printed - ours, key=lambda e: sorted(rev[v] for v in e)):
        a, b = sorted(rev[v] for v in e)
        cells.append(Cell(f"edge {a}-{b}", False, "absent", "printed"))
    for e in sorted(ours - printed, key=lambda e: sorted(rev[v] for v in e)):
        a, b = sorted(rev[v] for v in e)
        cells.append(Cell(f"edge {a}-{b}", False, "present", "not printed"))
    cells.append(Cell("edges shared", ours == printed, str(len(ours & printed)), str(len(printed))))
    return cells


def _anchor_config(n: int, det: int, seed: int) -> LineConfig:
    from .invariants import det_P

    rng = np.random.default_rng(seed)
    while True:
        cfg = random_config(rng, n)
        if det_P(quantize(cfg).P) == det:
            return cfg


def reproduce_a3(seed: int = 0) -> list[Cell]:
    from .jones import LaurentPoly, diagram_from_geometry, jd, jm

    P = LaurentPoly.parse
    cells = []

    def polys(cfg):
        rng = np.random.default_rng(seed)
        while True:
            try:
                dg = diagram_from_geometry(cfg, rng.standard_normal(3))
                return jd(dg), jm(dg)
            except ValueError:
                continue

    jd2, jm2 = polys(_anchor_config(2, -1, seed))
    jd3, jm3 = polys(_anchor_config(3, 2, seed))
    jd3m, _ = polys(_anchor_config(3, -2, seed))
    cells.append(Cell("J_D 2-cross", jd2 == P(golden.JD_2CROSS), str(jd2), golden.JD_2CROSS))
    cells.append(Cell("J_M 2-cross", jm2 == P(golden.JM_2CROSS), str(jm2), golden.JM_2CROSS))
    cells.append(Cell("J_D 3-cross", jd3 == P(golden.JD_3CROSS), str(jd3), golden.JD_3CROSS))
    cells.append(Cell("J_M 3-cross", jm3 == P(golden.JM_3CROSS), str(jm3), golden.JM_3CROSS))
    cells.append(Cell("J_D mirror 3-cross", jd3m == P(golden.JD_3CROSS_MIRROR), str(jd3m), golden.JD_3CROSS_MIRROR))
    cells.append(Cell("mirror is a -> 1/a", jd3m == jd3.mirror(), str(jd3m), str(jd3.mirror())))
    lhs = -jd3.subs_power(2)
    cells.append(Cell("-J_D(a^2) = J_M 3-cross", lhs == jm3, str(lhs), str(jm3)))
    return cells


def _match_table1(rows) -> list[tuple]:
    """Pair census rows with printed rows of equal det and InvP, closest sum first."""
    free = list(range(len(golden.TABLE1)))
    pairs = []
    for r in sorted(rows, key=lambda r: (r.det_P, float(r.invP), float(r.gsum))):
        cand = [k for k in free if golden.TABLE1[k][1] == r.det_P and _close(float(r.invP), golden.TABLE1[k][2], 1e-5)]
        if not cand:
            pairs.append((r, None))
            continue
        k = min(cand, key=lambda k: abs(float(r.gsum) - golden.TABLE1[k][5]))
        free.remove(k)
        pairs.append((r, k))
    return pairs


def reproduce_t1(budget: int, seed: int) -> list[Cell]:
    res = run_census(6, budget, seed)
    cells = []
    if not res.complete:
        cells.append(Cell("clusters", None, str(len(res.rows)), "19"))
    else:
        cells.append(Cell("clusters", len(res.rows) == 19, str(len(res.rows)), "19"))
    cells.append(Cell("total size", res.total_size == golden.TABLE1_TOTAL, str(res.total_size), str(golden.TABLE1_TOTAL)))
    for r, k in _match_table1(res.rows):
        if k is None:
            cells.append(Cell(f"det {r.det_P} InvP {dec(r.invP)}", False, "unmatched", "-"))
            continue
        label, _, ip, jdv, size, gs = golden.TABLE1[k]
        cells.append(Cell(f"{label} size", r.size == size, str(r.size), str(size)))
        cells.append(Cell(f"{label} sum", _close(float(r.gsum), gs, 1e-3), f"{float(r.gsum):.5f}", str(gs)))
        got = float(r.jd.evaluate(Fraction("0.8")))
        cells.append(Cell(f"{label} J_D(0.8)", _close(got, jdv, 1e-5), f"{got:.5f}", str(jdv)))
        spec = r.det_P in golden.SPECULAR_DETS
        cells.append(Cell(f"{label} specular", r.specular == spec, str(r.specular), str(spec)))
    return cells


def reproduce_t2(budget: int, seed: int, extended: bool) -> list[Cell]:
    if not extended:
        return [Cell("n=7 census", None, "not run", "needs --extended")]
    res = run_census(7, budget, seed)
    pos = [r for r in res.rows if r.det_P > 0]
    cells = [Cell("clusters det>0", (len(pos) == golden.TABLE2_CLUSTERS) if res.complete else None,
                  str(len(pos)), str(golden.TABLE2_CLUSTERS))]
    want = sorted(golden.TABLE2)
    for r in sorted(pos, key=lambda r: r.det_P):
        got = float(r.jd.evaluate(Fraction("0.8")))
        hit = [w for w in want if w[0] == r.det_P and _close(got, w[1], 1e-3)]
        cells.append(Cell(f"det {r.det_P} J_D(0.8)", bool(hit), f"{got:.5f}", f"{hit[0][1]}" if hit else "-"))
    return cells


def reproduce_a4(budget: int, seed: int, stretch: bool) -> list[Cell]:
    if not stretch:
        return [Cell("n=8 census", None, "not run", "needs --stretch")]
    res = run_census(8, budget, seed, jones=False)
    n = len(res.rows)
    return [Cell("classes", (n == golden.KNOWN_COUNTS[8]) if res.complete else None, str(n), "506")]


def cmd_reproduce(args, em: Emitter) -> int:
    em.manifest.budgets = {"samples": args.budget, "extended": args.extended, "stretch": args.stretch}
    t = args.table
    if t == "A2.1":
        cells = reproduce_a21()
    elif t == "A3":
        cells = reproduce_a3(args.seed)
    elif t == "T1":
        cells = reproduce_t1(args.budget or 100_000, args.seed)
    elif t == "T2":
        cells = reproduce_t2(args.budget or 10_000_000, args.seed, args.extended)
    else:
        cells = reproduce_a4(args.budget or 100_000_000, args.seed, args.stretch)
    header = ["cell", "status", "got", "want"]
    rows = [[c.name, c.status, c.got, c.want] for c in cells]
    text = "\n".join(f"{c.status:<12} {c.name}: {c.got} (want {c.want})" for c in cells)
    em.write({"table": t, "cells": [dict(zip(header, r)) for r in rows]}, table=(header, rows), text=text)
    if any(c.ok is False for c in cells):
        return EXIT_FAIL
    if any(c.ok is None for c in cells):
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


# --------------------------------------------------------------------------- parser


def _common(top: bool) -> argparse.ArgumentParser:
    """Global flags; accepted before or after the subcommand."""
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    c = argparse.ArgumentParser(add_help=False)
    c.add_argument("--seed", type=int, default=d(0))
    c.add_argument("--budget", type=int, default=d(None), help="samples or states, per command")
    c.add_argument("--threads", type=int, default=d(1), help="accepted for interface stability; work is serial")
    c.add_argument("--out", type=Path, default=d(None))
    c.add_argument("--format", choices=("json", "csv", "text"), default=d("json"))
    c.add_argument("--timing", action="store_true", default=d(False), help="record wall time in the manifest")
    c.add_argument("-v", "--verbose", action="store_true", default=d(False))
    return c


def build_parser() -> argparse.ArgumentParser:
    common = _common(top=False)
    p = argparse.ArgumentParser(prog="skewlines", parents=[_common(top=True)], description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", parents=[common], help="sample random configurations")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--count", type=int, default=1)

    s = sub.add_parser("analyze", parents=[common], help="invariants of a config or state file")
    s.add_argument("file")

    s = sub.add_parser("cluster", parents=[common], help="explore the cluster of a state")
    s.add_argument("--state", required=True)

    s = sub.add_parser("census", parents=[common], help="enumerate clusters of n lines")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--no-jones", action="store_true")

    s = sub.add_parser("project", parents=[common], help="projection bundle along or from U")
    s.add_argument("--config", required=True)
    s.add_argument("--U", nargs=3, type=float, required=True)
    s.add_argument("--kind", choices=("plane", "point"), default="plane")

    s = sub.add_parser("inside", parents=[common], help="outside tests for a point U")
    s.add_argument("--config", required=True)
    s.add_argument("--U", nargs=3, type=float, required=True)

    s = sub.add_parser("jones", parents=[common], help="J_D and J_M polynomials")
    s.add_argument("--state", required=True, help="state file (pseudo-projection) or config file (plane projection)")
    s.add_argument("--which", choices=("jd", "jm", "both"), default="both")
    s.add_argument("--eval", default=None, help="rational evaluation point, e.g. 0.8")

    s = sub.add_parser("reproduce", parents=[common], help="compare against printed tables")
    s.add_argument("table", choices=("T1", "T2", "A2.1", "A3", "A4"))
    s.add_argument("--extended", action="store_true", help="allow the hours-scale n=7 census")
    s.add_argument("--stretch", action="store_true", help="allow the n=8 census")
    return p


COMMANDS = {
    "gen": cmd_gen,
    "analyze": cmd_analyze,
    "cluster": cmd_cluster,
    "census": cmd_census,
    "project": cmd_project,
    "inside": cmd_inside,
    "jones": cmd_jones,
    "reproduce": cmd_reproduce,
}


def main(argv=None) -> int:
    # exact cluster sums of large clusters have denominators beyond the default digit limit
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_PASS
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    inputs = [str(getattr(args, k)) for k in ("file", "state", "config") if getattr(args, k, None)]
    manifest = RunManifest(args.command, args.seed, {}, inputs)
    em = Emitter(args, manifest)
    try:
        return COMMANDS[args.command](args, em)
    except InputError as e:
        say(f"input error: {e}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
