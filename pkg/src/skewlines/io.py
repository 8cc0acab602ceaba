"""JSON and CSV interchange for configurations, states, bundles and reports."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .lincore import DiscreteState, LineConfig, lines_from_spec


class FormatError(ValueError):
    pass


def _load(path_or_text) -> dict:
    if isinstance(path_or_text, dict):
        return path_or_text
    text = Path(path_or_text).read_text() if not str(path_or_text).lstrip().startswith("{") else str(path_or_text)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"line {e.lineno}: {e.msg}") from e


def _need(doc: dict, key: str):
    if key not in doc:
        raise FormatError(f"missing key {key!r}")
    return doc[key]


# --------------------------------------------------------------------------- configs


def config_to_dict(cfg: LineConfig) -> dict:
    return {
        "n": cfg.n,
        "lines": [{"theta": t, "phi": p, "x": x, "y": y} for t, p, x, y in cfg.to_rows()],
    }


def config_from_dict(doc: dict) -> LineConfig:
    lines = _need(doc, "lines")
    try:
        rows = [(ln["theta"], ln["phi"], ln["x"], ln["y"]) for ln in lines]
    except (KeyError, TypeError) as e:
        raise FormatError(f"bad line entry: {e}") from e
    if "n" in doc and doc["n"] != len(rows):
        raise FormatError(f"n = {doc['n']} but {len(rows)} lines given")
    return lines_from_spec(rows)


# --------------------------------------------------------------------------- states


def state_to_dict(state: DiscreteState) -> dict:
    return {"n": state.n, "P": state.P.astype(int).tolist(), "N": state.N.astype(int).tolist()}


def state_from_dict(doc: dict) -> DiscreteState:
    P = np.array(_need(doc, "P"))
    N = np.array(_need(doc, "N"))
    n = doc.get("n", P.shape[0])
    if P.shape != (n, n) or N.shape != (n, n, n):
        raise FormatError(f"shape mismatch for n = {n}: P {P.shape}, N {N.shape}")
    if not np.isin(P, (-1, 0, 1)).all() or not np.isin(N, (-1, 0, 1)).all():
        raise FormatError("entries must be -1, 0 or +1")
    return DiscreteState(P, N)


def load_state(path_or_doc) -> DiscreteState:
    """A state file, or a config file which is quantized."""
    from .lincore import quantize

    doc = _load(path_or_doc)
    if "lines" in doc:
        return quantize(config_from_dict(doc))
    return state_from_dict(doc)


def load_config(path_or_doc) -> LineConfig:
    return config_from_dict(_load(path_or_doc))


def dump_json(doc: dict, path=None) -> str:
    text = json.dumps(doc, indent=1, sort_keys=True) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


# --------------------------------------------------------------------------- bundles


def bundle_to_dict(b) -> dict:
    return {
        "n": b.n,
        "kind": b.kind,
        "U": None if b.U is None else [float(x) for x in b.U],
        "prM": b.prM.astype(int).tolist(),
        "O": b.O.astype(int).tolist(),
    }


def bundle_from_dict(doc: dict):
    from .projection import ProjectionBundle

    prM = np.array(_need(doc, "prM"), dtype=np.int8)
    O = np.array(_need(doc, "O"), dtype=np.int8)
    U = doc.get("U")
    return ProjectionBundle(prM, O, None if U is None else np.array(U, dtype=float), doc.get("kind", "plane"))


# --------------------------------------------------------------------------- reports


def frac_cells(q: Fraction, digits: int = 10) -> list:
    return [f"{float(q):.{digits}g}", q.numerator, q.denominator]


def csv_text(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def cluster_to_dict(cl) -> dict:
    keys = sorted(cl.states)
    pos = {k: i for i, k in enumerate(keys)}
    return {
        "P": cl.P.astype(int).tolist(),
        "det_P": cl.det_P,
        "invP": str(cl.invP),
        "n_states": cl.n_states,
        "size": cl.size,
        "gsum": str(cl.gsum),
        "gsum_decimal": f"{float(cl.gsum):.10g}",
        "states": [k.hex() for k in keys],
        "inv": [str(cl.inv_of.get(k)) for k in keys],
        "adjacency": [[pos[m] for m in cl.adjacency.get(k, [])] for k in keys],
        "inv_values": [str(v) for v in cl.inv_values],
    }
