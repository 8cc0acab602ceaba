"""Oriented lines in 3-space and their sign-matrix quantization.

A line is ``gamma_i(t) = n_i t + v_i`` with unit direction ``n_i`` given by
spherical angles and anchor ``v_i = (x_i, y_i, 0)``.  The discrete state of a
configuration is the pair ``(P, N)``: the symmetric chirality matrix of linking
signs and the direction tensor of triple-product signs.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

#: relative threshold below which a mixed product is treated as zero
SIGN_TOL = 1e-9


class DegenerateLines(ValueError):
    def __init__(self, i: int, j: int, why: str = "parallel or intersecting"):
        super().__init__(f"lines {i} and {j} are {why}")
        self.i, self.j = i, j


class CoplanarTriple(ValueError):
    def __init__(self, i: int, j: int, k: int):
        super().__init__(f"directions of lines {i}, {j}, {k} are coplanar")
        self.triple = (i, j, k)


class TooFew(ValueError):
    pass


def _frozen(a, dtype) -> np.ndarray:
    a = np.array(a, dtype=dtype)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class LineConfig:
    """Continuous input: angles and anchors of ``n`` oriented lines."""

    theta: np.ndarray
    phi: np.ndarray
    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        for name in ("theta", "phi", "x", "y"):
            object.__setattr__(self, name, _frozen(getattr(self, name), float))

    @property
    def n(self) -> int:
        return len(self.theta)

    @property
    def directions(self) -> np.ndarray:
        st = np.sin(self.theta)
        return np.stack([st * np.cos(self.phi), st * np.sin(self.phi), np.cos(self.theta)], axis=1)

    @property
    def anchors(self) -> np.ndarray:
        return np.stack([self.x, self.y, np.zeros(self.n)], axis=1)

    def to_rows(self) -> list[tuple[float, float, float, float]]:
        return [tuple(map(float, r)) for r in zip(self.theta, self.phi, self.x, self.y)]


@dataclass(frozen=True, eq=False)
class DiscreteState:
    """Quantized configuration: chirality matrix ``P`` and direction tensor ``N``.

    ``N[i]`` is the antisymmetric matrix ``(N_i)_{j,k}``.  Arrays are stored as
    read-only ``int8``.
    """

    P: np.ndarray
    N: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "P", _frozen(self.P, np.int8))
        object.__setattr__(self, "N", _frozen(self.N, np.int8))
        n = self.P.shape[0]
        if n < 2:
            raise TooFew("a state needs at least two lines")
        if self.P.shape != (n, n) or self.N.shape != (n, n, n):
            raise ValueError(f"shape mismatch: P {self.P.shape}, N {self.N.shape}")

    @property
    def n(self) -> int:
        return self.P.shape[0]

    def __eq__(self, other):
        if not isinstance(other, DiscreteState):
            return NotImplemented
        return np.array_equal(self.P, other.P) and np.array_equal(self.N, other.N)

    def __hash__(self):
        return hash(canonical_key(self))


def _mixed(a, b, c) -> float:
    return float(np.dot(a, np.cross(b, c)))


def lines_from_spec(raw) -> LineConfig:
    """Build and validate a configuration from rows ``(theta, phi, x, y)``."""
    rows = [tuple(map(float, r)) for r in raw]
    if len(rows) < 2:
        raise TooFew(f"need at least 2 lines, got {len(rows)}")
    arr = np.array(rows)
    cfg = LineConfig(arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3])
    check_skew(cfg)
    return cfg


def check_skew(cfg: LineConfig) -> None:
    """Raise :class:`DegenerateLines` unless every pair is skew within tolerance."""
    d, v = cfg.directions, cfg.anchors
    for i, j in itertools.combinations(range(cfg.n), 2):
        cr = np.cross(d[i], d[j])
        if np.linalg.norm(cr) <= SIGN_TOL:
            raise DegenerateLines(i, j, "parallel")
        w = v[i] - v[j]
        if abs(np.dot(cr, w)) <= SIGN_TOL * max(np.linalg.norm(w), 1e-300):
            raise DegenerateLines(i, j, "intersecting")


def chirality(cfg: LineConfig) -> np.ndarray:
    """``P_ij = sign((n_i, n_j, v_i - v_j))``; symmetric with zero diagonal."""
    d, v = cfg.directions, cfg.anchors
    n = cfg.n
    P = np.zeros((n, n), dtype=np.int8)
    for i, j in itertools.combinations(range(n), 2):
        w = v[i] - v[j]
        m = _mixed(d[i], d[j], w)
        if abs(m) <= SIGN_TOL * np.linalg.norm(w):
            raise DegenerateLines(i, j)
        P[i, j] = P[j, i] = 1 if m > 0 else -1
    return P


def direction_tensor(cfg: LineConfig) -> np.ndarray:
    """``(N_i)_{j,k} = sign(n_i . (n_j x n_k))`` for distinct ``i, j, k``."""
    d = cfg.directions
    n = cfg.n
    N = np.zeros((n, n, n), dtype=np.int8)
    for i, j, k in itertools.combinations(range(n), 3):
        m = _mixed(d[i], d[j], d[k])
        if abs(m) <= SIGN_TOL:
            raise CoplanarTriple(i, j, k)
        s = 1 if m > 0 else -1
        # cyclic copies share the value, transpositions flip it
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            N[a, b, c] = s
            N[a, c, b] = -s
    return N


def quantize(cfg: LineConfig) -> DiscreteState:
    return DiscreteState(chirality(cfg), direction_tensor(cfg))


def mirror(state: DiscreteState) -> DiscreteState:
    return DiscreteState(-state.P.astype(np.int8), -state.N.astype(np.int8))


def relabel(state: DiscreteState, perm) -> DiscreteState:
    """Line ``perm[a]`` of the result is line ``a`` of ``state``."""
    perm = np.asarray(perm)
    inv = np.argsort(perm)
    P = state.P[np.ix_(inv, inv)]
    N = state.N[np.ix_(inv, inv, inv)]
    return DiscreteState(P, N)


def reorient(state: DiscreteState, signs) -> DiscreteState:
    """Reverse the orientation of every line ``i`` with ``signs[i] == -1``."""
    s = np.asarray(signs, dtype=np.int8)
    P = state.P * np.outer(s, s)
    N = state.N * s[:, None, None] * s[None, :, None] * s[None, None, :]
    return DiscreteState(P, N)


def delete_line(state: DiscreteState, i: int) -> DiscreteState:
    keep = [a for a in range(state.n) if a != i]
    return DiscreteState(state.P[np.ix_(keep, keep)], state.N[np.ix_(keep, keep, keep)])


def random_config(rng: np.random.Generator, n: int, max_tries: int = 1000) -> LineConfig:
    """Sample ``theta in [0, pi]``, ``phi in [0, 2pi)``, ``x, y in [-1, 1]``; resample degeneracies."""
    for _ in range(max_tries):
        theta = rng.uniform(0.0, np.pi, n)
        phi = rng.uniform(0.0, 2 * np.pi, n)
        xy = rng.uniform(-1.0, 1.0, (2, n))
        cfg = LineConfig(theta, phi, xy[0], xy[1])
        try:
            check_skew(cfg)
            direction_tensor(cfg)
        except (DegenerateLines, CoplanarTriple):
            continue
        return cfg
    raise RuntimeError(f"no generic {n}-line configuration after {max_tries} draws")


def switch_to_transitive(A: np.ndarray) -> np.ndarray | None:
    """Find signs ``s`` making ``s_j s_k A_jk`` an acyclic tournament, or ``None``.

    ``A`` is an antisymmetric +-1 matrix (zero diagonal).  Brute force over
    ``2^(m-1)`` sign vectors; fine for the ``m <= 11`` this package meets.
    """
    m = A.shape[0]
    if m <= 2:
        return np.ones(m, dtype=np.int8)
    target = np.arange(m)
    for tail in itertools.product((1, -1), repeat=m - 1):
        s = np.array((1,) + tail, dtype=np.int8)
        B = A * np.outer(s, s)
        if np.array_equal(np.sort((B > 0).sum(axis=1)), target):
            return s
    return None


def validate_tensor(N: np.ndarray) -> list[str]:
    """Return the list of violated direction-tensor invariants (empty if valid)."""
    N = np.asarray(N)
    n = N.shape[0]
    problems = []
    if N.shape != (n, n, n):
        return [f"bad shape {N.shape}"]
    if not np.array_equal(N, -np.transpose(N, (0, 2, 1))):
        problems.append("antisymmetry")
    for i in range(n):
        if N[i, i, :].any() or N[i, :, i].any():
            problems.append(f"nonzero row/column {i} in component {i}")
    for i, j, k in itertools.permutations(range(n), 3):
        if N[i, j, k] == 0:
            problems.append(f"zero entry ({i};{j},{k})")
        elif not (N[i, j, k] == N[j, k, i] == N[k, i, j]):
            problems.append(f"cyclic symmetry ({i},{j},{k})")
            break
    if problems:
        return problems
    for i in range(n):
        idx = [a for a in range(n) if a != i]
        if switch_to_transitive(N[i][np.ix_(idx, idx)]) is None:
            problems.append(f"component {i} is not a fan")
    return problems


@functools.lru_cache(maxsize=None)
def _key_index(n: int):
    iu = np.triu_indices(n, 1)
    tri = np.array(list(itertools.combinations(range(n), 3)), dtype=np.intp).reshape(-1, 3).T
    return iu, tuple(tri)


def canonical_key(state: DiscreteState) -> bytes:
    """Injective byte key: ``n`` followed by the packed signs of ``P_{i<j}`` and ``N_{i<j<k}``."""
    iu, tri = _key_index(state.n)
    bits = np.concatenate([state.P[iu] > 0, state.N[tri] > 0])
    return bytes([state.n]) + np.packbits(bits).tobytes()


SAMPLERS = ("uniform", "gauss", "ring")


def sample_configs(rng: np.random.Generator, n: int, count: int, kind: str = "mixed"):
    """Arrays ``theta, phi, x, y`` of shape ``(count, n)``.

    ``uniform``: the distribution of :func:`random_config`.  ``gauss``:
    isotropic directions, standard normal anchors.  ``ring``: anchors on the
    unit circle, azimuth roughly tangent to it, polar angle uniform.
    ``mixed`` draws the kind per configuration.
    """
    if kind == "mixed":
        which = rng.integers(0, len(SAMPLERS), count)
        out = [np.empty((count, n)) for _ in range(4)]
        for k, name in enumerate(SAMPLERS):
            sel = which == k
            for arr, part in zip(out, sample_configs(rng, n, int(sel.sum()), name)):
                arr[sel] = part
        return tuple(out)
    shape = (count, n)
    if kind == "uniform":
        theta = rng.uniform(0.0, np.pi, shape)
        phi = rng.uniform(0.0, 2 * np.pi, shape)
        x, y = rng.uniform(-1.0, 1.0, (2,) + shape)
    elif kind == "gauss":
        theta = np.arccos(rng.uniform(-1.0, 1.0, shape))
        phi = rng.uniform(0.0, 2 * np.pi, shape)
        x, y = rng.standard_normal((2,) + shape)
    elif kind == "ring":
        ang = rng.uniform(0.0, 2 * np.pi, shape)
        x, y = np.cos(ang), np.sin(ang)
        theta = rng.uniform(0.0, np.pi, shape)
        phi = ang + np.pi / 2 + rng.normal(0.0, 0.5, shape)
    else:
        raise ValueError(f"unknown sampler {kind!r}")
    return theta, phi, x, y


@functools.lru_cache(maxsize=None)
def _pairs_triples(n: int):
    pairs = np.array(list(itertools.combinations(range(n), 2)), dtype=np.intp).reshape(-1, 2)
    triples = np.array(list(itertools.combinations(range(n), 3)), dtype=np.intp).reshape(-1, 3)
    return pairs, triples


def quantize_batch(theta, phi, x, y):
    """Vectorized :func:`quantize`; returns ``P, N, ok`` with ``ok`` false for degenerate rows."""
    theta, phi, x, y = (np.asarray(a, dtype=float) for a in (theta, phi, x, y))
    B, n = theta.shape
    st = np.sin(theta)
    d = np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)
    v = np.stack([x, y, np.zeros_like(x)], axis=-1)
    pairs, triples = _pairs_triples(n)
    i, j = pairs.T
    cr = np.cross(d[:, i], d[:, j])
    w = v[:, i] - v[:, j]
    m = np.einsum("bpk,bpk->bp", cr, w)
    ok = (np.abs(m) > SIGN_TOL * np.linalg.norm(w, axis=-1)).all(axis=1)
    ok &= (np.linalg.norm(cr, axis=-1) > SIGN_TOL).all(axis=1)
    P = np.zeros((B, n, n), dtype=np.int8)
    sp = np.where(m > 0, 1, -1).astype(np.int8)
    P[:, i, j] = sp
    P[:, j, i] = sp
    N = np.zeros((B, n, n, n), dtype=np.int8)
    if len(triples):
        a, b, c = triples.T
        t = np.einsum("btk,btk->bt", d[:, a], np.cross(d[:, b], d[:, c]))
        ok &= (np.abs(t) > SIGN_TOL).all(axis=1)
        s = np.where(t > 0, 1, -1).astype(np.int8)
        for p, q, r in ((a, b, c), (b, c, a), (c, a, b)):
            N[:, p, q, r] = s
            N[:, p, r, q] = -s
    return P, N, ok
