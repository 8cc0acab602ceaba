"""Switching moves, the one-row connection rule and cluster exploration.

A cluster is the connected component of a discrete state under switches
accepted by the one-row rule: flipping one cyclic triple of the direction
tensor must change exactly one row of the Ring matrix, with admissible content.
Labeled states related by a symmetry of ``P`` (relabeling plus reorientation)
share their invariant ``Inv``, so a cluster's configurations are counted by its
distinct ``Inv`` values.
"""

from __future__ import annotations

import functools
import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact import SingularMatrix
from .invariants import det_P, inv_configuration, invP, ring_batch, ring_from_state
from .lincore import (
    DiscreteState,
    LineConfig,
    canonical_key,
    mirror,
    quantize_batch,
    reorient,
    sample_configs,
    switch_to_transitive,
)

log = logging.getLogger(__name__)


# --------------------------------------------------------------------------- rows


@dataclass(frozen=True)
class RowType:
    """Admissible content of the single changed Ring row.

    The sandwiched line's own entry is 0, the two lines of the sandwich carry
    ``sandwich``, and the remaining ``n - 3`` entries are ``+1`` except
    ``minus`` of them equal to ``-1``; all up to an overall sign.
    """

    n: int
    minus: int
    extrapolated: bool = False

    @property
    def sandwich(self) -> int:
        return self.n - 3 - 2 * self.minus

    @property
    def pattern(self) -> tuple[int, ...]:
        vals = [1] * (self.n - 3 - self.minus) + [-1] * self.minus + [self.sandwich] * 2 + [0]
        order = {1: 0, -1: 1, 0: 3}
        return tuple(sorted(vals, key=lambda v: (order.get(v, 2), -v)))


def allowed_rows(n: int) -> list[RowType]:
    """Row catalog: ``floor((n-3)/2) + 1`` content types for ``n >= 4``."""
    if not 4 <= n <= 12:
        raise ValueError("row catalog defined for 4 <= n <= 12")
    return [RowType(n, f, extrapolated=n > 8) for f in range((n - 3) // 2 + 1)]


def match_row(row, sandwiched: int, others, n: int) -> RowType | None:
    """Catalog type of a Delta-R row, or ``None`` if the content is not admissible."""
    row = np.asarray(row)
    a, b = others
    rest = [m for m in range(n) if m not in (sandwiched, a, b)]
    for sigma in (1, -1):
        r = sigma * row
        if r[sandwiched] != 0 or r[a] != r[b]:
            continue
        vals = r[rest]
        if not np.isin(vals, (1, -1)).all():
            continue
        f = int((vals == -1).sum())
        if r[a] == n - 3 - 2 * f and n - 3 - 2 * f >= 0:
            return RowType(n, f, extrapolated=n > 8)
    return None


# --------------------------------------------------------------------------- moves


@dataclass(frozen=True)
class SwitchMove:
    triple: tuple[int, int, int]
    sandwiched: int | None = None


def _flip_mask(n: int, triples) -> np.ndarray:
    mask = np.ones((len(triples), n, n, n), dtype=np.int8)
    for t, (i, j, k) in enumerate(triples):
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            mask[t, a, b, c] = -1
            mask[t, a, c, b] = -1
    return mask


_MASKS: dict[int, tuple[list, np.ndarray]] = {}


def _triples(n: int):
    if n not in _MASKS:
        tr = list(itertools.combinations(range(n), 3))
        _MASKS[n] = (tr, _flip_mask(n, tr))
    return _MASKS[n]


def apply_switch(state: DiscreteState, move: SwitchMove | tuple) -> DiscreteState:
    """Negate the three cyclic entries of ``move.triple`` (and their transposes)."""
    triple = move.triple if isinstance(move, SwitchMove) else tuple(move)
    i, j, k = triple
    if state.N[i, j, k] == 0:
        raise ValueError(f"triple {triple} has a zero entry")
    return DiscreteState(state.P, state.N * _flip_mask(state.n, [triple])[0])


@dataclass(frozen=True)
class MoveDecision:
    accepted: bool
    sandwiched: int | None = None
    row_type: RowType | None = None
    reason: str = ""

    def __bool__(self):
        return self.accepted


class _FanCache(dict):
    """Memoized fan test on single direction-tensor components."""

    def ok(self, comp: np.ndarray, i: int) -> bool:
        key = (i, comp.tobytes())
        hit = self.get(key)
        if hit is None:
            idx = [a for a in range(comp.shape[0]) if a != i]
            hit = switch_to_transitive(comp[np.ix_(idx, idx)]) is not None
            self[key] = hit
        return hit


_fan = _FanCache()


def _tensor_ok(N: np.ndarray, comps) -> bool:
    return all(_fan.ok(N[c], c) for c in comps)


def _changed_triple(a: np.ndarray, b: np.ndarray):
    diff = np.argwhere(a != b)
    idx = sorted({int(x) for x in diff.ravel()})
    return tuple(idx) if len(idx) == 3 else None


def is_connected_move(before: DiscreteState, after: DiscreteState) -> MoveDecision:
    """One-row rule for a single switch ``before -> after``."""
    if not np.array_equal(before.P, after.P):
        return MoveDecision(False, reason="P differs")
    triple = _changed_triple(before.N, after.N)
    if triple is None or not np.array_equal(apply_switch(before, triple).N, after.N):
        return MoveDecision(False, reason="not a single switch")
    dR = ring_from_state(before) - ring_from_state(after)
    rows = [r for r in range(before.n) if dR[r].any()]
    if len(rows) != 1:
        return MoveDecision(False, reason=f"{len(rows)} nonzero rows")
    s = rows[0]
    if s not in triple:
        return MoveDecision(False, reason="changed row outside the triple")
    others = [m for m in triple if m != s]
    rt = match_row(dR[s], s, others, before.n)
    if rt is None:
        return MoveDecision(False, reason=f"row {dR[s].tolist()} not in catalog")
    if not (_tensor_ok(before.N, triple) and _tensor_ok(after.N, triple)):
        return MoveDecision(False, reason="fan property violated")
    return MoveDecision(True, sandwiched=s, row_type=rt)


def connected_neighbors(P: np.ndarray, N: np.ndarray, R: np.ndarray | None = None):
    """All accepted switches from ``(P, N)``: list of ``(triple, sandwiched, N')``."""
    n = P.shape[0]
    triples, masks = _triples(n)
    Ns = N[None] * masks
    if R is None:
        R = ring_batch(P, N[None])[0]
    dR = R[None] - ring_batch(P, Ns)
    nz = dR.any(axis=2)
    out = []
    for t in np.flatnonzero(nz.sum(axis=1) == 1):
        s = int(np.flatnonzero(nz[t])[0])
        triple = triples[t]
        if s not in triple:
            continue
        others = [m for m in triple if m != s]
        if match_row(dR[t, s], s, others, n) is None:
            continue
        if not _tensor_ok(Ns[t], triple):
            continue
        out.append((triple, s, Ns[t]))
    return out


# --------------------------------------------------------------------------- clusters


@dataclass
class Cluster:
    P: np.ndarray
    states: dict = field(repr=False)  # key -> N (int8)
    adjacency: dict = field(repr=False)  # key -> sorted list of keys
    inv_of: dict = field(repr=False)  # key -> Fraction
    singular: int = 0

    @property
    def n_states(self) -> int:
        return len(self.states)

    @property
    def inv_values(self) -> list[Fraction]:
        return sorted(set(self.inv_of.values()))

    @property
    def inv_multiset(self) -> Counter:
        return Counter(self.inv_of.values())

    @property
    def size(self) -> int:
        """Number of configurations, i.e. distinct ``Inv`` values."""
        return len(set(self.inv_of.values()))

    @property
    def gsum(self) -> Fraction:
        return sum(set(self.inv_of.values()), Fraction(0))

    @property
    def det_P(self) -> int:
        return det_P(self.P)

    @property
    def invP(self) -> Fraction:
        return invP(self.P)

    @property
    def signature(self) -> tuple:
        return (self.det_P, tuple(self.inv_values))

    def value_graph(self) -> set[frozenset]:
        """Undirected edges between distinct ``Inv`` values joined by an accepted move."""
        edges = set()
        for a, nbrs in self.adjacency.items():
            va = self.inv_of[a]
            for b in nbrs:
                vb = self.inv_of[b]
                if va != vb:
                    edges.add(frozenset((va, vb)))
        return edges

    def state(self, key) -> DiscreteState:
        return DiscreteState(self.P, self.states[key])

    def __contains__(self, state: DiscreteState) -> bool:
        return np.array_equal(state.P, self.P) and canonical_key(state) in self.states


def explore_cluster(seed: DiscreteState, max_states: int | None = None) -> Cluster:
    """Breadth-first search over accepted switches starting from ``seed``.

    The state set, adjacency and invariants do not depend on traversal order;
    frontiers are processed in key order so runs are bitwise reproducible.
    """
    P = np.array(seed.P, dtype=np.int8)
    k0 = canonical_key(seed)
    states = {k0: np.array(seed.N, dtype=np.int8)}
    adjacency: dict = {}
    frontier = [k0]
    while frontier:
        nxt = []
        for key in frontier:
            N = states[key]
            nbrs = []
            for _triple, _s, M in connected_neighbors(P, N):
                mk = canonical_key(DiscreteState(P, M))
                nbrs.append(mk)
                if mk not in states:
                    states[mk] = M
                    nxt.append(mk)
            adjacency[key] = sorted(nbrs)
        if max_states is not None and len(states) > max_states:
            raise RuntimeError(f"cluster exceeds {max_states} states")
        frontier = sorted(nxt)
    inv_of = {}
    singular = 0
    for key, N in states.items():
        try:
            inv_of[key] = inv_configuration(DiscreteState(P, N))
        except SingularMatrix:
            singular += 1
    if singular:
        log.warning("%d states with singular invariant matrix excluded", singular)
    return Cluster(P, states, adjacency, inv_of, singular)


# --------------------------------------------------------------------------- symmetry


def _perm_table(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.intp)


_PERMS: dict[int, np.ndarray] = {}


def _perms(n):
    if n not in _PERMS:
        _PERMS[n] = _perm_table(n)
    return _PERMS[n]


def _switch_forms(P: np.ndarray):
    """All relabelings of ``P`` with row 0 switched to +1; returns (forms, perms, signs)."""
    n = P.shape[0]
    perms = _perms(n)
    Pp = P[perms[:, :, None], perms[:, None, :]].astype(np.int8)
    s = Pp[:, 0, :].copy()
    s[:, 0] = 1
    forms = Pp * s[:, :, None] * s[:, None, :]
    return forms, perms, s


def _form_codes(forms: np.ndarray) -> np.ndarray:
    n = forms.shape[1]
    iu = np.triu_indices(n, 1)
    bits = (forms[:, iu[0], iu[1]] > 0).astype(np.int64)
    weights = 1 << np.arange(bits.shape[1] - 1, -1, -1, dtype=np.int64)
    return bits @ weights


@dataclass(frozen=True)
class SignedPerm:
    """Relabel by ``perm`` (new label of old line ``a`` is ``perm_inv``-based) then reorient."""

    order: tuple  # new line a is old line order[a]
    signs: tuple  # applied after relabeling

    def apply(self, state: DiscreteState) -> DiscreteState:
        order = np.asarray(self.order)
        P = state.P[np.ix_(order, order)]
        N = state.N[np.ix_(order, order, order)]
        return reorient(DiscreteState(P, N), self.signs)


def canonical_P(P: np.ndarray) -> tuple[np.ndarray, SignedPerm]:
    """Canonical representative of ``P`` under relabeling and reorientation."""
    forms, perms, s = _switch_forms(np.asarray(P))
    codes = _form_codes(forms)
    best = int(np.argmin(codes))
    return forms[best], SignedPerm(tuple(int(x) for x in perms[best]), tuple(int(x) for x in s[best]))


def automorphisms(P: np.ndarray) -> list[SignedPerm]:
    """Signed permutations fixing ``P`` (both global signs included)."""
    P = np.asarray(P, dtype=np.int8)
    perms = _perms(P.shape[0])
    Pp = P[perms[:, :, None], perms[:, None, :]]
    s = (Pp[:, 0, :] * P[0][None, :]).astype(np.int8)
    s[:, 0] = 1
    hits = np.flatnonzero((Pp * s[:, :, None] * s[:, None, :] == P[None]).all(axis=(1, 2)))
    out = []
    for h in hits:
        sg = tuple(int(x) for x in s[h])
        out.append(SignedPerm(tuple(int(x) for x in perms[h]), sg))
        out.append(SignedPerm(tuple(int(x) for x in perms[h]), tuple(-x for x in sg)))
    return out


@functools.lru_cache(maxsize=None)
def _batch_tables(n: int):
    perms = _perms(n)
    iu0, iu1 = np.triu_indices(n, 1)
    inner = [(x, y) for x, y in zip(iu0, iu1) if x > 0]
    # flat index into T[r, x, y] for every permutation and every inner pair
    flat = np.array(
        [[(p[0] * n + p[x]) * n + p[y] for x, y in inner] for p in perms],
        dtype=np.intp,
    )
    weights = 1 << np.arange(len(inner) - 1, -1, -1, dtype=np.int64)
    tri = np.array(list(itertools.combinations(range(n), 3)), dtype=np.intp).reshape(-1, 3).T
    return perms, flat, weights, (iu0, iu1), tri


def canonical_keys_batch(P: np.ndarray, N: np.ndarray) -> list[bytes]:
    """Keys of the states moved to their canonical ``P`` frame, for a stack of states.

    Matches ``canonical_key(canonicalize_state(s))`` state by state.  After
    relabeling by ``p`` and switching row 0 to +1, entry ``(x, y)`` of the form
    is ``P[p0, px] P[p0, py] P[px, py]``, so only that tensor is gathered.
    """
    B, n = P.shape[:2]
    perms, flat, weights, (iu0, iu1), tri = _batch_tables(n)
    Pi = P.astype(np.int8)
    T = Pi[:, :, :, None] * Pi[:, :, None, :] * Pi[:, None, :, :]
    T = T.reshape(B, -1)
    keys = []
    head = bytes([n])
    rows_all = np.arange(B)
    for lo in range(0, B, 512):
        rows = rows_all[lo : lo + 512]
        codes = (T[rows][:, flat] > 0).astype(np.int64) @ weights
        best = codes.argmin(axis=1)
        order = perms[best]
        Pp = Pi[rows[:, None, None], order[:, :, None], order[:, None, :]]
        sg = Pp[:, 0, :].copy()
        sg[:, 0] = 1
        Pc = Pp * sg[:, :, None] * sg[:, None, :]
        Nn = N[rows[:, None, None, None], order[:, :, None, None], order[:, None, :, None], order[:, None, None, :]]
        Nn = Nn * sg[:, :, None, None] * sg[:, None, :, None] * sg[:, None, None, :]
        bits = np.concatenate([Pc[:, iu0, iu1] > 0, Nn[:, tri[0], tri[1], tri[2]] > 0], axis=1)
        keys.extend(head + r.tobytes() for r in np.packbits(bits, axis=1))
    return keys


def canonicalize_state(state: DiscreteState) -> DiscreteState:
    _, g = canonical_P(state.P)
    return g.apply(state)


def specular_check(cluster: Cluster) -> bool:
    """True iff the mirror of a member is rigidly isotopic to a member (up to labels)."""
    key = next(iter(sorted(cluster.states)))
    m = mirror(cluster.state(key))
    mc = canonicalize_state(m)
    if not np.array_equal(mc.P, canonical_P(cluster.P)[0]):
        return False
    # bring the mirror into the cluster's own P frame
    _, g = canonical_P(cluster.P)
    back = _inverse(g).apply(mc)
    assert np.array_equal(back.P, cluster.P)
    for h in automorphisms(cluster.P):
        if h.apply(back) in cluster:
            return True
    return False


def _inverse(g: SignedPerm) -> SignedPerm:
    order = np.asarray(g.order)
    inv = np.argsort(order)
    # g: relabel (new a <- old order[a]) then multiply new line a by signs[a]
    signs = np.asarray(g.signs)[inv]
    return SignedPerm(tuple(int(x) for x in inv), tuple(int(x) for x in signs))


# --------------------------------------------------------------------------- census


@dataclass
class CensusRow:
    det_P: int
    invP: Fraction
    size: int
    n_states: int
    gsum: Fraction
    specular: bool = False
    mirror_of: int | None = None
    jd: object = None  # LaurentPoly of a real projection of the witness
    witness: LineConfig | None = field(default=None, repr=False)
    cluster: Cluster | None = field(default=None, repr=False)


@dataclass
class CensusResult:
    n: int
    rows: list[CensusRow]
    samples: int
    complete: bool
    expected: int | None = None
    visited: dict = field(default_factory=dict, repr=False)

    @property
    def total_size(self) -> int:
        return sum(r.size for r in self.rows)

    def locate(self, state: DiscreteState) -> int | None:
        """Row index of the cluster holding ``state``, if it was visited."""
        return self.visited.get(canonical_key(canonicalize_state(state)))


#: published numbers of rigid-isotopy classes
KNOWN_COUNTS = {6: 19, 7: 74, 8: 506}


class IncompleteCensus(Warning):
    pass


def census(
    n: int,
    budget: int,
    seed: int = 0,
    expected: int | None = None,
    sampler: str = "mixed",
    batch: int = 2048,
    keep_clusters: bool = False,
    progress=None,
    with_jones: bool = False,
) -> CensusResult:
    """Discover rigid-isotopy clusters of ``n`` lines from random configurations.

    Every sampled state and its mirror is moved to its canonical ``P`` frame;
    an unseen one seeds a cluster exploration.  Images of an explored cluster
    under the symmetries of ``P`` are marked visited, and clusters are
    identified by ``(det P, distinct Inv values)``.  Sampling stops when the
    budget is spent or ``expected`` clusters are known.  With ``with_jones``
    each row also carries ``J_D`` of a plane projection of its witness.
    """
    if expected is None:
        expected = KNOWN_COUNTS.get(n)
    rng = np.random.default_rng(seed)
    visited: dict[bytes, int] = {}
    found: dict[tuple, int] = {}
    clusters: list[Cluster] = []
    witnesses: list[LineConfig] = []
    auts: dict[bytes, list] = {}

    def register(state: DiscreteState, cfg: LineConfig) -> None:
        st = canonicalize_state(state)
        k = canonical_key(st)
        if k in visited:
            return
        cl = explore_cluster(st)
        idx = found.get(cl.signature)
        if idx is None:
            idx = len(clusters)
            found[cl.signature] = idx
            clusters.append(cl)
            witnesses.append(cfg)
            log.info("cluster %d: det %d size %d states %d", idx, cl.det_P, cl.size, cl.n_states)
        pk = cl.P.tobytes()
        if pk not in auts:
            auts[pk] = automorphisms(cl.P)
        for g in auts[pk]:
            if canonical_key(g.apply(st)) in visited:
                continue
            for N in cl.states.values():
                visited[canonical_key(g.apply(DiscreteState(cl.P, N)))] = idx

    samples = 0
    while samples < budget and (expected is None or len(clusters) < expected):
        count = min(batch, budget - samples)
        th, ph, x, y = sample_configs(rng, n, count, sampler)
        P, N, ok = quantize_batch(th, ph, x, y)
        samples += count
        idx = np.flatnonzero(ok)
        keys = canonical_keys_batch(P[idx], N[idx])
        mkeys = canonical_keys_batch(-P[idx], -N[idx])
        for b, k, mk in zip(idx, keys, mkeys):
            if k in visited and mk in visited:
                continue
            cfg = LineConfig(th[b], ph[b], x[b], y[b])
            state = DiscreteState(P[b], N[b])
            register(state, cfg)
            register(mirror(state), LineConfig(np.pi - th[b], ph[b], x[b], y[b]))
            if expected is not None and len(clusters) >= expected:
                break
        if progress is not None:
            progress(samples, len(clusters))

    rows = [
        CensusRow(
            det_P=cl.det_P,
            invP=cl.invP,
            size=cl.size,
            n_states=cl.n_states,
            gsum=cl.gsum,
            witness=w,
            cluster=cl if keep_clusters else None,
        )
        for cl, w in zip(clusters, witnesses)
    ]
    for i, cl in enumerate(clusters):
        m = canonicalize_state(mirror(cl.state(min(cl.states))))
        j = visited.get(canonical_key(m))
        rows[i].mirror_of = j
        rows[i].specular = j == i
    if with_jones:
        from .jones import jd_of_config

        for r in rows:
            r.jd = jd_of_config(r.witness, seed)
    complete = expected is None or len(clusters) >= expected
    if not complete:
        import warnings

        warnings.warn(f"census found {len(clusters)} of {expected} clusters", IncompleteCensus, stacklevel=2)
    return CensusResult(n, rows, samples, complete, expected, visited)
