"""Kauffman bracket state sums.

``<D> = sum over states a^(#A - #B) delta^(L - 1)`` with ``delta = -a^2 - a^-2``
and ``L`` the number of loops.  The fast path contracts crossings one at a
time, keeping for every partial state only how the dangling ports are joined
(a transfer matrix over a path decomposition).  Weights are counts indexed by
``(#A - #B, loops)`` so nothing overflows before the final exact sum.
"""

from __future__ import annotations

import itertools

import numpy as np

from .diagram import LinkDiagram, ProjectiveDiagram
from .laurent import DELTA, LaurentPoly

MAX_CROSSINGS = 64
BRUTE_MAX = 20


class TooManyCrossings(ValueError):
    pass


def _finish(counts: dict) -> LaurentPoly:
    """``sum c * a^e * delta^(L-1)`` over ``(e, L) -> c``."""
    out = LaurentPoly()
    by_loops: dict[int, LaurentPoly] = {}
    for (e, L), c in counts.items():
        if c:
            by_loops[L] = by_loops.get(L, LaurentPoly()) + LaurentPoly.monomial(e, int(c))
    for L, p in by_loops.items():
        if L < 1:
            raise AssertionError("a state without loops")
        out = out + p * DELTA ** (L - 1)
    return out


def bracket_bruteforce(d: LinkDiagram) -> LaurentPoly:
    """Direct 2^c state sum with union-find loop counting (test oracle)."""
    c = d.n_crossings
    if c > BRUTE_MAX:
        raise TooManyCrossings(f"{c} crossings exceed the brute-force limit {BRUTE_MAX}")
    m = 4 * c
    counts: dict = {}
    for bits in itertools.product((0, 1), repeat=c):
        parent = list(range(m))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        for p, q in d.edges:
            union(p, q)
        for k, b in enumerate(bits):
            for p, q in (d.b_pairs[k] if b else d.a_pairs[k]):
                union(4 * k + p, 4 * k + q)
        loops = len({find(x) for x in range(m)})
        e = c - 2 * sum(bits)
        counts[(e, loops)] = counts.get((e, loops), 0) + 1
    return _finish(counts)


def _order(d: LinkDiagram, partner: np.ndarray) -> list[int]:
    """Greedy crossing order keeping the frontier small."""
    c = d.n_crossings
    nbr = [[int(partner[4 * k + s]) // 4 for s in range(4)] for k in range(c)]
    done = [False] * c
    order = []
    for _ in range(c):
        best, best_key = None, None
        for k in range(c):
            if done[k]:
                continue
            inside = sum(1 for x in nbr[k] if done[x] or x == k)
            key = (-inside, k)
            if best_key is None or key < best_key:
                best, best_key = k, key
        done[best] = True
        order.append(best)
    return order


def bracket(d: LinkDiagram) -> LaurentPoly:
    """Frontier contraction of the bracket state sum."""
    c = d.n_crossings
    if c > MAX_CROSSINGS:
        raise TooManyCrossings(f"{c} crossings exceed the limit {MAX_CROSSINGS}")
    if c == 0:
        return LaurentPoly.const(1)
    partner = d.partner()
    order = _order(d, partner)
    processed = np.zeros(4 * c, dtype=bool)
    size_e = 2 * c + 1  # index e + c
    size_l = 2 * c + 2
    # frontier key: sorted tuple of (port, mate) for open ports; value: counts[e, L]
    start = np.zeros((size_e, size_l), dtype=np.int64)
    start[c, 0] = 1
    frontier: dict[tuple, np.ndarray] = {(): start}
    for k in order:
        ports = [4 * k + s for s in range(4)]
        processed[ports] = True
        nxt: dict[tuple, np.ndarray] = {}
        for key, w in frontier.items():
            for pairs, de in ((d.a_pairs[k], 1), (d.b_pairs[k], -1)):
                mate = dict(key)
                for p, q in pairs:
                    mate[4 * k + p] = 4 * k + q
                    mate[4 * k + q] = 4 * k + p
                loops = 0
                for x in ports:
                    if x not in mate:
                        continue
                    y = int(partner[x])
                    if not processed[y] or y not in mate:
                        continue
                    if mate[x] == y:  # x and y end the same path: it closes
                        del mate[x], mate[y]
                        loops += 1
                        continue
                    u, v = mate.pop(x), mate.pop(y)
                    mate[u], mate[v] = v, u
                nk = tuple(sorted(mate.items()))
                shifted = np.roll(np.roll(w, de, axis=0), loops, axis=1)
                if nk in nxt:
                    nxt[nk] += shifted
                else:
                    nxt[nk] = shifted.copy()
        frontier = nxt
    assert list(frontier) == [()]
    w = frontier[()]
    counts = {(e - c, L): int(w[e, L]) for e, L in zip(*np.nonzero(w))}
    return _finish(counts)


def kauffman_bracket(d: LinkDiagram, method: str = "frontier") -> LaurentPoly:
    if method == "frontier":
        return bracket(d)
    if method == "brute":
        return bracket_bruteforce(d)
    raise ValueError(f"unknown method {method!r}")


def jd(d: ProjectiveDiagram, method: str = "frontier") -> LaurentPoly:
    """Projective bracket of the line diagram itself."""
    return kauffman_bracket(d.link_diagram(), method)


def jm(d: ProjectiveDiagram, method: str = "frontier") -> LaurentPoly:
    """Bracket of the doubled diagram of closed curves."""
    return kauffman_bracket(d.double(), method)
