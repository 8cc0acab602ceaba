"""Projective line diagrams and their doubled closed-curve lifts.

Each crossing has four ports.  Port ``4*c + s`` of crossing ``c = (i, j)``
uses slot ``s``: 0 = outgoing along ``i``, 1 = incoming along ``i``,
2 = outgoing along ``j``, 3 = incoming along ``j``.  A diagram is a set of
edges between ports plus, per crossing, the two port pairings produced by its
A- and B-smoothings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..lincore import LineConfig, chirality
from ..projection import NotTriangularizable, ProjectionBundle, crossing_orders, project_plane

#: rotation sign at crossing (i, j) equals ``HANDEDNESS * O[i, j] * P[i, j]``
HANDEDNESS = 1


class NotRealizable(ValueError):
    pass


@dataclass(frozen=True)
class LinkDiagram:
    """Abstract 4-valent diagram ready for the bracket state sum."""

    n_crossings: int
    edges: tuple  # (port, port) pairs, every port used once
    a_pairs: tuple  # per crossing: ((p, q), (r, s)) in local slots
    b_pairs: tuple
    components: int

    def partner(self) -> np.ndarray:
        m = np.full(4 * self.n_crossings, -1, dtype=np.intp)
        for p, q in self.edges:
            m[p], m[q] = q, p
        return m


@dataclass(frozen=True)
class ProjectiveDiagram:
    """Diagram of ``n`` projected lines in the projective plane.

    ``orders[i]`` lists the lines crossed by ``i`` in the direction of travel;
    ``over[i, j] = +1`` when ``i`` passes over ``j``; ``rot[i, j] = +1`` when the
    outgoing direction of ``j`` lies counterclockwise of that of ``i`` (within a
    half turn) as seen by the viewer.
    """

    orders: tuple
    over: np.ndarray
    rot: np.ndarray

    @property
    def n(self) -> int:
        return len(self.orders)

    @property
    def crossings(self) -> list[tuple[int, int]]:
        return list(itertools.combinations(range(self.n), 2))

    def link_diagram(self) -> LinkDiagram:
        return _assemble(self, doubled=False)

    def double(self) -> LinkDiagram:
        return _assemble(self, doubled=True)

    def mirror(self) -> ProjectiveDiagram:
        return ProjectiveDiagram(self.orders, self.over, -self.rot)


def _smoothings(over_first: bool, rot: int):
    """A and B pairings of slots for one crossing.

    Counterclockwise from the outgoing over-port ``o+`` the ports are
    ``o+, x, o-, y``; A joins ``x-o-`` and ``y-o+``, B joins ``o+-x`` and ``o--y``.
    """
    # ccw order for line i first: i+, j(+ if rot else -), i-, j(- if rot else +)
    ccw = [0, 2, 1, 3] if rot > 0 else [0, 3, 1, 2]
    if not over_first:
        ccw = ccw[1:] + ccw[:1]  # start from j's outgoing port
        if ccw[0] != 2:
            ccw = ccw[2:] + ccw[:2]
    o_plus, x, o_minus, y = ccw
    return ((x, o_minus), (y, o_plus)), ((o_plus, x), (o_minus, y))


def _assemble(d: ProjectiveDiagram, doubled: bool) -> LinkDiagram:
    n = d.n
    index = {c: k for k, c in enumerate(d.crossings)}
    C = len(index)

    def port(i, j, out):
        a, b = (i, j) if i < j else (j, i)
        slot = (0 if out else 1) if i == a else (2 if out else 3)
        return 4 * index[(a, b)] + slot

    plain, twisted = [], []
    for i, order in enumerate(d.orders):
        for u, w in zip(order, order[1:]):
            plain.append((port(i, u, True), port(i, w, False)))
        twisted.append((port(i, order[-1], True), port(i, order[0], False)))
    a_pairs, b_pairs = [], []
    for i, j in d.crossings:
        A, B = _smoothings(d.over[i, j] > 0, int(d.rot[i, j]))
        a_pairs.append(A)
        b_pairs.append(B)
    if not doubled:
        return LinkDiagram(C, tuple(plain + twisted), tuple(a_pairs), tuple(b_pairs), components=n)
    shift = 4 * C
    edges = plain + [(p + shift, q + shift) for p, q in plain]
    edges += [(p, q + shift) for p, q in twisted] + [(p + shift, q) for p, q in twisted]
    return LinkDiagram(2 * C, tuple(edges), tuple(a_pairs) * 2, tuple(b_pairs) * 2, components=n)


def diagram_from_bundle(prM, O, P) -> ProjectiveDiagram:
    """Diagram from crossing orders, overlaps and the chirality matrix."""
    try:
        orders = crossing_orders(prM)
    except NotTriangularizable as e:
        raise NotRealizable(str(e)) from e
    O = np.asarray(O, dtype=np.int8)
    P = np.asarray(P, dtype=np.int8)
    rot = (HANDEDNESS * O * P).astype(np.int8)
    return ProjectiveDiagram(tuple(tuple(o) for o in orders), O, rot)


def diagram_from_geometry(cfg: LineConfig, U) -> ProjectiveDiagram:
    """Diagram of the parallel projection along ``U`` with handedness read off the geometry."""
    b: ProjectionBundle = project_plane(cfg, U)
    orders = crossing_orders(b.prM)
    d = cfg.directions
    n = cfg.n
    rot = np.zeros((n, n), dtype=np.int8)
    for i, j in itertools.permutations(range(n), 2):
        rot[i, j] = 1 if np.dot(b.U, np.cross(d[i], d[j])) > 0 else -1
    return ProjectiveDiagram(tuple(tuple(o) for o in orders), b.O, rot)


def diagram_from_state(state, component: int = 0, row: int | None = None, row_sign: int = 1) -> ProjectiveDiagram:
    """Diagram of a pseudo-projection of a discrete state."""
    from ..projection import auxiliary_H, prm_from_H

    H = auxiliary_H(state.N, component, row, row_sign)
    P = state.P.astype(np.int8)
    return diagram_from_bundle(prm_from_H(H, state.N), H * P, P)


def geometry_bundle_diagram(cfg: LineConfig, U) -> ProjectiveDiagram:
    b = project_plane(cfg, U)
    return diagram_from_bundle(b.prM, b.O, chirality(cfg))
