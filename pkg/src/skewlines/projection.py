"""Plane and point projections of line configurations and their sign algebra.

A projection is recorded as a bundle ``(prM, O)``.  ``prM[i][j, k]`` is +1 when
moving along projected line ``i`` from its crossing with ``j`` to its crossing
with ``k`` follows the orientation of ``i``, and -1 otherwise.  ``O[i, k]`` is
+1 when ``i`` passes over ``k`` at their crossing.  The matrix ``H = P * O``
(entrywise) ties the two together and can be recovered from ``prM`` alone.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact import SingularMatrix
from .invariants import inv_configuration, ring_batch, t3
from .lincore import SIGN_TOL, DiscreteState, LineConfig, chirality, quantize, switch_to_transitive

log = logging.getLogger(__name__)


class DegenerateProjection(ValueError):
    pass


class DegeneratePoint(ValueError):
    pass


class InconsistentBundle(ValueError):
    pass


class NotTriangularizable(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ProjectionBundle:
    prM: np.ndarray
    O: np.ndarray
    U: np.ndarray | None = None
    kind: str = "plane"
    P3D: np.ndarray | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.prM.shape[0]


def uu(n: int) -> np.ndarray:
    """All ones off the diagonal."""
    return np.ones((n, n), dtype=np.int8) - np.identity(n, dtype=np.int8)


def ring_of(A: np.ndarray, X: np.ndarray) -> np.ndarray:
    """Ring matrix ``R(A, X)`` for an arbitrary sign tensor ``X`` (not necessarily cyclic)."""
    return ring_batch(np.asarray(A), np.asarray(X)[None])[0]


# --------------------------------------------------------------------------- geometry


def _crossings(cfg: LineConfig, normals: np.ndarray, origin_vecs):
    """``t[i, j]``: parameter on line ``i`` where it meets the shadow plane of line ``j``.

    ``normals[j]`` is the normal of the plane spanned by line ``j`` and the
    projection rays; ``origin_vecs[j]`` a point on that plane.
    """
    d, v = cfg.directions, cfg.anchors
    n = cfg.n
    t = np.zeros((n, n))
    for i, j in itertools.permutations(range(n), 2):
        den = float(np.dot(normals[j], d[i]))
        if abs(den) <= SIGN_TOL * np.linalg.norm(normals[j]):
            raise DegenerateProjection(f"line {i} parallel to the shadow of line {j}")
        t[i, j] = -float(np.dot(normals[j], v[i] - origin_vecs[j])) / den
    return t


def _prm_from_t(t: np.ndarray) -> np.ndarray:
    n = t.shape[0]
    prM = np.zeros((n, n, n), dtype=np.int8)
    scale = max(1.0, float(np.abs(t).max()))
    for i in range(n):
        for j, k in itertools.permutations([a for a in range(n) if a != i], 2):
            dt = t[i, k] - t[i, j]
            if abs(dt) <= SIGN_TOL * scale:
                raise DegenerateProjection(f"crossings ({i},{j}) and ({i},{k}) coincide")
            prM[i, j, k] = 1 if dt > 0 else -1
    return prM


def project_plane(cfg: LineConfig, U) -> ProjectionBundle:
    """Parallel projection along ``U``; the viewer sits at ``+infinity * U``."""
    U = np.asarray(U, dtype=float)
    U = U / np.linalg.norm(U)
    d, v = cfg.directions, cfg.anchors
    n = cfg.n
    normals = np.cross(d, U)
    if (np.linalg.norm(normals, axis=1) <= SIGN_TOL).any():
        raise DegenerateProjection("U parallel to a line")
    t = _crossings(cfg, normals, v)
    prM = _prm_from_t(t)
    O = np.zeros((n, n), dtype=np.int8)
    for i, j in itertools.combinations(range(n), 2):
        hi = np.dot(d[i] * t[i, j] + v[i], U)
        hj = np.dot(d[j] * t[j, i] + v[j], U)
        if abs(hi - hj) <= SIGN_TOL:
            raise DegenerateProjection(f"lines {i}, {j} meet")
        O[i, j] = 1 if hi > hj else -1
        O[j, i] = -O[i, j]
    return ProjectionBundle(prM, O, U, "plane")


def sandwich_matrix(cfg: LineConfig, U) -> np.ndarray:
    """``P3D[j, k] = -1`` iff ``U`` lies strictly between the parallel planes of lines ``j, k``."""
    U = np.asarray(U, dtype=float)
    d, v = cfg.directions, cfg.anchors
    n = cfg.n
    S = uu(n)
    for j, k in itertools.combinations(range(n), 2):
        m = np.cross(d[j], d[k])
        m /= np.linalg.norm(m)
        sj, sk = np.dot(m, U - v[j]), np.dot(m, U - v[k])
        gap = abs(np.dot(m, v[j] - v[k]))
        if min(abs(sj), abs(sk)) <= SIGN_TOL * max(gap, 1.0):
            raise DegeneratePoint(f"U on a parallel plane of lines {j}, {k}")
        if sj * sk < 0:
            S[j, k] = S[k, j] = -1
    return S


def project_point(cfg: LineConfig, U) -> ProjectionBundle:
    """Central projection from the point ``U``; ``prM`` is the sandwich-corrected tensor."""
    U = np.asarray(U, dtype=float)
    d, v = cfg.directions, cfg.anchors
    n = cfg.n
    normals = np.cross(d, v - U)
    if (np.linalg.norm(normals, axis=1) <= SIGN_TOL).any():
        raise DegeneratePoint("U lies on a line")
    try:
        t = _crossings(cfg, normals, v)
        prM3D = _prm_from_t(t)
    except DegenerateProjection as e:
        raise DegeneratePoint(str(e)) from e
    O = np.zeros((n, n), dtype=np.int8)
    for i, j in itertools.combinations(range(n), 2):
        di = np.linalg.norm(d[i] * t[i, j] + v[i] - U)
        dj = np.linalg.norm(d[j] * t[j, i] + v[j] - U)
        O[i, j] = 1 if di < dj else -1
        O[j, i] = -O[i, j]
    S = sandwich_matrix(cfg, U)
    prMN = (prM3D * t3(S)).astype(np.int8)
    return ProjectionBundle(prMN, O, U, "point", P3D=S)


def raw_point_tensor(bundle: ProjectionBundle) -> np.ndarray:
    """Undo the sandwich correction and return the uncorrected central-projection tensor."""
    return (bundle.prM * t3(bundle.P3D)).astype(np.int8)


def is_outside(cfg: LineConfig, U, criterion: str = "ring") -> bool:
    """Outside test from the Ring matrix of the corrected tensor, or from the sandwich matrix."""
    b = project_point(cfg, U)
    if criterion == "ring":
        return not ring_of(uu(cfg.n), b.prM).any()
    if criterion == "sandwich":
        return bool((b.P3D == uu(cfg.n)).all())
    raise ValueError(f"unknown criterion {criterion!r}")


# --------------------------------------------------------------------------- algebra


def d3(prM: np.ndarray) -> np.ndarray:
    """``N[i, j, k] = prM[i, j, k] prM[j, k, i] prM[k, i, j]``."""
    X = np.asarray(prM, dtype=np.int8)
    return (X * X.transpose(1, 2, 0) * X.transpose(2, 0, 1)).astype(np.int8)


def d2(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """``D2(A, B)[k, i, j] = A[i, k] A[j, k] B[k, i, j]``."""
    A = np.asarray(A, dtype=np.int8)
    return (A.T[:, :, None] * A.T[:, None, :] * np.asarray(B, dtype=np.int8)).astype(np.int8)


def recover_H(prM: np.ndarray) -> np.ndarray:
    """Antisymmetric ``H = P * O`` from ``prM`` alone, normalized to ``H[0, 1] = +1``."""
    X = np.asarray(prM, dtype=np.int64)
    n = X.shape[0]
    if n < 3:
        raise ValueError("need at least three lines")
    H = np.zeros((n, n), dtype=np.int64)
    H[0, 1], H[1, 0] = 1, -1
    for j in range(2, n):
        H[0, j] = -X[j, 1, 0] * X[1, 0, j]
        H[j, 0] = -H[0, j]
    for i in range(1, n):
        k = i - 1
        for j in range(n):
            if j in (i, k):
                continue
            val = H[k, i] * X[j, k, i] * X[k, i, j]
            if j < i and H[i, j] != val:
                raise InconsistentBundle(f"recursion disagrees at ({i},{j})")
            H[i, j], H[j, i] = val, -val
    check_H(H, X)
    return H.astype(np.int8)


def check_H(H, prM) -> None:
    """Raise unless ``H[i,j] H[i,k] = -prM[j][k,i] prM[k][i,j]`` for every distinct triple."""
    H = np.asarray(H, dtype=np.int64)
    X = np.asarray(prM, dtype=np.int64)
    n = H.shape[0]
    for i, j, k in itertools.permutations(range(n), 3):
        if H[i, j] * H[i, k] != -X[j, k, i] * X[k, i, j]:
            raise InconsistentBundle(f"H consistency fails at ({i},{j},{k})")


def prm_from_H(H: np.ndarray, N: np.ndarray) -> np.ndarray:
    """``prM = -D2(H, N)``."""
    return (-d2(H, N)).astype(np.int8)


def auxiliary_H(N: np.ndarray, component: int = 0, row: int | None = None, row_sign: int = 1) -> np.ndarray:
    """``N[component]`` with its own row filled from the reference ``row``.

    The filled row is ``row_sign`` at ``row`` and ``row_sign * N[component][row, m]``
    elsewhere, so that the reference row becomes a pure fan around the new row.
    """
    N = np.asarray(N, dtype=np.int8)
    n = N.shape[0]
    c = component
    if row is None:
        row = 1 if c == 0 else 0
    if row == c or not 0 <= row < n:
        raise ValueError("reference row must differ from the component")
    H = N[c].astype(np.int8).copy()
    H[c, :] = row_sign * N[c][row, :]
    H[c, row] = row_sign
    H[c, c] = 0
    H[:, c] = -H[c, :]
    return H


def pseudo_projection(N: np.ndarray, component: int = 0, row: int | None = None, row_sign: int = 1) -> np.ndarray:
    """A projection tensor built from ``N`` alone: ``prM = -D2(H0, N)``."""
    N = np.asarray(N, dtype=np.int8)
    c = component
    idx = [a for a in range(N.shape[0]) if a != c]
    if switch_to_transitive(N[c][np.ix_(idx, idx)]) is None:
        raise NotTriangularizable(f"component {c} is not a fan")
    return prm_from_H(auxiliary_H(N, c, row, row_sign), N)


def pseudo_variants(N: np.ndarray):
    """All ``2 n (n-1)`` pseudo-projections ``(component, row, sign, prM)``."""
    n = np.asarray(N).shape[0]
    for c in range(n):
        for r in range(n):
            if r == c:
                continue
            for s in (1, -1):
                yield c, r, s, pseudo_projection(N, c, r, s)


def crossing_orders(prM: np.ndarray) -> list[list[int]]:
    """Order of crossings along each line implied by ``prM``; raises if not a total order."""
    X = np.asarray(prM)
    n = X.shape[0]
    orders = []
    for i in range(n):
        others = [a for a in range(n) if a != i]
        # prM[i, j, k] = +1 means crossing j comes before crossing k
        score = {j: sum(1 for k in others if k != j and X[i, j, k] > 0) for j in others}
        order = sorted(others, key=lambda j: -score[j])
        for a, b in itertools.combinations(order, 2):
            if X[i, a, b] <= 0:
                raise NotTriangularizable(f"component {i} is not a total order")
        orders.append(order)
    return orders


# --------------------------------------------------------------------------- sweeps


def fibonacci_directions(count: int, rng: np.random.Generator | None = None, jitter: float = 0.0) -> np.ndarray:
    """Quasi-uniform unit vectors; optional tangent jitter of angular size ``jitter``."""
    k = np.arange(count) + 0.5
    z = 1 - 2 * k / count
    r = np.sqrt(1 - z * z)
    ang = np.pi * (1 + 5**0.5) * k
    U = np.stack([r * np.cos(ang), r * np.sin(ang), z], axis=1)
    if rng is not None and jitter > 0:
        U = U + jitter * rng.standard_normal(U.shape)
        U /= np.linalg.norm(U, axis=1, keepdims=True)
    return U


@dataclass
class SweepResult:
    values: set
    per_direction: list = field(repr=False)  # (index, U, Fraction)
    skipped: int = 0


def sweep_invariants(cfg: LineConfig, samples: int, seed: int = 0, jitter: float = 1e-3) -> SweepResult:
    """``Inv(P, D3(prM(U)))`` over quasi-uniform directions ``U``."""
    P = chirality(cfg)
    rng = np.random.default_rng(seed)
    out, skipped = [], 0
    for idx, U in enumerate(fibonacci_directions(samples, rng, jitter)):
        try:
            b = project_plane(cfg, U)
            val = inv_configuration(DiscreteState(P, d3(b.prM)))
        except (DegenerateProjection, SingularMatrix):
            skipped += 1
            continue
        out.append((idx, U, val))
    return SweepResult({v for _, _, v in out}, out, skipped)


def projection_inv(P, prM) -> Fraction:
    return inv_configuration(DiscreteState(P, d3(prM)))


# --------------------------------------------------------------------------- checks


def projection_identities(cfg: LineConfig, U) -> dict[str, bool]:
    """Exact identities linking a plane projection to the state of ``cfg``.

    ``ring_zero``: ``R(UU, prM) = 0``.  ``overlap``: ``prM_ijk prM_jki =
    -O_ik O_jk P_ik P_jk``.  ``rebuild``: ``prM = -D2(P*O, D3(prM))``.
    ``square``: ``H H = sum_k D3(prM)_k * prM_k - (n-1) I``.  ``d2_ring_zero``:
    ``R(UU, D2(P*O, N)) = 0``.  ``ring_d2``: ``R(P, N) = R(UU, D2(P, N))``.
    ``recover``: ``H`` is recovered from ``prM`` up to sign.  ``orders``:
    every component is a total order of crossings.
    """
    from .invariants import ring_from_state

    st = quantize(cfg)
    n = cfg.n
    P = st.P.astype(np.int64)
    b = project_plane(cfg, U)
    X = b.prM.astype(np.int64)
    O = b.O.astype(np.int64)
    H = P * O
    Nc = d3(b.prM)
    out = {}
    out["ring_zero"] = not ring_of(uu(n), b.prM).any()
    out["overlap"] = all(
        X[i, j, k] * X[j, k, i] == -O[i, k] * O[j, k] * P[i, k] * P[j, k]
        for i, j, k in itertools.permutations(range(n), 3)
    )
    out["rebuild"] = np.array_equal(prm_from_H(H, Nc), b.prM)
    rhs = sum(Nc[k].astype(np.int64) * X[k] for k in range(n)) - (n - 1) * np.identity(n, dtype=np.int64)
    out["square"] = np.array_equal(H @ H, rhs)
    out["d2_ring_zero"] = not ring_of(uu(n), d2(H, st.N)).any()
    out["ring_d2"] = np.array_equal(ring_from_state(st), ring_of(uu(n), d2(P, st.N)))
    if n >= 3:
        try:
            Hr = recover_H(b.prM).astype(np.int64)
            out["recover"] = np.array_equal(Hr, H) or np.array_equal(Hr, -H)
        except InconsistentBundle:
            out["recover"] = False
    try:
        crossing_orders(b.prM)
        out["orders"] = True
    except NotTriangularizable:
        out["orders"] = False
    return out
