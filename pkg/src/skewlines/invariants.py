"""Ring matrix, class, configuration invariants, all in exact arithmetic."""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .exact import SingularMatrix, charpoly, det, trace_inverse, trace_pseudo_inverse
from .lincore import SIGN_TOL, DiscreteState, LineConfig, chirality, delete_line


class NonIntegerEntry(ArithmeticError):
    pass


class NotDivisibleBy3(ArithmeticError):
    pass


class DegenerateTriple(ValueError):
    pass


class ZeroTrace(ArithmeticError):
    def __init__(self, i, j, k):
        super().__init__(f"tr(N_{i}[N_{j}, N_{k}]) vanishes")
        self.triple = (i, j, k)


def _ring_numerators(P: np.ndarray, N: np.ndarray) -> np.ndarray:
    """Eight times the Ring matrix for a batch of tensors ``N`` (shape ``(..., n, n, n)``)."""
    n = P.shape[-1]
    P = P.astype(np.int64)
    N = N.astype(np.int64)
    # NX[..., l, i] = (N_l P)_{i,l};  N2X[..., l, i] = (N_l^2 P)_{i,l}
    NX = np.einsum("...lij,jl->...li", N, P)
    N2X = np.einsum("...lij,...lj->...li", N, NX)
    num = n * (n - 2) + 2 * P.T * N2X - NX * NX
    idx = np.arange(n)
    num[..., idx, idx] = 0
    return num


def ring_from_state(state: DiscreteState) -> np.ndarray:
    """Closed-form Ring matrix; row ``j`` uses component ``N_j``.

    ``R_{j,i} = (n(n-2) + 2 P_ij (N_j^2 P)_ij - (N_j P)_ij^2) / 8`` off the diagonal.
    """
    num = _ring_numerators(state.P, state.N)
    if (num % 8).any():
        raise NonIntegerEntry("Ring matrix entry is not an integer; state is not realizable")
    return num // 8


def ring_batch(P: np.ndarray, Ns: np.ndarray) -> np.ndarray:
    """Ring matrices for a stack of direction tensors sharing one ``P``."""
    num = _ring_numerators(P, Ns)
    if (num % 8).any():
        raise NonIntegerEntry("Ring matrix entry is not an integer")
    return num // 8


def encaging_index(P, N, l, i, j, k) -> int:
    """Discrete indicator that lines ``i, j, k`` encage line ``l``: 1 or 0."""
    Nl = N[l]
    a = P[i, l] * P[j, l] * Nl[i, j]
    b = P[j, l] * P[k, l] * Nl[j, k]
    c = P[k, l] * P[i, l] * Nl[k, i]
    num = (a + 1) * (b + 1) * (c + 1) - (a - 1) * (b - 1) * (c - 1)
    assert num % 8 == 0
    return num // 8


def ring_oracle_discrete(state: DiscreteState) -> np.ndarray:
    """Ring matrix by summing the triple encaging index over ordered ``(j, k)``."""
    P = state.P.astype(int)
    N = state.N.astype(int)
    n = state.n
    R = np.zeros((n, n), dtype=np.int64)
    for l, i in itertools.permutations(range(n), 2):
        s = 0
        for j, k in itertools.permutations([m for m in range(n) if m not in (l, i)], 2):
            s += encaging_index(P, N, l, i, j, k)
        assert s % 2 == 0
        R[l, i] = s // 2
    return R


def ring_oracle_geometric(cfg: LineConfig) -> np.ndarray:
    """Ring matrix from the actual geometry of the lines.

    Viewed along ``n_l``, line ``l`` is a point and the other lines project to
    planar lines.  The triangle of lines ``i, j, k`` encircles line ``l`` iff
    the perpendicular feet ``r_i, r_j, r_k`` from that point surround it, i.e.
    the area-ratio index ``|sum r_a x r_b| / sum |r_a x r_b|`` equals one,
    which happens iff the three oriented areas share a sign.
    """
    d, v = cfg.directions, cfg.anchors
    n = cfg.n
    R = np.zeros((n, n), dtype=np.int64)
    for l in range(n):
        feet = {}
        for a in range(n):
            if a == l:
                continue
            u = np.cross(d[l], d[a])
            u /= np.linalg.norm(u)
            feet[a] = np.dot(v[a] - v[l], u) * u
        for i, j, k in itertools.combinations([a for a in range(n) if a != l], 3):
            areas = [np.dot(np.cross(feet[p], feet[q]), d[l]) for p, q in ((i, j), (j, k), (k, i))]
            scale = max(abs(x) for x in areas)
            if min(abs(x) for x in areas) <= SIGN_TOL * scale:
                raise DegenerateTriple(f"triangle ({i},{j},{k}) degenerate around line {l}")
            if all(x > 0 for x in areas) or all(x < 0 for x in areas):
                for a in (i, j, k):
                    R[l, a] += 1
    return R


def encaging_area_index(cfg: LineConfig, l, i, j, k) -> float:
    """The continuous area-ratio index; 1 exactly when ``i, j, k`` encage ``l``."""
    d = cfg.directions
    P = chirality(cfg)
    r = {a: P[l, a] * np.cross(d[l], d[a]) for a in (i, j, k)}
    pairs = ((i, j), (j, k), (k, i))
    crosses = [np.cross(r[p], r[q]) for p, q in pairs]
    return float(np.linalg.norm(sum(crosses)) / sum(np.linalg.norm(c) for c in crosses))


def ring_vector(R: np.ndarray) -> np.ndarray:
    s = np.asarray(R).sum(axis=1)
    if (s % 3).any():
        raise NotDivisibleBy3(f"row sums {s.tolist()} not divisible by 3")
    return s // 3


def ring_linearity_check(state: DiscreteState, subs=None) -> bool:
    """``R_n == sum_i pad(R_{n-1}^(i)) / (n - 4)`` for ``n > 4``."""
    n = state.n
    if n <= 4:
        raise ValueError("linearity needs n > 4")
    if subs is None:
        subs = [delete_line(state, i) for i in range(n)]
    total = np.zeros((n, n), dtype=np.int64)
    for i, sub in enumerate(subs):
        keep = [a for a in range(n) if a != i]
        total[np.ix_(keep, keep)] += ring_from_state(sub)
    return np.array_equal(total, (n - 4) * ring_from_state(state))


def gram(N: np.ndarray) -> np.ndarray:
    """``x = sum_i N_i^2`` as an integer matrix."""
    N = np.asarray(N, dtype=np.int64)
    return np.einsum("lij,ljk->ik", N, N)


def class_of(N: np.ndarray) -> Fraction:
    """Sum of reciprocal nonzero eigenvalues of ``sum_i N_i^2``."""
    return trace_pseudo_inverse(gram(N))


def inv_matrix2(state: DiscreteState) -> np.ndarray:
    """Twice the invariant's matrix: ``2 sum_i N_i^2 - P`` (integer)."""
    return 2 * gram(state.N) - state.P.astype(np.int64)


def inv_configuration(state: DiscreteState) -> Fraction:
    """``tr((sum_i N_i^2 - P/2)^-1)`` exactly."""
    return 2 * trace_inverse(inv_matrix2(state))


def t3(P: np.ndarray) -> np.ndarray:
    """``[T3_i]_{j,k} = P_ij P_jk P_ki``; zero wherever an index repeats."""
    P = np.asarray(P, dtype=np.int64)
    return np.einsum("ij,jk,ki->ijk", P, P, P)


def invP(P: np.ndarray) -> Fraction:
    """``sum_i tr((T3_i + I/2)^-1)`` exactly."""
    T = t3(P)
    n = T.shape[0]
    eye = np.identity(n, dtype=np.int64)
    total = Fraction(0)
    for i in range(n):
        try:
            total += 2 * trace_inverse(2 * T[i] + eye)
        except SingularMatrix as e:
            raise SingularMatrix(f"T3 component {i} + I/2 is singular") from e
    return total


def det_P(P: np.ndarray) -> int:
    return det(np.asarray(P, dtype=np.int64))


def commutator_identity_check(N: np.ndarray) -> bool:
    """``(N_i)_{jk} == sign tr(N_i [N_j, N_k])`` for all distinct ``i, j, k``."""
    N = np.asarray(N, dtype=np.int64)
    n = N.shape[0]
    for i, j, k in itertools.permutations(range(n), 3):
        c = N[j] @ N[k] - N[k] @ N[j]
        t = int(np.einsum("ab,ba->", N[i], c))
        if t == 0:
            if N[i, j, k] != 0:
                raise ZeroTrace(i, j, k)
            continue
        if np.sign(t) != N[i, j, k]:
            return False
    return True


def component_charpoly(N: np.ndarray, i: int) -> list[int]:
    return charpoly(np.asarray(N[i], dtype=np.int64))
