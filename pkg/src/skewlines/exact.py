"""Exact integer characteristic polynomials and rational traces of inverses."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np


class SingularMatrix(ArithmeticError):
    pass


def charpoly(A) -> list[int]:
    """Coefficients ``[c_0, c_1, ..., c_n]`` of ``det(lambda I - A)`` for integer ``A``.

    Faddeev-LeVerrier on Python integers; every division is exact.
    """
    A = np.array(A, dtype=object)
    n = A.shape[0]
    c = [0] * (n + 1)
    c[n] = 1
    M = np.zeros((n, n), dtype=object)
    eye = np.identity(n, dtype=int).astype(object)
    for k in range(1, n + 1):
        M = A.dot(M) + c[n - k + 1] * eye
        t = A.dot(M).trace()
        q, r = divmod(-t, k)
        assert r == 0
        c[n - k] = q
    return c


@lru_cache(maxsize=1 << 18)
def _trace_inverse_cached(key: bytes, n: int) -> Fraction:
    A = np.frombuffer(key, dtype=np.int64).reshape(n, n)
    c = charpoly(A)
    if c[0] == 0:
        raise SingularMatrix("matrix is singular")
    return Fraction(-c[1], c[0])


def trace_inverse(A) -> Fraction:
    """``tr(A^-1)`` exactly, as ``-c_1 / c_0`` of the characteristic polynomial."""
    A = np.ascontiguousarray(A, dtype=np.int64)
    return _trace_inverse_cached(A.tobytes(), A.shape[0])


def trace_pseudo_inverse(A) -> Fraction:
    """Sum of ``1/lambda`` over the nonzero eigenvalues (with multiplicity).

    Strips the factor ``lambda^m`` from the characteristic polynomial and
    returns ``-q_1/q_0`` of the remaining factor.
    """
    c = charpoly(A)
    m = 0
    while c[m] == 0:
        m += 1
    q = c[m:]
    if len(q) < 2:
        return Fraction(0)
    return Fraction(-q[1], q[0])


def det(A) -> int:
    c = charpoly(A)
    n = len(c) - 1
    return c[0] * (-1) ** n


def poly_matrix_eval(coeffs, A) -> np.ndarray:
    """Evaluate ``sum coeffs[k] A^k`` over the integers (Horner)."""
    A = np.array(A, dtype=object)
    n = A.shape[0]
    R = np.zeros((n, n), dtype=object)
    eye = np.identity(n, dtype=int).astype(object)
    for c in reversed(list(coeffs)):
        R = R.dot(A) + c * eye
    return R


def to_decimal(q: Fraction, digits: int = 10) -> str:
    return f"{float(q):.{digits}g}"
