"""Integer Laurent polynomials in one variable ``a``."""

from __future__ import annotations

import re
from fractions import Fraction


class ZeroBase(ZeroDivisionError):
    pass


class LaurentPoly:
    """Exponent -> nonzero integer coefficient."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        c = {}
        for e, v in dict(coeffs or {}).items():
            v = int(v)
            if v:
                c[int(e)] = v
        self.c = c

    @classmethod
    def monomial(cls, e: int, coeff: int = 1) -> LaurentPoly:
        return cls({e: coeff})

    @classmethod
    def const(cls, v: int) -> LaurentPoly:
        return cls({0: v})

    def __add__(self, other):
        other = _lift(other)
        out = dict(self.c)
        for e, v in other.c.items():
            out[e] = out.get(e, 0) + v
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self.c.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        out: dict[int, int] = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.c) != 1 or abs(next(iter(self.c.values()))) != 1:
                raise ValueError("only unit monomials have Laurent inverses")
            (e, v), = self.c.items()
            return LaurentPoly({e * k: v ** (-k)})
        out = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.c == _lift(other).c
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __bool__(self):
        return bool(self.c)

    def subs_power(self, k: int) -> LaurentPoly:
        """``p(a^k)``."""
        return LaurentPoly({e * k: v for e, v in self.c.items()})

    def mirror(self) -> LaurentPoly:
        return self.subs_power(-1)

    def exact_div(self, d: LaurentPoly) -> LaurentPoly:
        """Exact quotient; raises ``ValueError`` if ``d`` does not divide ``self``."""
        if not d:
            raise ZeroDivisionError("division by zero polynomial")
        if not self:
            return LaurentPoly()
        dtop, dlow = max(d.c), min(d.c)
        floor = min(self.c) - dlow
        rem = dict(self.c)
        q: dict[int, int] = {}
        while rem and max(rem) - dtop >= floor:
            top = max(rem)
            coef, r = divmod(rem[top], d.c[dtop])
            if r:
                raise ValueError("not divisible")
            shift = top - dtop
            q[shift] = coef
            for e, v in d.c.items():
                k = e + shift
                rem[k] = rem.get(k, 0) - coef * v
                if rem[k] == 0:
                    del rem[k]
        if rem:
            raise ValueError("not divisible")
        return LaurentPoly(q)

    def evaluate(self, a) -> Fraction:
        a = Fraction(a)
        if a == 0:
            raise ZeroBase("a = 0")
        return sum((v * a**e for e, v in self.c.items()), Fraction(0))

    @property
    def span(self) -> tuple[int, int]:
        return (min(self.c), max(self.c)) if self.c else (0, 0)

    def terms(self):
        """``(exponent, coefficient)`` sorted by descending exponent."""
        return sorted(self.c.items(), reverse=True)

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for e, v in self.terms():
            if e == 0:
                body = f"{abs(v)}"
            else:
                body = ("" if abs(v) == 1 else f"{abs(v)} ") + f"a^{e}"
            parts.append(("- " if v < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[1:]

    def __repr__(self):
        return f"LaurentPoly({self})"

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        """Parse sums like ``22a + 15a^-1 - a^3 - 12 a^{-3} + 881``."""
        s = text.replace(" ", "").replace("−", "-").replace("{", "").replace("}", "").replace("*", "")
        if not s:
            raise ValueError("empty polynomial")
        if s[0] not in "+-":
            s = "+" + s
        out: dict[int, int] = {}
        for sign, num, var, exp in re.findall(r"([+-])(\d*)(a?)(?:\^(-?\d+))?", s):
            if not num and not var:
                continue
            coef = int(num) if num else 1
            e = (int(exp) if exp else 1) if var else 0
            if not var and exp:
                raise ValueError(f"exponent without variable in {text!r}")
            out[e] = out.get(e, 0) + (coef if sign == "+" else -coef)
        if re.sub(r"[+-]\d*a?(\^-?\d+)?", "", s):
            raise ValueError(f"cannot parse {text!r}")
        return cls(out)


def _lift(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a Laurent polynomial")


A = LaurentPoly.monomial(1)
#: value of a trivial loop, ``-a^2 - a^-2``
DELTA = LaurentPoly({2: -1, -2: -1})
#: Hopf-link factor ``-a^4 - a^-4``
HOPF = LaurentPoly({4: -1, -4: -1})
