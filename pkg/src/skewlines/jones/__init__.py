"""Jones-type polynomials of line configurations.

``jd`` is the projective bracket of a line diagram; ``jm`` the ordinary
bracket of its doubled diagram of closed curves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bracket import TooManyCrossings, bracket, bracket_bruteforce, jd, jm, kauffman_bracket
from .diagram import (
    LinkDiagram,
    NotRealizable,
    ProjectiveDiagram,
    diagram_from_bundle,
    diagram_from_geometry,
    diagram_from_state,
)
from .laurent import DELTA, HOPF, LaurentPoly, ZeroBase

__all__ = [
    "DELTA",
    "HOPF",
    "LaurentPoly",
    "LinkDiagram",
    "NotRealizable",
    "ProjectiveDiagram",
    "TooManyCrossings",
    "ZeroBase",
    "bracket",
    "bracket_bruteforce",
    "diagram_from_bundle",
    "diagram_from_geometry",
    "diagram_from_state",
    "disentanglement_check",
    "eval_poly",
    "jd",
    "jd_of_config",
    "jd_of_state",
    "jm",
    "jm_of_state",
    "kauffman_bracket",
]


def jd_of_state(state) -> LaurentPoly:
    return jd(diagram_from_state(state))


def jm_of_state(state) -> LaurentPoly:
    return jm(diagram_from_state(state))


def jd_of_config(cfg, seed: int = 0, tries: int = 100) -> LaurentPoly:
    """``J_D`` of a plane projection of a real configuration along a random direction."""
    import numpy as np

    from ..projection import DegenerateProjection

    rng = np.random.default_rng(seed)
    for _ in range(tries):
        U = rng.standard_normal(3)
        try:
            return jd(diagram_from_geometry(cfg, U))
        except DegenerateProjection:
            continue
    raise DegenerateProjection(f"no regular direction in {tries} tries")


def eval_poly(p: LaurentPoly, a) -> Fraction:
    """Exact value at rational ``a`` (strings like ``"0.8"`` are read exactly)."""
    return p.evaluate(Fraction(a))


@dataclass(frozen=True)
class Verdict:
    kind: str  # trivializable | nontrivial | indeterminate
    hopf: int = 0
    loop: int = 0
    exact: bool = False

    def __str__(self):
        if self.kind != "trivializable":
            return self.kind
        return f"trivializable (J_M / -J_D(a^2) = hopf^{self.hopf} loop^{self.loop})"


def disentanglement_check(jd_poly: LaurentPoly, jm_poly: LaurentPoly, max_power: int = 2) -> Verdict:
    """Is ``J_M(a) = -J_D(a^2) * hopf^i * loop^j`` for small integers ``i, j``?

    ``hopf = -a^4 - a^-4`` and ``loop = -a^2 - a^-2``.  The printed identity
    ``-J_D(a^2) hopf = J_M loop`` is the case ``i = 1, j = -1``.
    """
    if not jd_poly or not jm_poly:
        return Verdict("indeterminate")
    lhs0 = -jd_poly.subs_power(2)
    for i in range(-max_power, max_power + 1):
        for j in range(-max_power, max_power + 1):
            left = lhs0 * HOPF ** max(i, 0) * DELTA ** max(j, 0)
            right = jm_poly * HOPF ** max(-i, 0) * DELTA ** max(-j, 0)
            if left == right:
                return Verdict("trivializable", i, j, exact=(i, j) == (1, -1))
    return Verdict("nontrivial")
