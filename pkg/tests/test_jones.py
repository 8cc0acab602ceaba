from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from skewlines import golden
from skewlines.invariants import det_P, inv_configuration, invP
from skewlines.jones import (
    DELTA,
    HOPF,
    LaurentPoly,
    ZeroBase,
    bracket,
    bracket_bruteforce,
    diagram_from_bundle,
    diagram_from_geometry,
    diagram_from_state,
    disentanglement_check,
    eval_poly,
    jd,
    jd_of_config,
    jm,
)
from skewlines.lincore import DiscreteState, quantize, random_config
from skewlines.projection import DegenerateProjection, d3, project_plane, pseudo_variants

seeds = st.integers(0, 2**32 - 1)
polys = st.dictionaries(st.integers(-12, 12), st.integers(-9, 9), max_size=6).map(LaurentPoly)

P = LaurentPoly.parse


# --------------------------------------------------------------------------- Laurent arithmetic


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert p * q == q * p
    assert (p - p) == LaurentPoly()


@given(polys)
def test_text_roundtrip(p):
    assert P(str(p)) == p


@given(polys, st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=9))
def test_evaluation_is_a_homomorphism(p, a):
    q = p * p + HOPF
    assert q.evaluate(a) == p.evaluate(a) ** 2 + HOPF.evaluate(a)


@given(polys)
def test_mirror_and_substitution(p):
    assert p.mirror().mirror() == p
    a = Fraction(3, 5)
    assert p.mirror().evaluate(a) == p.evaluate(1 / a)
    assert p.subs_power(2).evaluate(a) == p.evaluate(a * a)


@given(polys)
def test_exact_division(p):
    assume(p)
    assert (p * DELTA).exact_div(DELTA) == p


def test_parse_printed_forms():
    assert P("a + a^-1") == LaurentPoly({1: 1, -1: 1})
    assert P("-2 - 3a^4") == LaurentPoly({0: -2, 4: -3})
    assert eval_poly(P("a + a^-1"), "0.8") == Fraction(4, 5) + Fraction(5, 4)
    with pytest.raises(ZeroBase):
        P("a^-1").evaluate(0)


# --------------------------------------------------------------------------- brackets


def _diagram(seed, n):
    rng = np.random.default_rng(seed)
    cfg = random_config(rng, n)
    while True:
        try:
            return cfg, diagram_from_geometry(cfg, rng.standard_normal(3))
        except DegenerateProjection:
            continue


@given(seeds, st.integers(2, 5))
@settings(max_examples=30, deadline=None)
def test_frontier_matches_bruteforce(seed, n):
    _, d = _diagram(seed, n)
    assert jd(d) == jd(d, "brute")
    if n <= 4:
        assert jm(d) == jm(d, "brute")


@given(seeds, st.integers(2, 6))
@settings(max_examples=20, deadline=None)
def test_jd_independent_of_direction(seed, n):
    cfg, d = _diagram(seed, n)
    rng = np.random.default_rng(seed + 1)
    for _ in range(3):
        try:
            assert jd(diagram_from_geometry(cfg, rng.standard_normal(3))) == jd(d)
        except DegenerateProjection:
            pass


@given(seeds, st.integers(2, 5))
@settings(max_examples=20, deadline=None)
def test_mirror_diagram_mirrors_polynomials(seed, n):
    _, d = _diagram(seed, n)
    assert jd(d.mirror()) == jd(d).mirror()
    assert jm(d.mirror()) == jm(d).mirror()


@given(seeds, st.integers(2, 6))
@settings(max_examples=20, deadline=None)
def test_bundle_diagram_matches_geometry(seed, n):
    rng = np.random.default_rng(seed)
    cfg = random_config(rng, n)
    U = rng.standard_normal(3)
    try:
        b = project_plane(cfg, U)
    except DegenerateProjection:
        return
    g = diagram_from_geometry(cfg, U)
    assert jd(diagram_from_bundle(b.prM, b.O, quantize(cfg).P)) == jd(g)


def test_bracket_on_link_diagram():
    _, d = _diagram(0, 2)
    L = d.link_diagram()
    assert bracket(L) == bracket_bruteforce(L)


def _anchor(n, det, seed=0):
    rng = np.random.default_rng(seed)
    while True:
        cfg = random_config(rng, n)
        if det_P(quantize(cfg).P) == det:
            return cfg


def _polys(cfg, seed=0):
    rng = np.random.default_rng(seed)
    while True:
        try:
            d = diagram_from_geometry(cfg, rng.standard_normal(3))
            return jd(d), jm(d)
        except DegenerateProjection:
            continue


def test_small_anchors():
    j2, m2 = _polys(_anchor(2, -1))
    assert j2 == P(golden.JD_2CROSS) and m2 == P(golden.JM_2CROSS)
    j3, m3 = _polys(_anchor(3, 2))
    assert j3 == P(golden.JD_3CROSS) and m3 == P(golden.JM_3CROSS)
    j3m, _ = _polys(_anchor(3, -2))
    assert j3m == P(golden.JD_3CROSS_MIRROR) == j3.mirror()
    assert -j3.subs_power(2) == m3


def test_printed_bundle_polynomials():
    d = diagram_from_bundle(golden.PRM27, _overlap27(), golden.P27)
    assert jd(d) == P(golden.JD_27_0)
    assert jm(d) == P(golden.JM_27_0)
    assert abs(float(jd(d).evaluate(Fraction("0.8"))) - golden.JD_27_0_AT) < 1e-5


def _overlap27():
    from skewlines.projection import recover_H

    H = recover_H(golden.PRM27)
    return (H * golden.P27).astype(np.int8)


def test_pseudo_projection_of_printed_state():
    st_ = DiscreteState(golden.P27, d3(golden.PRM27))
    assert jd(diagram_from_state(st_)) == P(golden.JD_27_0)


def test_variants_agree():
    rng = np.random.default_rng(3)
    for _ in range(3):
        s = quantize(random_config(rng, 5))
        vals = set()
        for c, r, sg, _X in pseudo_variants(s.N):
            d = diagram_from_state(s, c, r, sg)
            vals.add((jd(d), jm(d)))
        assert len(vals) == 1


def test_disentanglement_check():
    assert disentanglement_check(P(golden.JD_27_1), P(golden.JM_27_1)).exact
    assert disentanglement_check(P(golden.JD_27_0), P(golden.JM_27_0)).kind == "nontrivial"
    j3, m3 = P(golden.JD_3CROSS), P(golden.JM_3CROSS)
    v = disentanglement_check(j3, m3)
    assert v.kind == "trivializable" and (v.hopf, v.loop) == (0, 0)
    assert disentanglement_check(LaurentPoly(), m3).kind == "indeterminate"


def test_jd_of_config_is_seeded():
    cfg = random_config(np.random.default_rng(1), 5)
    assert jd_of_config(cfg, seed=3) == jd_of_config(cfg, seed=4)


def test_hopf_is_doubled_two_cross():
    _, m2 = _polys(_anchor(2, -1))
    assert m2 == HOPF
    assert DELTA == P("-a^2 - a^-2")


def _sampled_27_state():
    """A seeded det 27 state outside the printed small cluster."""
    printed = [v for v, _ in golden.TABLE_A21]
    rng = np.random.default_rng(2)
    while True:
        s = quantize(random_config(rng, 6))
        if det_P(s.P) != 27 or invP(s.P) != Fraction(-72, 7):
            continue
        v = float(inv_configuration(s))
        if min(abs(v - w) for w in printed) > 1e-5:
            return s


def test_sampled_27_polynomials():
    d = diagram_from_state(_sampled_27_state())
    J, M = jd(d), jm(d)
    assert J == P(golden.JD_27_1)
    assert M == P(golden.JM_27_1)
    assert abs(float(J.evaluate(Fraction("0.8"))) - golden.JD_27_1_AT) < 1e-5
    v = disentanglement_check(J, M)
    assert v.exact and -J.subs_power(2) * HOPF == M * DELTA
