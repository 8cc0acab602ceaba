"""Acceptance suite: one recorded line per criterion, then a hard assert.

Long runs are gated: ``SKEWLINES_EXTENDED=1`` enables the n=7 census and
``SKEWLINES_STRETCH=1`` the n=8 census.  Without them those criteria are
reported as SKIP and substitute checks are recorded under a suffixed label.
"""

import os
import sys
import time
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from conftest import env_flag
from skewlines import golden
from skewlines.exact import poly_matrix_eval
from skewlines.groupoid import census, explore_cluster
from skewlines.invariants import (
    class_of,
    det_P,
    inv_configuration,
    invP,
    ring_from_state,
    ring_linearity_check,
    ring_oracle_discrete,
    ring_oracle_geometric,
)
from skewlines.jones import (
    DELTA,
    HOPF,
    LaurentPoly,
    diagram_from_bundle,
    diagram_from_geometry,
    diagram_from_state,
    disentanglement_check,
    jd,
    jd_of_config,
    jm,
)
from skewlines.lincore import DiscreteState, LineConfig, quantize, quantize_batch, random_config, sample_configs
from skewlines.projection import (
    DegenerateProjection,
    d3,
    fibonacci_directions,
    projection_identities,
    pseudo_projection,
    pseudo_variants,
    recover_H,
    ring_of,
    sweep_invariants,
    uu,
)

P = LaurentPoly.parse
A08 = Fraction("0.8")
TABLE1_SIZES = [112, 112, 2256, 1835, 448, 448, 187, 2100, 2100, 16, 16, 161, 161, 635, 635, 149, 149, 49, 49]

if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)


@pytest.fixture(scope="session")
def census6():
    t = time.perf_counter()
    res = census(6, budget=100_000, seed=0, expected=19, with_jones=True, keep_clusters=True)
    res.wall = time.perf_counter() - t
    return res


def _configs(seed, n, count):
    rng = np.random.default_rng(seed)
    return [random_config(rng, n) for _ in range(count)]


# --------------------------------------------------------------------------- 1-4


def test_c01_printed_determinant(record):
    got = det_P(golden.P_SEVEN)
    ok = record("1", got == -18, f"det = {got}")
    assert ok


@pytest.mark.slow
def test_c02_ring_oracles(record):
    t = time.perf_counter()
    bad = Counter()
    for n in (4, 5, 6, 7):
        for cfg in _configs(20 + n, n, 1000):
            s = quantize(cfg)
            R = ring_from_state(s)
            if not (np.array_equal(R, ring_oracle_discrete(s)) and np.array_equal(R, ring_oracle_geometric(cfg))):
                bad[n] += 1
    dt = time.perf_counter() - t
    ok = record("2", not bad and dt < 60, f"4x1000 configs, mismatches {dict(bad)}, {dt:.1f} s")
    assert ok


def test_c03_linearity(record):
    t = time.perf_counter()
    bad = sum(not ring_linearity_check(quantize(c)) for n in (5, 6, 7) for c in _configs(30 + n, n, 100))
    dt = time.perf_counter() - t
    ok = record("3", bad == 0 and dt < 10, f"3x100 configs, failures {bad}, {dt:.1f} s")
    assert ok


def test_c04_component_spectrum_and_classes(record):
    t = time.perf_counter()
    eq_bad, six = 0, set()
    for cfg in _configs(40, 6, 1000):
        N = quantize(cfg).N
        for i in range(6):
            eq_bad += bool(poly_matrix_eval([0, 0, 5, 0, 10, 0, 1], N[i].astype(int)).any())
        six.add(class_of(N))
    five = {class_of(quantize(c).N) for c in _configs(41, 5, 1000)}
    dt = time.perf_counter() - t
    ok = (eq_bad == 0 and len(six) == 4 and {Fraction(-21, 16), Fraction(-3, 2)} <= six
          and five == {Fraction(-41, 20)} and dt < 60)
    six_s = ", ".join(str(q) for q in sorted(six))
    five_s = ", ".join(str(q) for q in sorted(five))
    record("4", ok, f"equation failures {eq_bad}; n=6 classes {{{six_s}}}; n=5 {{{five_s}}}; {dt:.1f} s")
    assert ok


# --------------------------------------------------------------------------- 5


def test_c05_printed_small_cluster(record):
    t = time.perf_counter()
    st = DiscreteState(golden.P27, d3(golden.PRM27))
    inv = inv_configuration(st)
    cl = explore_cluster(st)
    want = sorted(v for v, _ in golden.TABLE_A21)
    vals = [float(v) for v in cl.inv_values]
    inv_ok = abs(float(inv) - float(golden.INV_PRM27)) < 1e-9
    values_ok = len(vals) == 49 and all(abs(g - w) < 1e-5 for g, w in zip(vals, want))
    sum_ok = abs(float(cl.gsum) - golden.GSUM_A21) < 1e-4
    # printed row index -> exact value, then undirected edge sets
    idx = {i: min(cl.inv_values, key=lambda v: abs(float(v) - w)) for i, (w, _) in enumerate(golden.TABLE_A21)}
    printed = {frozenset((idx[a], idx[b])) for a, b in golden.a21_edges()}
    ours = cl.value_graph()
    dt = time.perf_counter() - t
    record("5a", inv_ok, f"Inv = {float(inv):.12f}")
    record("5b", values_ok, f"size {cl.size}, 49 values within 1e-5")
    record("5c", sum_ok, f"sum = {float(cl.gsum):.5f}")
    record("5d", ours == printed, f"edges shared {len(ours & printed)}/{len(printed)}, "
                                  f"missing {len(printed - ours)}, extra {len(ours - printed)}")
    ok = record("5", inv_ok and values_ok and sum_ok and ours == printed and dt < 60, f"{dt:.1f} s")
    assert ok


# --------------------------------------------------------------------------- 6


def _match_table1(rows):
    """Census rows paired with printed rows of equal det and InvP, nearest sum."""
    free = list(range(len(golden.TABLE1)))
    out = []
    for r in sorted(rows, key=lambda r: (r.det_P, float(r.invP), float(r.gsum))):
        cand = [k for k in free
                if golden.TABLE1[k][1] == r.det_P and abs(float(r.invP) - golden.TABLE1[k][2]) < 1e-5]
        k = min(cand, key=lambda k: abs(float(r.gsum) - golden.TABLE1[k][5])) if cand else None
        if k is not None:
            free.remove(k)
        out.append((r, k))
    return out


@pytest.mark.slow
def test_c06_census_n6(record, census6):
    res = census6
    sizes_ok = sorted(r.size for r in res.rows) == sorted(TABLE1_SIZES)
    pairs = _match_table1(res.rows)
    sum_bad = [r.det_P for r, k in pairs if k is None or abs(float(r.gsum) - golden.TABLE1[k][5]) >= 1e-3]
    spec = {r.det_P for r in res.rows if r.specular}
    spec_ok = spec == set(golden.SPECULAR_DETS) and all(r.specular for r in res.rows if r.det_P in spec)
    ok = (len(res.rows) == 19 and sizes_ok and res.total_size == golden.TABLE1_TOTAL and not sum_bad
          and spec_ok and res.wall < 1800)
    record("6", ok, f"{len(res.rows)} clusters, total {res.total_size}, sum mismatches {sum_bad}, "
                    f"specular {sorted(spec)}, {res.samples} samples, {res.wall:.0f} s")
    jd_bad = [golden.TABLE1[k][0] for r, k in pairs
              if k is not None and abs(float(r.jd.evaluate(A08)) - golden.TABLE1[k][3]) >= 1e-5]
    record("6j", not jd_bad, f"J_D(0.8) of a plane projection per row, mismatches {jd_bad}")
    assert ok and not jd_bad


# --------------------------------------------------------------------------- 7-8


def _plane_polys(cfg, seed=0):
    rng = np.random.default_rng(seed)
    while True:
        try:
            d = diagram_from_geometry(cfg, rng.standard_normal(3))
            return jd(d), jm(d)
        except DegenerateProjection:
            continue


def _with_det(n, det, seed=0):
    rng = np.random.default_rng(seed)
    while True:
        cfg = random_config(rng, n)
        if det_P(quantize(cfg).P) == det:
            return cfg


def test_c07_jones_anchors(record):
    t = time.perf_counter()
    j2, m2 = _plane_polys(_with_det(2, -1))
    j3, m3 = _plane_polys(_with_det(3, 2))
    j3m, _ = _plane_polys(_with_det(3, -2))
    checks = {
        "J_D 2": j2 == P(golden.JD_2CROSS),
        "J_M 2": m2 == P(golden.JM_2CROSS),
        "J_D 3": j3 == P(golden.JD_3CROSS),
        "J_M 3": m3 == P(golden.JM_3CROSS),
        "mirror": j3m == P(golden.JD_3CROSS_MIRROR) == j3.mirror(),
        "-J_D(a^2) = J_M": -j3.subs_power(2) == m3,
    }
    dt = time.perf_counter() - t
    ok = record("7", all(checks.values()) and dt < 1, f"{[k for k, v in checks.items() if not v] or 'all exact'}, "
                                                        f"{dt:.2f} s")
    assert ok


def _sampled_27_state():
    printed = [v for v, _ in golden.TABLE_A21]
    rng = np.random.default_rng(2)
    while True:
        s = quantize(random_config(rng, 6))
        if det_P(s.P) != 27 or invP(s.P) != Fraction(-72, 7):
            continue
        if min(abs(float(inv_configuration(s)) - w) for w in printed) > 1e-5:
            return s


def test_c08_printed_polynomials(record):
    t = time.perf_counter()
    O = (recover_H(golden.PRM27) * golden.P27).astype(np.int8)
    d0 = diagram_from_bundle(golden.PRM27, O, golden.P27)
    j0, m0 = jd(d0), jm(d0)
    d1 = diagram_from_state(_sampled_27_state())
    j1, m1 = jd(d1), jm(d1)
    v0 = float(j0.evaluate(A08))
    v1 = float(j1.evaluate(A08))
    c1, c0 = disentanglement_check(j1, m1), disentanglement_check(j0, m0)
    checks = {
        "J_D (27,0)": j0 == P(golden.JD_27_0),
        "J_M (27,0)": m0 == P(golden.JM_27_0),
        "J_D(0.8) (27,0)": abs(v0 - golden.JD_27_0_AT) < 1e-5,
        "J_D (27,1)": j1 == P(golden.JD_27_1),
        "J_M (27,1)": m1 == P(golden.JM_27_1),
        "J_D(0.8) (27,1)": abs(v1 - golden.JD_27_1_AT) < 1e-5,
        "identity holds (27,1)": c1.exact and -j1.subs_power(2) * HOPF == m1 * DELTA,
        "identity refuted (27,0)": -j0.subs_power(2) * HOPF != m0 * DELTA and c0.kind == "nontrivial",
    }
    dt = time.perf_counter() - t
    ok = record("8", all(checks.values()) and dt < 300,
                f"J_D(0.8) = {v0:.5f}, {v1:.5f}; failed {[k for k, v in checks.items() if not v]}, {dt:.1f} s")
    assert ok


# --------------------------------------------------------------------------- 9-10


@pytest.mark.slow
def test_c09_projection_properties(record, census6):
    res = census6
    t = time.perf_counter()
    sets = [set(r.cluster.inv_values) for r in res.rows]
    ident_bad = not_sub = not_smaller = unplaced = 0
    for c, cfg in enumerate(_configs(90, 6, 100)):
        rng = np.random.default_rng(c)
        for U in fibonacci_directions(100, rng, 1e-3):
            try:
                ident_bad += not all(projection_identities(cfg, U).values())
            except DegenerateProjection:
                pass
        home = res.locate(quantize(cfg))
        if home is None:
            unplaced += 1
            continue
        if res.rows[home].det_P == -125:
            continue
        sw = sweep_invariants(cfg, 100, seed=c)
        not_sub += not sw.values <= sets[home]
        not_smaller += not len(sw.values) < res.rows[home].size
    # every -125 witness sweeps into the other -125 cluster only
    anomaly = []
    for i, r in enumerate(res.rows):
        if r.det_P != -125:
            continue
        sw = sweep_invariants(r.witness, 100, seed=i)
        inside = [j for j, s in enumerate(sets) if sw.values <= s]
        anomaly.append(len(inside) == 1 and inside[0] != i and res.rows[inside[0]].det_P == -125)
    dt = time.perf_counter() - t
    ok = (ident_bad == 0 and not_sub == 0 and not_smaller == 0 and unplaced == 0
          and len(anomaly) == 2 and all(anomaly) and dt < 600)
    record("9", ok, f"identity failures {ident_bad}, sweep not in cluster {not_sub}, sweep not smaller "
                    f"{not_smaller}, -125 swaps {sum(anomaly)}/{len(anomaly)}, {dt:.1f} s")
    assert ok


@pytest.mark.slow
def test_c10_pseudo_projection(record):
    t = time.perf_counter()
    rng = np.random.default_rng(100)
    bad = 0
    for _ in range(1000):
        n = int(rng.integers(4, 8))
        N = quantize(random_config(rng, n)).N
        X = pseudo_projection(N)
        bad += not (np.array_equal(d3(X), N) and not ring_of(uu(n), X).any())
    disagree = 0
    for s in (quantize(c) for c in _configs(101, 6, 10)):
        vals = set()
        for comp, row, sign, _X in pseudo_variants(s.N):
            d = diagram_from_state(s, comp, row, sign)
            vals.add((jd(d), jm(d)))
        disagree += len(vals) != 1
    dt = time.perf_counter() - t
    ok = record("10", bad == 0 and disagree == 0 and dt < 300,
                f"1000 states, failures {bad}; variant disagreement on {disagree}/10 states, {dt:.1f} s")
    assert ok


# --------------------------------------------------------------------------- 11-12


@pytest.mark.extended
def test_c11_census_n7(record):
    if not env_flag("SKEWLINES_EXTENDED"):
        record("11", None, "n=7 census needs SKEWLINES_EXTENDED=1 (hours-scale)")
        pytest.skip("extended")
    budget = int(os.environ.get("SKEWLINES_N7_BUDGET", 10_000_000))
    res = census(7, budget=budget, seed=0, expected=74, with_jones=True)
    pos = [r for r in res.rows if r.det_P > 0]
    miss = [r.det_P for r in pos
            if not any(d == r.det_P and abs(float(r.jd.evaluate(A08)) - v) < 1e-3 for d, v, _ in golden.TABLE2)]
    ok = record("11", res.complete and len(pos) == golden.TABLE2_CLUSTERS and not miss,
                f"{len(pos)} clusters with det > 0 of {len(res.rows)}, J_D mismatches {miss}")
    assert ok


@pytest.mark.slow
def test_c11s_jones_survey_n7(record):
    """Desk-scale evidence: J_D of random 7-crosses lands on printed values."""
    t = time.perf_counter()
    rng = np.random.default_rng(2)
    th, ph, x, y = sample_configs(rng, 7, 300, "mixed")
    Pb, _, ok_ = quantize_batch(th, ph, x, y)
    hits, miss = set(), 0
    for b in np.flatnonzero(ok_):
        cfg, d = LineConfig(th[b], ph[b], x[b], y[b]), det_P(Pb[b])
        if d < 0:
            cfg, d = LineConfig(np.pi - th[b], ph[b], x[b], y[b]), -d
        v = float(jd_of_config(cfg).evaluate(A08))
        m = [k for k, (dd, j, _) in enumerate(golden.TABLE2) if dd == d and abs(j - v) < 1e-3]
        if m:
            hits.add(m[0])
        else:
            miss += 1
    dt = time.perf_counter() - t
    ok = record("11s", miss == 0, f"{len(hits)}/{golden.TABLE2_CLUSTERS} printed rows hit, {miss} unmatched "
                                  f"values, {dt:.1f} s (not a census)")
    assert ok


@pytest.mark.stretch
def test_c12_census_n8(record):
    if not env_flag("SKEWLINES_STRETCH"):
        record("12", None, "n=8 census needs SKEWLINES_STRETCH=1 (multi-hour)")
        pytest.skip("stretch")
    budget = int(os.environ.get("SKEWLINES_N8_BUDGET", 100_000_000))
    res = census(8, budget=budget, seed=0, expected=506)
    ok = record("12", res.complete and len(res.rows) == 506, f"{len(res.rows)} classes")
    assert ok


def test_c12s_property_suite_n8(record):
    """Substitute for the n=8 census: the property checks at n=8."""
    t = time.perf_counter()
    cfgs = _configs(120, 8, 200)
    ring_bad = lin_bad = pseudo_bad = ident_bad = 0
    for c, cfg in enumerate(cfgs):
        s = quantize(cfg)
        R = ring_from_state(s)
        ring_bad += not (np.array_equal(R, ring_oracle_discrete(s)) and np.array_equal(R, ring_oracle_geometric(cfg)))
        lin_bad += not ring_linearity_check(s)
        X = pseudo_projection(s.N)
        pseudo_bad += not (np.array_equal(d3(X), s.N) and not ring_of(uu(8), X).any())
        if c < 50:
            for U in fibonacci_directions(10, np.random.default_rng(c), 1e-3):
                try:
                    ident_bad += not all(projection_identities(cfg, U).values())
                except DegenerateProjection:
                    pass
    dt = time.perf_counter() - t
    ok = record("12s", ring_bad == lin_bad == pseudo_bad == ident_bad == 0,
                f"200 configs: ring {ring_bad}, linearity {lin_bad}, pseudo {pseudo_bad}, "
                f"projection identities {ident_bad} failures, {dt:.1f} s")
    assert ok
