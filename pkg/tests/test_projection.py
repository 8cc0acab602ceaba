import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from skewlines import golden
from skewlines.invariants import inv_configuration
from skewlines.lincore import DiscreteState, quantize, random_config, validate_tensor
from skewlines.projection import (
    DegeneratePoint,
    DegenerateProjection,
    InconsistentBundle,
    check_H,
    crossing_orders,
    d2,
    d3,
    fibonacci_directions,
    is_outside,
    prm_from_H,
    project_plane,
    project_point,
    projection_identities,
    pseudo_projection,
    pseudo_variants,
    raw_point_tensor,
    recover_H,
    ring_of,
    sandwich_matrix,
    uu,
)

seeds = st.integers(0, 2**32 - 1)


def cfg_of(seed, n):
    return random_config(np.random.default_rng(seed), n)


@given(seeds, st.integers(3, 8))
@settings(max_examples=80, deadline=None)
def test_plane_projection_identities(seed, n):
    rng = np.random.default_rng(seed)
    cfg = random_config(rng, n)
    try:
        checks = projection_identities(cfg, rng.standard_normal(3))
    except DegenerateProjection:
        return
    assert all(checks.values()), checks


@given(seeds, st.integers(3, 7))
@settings(max_examples=40, deadline=None)
def test_d3_of_plane_projection_is_valid(seed, n):
    rng = np.random.default_rng(seed)
    b = project_plane(random_config(rng, n), rng.standard_normal(3))
    assert validate_tensor(d3(b.prM)) == []


def test_projection_crossing_orders_follow_geometry():
    rng = np.random.default_rng(2)
    cfg = random_config(rng, 5)
    U = np.array([0.2, -0.3, 1.0])
    b = project_plane(cfg, U)
    d, v = cfg.directions, cfg.anchors
    U = U / np.linalg.norm(U)
    for i, order in enumerate(crossing_orders(b.prM)):
        # parameters of the crossings along line i, measured in the projection plane
        ts = []
        for j in order:
            A = np.stack([d[i] - np.dot(d[i], U) * U, -(d[j] - np.dot(d[j], U) * U)], axis=1)
            rhs = (v[j] - v[i]) - np.dot(v[j] - v[i], U) * U
            t, *_ = np.linalg.lstsq(A, rhs, rcond=None)
            ts.append(t[0])
        assert all(a < b for a, b in zip(ts, ts[1:]))


def test_viewer_convention():
    # line 0 along x at height z = 0, line 1 vertical through (0, 1): seen from +y
    from skewlines.lincore import lines_from_spec

    cfg = lines_from_spec([(np.pi / 2, 0.0, 0.0, 0.0), (0.0, 0.0, 0.5, 1.0), (0.3, 1.0, -1.0, 0.2)])
    b = project_plane(cfg, [0.0, 1.0, 0.0])
    # line 1 has the larger y coordinate at the crossing
    assert b.O[1, 0] == 1 and b.O[0, 1] == -1


def test_projection_along_a_line_is_degenerate():
    cfg = cfg_of(1, 4)
    with pytest.raises(DegenerateProjection):
        project_plane(cfg, cfg.directions[2])


def test_printed_bundle():
    H = recover_H(golden.PRM27)
    N = d3(golden.PRM27)
    assert np.array_equal(prm_from_H(H, N), golden.PRM27)
    assert not ring_of(uu(6), golden.PRM27).any()
    iu = np.triu_indices(6, 1)
    assert (H[iu] == 1).all()
    crossing_orders(golden.PRM27)


def test_recover_rejects_inconsistent_bundle():
    X = golden.PRM27.copy()
    X[2, 0, 3], X[2, 3, 0] = -X[2, 0, 3], -X[2, 3, 0]
    with pytest.raises(InconsistentBundle):
        recover_H(X)


@given(seeds, st.integers(3, 7))
@settings(max_examples=40, deadline=None)
def test_pseudo_projection_variants(seed, n):
    N = quantize(cfg_of(seed, n)).N
    count = 0
    for _c, _r, _s, X in pseudo_variants(N):
        assert np.array_equal(d3(X), N)
        assert not ring_of(uu(n), X).any()
        crossing_orders(X)
        count += 1
    assert count == 2 * n * (n - 1)


def test_pseudo_projection_needs_a_fan():
    from skewlines.lincore import switch_to_transitive
    from skewlines.projection import NotTriangularizable

    N = quantize(cfg_of(3, 5)).N.copy()
    rng = np.random.default_rng(0)
    idx = np.ix_([1, 2, 3, 4], [1, 2, 3, 4])
    while True:
        A = np.triu(rng.choice([-1, 1], (4, 4)), 1)
        A = (A - A.T).astype(np.int8)
        if switch_to_transitive(A) is None:
            break
    N[0][idx] = A
    with pytest.raises(NotTriangularizable):
        pseudo_projection(N, component=0)
    with pytest.raises(ValueError):
        pseudo_projection(quantize(cfg_of(3, 5)).N, component=0, row=0)


def test_sandwich_matrix_far_and_near():
    cfg = cfg_of(5, 5)
    far = sandwich_matrix(cfg, 1e6 * np.array([0.3, 0.4, 0.86]))
    assert (far == uu(5)).all()
    # midpoint of the common perpendicular of lines 0 and 1 is between their planes
    d, v = cfg.directions, cfg.anchors
    m = np.cross(d[0], d[1])
    A = np.stack([d[0], -d[1], m], axis=1)
    t = np.linalg.solve(A, v[1] - v[0])
    mid = (v[0] + t[0] * d[0] + v[1] + t[1] * d[1]) / 2
    assert sandwich_matrix(cfg, mid)[0, 1] == -1


def test_far_point_projection_approaches_plane():
    cfg = cfg_of(6, 6)
    U = np.array([0.1, -0.7, 0.7])
    plane = project_plane(cfg, U)
    point = project_point(cfg, 1e7 * U)
    assert np.array_equal(plane.prM, point.prM)
    assert np.array_equal(plane.O, point.O)


def test_point_projection_corrected_tensor_is_legal():
    rng = np.random.default_rng(11)
    for _ in range(60):
        cfg = random_config(rng, 6)
        U = rng.normal(0, 1.5, 3)
        try:
            b = project_point(cfg, U)
        except DegeneratePoint:
            continue
        assert validate_tensor(d3(b.prM)) == []
        raw = raw_point_tensor(b)
        if (b.P3D == uu(6)).all():
            assert np.array_equal(raw, b.prM)


def test_outside_far_away():
    cfg = cfg_of(7, 6)
    U = 1e6 * np.array([0.5, 0.5, 0.7])
    assert is_outside(cfg, U, "ring") and is_outside(cfg, U, "sandwich")


def test_sandwich_outside_implies_ring_outside():
    rng = np.random.default_rng(13)
    for _ in range(200):
        cfg = random_config(rng, 5)
        U = rng.normal(0, 1.5, 3)
        try:
            if is_outside(cfg, U, "sandwich"):
                assert is_outside(cfg, U, "ring")
        except DegeneratePoint:
            continue


def test_fibonacci_directions_are_unit():
    U = fibonacci_directions(100, np.random.default_rng(0), 1e-3)
    assert np.allclose(np.linalg.norm(U, axis=1), 1)
    assert U.shape == (100, 3)


def test_d2_is_involutive_in_sign_matrix():
    N = quantize(cfg_of(8, 5)).N
    H = quantize(cfg_of(9, 5)).P
    assert np.array_equal(d2(H, d2(H, N)), N)


def test_check_H_accepts_recovered():
    rng = np.random.default_rng(4)
    cfg = random_config(rng, 6)
    b = project_plane(cfg, rng.standard_normal(3))
    check_H(recover_H(b.prM), b.prM)
    st_ = DiscreteState(quantize(cfg).P, d3(b.prM))
    inv_configuration(st_)
