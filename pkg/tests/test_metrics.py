import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from visangle import (
    TA,
    VK_CONSTANT,
    ConvergenceError,
    ConvexPolygon,
    DomainError,
    HalfSpace,
    QhSolverParams,
    UnitBall,
    UsageError,
    angle,
    ball_half_map,
    jmetric,
    qh_distance,
    rho,
    rho_star,
    vam,
    vam_bounds,
    vam_values,
)
from visangle.metrics import j_values, polyline_qh_length, rho_star_values, rho_values

B2, B3, H2, H3 = UnitBall(2), UnitBall(3), HalfSpace(2), HalfSpace(3)
SQUARE = ConvexPolygon([[0, 0], [1, 0], [1, 1], [0, 1]])
TRIANGLE = ConvexPolygon([[0, 0], [4, 0], [1, 3]])


def ball_points(rng, n, count, radius=0.99):
    P = rng.normal(size=(count, n))
    P /= np.linalg.norm(P, axis=1)[:, None]
    return P * (radius * rng.uniform(0, 1, count) ** (1 / n))[:, None]


def half_points(rng, n, count):
    P = rng.uniform(-1, 1, (count, n))
    P[:, -1] = rng.uniform(0.01, 2, count)
    return P


def poly_points(rng, G, count):
    lo, hi = G.vertices.min(axis=0), G.vertices.max(axis=0)
    out = []
    while len(out) < count:
        p = rng.uniform(lo, hi)
        if G.contains(p) and G.boundary_distance(p) > 1e-3:
            out.append(p)
    return np.array(out)


# --- rho, rho*, j ----------------------------------------------------------------


@pytest.mark.parametrize("t", [0.1, 0.5, 0.9, 0.999])
def test_rho_ball_radial(t):
    assert rho(B2, [0, 0], [t, 0]).value == pytest.approx(math.log((1 + t) / (1 - t)), rel=1e-13)


def test_rho_half_vertical():
    assert rho(H2, [0, 1], [0, math.e]).value == pytest.approx(1.0, rel=1e-14)


def test_rho_matches_cosh_form(rng):
    X, Y = ball_points(rng, 3, 1000), ball_points(rng, 3, 1000)
    assert np.allclose(rho_values(B3, X, Y), oracles.rho_ball(X, Y), rtol=1e-9)
    X, Y = half_points(rng, 3, 1000), half_points(rng, 3, 1000)
    assert np.allclose(rho_values(H3, X, Y), oracles.rho_half(X, Y), rtol=1e-9)


def test_rho_moebius_invariant(rng):
    X, Y = ball_points(rng, 2, 200, 0.9), ball_points(rng, 2, 200, 0.9)
    T = TA(np.array([0.4, -0.3]))
    assert np.allclose(rho_values(B2, T(X), T(Y)), rho_values(B2, X, Y), rtol=1e-8)
    f = ball_half_map(2)
    assert np.allclose(rho_values(H2, f(X), f(Y)), rho_values(B2, X, Y), rtol=1e-8)


def test_rho_star_is_arctan_sinh():
    x, y = [0.1, 0.2], [-0.4, 0.5]
    r = rho(B2, x, y).value
    assert rho_star(B2, x, y).value == pytest.approx(math.atan(math.sinh(r / 2)), rel=1e-14)
    assert rho_star(B2, [0, 0], [0.5, 0]).value == pytest.approx(math.asin(0.5), rel=1e-14)


def test_j_examples():
    assert jmetric(B2, [0, 0], [0.5, 0]).value == pytest.approx(math.log(2))
    assert jmetric(H2, [0, 1], [3, 1]).value == pytest.approx(math.log(4))
    assert jmetric(SQUARE, [0.5, 0.5], [0.5, 0.25]).value == pytest.approx(math.log(2))


def test_rho_needs_ball_or_half_space():
    with pytest.raises(UsageError):
        rho(SQUARE, [0.5, 0.5], [0.2, 0.2])


def test_points_outside_domain():
    for fn in (rho, rho_star, jmetric, vam):
        with pytest.raises(DomainError):
            fn(B2, [0, 0], [1, 0])
    with pytest.raises(DomainError):
        qh_distance(H2, [0, 1], [0, -1])


def test_j_between_half_rho_and_rho(rng):
    X, Y = ball_points(rng, 3, 10_000), ball_points(rng, 3, 10_000)
    r, j = rho_values(B3, X, Y), j_values(B3, X, Y)
    assert np.all(r / 2 <= j + 1e-12)
    assert np.all(j <= r + 1e-12)


# --- visual angle metric ---------------------------------------------------------


def test_vam_closed_forms():
    assert vam(B2, [0.5, 0], [0, 0]).value == pytest.approx(math.pi / 6, abs=1e-10)
    assert vam(B2, [0.5, 0], [-0.5, 0]).value == pytest.approx(2 * math.atan(0.5), abs=1e-10)
    assert vam(B3, [0, 0, 0.5], [0, 0, -0.5]).value == pytest.approx(2 * math.atan(0.5), abs=1e-10)


def test_vam_half_space_families():
    # parallel to the boundary: 2 arcsin(t/sqrt(4+t^2)) with t = |x-y|/d
    assert vam(H2, [0, 1], [2, 1]).value == pytest.approx(math.pi / 2, abs=1e-10)
    # perpendicular: arcsin(t/(t+2))
    assert vam(H2, [0, 1], [0, 3]).value == pytest.approx(math.pi / 6, abs=1e-10)


def test_vam_forced_search_matches_closed_forms():
    x = np.array([[0.5, 0.0], [0.5, 0.0], [0.3, 0.4]])
    y = np.array([[0.0, 0.0], [-0.5, 0.0], [-0.4, 0.3]])
    auto = vam_values(B2, x, y)
    search = vam_values(B2, x, y, method="search")
    assert np.allclose(auto, search, atol=1e-12)


def test_vam_ball2_brute_force(rng):
    X, Y = ball_points(rng, 2, 30, 0.95), ball_points(rng, 2, 30, 0.95)
    got = vam_values(B2, X, Y)
    ref = np.array([oracles.v_circle(x, y) for x, y in zip(X, Y)])
    assert np.max(np.abs(got - ref)) <= 1e-9


def test_vam_half2_brute_force(rng):
    X, Y = half_points(rng, 2, 30), half_points(rng, 2, 30)
    got = vam_values(H2, X, Y)
    ref = np.array([oracles.v_line(x, y) for x, y in zip(X, Y)])
    assert np.max(np.abs(got - ref)) <= 1e-9


@pytest.mark.parametrize("G", [SQUARE, TRIANGLE])
def test_vam_polygon_brute_force(G, rng):
    P = poly_points(rng, G, 40)
    X, Y = P[:20], P[20:]
    got = vam_values(G, X, Y)
    ref = np.array([oracles.v_polygon(G.vertices, x, y) for x, y in zip(X, Y)])
    assert np.max(np.abs(got - ref)) <= 1e-9
    assert np.all(got >= ref - 1e-12)


def test_vam_3d_matches_full_boundary_sampling(rng):
    for G, pts, oracle in ((B3, ball_points, oracles.v_ball3_stochastic),
                           (H3, half_points, oracles.v_half3_stochastic)):
        X, Y = pts(rng, 3, 5), pts(rng, 3, 5)
        for x, y in zip(X, Y):
            assert vam(G, x, y).value == pytest.approx(oracle(x, y, samples=20_000, rng=rng), abs=1e-6)


def test_vam_half_space_far_witness():
    # a nearly vertical pair high above the boundary sees the widest angle far out;
    # the search window must reach it
    x, y = np.array([0.0, 50.0]), np.array([0.001, 51.0])
    assert vam(H2, x, y).value == pytest.approx(oracles.v_line(x, y), abs=1e-9)


@pytest.mark.parametrize("G,x,y", [(B2, [0.2, 0.3], [-0.6, 0.1]), (H3, [0, 0, 1], [1, 2, 0.5]),
                                   (TRIANGLE, [1, 1], [2, 0.5])])
def test_vam_witness_attains_value(G, x, y):
    res = vam(G, x, y)
    w = res.witness
    assert G.boundary_distance(w) == pytest.approx(0.0, abs=1e-12) or abs(w[-1]) < 1e-12
    assert angle(x, w, y) == pytest.approx(res.value, abs=1e-12)


def test_vam_zero_and_batch(rng):
    assert vam(B2, [0.3, 0.3], [0.3, 0.3]).value == 0.0
    X, Y = ball_points(rng, 3, 20), ball_points(rng, 3, 20)
    batch = vam_values(B3, X, Y)
    single = np.array([vam(B3, x, y).value for x, y in zip(X, Y)])
    assert np.array_equal(batch, single)
    with pytest.raises(UsageError):
        vam(B3, X, Y)


@pytest.mark.parametrize("G,sampler", [(B2, ball_points), (B3, ball_points), (H2, half_points)])
def test_vam_triangle_inequality(G, sampler, rng):
    n = G.n
    X, Y, Z = sampler(rng, n, 10_000), sampler(rng, n, 10_000), sampler(rng, n, 10_000)
    xy, yz, xz = vam_values(G, X, Y), vam_values(G, Y, Z), vam_values(G, X, Z)
    assert np.all(xz <= xy + yz + 1e-10)
    assert np.allclose(vam_values(G, Y, X), xy, atol=1e-12)
    assert np.all((xy >= 0) & (xy <= math.pi))


def test_vam_polygon_triangle_inequality(rng):
    P = poly_points(rng, TRIANGLE, 3000)
    X, Y, Z = P[:1000], P[1000:2000], P[2000:]
    assert np.all(vam_values(TRIANGLE, X, Z) <= vam_values(TRIANGLE, X, Y) + vam_values(TRIANGLE, Y, Z) + 1e-10)


def test_vam_monotone_under_domain_inclusion(rng):
    # the half-sized disk is a subdomain; v there equals v_B at doubled points
    X, Y = ball_points(rng, 2, 2000, 0.49), ball_points(rng, 2, 2000, 0.49)
    assert np.all(vam_values(B2, 2 * X, 2 * Y) >= vam_values(B2, X, Y) - 1e-12)
    # square inscribed in the disk
    inner = ConvexPolygon(np.array([[-1, -1], [1, -1], [1, 1], [-1, 1]]) * 0.7)
    P = poly_points(rng, inner, 2000)
    assert np.all(vam_values(inner, P[:1000], P[1000:]) >= vam_values(B2, P[:1000], P[1000:]) - 1e-12)
    # a polygon inside the upper half-plane
    top = ConvexPolygon([[-1, 0.1], [1, 0.1], [0, 2]])
    P = poly_points(rng, top, 2000)
    assert np.all(vam_values(top, P[:1000], P[1000:]) >= vam_values(H2, P[:1000], P[1000:]) - 1e-12)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.1, 10), st.floats(-5, 5), st.floats(-5, 5), st.floats(0, 2 * math.pi))
def test_vam_polygon_similarity_invariant(s, tx, ty, th):
    R = np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
    f = lambda p: s * (np.asarray(p) @ R.T) + [tx, ty]
    G2 = ConvexPolygon(f(TRIANGLE.vertices))
    x, y = np.array([1.0, 1.0]), np.array([2.5, 0.3])
    assert vam(G2, f(x), f(y)).value == pytest.approx(vam(TRIANGLE, x, y).value, abs=1e-10)


@pytest.mark.parametrize("G,sampler", [(B2, ball_points), (B3, ball_points), (H2, half_points), (H3, half_points)])
def test_rho_star_envelope(G, sampler, rng):
    X, Y = sampler(rng, G.n, 2000), sampler(rng, G.n, 2000)
    v, rs = vam_values(G, X, Y), rho_star_values(G, X, Y)
    assert np.all(rs <= v + 1e-8)
    assert np.all(v <= 2 * rs + 1e-8)


def test_envelope_factor_two_is_sharp():
    # parallel pairs in the half-plane give equality: 2 arcsin(t/sqrt(4+t^2)) = 2 arctan(t/2)
    for h in [1e-1, 1e-3]:
        x, y = [-1.0, h], [1.0, h]
        assert vam(H2, x, y).value == pytest.approx(2 * rho_star(H2, x, y).value, rel=1e-12)
    # in the disk the ratio approaches 2 along pairs hugging the circle
    delta = 10.0 ** -np.arange(1, 7, dtype=float)
    m, th = 1 - delta, delta / 2
    X = np.stack([m * np.cos(th), m * np.sin(th)], axis=1)
    Y = X * [1, -1]
    ratio = vam_values(B2, X, Y) / rho_star_values(B2, X, Y)
    assert np.all(np.diff(ratio) > 0)
    assert ratio[-1] > 1.99


def test_reflected_pair_strictly_below_double():
    for t in [0.1, 0.5, 0.9, 0.999]:
        x = np.array([t, 0.0])
        assert vam(B2, -x, x).value < 2 * vam(B2, [0, 0], x).value


@pytest.mark.parametrize("G,x,y", [(B2, [0.1, 0.2], [0.5, -0.3]), (H2, [0, 1], [4, 0.2]),
                                   (TRIANGLE, [1, 1], [3, 0.2]), (SQUARE, [0.1, 0.5], [0.9, 0.5])])
def test_vam_bounds(G, x, y):
    v = vam(G, x, y).value
    lo, hi = vam_bounds(G, x, y)
    assert lo <= v + 1e-12 <= hi + 2e-12
    lo, hi = vam_bounds(G, x, y, kind="j")
    assert lo <= v + 1e-12 <= hi + 2e-12


def test_vam_bounds_unknown_kind():
    with pytest.raises(UsageError):
        vam_bounds(B2, [0, 0], [0.1, 0], kind="nope")


# --- quasihyperbolic metric ------------------------------------------------------


def test_qh_ball_radial_is_log():
    res = qh_distance(B2, [0, 0], [0.5, 0])
    assert res.value == pytest.approx(math.log(2), abs=1e-4)
    assert res.value >= math.log(2) - 1e-12


def test_qh_half_space_equals_rho():
    x, y = [0.0, 1.0], [1.0, 2.0]
    assert qh_distance(H2, x, y).value == pytest.approx(rho(H2, x, y).value, rel=1e-3)
    x, y = [0.0, 0.0, 0.5], [3.0, 1.0, 0.1]
    assert qh_distance(H3, x, y).value == pytest.approx(rho(H3, x, y).value, rel=1e-3)


def test_qh_frozen_polygon_values():
    assert qh_distance(SQUARE, [0.1, 0.2], [0.9, 0.7]).value == pytest.approx(3.70197, abs=1e-4)


def test_qh_enclosure(rng):
    for x, y in zip(ball_points(rng, 2, 5, 0.9), ball_points(rng, 2, 5, 0.9)):
        res = qh_distance(B2, x, y)
        lo, hi = res.enclosure
        r = rho(B2, x, y).value
        assert r / 2 - 1e-12 <= lo <= hi == res.value <= r + 1e-6
        assert jmetric(B2, x, y).value <= lo + 1e-12


def test_qh_path_length_is_reported_value():
    res = qh_distance(TRIANGLE, [0.5, 0.5], [3.0, 0.5])
    assert res.path[0] == pytest.approx([0.5, 0.5]) and res.path[-1] == pytest.approx([3.0, 0.5])
    assert polyline_qh_length(TRIANGLE, res.path) == pytest.approx(res.value, rel=1e-14)
    assert np.all(TRIANGLE.contains(res.path))


@pytest.mark.parametrize("G,a,b", [(B2, [0.1, -0.3], [0.6, 0.2]), (H3, [0, 0, 1], [2, 1, 0.3]),
                                   (TRIANGLE, [0.5, 0.5], [2.5, 0.4])])
def test_polyline_length_against_quadrature(G, a, b):
    dist = lambda p: float(G.boundary_distance(p))
    ref = oracles.qh_segment_length(dist, a, b)
    assert polyline_qh_length(G, np.array([a, b])) == pytest.approx(ref, rel=1e-9)


def test_qh_below_straight_segment():
    a, b = np.array([0.2, 0.1]), np.array([3.2, 0.1])
    straight = oracles.qh_segment_length(lambda p: float(TRIANGLE.boundary_distance(p)), a, b)
    assert qh_distance(TRIANGLE, a, b).value <= straight


def test_qh_same_point():
    res = qh_distance(B2, [0.3, 0.1], [0.3, 0.1])
    assert res.value == 0.0


def test_qh_convergence_error_carries_best():
    with pytest.raises(ConvergenceError) as info:
        qh_distance(B2, [-0.8, 0.1], [0.8, 0.3], QhSolverParams(max_iters=1))
    best = info.value.best
    assert best is not None and best.value >= rho(B2, [-0.8, 0.1], [0.8, 0.3]).value / 2


def test_qh_params_validation():
    with pytest.raises(UsageError):
        QhSolverParams(node_count=1)
    with pytest.raises(UsageError):
        QhSolverParams(step_tolerance=0)


def test_v_over_k_constant():
    assert VK_CONSTANT == pytest.approx(math.pi / math.log(4))
    assert round(VK_CONSTANT, 5) == 2.26618
