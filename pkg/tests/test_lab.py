import json
import math

import numpy as np
import pytest

from visangle import (
    TA,
    ConvexPolygon,
    DomainError,
    HalfSpace,
    MonotonicityError,
    RangeError,
    UnitBall,
    UsageError,
    ball_half_map,
    dilatation_estimate,
    metric_ball_boundary,
    radial_ratio,
)
from visangle.lab import Identity, Moebius, Radial, _check_monotone, sphere_directions
from visangle.metrics import QhSolverParams, j_values, rho_values, vam_values

B2, B3, H2 = UnitBall(2), UnitBall(3), HalfSpace(2)
TRIANGLE = ConvexPolygon([[0, 0], [4, 0], [1, 3]])


def test_sphere_directions():
    U = sphere_directions(2, 8)
    assert np.allclose(np.linalg.norm(U, axis=1), 1)
    assert np.allclose(U[2], [0, 1])
    V = sphere_directions(3, 500)
    assert np.allclose(np.linalg.norm(V, axis=1), 1)
    assert np.allclose(V.mean(axis=0), 0, atol=1e-2)
    with pytest.raises(UsageError):
        sphere_directions(4, 10)


def test_v_sphere_about_origin_is_a_circle():
    # v(0, x) = arcsin|x|
    M = 0.7
    s = metric_ball_boundary(B2, [0, 0], M, "v", resolution=64)
    assert np.allclose(np.linalg.norm(s.points, axis=1), math.sin(M), atol=1e-12)
    assert not s.exploratory


def test_j_sphere_about_origin():
    # j(0, x) = log(1/(1-|x|)) since d(x) <= d(0)
    s = metric_ball_boundary(B3, [0, 0, 0], math.log(2), "j", resolution=50)
    assert np.allclose(np.linalg.norm(s.points, axis=1), 0.5, atol=1e-12)


def test_rho_sphere_about_origin():
    s = metric_ball_boundary(B2, [0, 0], 1.0, "rho", resolution=32)
    assert np.allclose(np.linalg.norm(s.points, axis=1), math.tanh(0.5), atol=1e-12)


@pytest.mark.parametrize(
    "G,c,R,metric,fn",
    [
        (B2, [0.3, -0.2], 0.4, "v", vam_values),
        (H2, [0.0, 1.0], 0.8, "v", vam_values),
        (H2, [0.0, 1.0], 2.0, "rho", rho_values),
        (TRIANGLE, [1.5, 1.0], 0.6, "j", j_values),
        (TRIANGLE, [1.5, 1.0], 0.5, "v", vam_values),
    ],
)
def test_traced_points_lie_on_sphere(G, c, R, metric, fn):
    s = metric_ball_boundary(G, c, R, metric, resolution=24)
    c = np.asarray(c, float)
    vals = fn(G, np.broadcast_to(c, s.points.shape), s.points)
    assert np.max(np.abs(vals - R)) <= 1e-9
    assert s.exploratory


def test_k_sphere_about_origin():
    # k(0, x) = log(1/(1-|x|)) in the ball
    s = metric_ball_boundary(B2, [0, 0], math.log(2), "k", resolution=6,
                             qh_params=QhSolverParams(node_count=16, step_tolerance=1e-8))
    assert np.allclose(np.linalg.norm(s.points, axis=1), 0.5, atol=1e-4)


def test_zero_radius():
    s = metric_ball_boundary(B2, [0.1, 0.1], 0.0, "v", resolution=5)
    assert np.array_equal(s.points, np.tile([0.1, 0.1], (5, 1)))


def test_unattainable_radius():
    # v(0, x) < pi/2 everywhere in the ball
    with pytest.raises(RangeError):
        metric_ball_boundary(B2, [0, 0], 1.6, "v", resolution=8)


def test_bad_inputs():
    with pytest.raises(DomainError):
        metric_ball_boundary(B2, [1, 0], 0.1)
    with pytest.raises(RangeError):
        metric_ball_boundary(B2, [0, 0], -0.1)
    with pytest.raises(UsageError):
        metric_ball_boundary(B2, [0, 0], 0.1, "nope")
    with pytest.raises(UsageError):
        metric_ball_boundary(TRIANGLE, [1.5, 1.0], 0.1, "rho")


def test_monotonicity_guard():
    U = sphere_directions(2, 8)
    reach = np.ones(8)
    wobbly = lambda c, P: np.sin(20 * np.linalg.norm(P - c, axis=1))
    with pytest.raises(MonotonicityError):
        _check_monotone(wobbly, np.zeros(2), U, reach, 1.0)
    _check_monotone(lambda c, P: np.linalg.norm(P - c, axis=1), np.zeros(2), U, reach, 1.0)


def test_ball_sample_serialisation():
    s = metric_ball_boundary(B2, [0, 0], 0.5, "v", resolution=4)
    text = s.to_csv(digits=6)
    lines = text.strip().splitlines()
    assert lines[0] == "metric,domain,c1,c2,radius,p1,p2"
    assert len(lines) == 5
    assert lines[1].startswith("v,ball:2,0,0,0.5,")
    d = json.loads(json.dumps(s.to_dict()))
    assert d["metric"] == "v" and len(d["points"]) == 4 and d["exploratory"] is False


# --- radial map and dilatation ----------------------------------------------------


def test_radial_ratio_frozen():
    r = 10.0 ** -np.arange(1, 6)
    got = radial_ratio(0.5, r, math.pi / 4)
    assert np.allclose(got, [3.69, 10.66, 32.32, 100.7, 316.9], rtol=2e-3)
    assert 28 <= radial_ratio(0.5, 1e-3, math.pi / 4) <= 35
    assert np.all(np.diff(got) > 0)


def test_radial_ratio_matches_metric():
    a, r, th = 0.5, 0.1, math.pi / 4
    x = r * np.array([math.cos(th), math.sin(th)])
    y = x * [1, -1]
    f = Radial(a)
    direct = vam_values(B2, f(x), f(y)) / vam_values(B2, x, y)
    assert radial_ratio(a, r, th) == pytest.approx(float(direct), rel=1e-9)


def test_radial_ratio_identity_and_domain():
    assert radial_ratio(1.0, 0.3, 0.5) == pytest.approx(1.0)
    with pytest.raises(DomainError):
        radial_ratio(0.0, 0.3, 0.5)
    with pytest.raises(DomainError):
        radial_ratio(0.5, 1.0, 0.5)
    with pytest.raises(DomainError):
        radial_ratio(0.5, 0.3, 2.0)


def test_radial_map():
    f = Radial(0.5)
    assert np.allclose(f([0.25, 0.0]), [0.5, 0.0])
    assert np.array_equal(f([0.0, 0.0]), [0.0, 0.0])
    assert np.array_equal(Identity()([0.1, 0.2]), [0.1, 0.2])
    with pytest.raises(DomainError):
        Radial(1.5)


def test_dilatation_of_moebius_tends_to_one():
    f = Moebius(TA(np.array([0.3, 0.2])))
    H = dilatation_estimate(f, [0.1, -0.2], [1e-1, 1e-2, 1e-3, 1e-4])
    assert H[-1] == pytest.approx(1.0, abs=1e-3)
    assert np.all(np.diff(H) < 0)


def test_dilatation_of_radial_map():
    # f(z) = z|z|^(a-1) stretches radially by a relative to tangentially: H = 1/a
    H = dilatation_estimate(Radial(0.5), [0.5, 0.0], [1e-2, 1e-4])
    assert H[-1] == pytest.approx(2.0, abs=1e-3)


def test_dilatation_in_half_space():
    g = Moebius(ball_half_map(2))
    H = dilatation_estimate(g, [0.0, 1.0], [1e-3], domain=H2)
    assert H[0] == pytest.approx(1.0, abs=1e-2)


def test_dilatation_radius_limits():
    with pytest.raises(RangeError):
        dilatation_estimate(Identity(), [0.5, 0.0], [0.6])
    with pytest.raises(DomainError):
        dilatation_estimate(Identity(), [1.5, 0.0], [0.1])
