"""Experiments: metric spheres, the radial-map v ratio and linear dilatation."""

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ConvergenceError, DomainError, MonotonicityError, RangeError, UsageError
from .geom import ConvexPolygon, HalfSpace, UnitBall, apply_moebius, as_point
from .metrics import QhSolverParams, j_values, qh_distance, rho_star_values, rho_values, vam_values

__all__ = [
    "Identity",
    "Radial",
    "Moebius",
    "BallSample",
    "METRICS",
    "sphere_directions",
    "metric_ball_boundary",
    "radial_ratio",
    "dilatation_estimate",
]

METRICS = ("v", "rho", "rho_star", "j", "k")
_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))
_CHECK_RAYS = 32
_CHECK_STEPS = 100
_BISECT_ITERS = 64


# --- sample maps ----------------------------------------------------------------


class Identity:
    def __call__(self, z):
        return np.array(z, dtype=float)

    def __repr__(self):
        return "Identity()"


@dataclass(frozen=True)
class Radial:
    """f(z) = z |z|^(a-1); quasiconformal with K = 1/a, and the identity at a = 1."""

    a: float

    def __post_init__(self):
        if not 0 < self.a <= 1:
            raise DomainError(f"radial exponent must lie in (0, 1], got {self.a}")

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        nz = np.sqrt(np.sum(z * z, axis=-1, keepdims=True))
        with np.errstate(divide="ignore", invalid="ignore"):
            scale = np.where(nz > 0, nz ** (self.a - 1.0), 0.0)
        return z * scale


@dataclass(frozen=True)
class Moebius:
    map: object

    def __call__(self, z):
        return apply_moebius(self.map, z)


# --- metric spheres ---------------------------------------------------------------


def sphere_directions(n, count):
    """Deterministic unit vectors: uniform angles in the plane, a Fibonacci lattice in 3-D."""
    if count < 1:
        raise UsageError("need at least one direction")
    k = np.arange(count)
    if n == 2:
        t = 2.0 * math.pi * k / count
        return np.stack([np.cos(t), np.sin(t)], axis=1)
    if n == 3:
        z = 1.0 - (2.0 * k + 1.0) / count
        r = np.sqrt(1.0 - z * z)
        phi = k * _GOLDEN_ANGLE
        return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)
    raise UsageError("sphere sampling is implemented for n = 2 and n = 3")


def _evaluator(G, metric, qh_params):
    if metric == "v":
        return lambda c, P: np.atleast_1d(vam_values(G, np.broadcast_to(c, P.shape), P))
    if metric == "rho":
        return lambda c, P: np.atleast_1d(rho_values(G, c, P))
    if metric == "rho_star":
        return lambda c, P: np.atleast_1d(rho_star_values(G, c, P))
    if metric == "j":
        return lambda c, P: np.atleast_1d(j_values(G, c, P))
    if metric == "k":

        def k_upper(c, P):
            out = np.empty(len(P))
            for i, p in enumerate(P):
                try:
                    out[i] = qh_distance(G, c, p, qh_params).value
                except ConvergenceError as exc:
                    out[i] = exc.best.value
            return out

        return k_upper
    raise UsageError(f"unknown metric {metric!r}; choose from {', '.join(METRICS)}")


def _ray_reach(G, c, U):
    """Parameter t where c + t u leaves G (inf for rays escaping the half-space)."""
    if isinstance(G, UnitBall):
        cu = U @ c
        return -cu + np.sqrt(cu * cu + 1.0 - c @ c)
    if isinstance(G, HalfSpace):
        down = U[:, -1] < 0
        with np.errstate(divide="ignore"):
            return np.where(down, c[-1] / np.where(down, -U[:, -1], 1.0), np.inf)
    gap = G._offset - G._outward @ c
    speed = U @ G._outward.T
    with np.errstate(divide="ignore"):
        t = np.where(speed > 0, gap / np.where(speed > 0, speed, 1.0), np.inf)
    return t.min(axis=1)


def _ray_points(c, U, reach, scale, s):
    # s in [0, 1): linear in t for bounded rays, t = scale s/(1-s) for unbounded ones
    s = np.asarray(s)
    finite = np.isfinite(reach)
    t = np.where(finite, s * np.where(finite, reach, 0.0), scale * s / (1.0 - s))
    return c + t[..., None] * U


@dataclass
class BallSample:
    metric: str
    domain: object
    center: np.ndarray
    radius: float
    points: np.ndarray
    exploratory: bool = False
    params: dict = field(default_factory=dict)

    def rows(self):
        for p in self.points:
            yield [self.metric, str(self.domain), *self.center, self.radius, *p]

    def header(self):
        n = len(self.center)
        return (["metric", "domain"] + [f"c{i + 1}" for i in range(n)] + ["radius"]
                + [f"p{i + 1}" for i in range(n)])

    def to_csv(self, digits=10):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header())
        for row in self.rows():
            w.writerow([f"{v:.{digits}g}" if isinstance(v, (float, np.floating)) else v for v in row])
        return buf.getvalue()

    def to_dict(self):
        return {
            "metric": self.metric,
            "domain": str(self.domain),
            "center": [float(v) for v in self.center],
            "radius": float(self.radius),
            "exploratory": self.exploratory,
            "params": self.params,
            "points": [[float(v) for v in p] for p in self.points],
        }


def _check_monotone(m, c, U, reach, scale):
    s = np.arange(1, _CHECK_STEPS + 1) / (_CHECK_STEPS + 1.0)
    pick = np.linspace(0, len(U), _CHECK_RAYS, endpoint=False).astype(int)
    for i in np.unique(pick):
        P = _ray_points(c, U[i], reach[i], scale, s)
        vals = m(c, P)
        drop = np.diff(vals)
        tol = 1e-12 * np.maximum(1.0, np.abs(vals[1:]))
        if np.any(drop < -tol):
            k = int(np.argmin(drop + tol))
            raise MonotonicityError(
                f"metric decreases along the ray in direction {U[i]} near {P[k + 1]}; "
                "level sets are not star-shaped about this center"
            )


def metric_ball_boundary(G, center, radius, metric="v", resolution=64, qh_params: Optional[QhSolverParams] = None):
    """Trace the metric sphere S_m(center, radius) along ``resolution`` rays.

    Each metric is assumed to increase along rays from the center; this is
    checked on 32 rays with 100 steps before tracing.
    """
    center = as_point(center, G.n)
    if center.ndim != 1 or not G.contains(center):
        raise DomainError("center must be a single interior point")
    if not radius >= 0:
        raise RangeError("radius must be non-negative")
    qh_params = qh_params or QhSolverParams(node_count=32)
    m = _evaluator(G, metric, qh_params)
    U = sphere_directions(G.n, resolution)
    exploratory = not (isinstance(G, UnitBall) and not np.any(center))
    params = {"resolution": int(resolution), "check_rays": _CHECK_RAYS, "check_steps": _CHECK_STEPS}
    if radius == 0:
        pts = np.tile(center, (resolution, 1))
        return BallSample(metric, G, center, 0.0, pts, exploratory, params)

    reach = _ray_reach(G, center, U)
    scale = float(G.boundary_distance(center))
    _check_monotone(m, center, U, reach, scale)

    s_hi = np.where(np.isfinite(reach), 1.0 - 1e-12, 1.0 - 1e-12 / max(1.0, scale))
    top = m(center, _ray_points(center, U, reach, scale, s_hi))
    if np.any(top <= radius):
        i = int(np.argmin(top))
        raise RangeError(
            f"radius {radius} is not attained along direction {U[i]}: "
            f"the metric only reaches {top[i]:.12g} before the boundary"
        )
    lo = np.zeros(len(U))
    hi = s_hi.copy()
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        below = m(center, _ray_points(center, U, reach, scale, mid)) < radius
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    pts = _ray_points(center, U, reach, scale, 0.5 * (lo + hi))
    return BallSample(metric, G, center, float(radius), pts, exploratory, params)


# --- radial map and dilatation ------------------------------------------------------


def radial_ratio(a, r, theta):
    """v(f(x), f(y)) / v(x, y) in the unit ball for the radial map f(z) = z|z|^(a-1).

    x and y have |x| = |y| = r and subtend the angle 2 theta at the origin, so
    both visual angles have the closed form 2 arctan(r sin t / (1 - r cos t)).
    """
    a = np.asarray(a, dtype=float)
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if np.any((a <= 0) | (a > 1)):
        raise DomainError("a must lie in (0, 1]")
    if np.any((r <= 0) | (r >= 1)):
        raise DomainError("r must lie in (0, 1)")
    if np.any((theta <= 0) | (theta > 0.5 * math.pi)):
        raise DomainError("theta must lie in (0, pi/2]")
    ra = r**a
    st, ct = np.sin(theta), np.cos(theta)
    out = np.arctan(ra * st / (1.0 - ra * ct)) / np.arctan(r * st / (1.0 - r * ct))
    return out[()] if out.ndim == 0 else out


def dilatation_estimate(f, x, radii, samples_per_sphere=64, domain=None):
    """max |f(z) - f(x)| / min |f(z) - f(x)| over spheres |z - x| = r, one value per radius."""
    x = as_point(x)
    G = domain if domain is not None else UnitBall(len(x))
    if not G.contains(x):
        raise DomainError("x must be an interior point")
    d = float(G.boundary_distance(x))
    radii = np.asarray(radii, dtype=float)
    if np.any(radii <= 0) or np.any(radii >= d):
        raise RangeError(f"all radii must lie in (0, d(x)) = (0, {d:.6g})")
    U = sphere_directions(len(x), samples_per_sphere)
    fx = f(x)
    out = []
    for r in radii:
        dist = np.sqrt(np.sum((f(x + r * U) - fx) ** 2, axis=-1))
        out.append(float(dist.max() / dist.min()))
    return out
