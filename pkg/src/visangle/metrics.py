"""Hyperbolic, distance-ratio, visual angle and quasihyperbolic metrics.

The ``*_values`` functions work on batches (arrays of shape ``(N, n)``)
and return plain arrays; the single-pair functions wrap them in a
:class:`MetricResult`.
"""

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .errors import ConvergenceError, DomainError, UsageError
from .geom import ConvexPolygon, HalfSpace, UnitBall, _angle_unchecked, _norm, as_point

__all__ = [
    "MetricResult",
    "QhSolverParams",
    "rho",
    "rho_star",
    "jmetric",
    "vam",
    "vam_bounds",
    "qh_distance",
    "rho_values",
    "rho_star_values",
    "j_values",
    "vam_values",
    "polyline_qh_length",
    "VK_CONSTANT",
]

#: pi / log 4, the constant of the v <= c k comparison on convex domains.
VK_CONSTANT = math.pi / math.log(4.0)

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_SEEDS = 720
_LOCAL_OFFSETS = np.array([0.0, 0.03, 0.08, 0.15, 0.25, 0.4, 0.6, 0.85, 1.2, 1.7, 2.5, 3.5, 5.0, 8.0])
_LOCAL_OFFSETS = np.concatenate([-_LOCAL_OFFSETS[:0:-1], _LOCAL_OFFSETS])
_REFINE_TOP = 3
_PARAM_TOL = 1e-12
_SOFTMIN_P = 64


@dataclass
class MetricResult:
    value: float
    witness: Optional[np.ndarray] = None
    enclosure: Optional[Tuple[float, float]] = None
    path: Optional[np.ndarray] = field(default=None, repr=False)

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class QhSolverParams:
    node_count: int = 64
    max_iters: int = 2000
    step_tolerance: float = 1e-10

    def __post_init__(self):
        if self.node_count < 2:
            raise UsageError("node_count must be at least 2")
        if self.max_iters < 1 or not self.step_tolerance > 0:
            raise UsageError("max_iters must be positive and step_tolerance > 0")


def _prepare(G, x, y):
    x = as_point(x, G.n)
    y = as_point(y, G.n)
    x, y = np.broadcast_arrays(x, y)
    if not (np.all(G.contains(x)) and np.all(G.contains(y))):
        raise DomainError(f"points must lie inside {G}")
    return x, y


def _need_hyperbolic(G):
    if not isinstance(G, (UnitBall, HalfSpace)):
        raise UsageError("the hyperbolic metric is only available on the unit ball and the half-space")


def _sh_half_rho(G, x, y):
    """sinh(rho/2) in closed form."""
    dist = _norm(x - y)
    if isinstance(G, UnitBall):
        return dist / np.sqrt((1.0 - np.sum(x * x, axis=-1)) * (1.0 - np.sum(y * y, axis=-1)))
    # ch rho = 1 + |x-y|^2/(2 x_n y_n)  <=>  sh(rho/2) = |x-y| / (2 sqrt(x_n y_n))
    return dist / (2.0 * np.sqrt(x[..., -1] * y[..., -1]))


def _out(v):
    return v[()] if np.ndim(v) == 0 else v


def rho_values(G, x, y):
    _need_hyperbolic(G)
    x, y = _prepare(G, x, y)
    return _out(2.0 * np.arcsinh(_sh_half_rho(G, x, y)))


def rho_star_values(G, x, y):
    _need_hyperbolic(G)
    x, y = _prepare(G, x, y)
    return _out(np.arctan(_sh_half_rho(G, x, y)))


def j_values(G, x, y):
    x, y = _prepare(G, x, y)
    d = np.minimum(G.boundary_distance(x), G.boundary_distance(y))
    return _out(np.log1p(_norm(x - y) / d))


def rho(G, x, y):
    """Hyperbolic distance on the unit ball or the upper half-space."""
    return MetricResult(float(rho_values(G, x, y)))


def rho_star(G, x, y):
    """arctan(sinh(rho/2)), which brackets the visual angle metric within a factor 2."""
    return MetricResult(float(rho_star_values(G, x, y)))


def jmetric(G, x, y):
    """Distance ratio metric log(1 + |x - y| / min(d(x), d(y)))."""
    return MetricResult(float(j_values(G, x, y)))


# --- visual angle metric ------------------------------------------------------


def _golden_max(f, a, b):
    """Vectorised golden-section search for the maximum of f on [a, b]."""
    a = a.copy()
    b = b.copy()
    width = np.max(b - a) if a.size else 0.0
    n = 0 if width <= _PARAM_TOL else int(math.ceil(math.log(_PARAM_TOL / width) / math.log(_INVPHI)))
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc = f(c)
    fd = f(d)
    for _ in range(n):
        left = fc >= fd  # maximum lies in [a, d]
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        c_new = np.where(left, b - _INVPHI * (b - a), d)
        d_new = np.where(left, c, a + _INVPHI * (b - a))
        fc_new = np.where(left, np.nan, fd)
        fd_new = np.where(left, fc, np.nan)
        c, d = c_new, d_new
        need_c = np.isnan(fc_new)
        need_d = np.isnan(fd_new)
        if np.any(need_c):
            fc_new[need_c] = f(c[need_c], need_c)
        if np.any(need_d):
            fd_new[need_d] = f(d[need_d], need_d)
        fc, fd = fc_new, fd_new
    t = np.where(fc >= fd, c, d)
    return t, np.maximum(fc, fd)


def _seed_and_refine(value_at, params, periodic):
    """Dense seeding over ``params`` (shape (N, S)), then golden-section refinement
    around the best few local maxima.  Returns (best parameter, best value)."""
    params = np.sort(params, axis=1)
    vals = value_at(params, None)
    N, S = vals.shape
    if periodic:
        left = np.roll(vals, 1, axis=1)
        right = np.roll(vals, -1, axis=1)
    else:
        left = np.concatenate([np.full((N, 1), -np.inf), vals[:, :-1]], axis=1)
        right = np.concatenate([vals[:, 1:], np.full((N, 1), -np.inf)], axis=1)
    # strict on the left so a run of equal seeds counts once
    score = np.where((vals > left) & (vals >= right), vals, -np.inf)
    k = min(_REFINE_TOP, S)
    top = np.argsort(-score, axis=1)[:, :k]
    rows = np.repeat(np.arange(N), k)
    idx = top.ravel()
    # bracket by the nearest seeds that are genuinely distinct: a local seed can
    # coincide with a grid seed up to rounding, and such a twin hides the peak
    centre = params[rows, idx][:, None]
    gap = 1e-9 * max(1.0, float(np.max(np.abs(params))))
    lo_idx = np.sum(params[rows] < centre - gap, axis=1) - 1
    hi_idx = S - np.sum(params[rows] > centre + gap, axis=1)
    if periodic:
        lo = params[rows, lo_idx % S] - np.where(lo_idx < 0, 2 * math.pi, 0.0)
        hi = params[rows, hi_idx % S] + np.where(hi_idx >= S, 2 * math.pi, 0.0)
    else:
        lo = params[rows, np.clip(lo_idx, 0, S - 1)]
        hi = params[rows, np.clip(hi_idx, 0, S - 1)]

    def f(t, mask=None):
        r = rows if mask is None else rows[mask]
        return value_at(t[:, None], r)[:, 0]

    t, v = _golden_max(f, lo, hi)
    # never return less than the best seed
    seed_best = vals[rows, idx]
    seed_t = params[rows, idx]
    t = np.where(v >= seed_best, t, seed_t)
    v = np.maximum(v, seed_best)
    t = t.reshape(N, k)
    v = v.reshape(N, k)
    pick = np.argmax(v, axis=1)
    return t[np.arange(N), pick], v[np.arange(N), pick]


def _plane_basis(first, second):
    """Orthonormal (e1, e2) with ``first`` along e1 and ``second`` in span(e1, e2)."""
    n = first.shape[-1]
    e1 = first / _norm(first)[:, None]
    w = second - np.sum(second * e1, axis=1)[:, None] * e1
    nw = _norm(w)
    flat = nw <= 1e-13 * np.maximum(_norm(second), 1e-300)
    if np.any(flat):
        # collinear: any plane through the line works by rotational symmetry
        axis = np.argmin(np.abs(e1[flat]), axis=1)
        trial = np.eye(n)[axis]
        trial = trial - np.sum(trial * e1[flat], axis=1)[:, None] * e1[flat]
        w[flat] = trial
        nw[flat] = _norm(trial)
    return e1, w / nw[:, None]


def _ball_search(x, y):
    nonzero = (_norm(x) > 0)[:, None]
    e1, e2 = _plane_basis(np.where(nonzero, x, y), np.where(nonzero, y, x))
    X = np.stack([np.sum(x * e1, 1), np.sum(x * e2, 1)], axis=1)
    Y = np.stack([np.sum(y * e1, 1), np.sum(y * e2, 1)], axis=1)
    N = len(x)
    grid = np.broadcast_to(np.linspace(-math.pi, math.pi, _SEEDS, endpoint=False), (N, _SEEDS))
    dx = 1.0 - _norm(X)
    dy = 1.0 - _norm(Y)
    ax = np.arctan2(X[:, 1], X[:, 0])
    ay = np.arctan2(Y[:, 1], Y[:, 0])
    local = np.concatenate(
        [ax[:, None] + dx[:, None] * _LOCAL_OFFSETS, ay[:, None] + dy[:, None] * _LOCAL_OFFSETS], axis=1
    )
    local = np.mod(local + math.pi, 2 * math.pi) - math.pi
    params = np.concatenate([grid, local], axis=1)

    def value_at(t, rows):
        Xr = X if rows is None else X[rows]
        Yr = Y if rows is None else Y[rows]
        z = np.stack([np.cos(t), np.sin(t)], axis=-1)
        return _angle_unchecked(Xr[:, None, :], z, Yr[:, None, :])

    t, v = _seed_and_refine(value_at, params, periodic=True)
    witness = np.cos(t)[:, None] * e1 + np.sin(t)[:, None] * e2
    return v, witness


def _half_search(x, y):
    h = y - x
    h[:, -1] = 0.0
    nh = _norm(h)
    vertical = nh <= 1e-13 * np.maximum(_norm(y - x), 1e-300)
    u = np.zeros_like(h)
    u[~vertical] = h[~vertical] / nh[~vertical][:, None]
    u[vertical, 0] = 1.0
    base = 0.5 * (x + y)
    base[:, -1] = 0.0
    X = np.stack([np.sum((x - base) * u, 1), x[:, -1]], axis=1)
    Y = np.stack([np.sum((y - base) * u, 1), y[:, -1]], axis=1)
    span = 10.0 * (_norm(x - y) + X[:, 1] + Y[:, 1])
    grid = np.linspace(-1.0, 1.0, _SEEDS)[None, :] * span[:, None]
    local = np.concatenate(
        [X[:, :1] + X[:, 1:] * _LOCAL_OFFSETS, Y[:, :1] + Y[:, 1:] * _LOCAL_OFFSETS], axis=1
    )
    local = np.clip(local, -span[:, None], span[:, None])
    params = np.concatenate([grid, local], axis=1)

    def value_at(t, rows):
        Xr = X if rows is None else X[rows]
        Yr = Y if rows is None else Y[rows]
        z = np.stack([t, np.zeros_like(t)], axis=-1)
        return _angle_unchecked(Xr[:, None, :], z, Yr[:, None, :])

    t, v = _seed_and_refine(value_at, params, periodic=False)
    witness = base + t[:, None] * u
    return v, witness


def _polygon_exact(G, x, y):
    """Per-edge maximal viewing angle via the circle through x, y tangent to the edge line."""
    p, q = G.edges
    dvec = q - p
    length = np.hypot(dvec[:, 0], dvec[:, 1])
    tang = dvec / length[:, None]
    # coordinates along (a) and inward-distance from (h) each edge line
    ax = np.sum((x[:, None, :] - p) * tang, axis=-1)
    ay = np.sum((y[:, None, :] - p) * tang, axis=-1)
    hx = G.line_distances(x)
    hy = G.line_distances(y)
    A = hy - hx
    B = hy * ax - hx * ay
    C = hy * (ax * ax + hx * hx) - hx * (ay * ay + hy * hy)
    disc = np.sqrt(np.maximum(B * B - A * C, 0.0))
    qq = B + np.where(B >= 0, disc, -disc)
    with np.errstate(divide="ignore", invalid="ignore"):
        lam1 = qq / A
        lam2 = C / qq
    cands = np.stack([lam1, lam2, np.zeros_like(lam1), np.broadcast_to(length, lam1.shape)], axis=-1)
    cands = np.where(np.isfinite(cands), cands, 0.0)
    cands = np.clip(cands, 0.0, length[None, :, None])
    z = p[None, :, None, :] + cands[..., None] * tang[None, :, None, :]
    vals = _angle_unchecked(x[:, None, None, :], z, y[:, None, None, :])
    N = len(x)
    flat = vals.reshape(N, -1)
    best = np.argmax(flat, axis=1)
    witness = z.reshape(N, -1, 2)[np.arange(N), best]
    return flat[np.arange(N), best], witness


def vam_values(G, x, y, method="auto", return_witness=False):
    """Visual angle metric for a batch of pairs.

    ``method="search"`` forces the boundary search on the ball, skipping the
    closed forms for y = 0 and |x| = |y|.
    """
    x, y = _prepare(G, x, y)
    single = x.ndim == 1
    x = np.atleast_2d(x).astype(float)
    y = np.atleast_2d(y).astype(float)
    N = len(x)
    value = np.zeros(N)
    witness = np.full(x.shape, np.nan)
    todo = np.any(x != y, axis=1)

    if isinstance(G, ConvexPolygon):
        if np.any(todo):
            value[todo], witness[todo] = _polygon_exact(G, x[todo], y[todo])
    elif isinstance(G, UnitBall):
        nx = _norm(x)
        ny = _norm(y)
        if method == "auto":
            zero = todo & ((nx == 0) | (ny == 0))
            if np.any(zero):
                other = np.where((nx[zero] == 0)[:, None], y[zero], x[zero])
                m = _norm(other)
                value[zero] = np.arcsin(m)
                # tangency: the segment from the witness to `other` is orthogonal to `other`
                e1, e2 = _plane_basis(other, np.tile(np.eye(G.n)[0], (len(other), 1)))
                witness[zero] = other + np.sqrt((1 - m) * (1 + m))[:, None] * e2
            equal = todo & ~zero & (np.abs(nx - ny) <= 1e-14)
            if np.any(equal):
                xs, ys = x[equal], y[equal]
                r = nx[equal]
                theta = 0.5 * _angle_unchecked(xs, np.zeros_like(xs), ys)
                value[equal] = 2.0 * np.arctan(r * np.sin(theta) / (1.0 - r * np.cos(theta)))
                mid = xs + ys
                e1, e2 = _plane_basis(xs, ys)
                anti = _norm(mid) <= 1e-15 * r
                mid[anti] = e2[anti]
                witness[equal] = mid / _norm(mid)[:, None]
            todo = todo & ~zero & ~equal
        elif method != "search":
            raise UsageError(f"unknown method {method!r}")
        if np.any(todo):
            value[todo], witness[todo] = _ball_search(x[todo], y[todo])
    elif isinstance(G, HalfSpace):
        if np.any(todo):
            value[todo], witness[todo] = _half_search(x[todo], y[todo])
    else:
        raise UsageError(f"unsupported domain {G!r}")

    if single:
        value, witness = value[0], witness[0]
    return (value, witness) if return_witness else value


def vam(G, x, y):
    """Visual angle metric: supremum over boundary points z of the angle at z."""
    value, witness = vam_values(G, x, y, return_witness=True)
    if np.ndim(value) != 0:
        raise UsageError("vam takes a single pair; use vam_values for batches")
    w = None if np.all(np.isnan(witness)) else witness
    return MetricResult(float(value), witness=w)


def vam_bounds(G, x, y, kind="auto"):
    """Closed-form lower and upper bounds for the visual angle metric.

    ``kind="rho"`` gives (rho*, 2 rho*) on the ball and the half-space;
    ``kind="j"`` gives (arcsin(t/(t+2)), 2 arcsin(t/sqrt(4+t^2))) with
    t = exp(j) - 1, valid on every convex domain.  ``"auto"`` picks rho where
    available.
    """
    if kind == "auto":
        kind = "rho" if isinstance(G, (UnitBall, HalfSpace)) else "j"
    if kind == "rho":
        rs = rho_star_values(G, x, y)
        return rs, 2.0 * rs
    if kind == "j":
        x, y = _prepare(G, x, y)
        d = np.minimum(G.boundary_distance(x), G.boundary_distance(y))
        t = _norm(x - y) / d
        return _out(np.arcsin(t / (t + 2.0))), _out(2.0 * np.arcsin(t / np.sqrt(4.0 + t * t)))
    raise UsageError(f"unknown bound kind {kind!r}")


# --- quasihyperbolic metric ---------------------------------------------------


def _rownorm(v):
    return np.sqrt((v * v).sum(axis=-1))


def _dist_and_grad(G, Z):
    if isinstance(G, UnitBall):
        r = _rownorm(Z)
        safe = np.where(r > 0, r, 1.0)
        return 1.0 - r, -Z / safe[:, None] * (r > 0)[:, None]
    if isinstance(G, HalfSpace):
        g = np.zeros_like(Z)
        g[:, -1] = 1.0
        return Z[:, -1].copy(), g
    # polygons: smooth p-norm soft-min of the edge-line distances (never above
    # the true d) so the path optimiser sees a differentiable density
    D = G._offset - Z @ G._outward.T
    m = D.min(axis=1)
    ratio = m[:, None] / D
    total = (ratio**_SOFTMIN_P).sum(axis=1)
    d = m * total ** (-1.0 / _SOFTMIN_P)
    weight = (d[:, None] / D) ** (_SOFTMIN_P + 1)
    return d, -(weight @ G._outward)


def _energy_grad(G, P):
    """Discrete energy, its gradient (end nodes fixed), node distances and segment lengths."""
    d, gd = _dist_and_grad(G, P)
    diff = P[1:] - P[:-1]
    seg = _rownorm(diff)
    w = 2.0 / (d[:-1] + d[1:])
    u = diff / np.where(seg > 0, seg, 1.0)[:, None]
    half = (0.5 * seg * w * w)[:, None]
    g = np.zeros_like(P)
    g[1:] += w[:, None] * u - half * gd[1:]
    g[:-1] += -w[:, None] * u - half * gd[:-1]
    g[0] = 0.0
    g[-1] = 0.0
    return float((seg * w).sum()), g, d, seg


def _feasible(G, P):
    # unchecked interior test for solver iterates
    if isinstance(G, UnitBall):
        return bool((P * P).sum(axis=1).max() < 1.0)
    if isinstance(G, HalfSpace):
        return bool(P[:, -1].min() > 0.0)
    return bool((P @ G._outward.T < G._offset).all())


def _resample(G, P, count=None):
    """Nodes at equal steps of discrete quasihyperbolic length along the polyline P
    (``count`` points in total, default ``len(P)``)."""
    count = len(P) if count is None else count
    d, _ = _dist_and_grad(G, P)
    seg = _rownorm(P[1:] - P[:-1]) * 2.0 / (d[:-1] + d[1:])
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    if cum[-1] <= 0:
        return P
    target = np.linspace(0.0, cum[-1], count)
    out = np.empty((count, P.shape[1]))
    for k in range(P.shape[1]):
        out[:, k] = np.interp(target, cum, P[:, k])
    out[0], out[-1] = P[0], P[-1]
    return out if _feasible(G, out) else None


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def polyline_qh_length(G, P):
    """Quasihyperbolic length of the polyline through the rows of ``P``.

    Exact on the half-space and on polygons (1/d integrated on each piece
    where d is affine); 16-point Gauss-Legendre per segment on the ball.
    """
    P = np.asarray(P, dtype=float)
    a, b = P[:-1], P[1:]
    seg = _norm(b - a)
    if isinstance(G, HalfSpace):
        an, bn = a[:, -1], b[:, -1]
        delta = (bn - an) / an
        small = np.abs(delta) < 1e-8
        ratio = np.where(small, 1.0 - 0.5 * delta, np.log1p(np.where(small, 0.0, delta)) / np.where(small, 1.0, delta))
        return float(np.sum(seg / an * ratio))
    if isinstance(G, UnitBall):
        t = 0.5 * (_GL_NODES + 1.0)
        z = a[:, None, :] + t[None, :, None] * (b - a)[:, None, :]
        inv = 1.0 / (1.0 - _norm(z))
        return float(np.sum(seg * 0.5 * (inv @ _GL_WEIGHTS)))
    # polygon: d(t) = min_j (c_j + e_j t) on each segment
    c = G.line_distances(a)
    e = G.line_distances(b) - c
    E = c.shape[1]
    i, j = np.triu_indices(E, 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        brk = (c[:, i] - c[:, j]) / (e[:, j] - e[:, i])
    brk = np.where((brk > 0) & (brk < 1), brk, np.nan)
    knots = np.sort(np.concatenate([np.zeros((len(a), 1)), brk, np.ones((len(a), 1))], axis=1), axis=1)
    lo, hi = knots[:, :-1], knots[:, 1:]
    ok = np.isfinite(lo) & np.isfinite(hi) & (hi > lo)
    lo = np.where(ok, lo, 0.0)
    hi = np.where(ok, hi, 0.0)
    mid = 0.5 * (lo + hi)
    active = np.argmin(c[:, None, :] + mid[..., None] * e[:, None, :], axis=2)
    ca = np.take_along_axis(c, active, axis=1)
    ea = np.take_along_axis(e, active, axis=1)
    dl = ca + ea * lo
    dh = ca + ea * hi
    with np.errstate(divide="ignore", invalid="ignore"):
        piece = np.where(
            np.abs(ea) > 1e-14 * np.abs(ca), np.log(dh / dl) / ea, (hi - lo) / np.where(ok, ca, 1.0)
        )
    piece = np.where(ok, piece, 0.0)
    return float(np.sum(seg * np.sum(piece, axis=1)))


def _normal_part(P, v):
    """Drop the component along the path; sliding nodes along the polyline
    barely changes the energy and is left to the periodic redistribution."""
    tang = P[2:] - P[:-2]
    tang = tang / np.maximum(_rownorm(tang), 1e-300)[:, None]
    out = v.copy()
    out[1:-1] -= (v[1:-1] * tang).sum(axis=1)[:, None] * tang
    return out


def _relax(G, P, max_iters, tol):
    """Preconditioned Barzilai-Borwein descent on the discrete functional.

    The diagonal preconditioner d * (mean adjacent segment length) mimics the
    inverse Hessian.  Nodes move normal to the path only; backtracking keeps
    every node inside G, and the polyline is redistributed at equal
    quasihyperbolic steps every 50 iterations when that lowers the energy.
    Converged when the full preconditioned step moves no node farther than
    ``tol``.
    """
    F, g, d, seg = _energy_grad(G, P)
    history = [F]
    alpha = 1.0
    mean_seg = np.zeros(len(P))
    for it in range(1, max_iters + 1):
        mean_seg[1:-1] = 0.5 * (seg[:-1] + seg[1:])
        D = d * mean_seg
        direction = _normal_part(P, -D[:, None] * g)
        step = _rownorm(direction)
        if step.max() < tol:
            return P, F, True, it
        # stay well inside: no node moves more than half its boundary distance
        moving = step > 0
        cap = float((0.5 * d[moving] / step[moving]).min())
        a = min(alpha, cap)
        slope = float((g * direction).sum())
        ref = max(history[-10:])
        while True:
            trial = P + a * direction
            if _feasible(G, trial):
                Ft, gt, dt, segt = _energy_grad(G, trial)
                if Ft <= ref + 1e-4 * a * slope:
                    break
            a *= 0.5
            if a < 1e-20:
                return P, F, False, it
        s = trial - P
        yv = gt - g
        inv = np.where(D > 0, 1.0 / np.where(D > 0, D, 1.0), 0.0)
        P, F, g, d, seg = trial, Ft, gt, dt, segt
        history.append(F)
        sy = float((s * yv).sum())
        alpha = float((inv[:, None] * s * s).sum()) / sy if sy > 0 else 2.0 * a
        alpha = min(max(alpha, 1e-6), 1e6)
        if it % 50 == 0:
            Q = _resample(G, P)
            if Q is not None:
                FQ, gQ, dQ, segQ = _energy_grad(G, Q)
                # keep the redistribution only when it helps; near the optimum it would cycle
                if FQ < F:
                    P, F, g, d, seg = Q, FQ, gQ, dQ, segQ
                    history = [F]
    return P, F, False, max_iters


def _levels(count):
    levels = [count]
    while levels[-1] > 6:
        levels.append((levels[-1] - 1) // 2)
    return levels[::-1]


def qh_distance(G, x, y, params=None):
    """Quasihyperbolic distance bracketed by a certified enclosure.

    ``value`` is the quasihyperbolic length of an optimised polyline from
    x to y, hence an upper bound on k.  The enclosure's lower end is j
    (j <= k on every domain), raised to rho/2 on the ball; its upper end is
    ``value``.
    """
    params = params or QhSolverParams()
    if not isinstance(G, (UnitBall, HalfSpace, ConvexPolygon)):
        raise UsageError(f"unsupported domain {G!r}")
    x, y = _prepare(G, x, y)
    if x.ndim != 1:
        raise UsageError("qh_distance takes a single pair")
    if np.all(x == y):
        return MetricResult(0.0, enclosure=(0.0, 0.0))
    levels = _levels(params.node_count)
    t = np.linspace(0.0, 1.0, levels[0] + 2)[:, None]
    P = (1.0 - t) * x + t * y
    # coarse-to-fine: each level starts from the previous optimum resampled
    # coarse levels only seed the next one, so a loose tolerance is enough there
    coarse_tol = max(params.step_tolerance, 1e-6 * float(_rownorm(x - y)))
    for count in levels[:-1]:
        P, _, _, _ = _relax(G, P, min(params.max_iters, 500), coarse_tol)
        Q = _resample(G, P, 2 * count + 3)
        P = Q if Q is not None else P
    Q = _resample(G, P, params.node_count + 2)
    if Q is None or len(Q) != params.node_count + 2:
        t = np.linspace(0.0, 1.0, params.node_count + 2)[:, None]
        Q = (1.0 - t) * x + t * y
    P, _, converged, iters = _relax(G, Q, params.max_iters, params.step_tolerance)
    length = polyline_qh_length(G, P)
    lower = float(j_values(G, x, y))
    if isinstance(G, UnitBall):
        lower = max(lower, 0.5 * float(rho_values(G, x, y)))
    result = MetricResult(length, enclosure=(min(lower, length), length), path=P)
    if not converged:
        raise ConvergenceError(f"polyline solver did not converge in {iters} iterations", best=result)
    return result
