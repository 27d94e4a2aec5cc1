"""Points, angles, the three canonical domains and Moebius maps.

Points are numpy arrays whose last axis holds coordinates; every function
here broadcasts over leading axes, so a ``(N, n)`` array is a batch of N
points.
"""

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from .errors import DegenerateInputError, DomainError, PoleError, UsageError

__all__ = [
    "as_point",
    "angle",
    "UnitBall",
    "HalfSpace",
    "ConvexPolygon",
    "boundary_distance",
    "contains",
    "SphereInversion",
    "Reflection",
    "TA",
    "BallToHalf",
    "Composition",
    "apply_moebius",
    "ball_half_map",
    "parse_domain",
]


def as_point(x, n=None):
    p = np.asarray(x, dtype=float)
    if p.ndim == 0 or p.shape[-1] < 2:
        raise UsageError("points need at least two coordinates")
    if not np.all(np.isfinite(p)):
        raise UsageError("point coordinates must be finite")
    if n is not None and p.shape[-1] != n:
        raise UsageError(f"expected {n}-dimensional point(s), got dimension {p.shape[-1]}")
    return p


def _norm(v):
    return np.sqrt(np.sum(v * v, axis=-1))


def angle(x, z, y):
    """Angle at ``z`` between the segments [x, z] and [y, z], in [0, pi].

    Kahan's half-angle form: 2 atan2(| |w|u - |u|w |, | |w|u + |u|w |) with
    u = x - z, w = y - z.  Accurate for nearly (anti)parallel rays.
    """
    x, y, z = (np.asarray(p, dtype=float) for p in (x, y, z))
    u = x - z
    w = y - z
    nu = _norm(u)[..., None]
    nw = _norm(w)[..., None]
    if np.any(nu == 0) or np.any(nw == 0):
        raise DegenerateInputError("angle vertex coincides with an endpoint")
    a = nw * u
    b = nu * w
    return 2.0 * np.arctan2(_norm(a - b), _norm(a + b))


def _angle_unchecked(x, z, y):
    # batch variant for optimizers; vertices that hit an endpoint score 0
    u = x - z
    w = y - z
    nu = _norm(u)[..., None]
    nw = _norm(w)[..., None]
    a = nw * u
    b = nu * w
    return 2.0 * np.arctan2(_norm(a - b), _norm(a + b))


@dataclass(frozen=True)
class UnitBall:
    n: int = 2

    def __post_init__(self):
        if self.n < 2:
            raise UsageError("dimension must be at least 2")

    def contains(self, x):
        x = as_point(x, self.n)
        return np.sum(x * x, axis=-1) < 1.0

    def boundary_distance(self, x):
        x = as_point(x, self.n)
        return 1.0 - _norm(x)

    def __str__(self):
        return f"ball:{self.n}"


@dataclass(frozen=True)
class HalfSpace:
    """Upper half-space {x : x_n > 0}."""

    n: int = 2

    def __post_init__(self):
        if self.n < 2:
            raise UsageError("dimension must be at least 2")

    def contains(self, x):
        x = as_point(x, self.n)
        return x[..., -1] > 0

    def boundary_distance(self, x):
        x = as_point(x, self.n)
        return x[..., -1]

    def __str__(self):
        return f"half:{self.n}"


@dataclass(frozen=True, eq=False)
class ConvexPolygon:
    """Strictly convex planar polygon, vertices in counterclockwise order."""

    vertices: np.ndarray
    n: int = field(default=2, init=False)

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or len(v) < 3:
            raise UsageError("polygon needs at least three 2-D vertices")
        if not np.all(np.isfinite(v)):
            raise UsageError("polygon vertices must be finite")
        e = np.roll(v, -1, axis=0) - v
        if np.any(np.hypot(e[:, 0], e[:, 1]) == 0):
            raise UsageError("polygon has repeated consecutive vertices")
        e_next = np.roll(e, -1, axis=0)
        cross = e[:, 0] * e_next[:, 1] - e[:, 1] * e_next[:, 0]
        if np.any(cross <= 0):
            raise UsageError("polygon vertices must be strictly convex and counterclockwise")
        # winding number 1: a star-shaped ccw vertex list that wraps twice is not convex
        turn = np.sum(np.arctan2(cross, np.sum(e * e_next, axis=1)))
        if not np.isclose(turn, 2 * np.pi):
            raise UsageError("polygon vertex list is self-intersecting")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)
        length = np.hypot(e[:, 0], e[:, 1])
        normal = np.stack([e[:, 1], -e[:, 0]], axis=1) / length[:, None]  # outward
        object.__setattr__(self, "_outward", normal)
        object.__setattr__(self, "_offset", np.sum(normal * v, axis=1))

    @property
    def edges(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.vertices, np.roll(self.vertices, -1, axis=0)

    def contains(self, x):
        x = as_point(x, 2)
        return np.all(x @ self._outward.T < self._offset, axis=-1)

    def line_distances(self, x):
        """Signed distances to the edge lines (positive inside), shape (..., edges)."""
        x = as_point(x, 2)
        return self._offset - x @ self._outward.T

    def boundary_distance(self, x):
        x = as_point(x, 2)
        p, q = self.edges
        d = q - p
        rel = x[..., None, :] - p
        t = np.clip(np.sum(rel * d, axis=-1) / np.sum(d * d, axis=-1), 0.0, 1.0)
        foot = p + t[..., None] * d
        return np.min(_norm(x[..., None, :] - foot), axis=-1)

    def __str__(self):
        return "poly:" + ";".join(f"{a:g},{b:g}" for a, b in self.vertices)


def boundary_distance(G, x):
    """Euclidean distance from ``x`` to the boundary of ``G``."""
    out = G.boundary_distance(x)
    return out[()] if np.ndim(out) == 0 else out


def contains(G, x):
    """Strict interior membership."""
    out = G.contains(x)
    return bool(out) if np.ndim(out) == 0 else out


# --- Moebius maps -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SphereInversion:
    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        if not self.radius > 0:
            raise UsageError("inversion radius must be positive")

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        w = z - self.center
        nn = np.sum(w * w, axis=-1, keepdims=True)
        if np.any(nn == 0):
            raise PoleError(f"sphere inversion evaluated at its center {self.center}")
        return self.center + self.radius**2 * w / nn

    def inverse(self):
        return self


@dataclass(frozen=True, eq=False)
class Reflection:
    """Reflection in the hyperplane {x : x . a = t}."""

    normal: np.ndarray
    offset: float = 0.0

    def __post_init__(self):
        a = as_point(self.normal)
        if not np.any(a != 0):
            raise UsageError("reflection normal must be non-zero")
        object.__setattr__(self, "normal", a)

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        a = self.normal
        lam = (z @ a - self.offset) / (a @ a)
        return z - 2.0 * lam[..., None] * a

    def inverse(self):
        return self


@dataclass(frozen=True, eq=False)
class TA:
    """Ball automorphism sending ``a`` to 0: reflection in P(a, 0) after
    inversion in the sphere S(a*, r) orthogonal to the unit sphere."""

    a: np.ndarray

    def __post_init__(self):
        a = as_point(self.a)
        if not np.sum(a * a) < 1:
            raise DomainError("TA needs |a| < 1")
        object.__setattr__(self, "a", a)

    def _parts(self):
        a = self.a
        aa = a @ a
        star = a / aa
        return SphereInversion(star, np.sqrt(1.0 / aa - 1.0)), Reflection(a, 0.0)

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        if not np.any(self.a):
            return z.copy()
        sigma, p = self._parts()
        try:
            return p(sigma(z))
        except PoleError:
            raise PoleError(f"T_a evaluated at its pole a* = {sigma.center}") from None

    def inverse(self):
        return TA(-self.a)


@dataclass(frozen=True)
class BallToHalf:
    """Inversion z -> -e_n + 2 (z + e_n)/|z + e_n|^2; swaps the unit ball and
    the upper half-space and is its own inverse."""

    n: int = 2

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        e = np.zeros(self.n)
        e[-1] = 1.0
        return SphereInversion(-e, np.sqrt(2.0))(z)

    def inverse(self):
        return self


@dataclass(frozen=True, eq=False)
class Composition:
    """Apply ``maps[0]`` first, then ``maps[1]``, and so on."""

    maps: tuple

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))

    def __call__(self, z):
        for m in self.maps:
            z = m(z)
        return z

    def inverse(self):
        return Composition(tuple(m.inverse() for m in reversed(self.maps)))


def apply_moebius(m, z):
    """Image of ``z`` (a point or a batch) under the Moebius map ``m``."""
    return m(np.asarray(z, dtype=float))


def ball_half_map(n=2):
    """Moebius map of the unit ball onto the upper half-space (self-inverse)."""
    if n < 2:
        raise UsageError("dimension must be at least 2")
    return BallToHalf(n)


def parse_domain(text):
    """Parse ``ball:<n>``, ``half:<n>`` or ``poly:x1,y1;x2,y2;...``."""
    kind, _, rest = text.strip().partition(":")
    try:
        if kind == "ball":
            return UnitBall(int(rest))
        if kind == "half":
            return HalfSpace(int(rest))
        if kind == "poly":
            verts = [[float(c) for c in v.split(",")] for v in rest.split(";") if v.strip()]
            return ConvexPolygon(np.array(verts))
    except ValueError as exc:
        raise UsageError(f"malformed domain {text!r}: {exc}") from None
    raise UsageError(f"unknown domain {text!r}; use ball:<n>, half:<n> or poly:x1,y1;...")
