"""Complete elliptic integrals, the Grötzsch ring modulus and the distortion function.

Every routine accepts scalars or numpy arrays.  Arguments close to 1 lose
their complementary modulus ``r' = sqrt(1 - r**2)`` to rounding, so the
private helpers carry the pair ``(r, r')`` explicitly; the public functions
take ``r`` and derive ``r'`` as ``sqrt((1 - r)(1 + r))``.
"""

import enum
import math
import warnings
from typing import NamedTuple

import numpy as np

from .errors import DomainError, EndpointClampWarning, UsageError

__all__ = [
    "EllipticPair",
    "PaperFunctionId",
    "elliptic",
    "grotzsch_mu",
    "grotzsch_mu_inv",
    "phi",
    "phi_partials",
    "paper_fn",
    "c_bv",
    "R0",
]

HALF_PI = 0.5 * math.pi
CLAMP = 1e-12
_AGM_MAX_ITERS = 40
_EPS = np.finfo(float).eps

#: sin(1) = tan(1)/sqrt(1 + tan(1)**2); the point where arcsin r = 1.
R0 = math.sin(1.0)


class EllipticPair(NamedTuple):
    k_value: np.ndarray
    e_value: np.ndarray


def _scalar_or_array(x):
    x = np.asarray(x, dtype=float)
    return x[()] if x.ndim == 0 else x


def _clamp_unit(r, *, name="r", closed_left=False):
    """Validate ``r`` against (0,1) (or [0,1)) and clamp near-endpoint values."""
    r = np.asarray(r, dtype=float)
    if not np.all(np.isfinite(r)):
        raise DomainError(f"{name} must be finite")
    lo_bad = r < 0 if closed_left else r <= 0
    if np.any(lo_bad) or np.any(r >= 1):
        bound = "[0, 1)" if closed_left else "(0, 1)"
        raise DomainError(f"{name} must lie in {bound}, got {r}")
    hi = r > 1 - CLAMP
    lo = (r < CLAMP) if not closed_left else np.zeros_like(hi)
    if np.any(hi) or np.any(lo):
        warnings.warn(
            f"{name} within {CLAMP:g} of an endpoint was clamped", EndpointClampWarning, stacklevel=3
        )
        r = np.clip(r, CLAMP if not closed_left else 0.0, 1 - CLAMP)
    return r


def _complement(r):
    return np.sqrt((1.0 - r) * (1.0 + r))


def _agm(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a, b = np.broadcast_arrays(a, b)
    a = a.copy()
    b = b.copy()
    for _ in range(_AGM_MAX_ITERS):
        if np.all(np.abs(a - b) <= 2 * _EPS * a):
            break
        a, b = 0.5 * (a + b), np.sqrt(a * b)
    return a


def _ellk(rc):
    """K as a function of the complementary modulus."""
    return HALF_PI / _agm(1.0, rc)


def _ellke(r, rc):
    """(K(r), E(r)) from the AGM with the Gauss-Legendre correction sum."""
    r = np.asarray(r, dtype=float)
    a = np.ones_like(r)
    b = np.asarray(rc, dtype=float) * np.ones_like(r)
    c = r.copy()
    total = 0.5 * c * c
    weight = 0.5
    for _ in range(_AGM_MAX_ITERS):
        if np.all(np.abs(a - b) <= 2 * _EPS * a):
            break
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), np.sqrt(a * b)
        weight *= 2.0
        total = total + weight * c * c
    k = HALF_PI / a
    return k, k * (1.0 - total)


def elliptic(r):
    """Complete elliptic integrals of the first and second kind for modulus ``r``."""
    r = _clamp_unit(r, closed_left=True)
    k, e = _ellke(r, _complement(r))
    return EllipticPair(_scalar_or_array(k), _scalar_or_array(e))


def _mu(r, rc):
    # (pi/2) K(r')/K(r) with both K's written through the AGM
    return HALF_PI * _agm(1.0, rc) / _agm(1.0, r)


def grotzsch_mu(r):
    """Modulus of the planar Grötzsch ring, ``(pi/2) K(r')/K(r)``."""
    r = _clamp_unit(r)
    return _scalar_or_array(_mu(r, _complement(r)))


def _theta_start(m):
    """Inverse of mu for m >= pi/2 from the Jacobi theta quotients with nome exp(-2m)."""
    q = np.exp(-2.0 * m)
    th2 = np.zeros_like(q)
    th3 = np.ones_like(q)
    th4 = np.ones_like(q)
    for n in range(6):
        th2 = th2 + q ** (n * (n + 1))
        if n:
            th3 = th3 + 2 * q ** (n * n)
            th4 = th4 + 2 * (-1) ** n * q ** (n * n)
    th2 = 2.0 * np.exp(-0.5 * m) * th2
    return (th2 / th3) ** 2


def _solve_mu_small(m):
    """Solve mu(t) = m for t in (0, 1/sqrt 2], m >= pi/2.

    Newton in u = log t (where mu is close to linear) safeguarded by a
    shrinking bracket; the theta-series value seeds the iteration.
    """
    lo = np.full_like(m, math.log(np.finfo(float).tiny))
    hi = np.full_like(m, math.log(math.sqrt(0.5)))
    t0 = _theta_start(m)
    u = np.log(np.clip(t0, np.finfo(float).tiny, math.sqrt(0.5)))
    for _ in range(60):
        t = np.exp(u)
        tc = _complement(t)
        f = _mu(t, tc) - m
        # mu decreases in t: f > 0 means t is too small
        lo = np.where(f > 0, u, lo)
        hi = np.where(f <= 0, u, hi)
        kt = _ellk(tc)
        dfdu = -(math.pi**2) / (4.0 * tc * tc * kt * kt)
        step = f / dfdu
        u_new = u - step
        outside = (u_new <= lo) | (u_new >= hi)
        u_new = np.where(outside, 0.5 * (lo + hi), u_new)
        done = np.abs(u_new - u) <= 4 * _EPS * np.maximum(1.0, np.abs(u))
        u = u_new
        if np.all(done):
            break
    return np.exp(u)


def _mu_inv_pair(m):
    """Return (r, r') with mu(r) = m, both to full relative precision."""
    m = np.asarray(m, dtype=float)
    if np.any(~np.isfinite(m)) or np.any(m <= 0):
        raise DomainError(f"mu^-1 needs m > 0, got {m}")
    big = m >= HALF_PI
    # mu(r) mu(r') = pi^2/4 maps the m < pi/2 branch onto the well-conditioned one
    mm = np.where(big, m, (HALF_PI**2) / m)
    t = _solve_mu_small(mm)
    tc = _complement(t)
    r = np.where(big, t, tc)
    rc = np.where(big, tc, t)
    return r, rc


def grotzsch_mu_inv(m):
    """Inverse of :func:`grotzsch_mu`; returns r in (0, 1)."""
    r, _ = _mu_inv_pair(m)
    if np.any(r >= 1) or np.any(r <= 0):
        warnings.warn("mu^-1 result rounded onto an endpoint and was clamped", EndpointClampWarning, stacklevel=2)
        r = np.clip(r, CLAMP, 1 - CLAMP)
    return _scalar_or_array(r)


def _check_k(K):
    K = np.asarray(K, dtype=float)
    if np.any(~np.isfinite(K)) or np.any(K <= 0):
        raise DomainError(f"K must be positive, got {K}")
    return K


def _phi_pair(K, r, rc):
    return _mu_inv_pair(_mu(r, rc) / K)


def phi(K, r):
    """Distortion function ``mu^-1(mu(r)/K)``."""
    K = _check_k(K)
    r = _clamp_unit(r)
    s, _ = _phi_pair(K, r, _complement(r))
    return _scalar_or_array(s)


def phi_partials(K, r):
    """Partial derivatives (d/dr, d/dK) of the distortion function."""
    K = _check_k(K)
    r = _clamp_unit(r)
    rc = _complement(r)
    s, sc = _phi_pair(K, r, rc)
    ks = _ellk(sc)
    kr = _ellk(rc)
    top = s * sc * sc * ks * ks
    ds_dr = top / (K * r * rc * rc * kr * kr)
    ds_dk = 4.0 / (math.pi**2 * K * K) * top * _mu(r, rc)
    return _scalar_or_array(ds_dr), _scalar_or_array(ds_dk)


def c_bv(K):
    """Constant 2 arth(phi_K(th 1/2)) of the hyperbolic Schwarz bound."""
    K = _check_k(K)
    r = math.tanh(0.5)
    s, sc = _phi_pair(K, np.asarray(r), _complement(np.asarray(r)))
    return _scalar_or_array(2.0 * _arth_pair(s, sc))


def _arth_pair(s, sc):
    # arth s = log((1 + s)/s'), exact even when s rounds to 1
    return np.log((1.0 + s) / sc)


class PaperFunctionId(str, enum.Enum):
    """Named scalar functions from the monotonicity lemmas.

    The variable is ``r`` for all ids except ``VS3_F`` and ``VS3_G``, which
    are functions of the dilatation ``K``.
    """

    VS1_F1 = "VS1_F1"  # r^(-1/K) s                              (0,1), K >= 1
    VS1_F2 = "VS1_F2"  # s' K(s)^2 / (r' K(r)^2)                 (0,1), K >= 1
    VS1_F3 = "VS1_F3"  # sqrt(r') K(r)                           [0,1)
    VS1_F4 = "VS1_F4"  # s / r                                   (0,1), K >= 1
    VS1_F5 = "VS1_F5"  # r / arctan(r/r')                        (0,1)
    VS1_F6 = "VS1_F6"  # 2 E(r) - r'^2 K(r)                      (0,1)
    VS2_F1 = "VS2_F1"  # arctan(s/s') / arctan(r/r')             (0,1), K >= 1
    VS2_F2 = "VS2_F2"  # arctan(s/s') / arctan(r/r')^(1/K)       (0,1), K >= 1
    VS3_F = "VS3_F"  # 4^(1-1/K) arctan(r0/r0')/arctan(s0/s0')  K >= 1
    VS3_G = "VS3_G"  # log-derivative companion g(K)            K >= 1
    BV_G = "BV_G"  # arth(s) / arth(r)^(1/K)                   (0,1), K >= 1
    LERHO1_F1 = "LERHO1_F1"  # arcsin r / log(1 + r)            (0,1)
    LERHO1_F2 = "LERHO1_F2"  # sin(4 L r) / sin r               (0, pi/(8L)], L >= 1
    LERHO1_F3 = "LERHO1_F3"  # arth(4 L r) / arth r             (0, eps/(4L)], L >= 1, 0 < eps < 1
    RHO_STAR_RATIO = "RHO_STAR_RATIO"  # 2 arctan(s/s') / max(a, a^(1/K)), a = arctan(r/r')


_NEEDS_K = {
    PaperFunctionId.VS1_F1,
    PaperFunctionId.VS1_F2,
    PaperFunctionId.VS1_F4,
    PaperFunctionId.VS2_F1,
    PaperFunctionId.VS2_F2,
    PaperFunctionId.BV_G,
    PaperFunctionId.RHO_STAR_RATIO,
}


def _require(value, label, fid):
    if value is None:
        raise UsageError(f"{fid.value} requires parameter {label}")
    return float(value)


def _open_unit(r, rc):
    """Validate r in (0,1) honouring an explicitly supplied complement."""
    r = np.asarray(r, dtype=float)
    if rc is None:
        return _clamp_unit(r), None
    rc = np.asarray(rc, dtype=float)
    # either member may round to 1 when the other is tiny
    if np.any(r <= 0) or np.any(r > 1) or np.any(rc <= 0) or np.any(rc > 1):
        raise DomainError("r and its complement must both lie in (0, 1]")
    return r, rc


def _vs3(K):
    K = np.asarray(K, dtype=float)
    if np.any(K < 1):
        raise DomainError(f"VS3 functions are defined for K >= 1, got {K}")
    r0 = np.asarray(R0)
    r0c = np.asarray(math.cos(1.0))
    s0, s0c = _phi_pair(K, r0, r0c)
    return r0, r0c, s0, s0c


def paper_fn(fid, x, *, K=None, L=None, eps=None, x_comp=None):
    """Evaluate one of the named lemma functions at ``x``.

    ``x_comp`` optionally supplies ``sqrt(1 - x**2)`` for arguments so close to
    1 that it cannot be recovered from ``x`` in floating point.
    """
    try:
        fid = PaperFunctionId(fid)
    except ValueError:
        raise UsageError(f"unknown function id {fid!r}") from None

    if fid in (PaperFunctionId.VS3_F, PaperFunctionId.VS3_G):
        r0, r0c, s0, s0c = _vs3(x)
        Kx = np.asarray(x, dtype=float)
        if fid is PaperFunctionId.VS3_F:
            out = 4.0 ** (1.0 - 1.0 / Kx) * np.arctan2(r0, r0c) / np.arctan2(s0, s0c)
        else:
            coeff = 4.0 * _mu(r0, r0c) / (math.pi**2 * math.log(4.0))
            ks0 = _ellk(s0c)
            out = coeff * s0 / np.arctan2(s0, s0c) * s0c * ks0 * ks0
        return _scalar_or_array(out)

    if fid is PaperFunctionId.LERHO1_F1:
        r, rc = _open_unit(x, x_comp)
        arc = np.arcsin(r) if rc is None else np.arctan2(r, rc)
        return _scalar_or_array(arc / np.log1p(r))
    if fid is PaperFunctionId.LERHO1_F2:
        Lv = _require(L, "L", fid)
        r = np.asarray(x, dtype=float)
        if Lv < 1 or np.any(r <= 0) or np.any(r > math.pi / (8 * Lv)):
            raise DomainError("LERHO1_F2 needs L >= 1 and 0 < r <= pi/(8L)")
        return _scalar_or_array(np.sin(4 * Lv * r) / np.sin(r))
    if fid is PaperFunctionId.LERHO1_F3:
        Lv = _require(L, "L", fid)
        ev = _require(eps, "eps", fid)
        r = np.asarray(x, dtype=float)
        if Lv < 1 or not 0 < ev < 1 or np.any(r <= 0) or np.any(r > ev / (4 * Lv)):
            raise DomainError("LERHO1_F3 needs L >= 1, 0 < eps < 1 and 0 < r <= eps/(4L)")
        return _scalar_or_array(np.arctanh(4 * Lv * r) / np.arctanh(r))

    if fid is PaperFunctionId.VS1_F3:
        if x_comp is None:
            r = _clamp_unit(x, closed_left=True)
            rc = _complement(r)
        else:
            r, rc = np.asarray(x, dtype=float), np.asarray(x_comp, dtype=float)
        return _scalar_or_array(np.sqrt(rc) * _ellk(rc))

    r, rc = _open_unit(x, x_comp)
    if rc is None:
        rc = _complement(r)
    if fid is PaperFunctionId.VS1_F5:
        return _scalar_or_array(r / np.arctan2(r, rc))
    if fid is PaperFunctionId.VS1_F6:
        k, e = _ellke(r, rc)
        return _scalar_or_array(2 * e - rc * rc * k)

    Kv = _require(K, "K", fid)
    if Kv < 1:
        raise DomainError(f"{fid.value} is defined for K >= 1, got {Kv}")
    s, sc = _phi_pair(np.asarray(Kv), r, rc)
    if fid is PaperFunctionId.VS1_F1:
        out = s / r ** (1.0 / Kv)
    elif fid is PaperFunctionId.VS1_F2:
        ks, kr = _ellk(sc), _ellk(rc)
        out = sc * ks * ks / (rc * kr * kr)
    elif fid is PaperFunctionId.VS1_F4:
        out = s / r
    elif fid is PaperFunctionId.VS2_F1:
        out = np.arctan2(s, sc) / np.arctan2(r, rc)
    elif fid is PaperFunctionId.VS2_F2:
        out = np.arctan2(s, sc) / np.arctan2(r, rc) ** (1.0 / Kv)
    elif fid is PaperFunctionId.BV_G:
        out = _arth_pair(s, sc) / _arth_pair(r, rc) ** (1.0 / Kv)
    else:  # RHO_STAR_RATIO
        a = np.arctan2(r, rc)
        out = 2.0 * np.arctan2(s, sc) / np.maximum(a, a ** (1.0 / Kv))
    return _scalar_or_array(out)
