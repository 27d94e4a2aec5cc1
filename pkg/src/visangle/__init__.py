"""Visual angle metric, hyperbolic-type metrics and quasiconformal distortion functions."""

from .errors import (
    ConvergenceError,
    DegenerateInputError,
    DomainError,
    EndpointClampWarning,
    MonotonicityError,
    PoleError,
    RangeError,
    UsageError,
)
from .geom import (
    TA,
    BallToHalf,
    Composition,
    ConvexPolygon,
    HalfSpace,
    Reflection,
    SphereInversion,
    UnitBall,
    angle,
    apply_moebius,
    ball_half_map,
    boundary_distance,
    contains,
    parse_domain,
)
from .lab import BallSample, Identity, Moebius, Radial, dilatation_estimate, metric_ball_boundary, radial_ratio
from .metrics import (
    VK_CONSTANT,
    MetricResult,
    QhSolverParams,
    jmetric,
    qh_distance,
    rho,
    rho_star,
    vam,
    vam_bounds,
    vam_values,
)
from .specfun import (
    R0,
    EllipticPair,
    PaperFunctionId,
    c_bv,
    elliptic,
    grotzsch_mu,
    grotzsch_mu_inv,
    paper_fn,
    phi,
    phi_partials,
)
from .verify import Check, SuiteId, VerificationReport, VerifyConfig, run_suite

__version__ = "0.1.0"
