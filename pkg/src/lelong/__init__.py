"""Lelong numbers of divisor currents on P^n, entire pluricomplex Green
functions for small planar and spatial point sets, and exact checkers for
the line and conic classification of upper level sets."""

from .currents import (
    Current,
    DecompositionError,
    LelongInterval,
    LevelSet,
    decompose,
    lelong_at,
    line_current,
    mass,
    upper_level_set,
)
from .field import GaussianRational, format_rational, precision, set_precision, sqrt_qi
from .geometry import (
    AffineMap,
    CommonComponentError,
    GeometryError,
    Line,
    PlaneCurve,
    PointConfig,
    ProjPoint,
    ProjectiveTransform,
    affine_normalize,
    choose_chart,
    intersect,
    line_through,
    m_invariant,
    proj_point,
)
from .green import (
    BezoutCertificate,
    ConstructionError,
    GreenFunction,
    bezout_certificate,
    certify_zero_locus,
    check_prop21,
    construct_lemma22,
    construct_pencil,
    construct_prop23,
    construct_prop24,
    estimate_gamma,
)
from .poly import MultiPoly, interpolation_nullspace, is_coprime, order_at, resultant
from .theorems import (
    Classification,
    PreconditionError,
    TheoremCheck,
    check_prop310,
    check_thm11,
    check_thm12,
    check_thm38,
    classify,
    verify_certificates,
)

__version__ = "0.1.0"
