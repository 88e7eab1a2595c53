"""Numerical time-scale calculus and Hermite–Hadamard chain verification."""

from .calculus import (
    RealFunction1D,
    check_alpha,
    delta_derivative,
    delta_integral,
    diamond_alpha_derivative,
    diamond_alpha_integral,
    nabla_derivative,
    nabla_integral,
    t_alpha,
)
from .convexity import ConvexityVerdict, check_convex_1d, check_convex_coordinates
from .errors import *  # noqa: F401,F403
from .expr import evaluate, free_variables, parse
from .inequalities import (
    ChainReport,
    alpha_sweep,
    s_alpha,
    verify_dinu_1d,
    verify_dragomir_r,
    verify_mr1,
    verify_mr2,
    verify_mr3,
    verify_paper_example,
)
from .quadrature import QuadratureConfig
from .rectangle import DarbouxResult, RealFunction2D, RectangleDomain, darboux_bounds, double_integral
from .report import emit_report
from .timescale import (
    Interval,
    Point,
    PointClass,
    TimeScaleSet,
    build_timescale,
    h_grid,
    integers,
    interval,
    points,
    q_scale,
    union,
)

__version__ = "0.1.0"
