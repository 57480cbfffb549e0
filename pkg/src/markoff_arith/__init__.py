"""Integral points on Markoff-type cubic surfaces.

Exact arithmetic throughout: ``fractions.Fraction`` for rationals, ``QuadElt``
and ``QuadInt`` for quadratic fields, ``Poly``/``RatFunc`` over them.
"""
from .errors import BoundExceededError, PreconditionError
from .exactnum import (
    INFINITY,
    AtPoint,
    PAdic,
    Poly,
    QuadElt,
    QuadInt,
    RatFunc,
    padic_valuation,
    place_valuation,
    quad_ring_membership,
    solve_lambda,
)
from .surface import (
    MarkoffSurface,
    SurfacePoint,
    descend,
    enumerate_minimal,
    evaluate,
    from_sphere,
    from_torus,
    orbit_equal,
    raw,
    symmetries,
    vieta_move,
)
from .fibers import (
    classify_fiber,
    fiber_conic,
    fiber_generator_apply,
    fiber_integral_points,
    fiber_parametrization,
    is_reducible_triple,
    parametrize_parabolic_fiber,
    points_over_Od,
)
from .slopes_trees import (
    Slope,
    constant_trace_slope,
    systole_search,
    trace_of_slope,
    trace_polynomial,
    translation_length,
)
from .curves import (
    classify_curve,
    corollary5_solve,
    implicit_curve,
    infinity_witnesses,
    parametrized_curve,
    solve_curve_integral,
    solve_nonintegrable,
)
from .torus_lattice import (
    LatticePointProblem,
    classify_dichotomy,
    exponential_solutions,
    is_subtorus_translate,
    multiplicative_dependence,
)

__version__ = "0.1.0"

__all__ = [
    "BoundExceededError",
    "PreconditionError",
    "INFINITY",
    "AtPoint",
    "PAdic",
    "Poly",
    "QuadElt",
    "QuadInt",
    "RatFunc",
    "padic_valuation",
    "place_valuation",
    "quad_ring_membership",
    "solve_lambda",
    "MarkoffSurface",
    "SurfacePoint",
    "descend",
    "enumerate_minimal",
    "evaluate",
    "from_sphere",
    "from_torus",
    "orbit_equal",
    "raw",
    "symmetries",
    "vieta_move",
    "classify_fiber",
    "fiber_conic",
    "fiber_generator_apply",
    "fiber_integral_points",
    "fiber_parametrization",
    "is_reducible_triple",
    "parametrize_parabolic_fiber",
    "points_over_Od",
    "Slope",
    "constant_trace_slope",
    "systole_search",
    "trace_of_slope",
    "trace_polynomial",
    "translation_length",
    "classify_curve",
    "corollary5_solve",
    "implicit_curve",
    "infinity_witnesses",
    "parametrized_curve",
    "solve_curve_integral",
    "solve_nonintegrable",
    "LatticePointProblem",
    "classify_dichotomy",
    "exponential_solutions",
    "is_subtorus_translate",
    "multiplicative_dependence",
]
