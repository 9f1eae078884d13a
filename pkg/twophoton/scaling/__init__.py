"""Finite-size scaling: eta, universal functions, collapse and exponents."""

from .collapse import (
    CollapseCurve,
    CollapseResult,
    build_collapse,
    build_collapse_async,
    build_collapse_set_async,
    collapse_spread,
    coupling_ceiling,
    couplings_for_etas,
    make_curve,
    points_from_rows,
)
from .exponents import ExponentFit, PowerLawFit, fit_exponent, fit_power_law, measure_at_critical, raw_singular
from .finite_size import (
    FiniteSizePrediction,
    Quantity,
    RegularPart,
    analytic_finite_size,
    regular_part,
    singular_part,
)
from .universal import QuarticWellSpec, ScalingPoint, solve_quartic_well, universal_functions
from .variable import SCALING_ALPHA, g_for_eta, scaling_variable

__all__ = [
    "SCALING_ALPHA",
    "scaling_variable",
    "g_for_eta",
    "QuarticWellSpec",
    "ScalingPoint",
    "solve_quartic_well",
    "universal_functions",
    "Quantity",
    "RegularPart",
    "FiniteSizePrediction",
    "analytic_finite_size",
    "regular_part",
    "singular_part",
    "CollapseCurve",
    "CollapseResult",
    "make_curve",
    "collapse_spread",
    "coupling_ceiling",
    "couplings_for_etas",
    "build_collapse",
    "build_collapse_async",
    "build_collapse_set_async",
    "points_from_rows",
    "PowerLawFit",
    "ExponentFit",
    "fit_power_law",
    "fit_exponent",
    "raw_singular",
    "measure_at_critical",
]
