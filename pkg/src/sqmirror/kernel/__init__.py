"""Exact arithmetic substrate: rationals, polynomials, rational functions in
h with Laurent windows and residues, and truncated power series with
reversion, exponentials and implicit solving."""

from .poly import Poly, Rat, SparsePoly
from .ratfun import HRational, LaurentWindow, laurent_expand, residue_at_zero
from .series import (
    QH,
    QQ,
    QX,
    FormalPolyRing,
    HRationalRing,
    RationalRing,
    TruncatedSeries,
    XLaurentRing,
    lift_rational_series,
    series_compose,
    series_exp,
    series_invert,
    series_log,
    series_mul,
    series_reversion,
    series_solve_implicit,
    substitute_q_scaled,
)
from .xlaurent import XLaurent

__all__ = [
    "Poly",
    "Rat",
    "SparsePoly",
    "HRational",
    "LaurentWindow",
    "laurent_expand",
    "residue_at_zero",
    "XLaurent",
    "TruncatedSeries",
    "RationalRing",
    "HRationalRing",
    "XLaurentRing",
    "FormalPolyRing",
    "QQ",
    "QH",
    "QX",
    "series_mul",
    "series_invert",
    "series_exp",
    "series_log",
    "series_compose",
    "series_reversion",
    "series_solve_implicit",
    "substitute_q_scaled",
    "lift_rational_series",
]
