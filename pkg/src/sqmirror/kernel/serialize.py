"""Canonical JSON forms for every kernel type.

Rationals render as "num/den" strings; exponent vectors become
comma-joined keys; term maps are emitted in graded-lexicographic order so
that serialization is deterministic byte-for-byte.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .poly import Poly, SparsePoly
from .ratfun import HRational, LaurentWindow
from .series import TruncatedSeries
from .xlaurent import XLaurent


def rational_to_json(c: Fraction | int) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def rational_from_json(s: str) -> Fraction:
    return Fraction(s)


def poly_to_json(p: Poly) -> list[str]:
    return [rational_to_json(c) for c in p.coeffs]


def sparse_poly_to_json(p: SparsePoly) -> dict[str, Any]:
    return {
        "arity": p.arity,
        "terms": {
            ",".join(map(str, exps)): rational_to_json(c) for exps, c in p.sorted_terms()
        },
    }


def hrational_to_json(f: HRational) -> dict[str, Any]:
    return {"num": poly_to_json(f.num), "den": poly_to_json(f.den)}


def laurent_window_to_json(w: LaurentWindow) -> dict[str, Any]:
    return {"low": w.low, "coeffs": [rational_to_json(c) for c in w.coefficients]}


def xlaurent_to_json(v: XLaurent) -> dict[str, Any]:
    return {
        "x_truncation": v.xdim,
        "terms": {
            f"{xp},{hp}": rational_to_json(c)
            for (xp, hp), c in sorted(v.terms.items())
        },
    }


def coefficient_to_json(c) -> Any:
    if isinstance(c, (int, Fraction)):
        return rational_to_json(c)
    if isinstance(c, HRational):
        return hrational_to_json(c)
    if isinstance(c, XLaurent):
        return xlaurent_to_json(c)
    if isinstance(c, SparsePoly):
        return sparse_poly_to_json(c)
    if isinstance(c, LaurentWindow):
        return laurent_window_to_json(c)
    if isinstance(c, Poly):
        return poly_to_json(c)
    raise TypeError(f"no canonical JSON form for {type(c).__name__}")


def series_to_json(s: TruncatedSeries) -> dict[str, Any]:
    keys = sorted(s.coeffs, key=lambda e: (sum(e), e))
    return {
        "vars": list(s.vars),
        "orders": list(s.orders),
        "coeffs": {",".join(map(str, e)): coefficient_to_json(s.coeffs[e]) for e in keys},
    }
