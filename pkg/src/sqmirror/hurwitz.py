"""Implicitly defined mirror series and twisted Hurwitz numbers.

The series L deforms the product prod_k (x - alpha_k): it is the unique
solution with L(q=0) = x of

    prod_k (L - alpha_k) - q * a^a * L^{|a|} = prod_k (x - alpha_k),

and xi is its logarithmic antiderivative, x + q dxi/dq = L.  At a fixed
point x = alpha_i the right-hand side vanishes.  The weighted-curve
integrals F^(b1,b2) assemble into the closed form

    F^(b1,b2) = binom(b1+b2, b1) * xi^(b1+b2+1) / (b1+b2+1)!

with F^(0,0) = xi, and the two-descendant generating function over all
(b1, b2) equals exp(xi/h1 + xi/h2).

The fleck-moduli integrals of two-marked-point psi classes admit both a
closed multinomial form and an inductive computation via the forgetful map
dropping one fleck; both are implemented as mutual oracles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Mapping, Sequence, Union

from .errors import DomainError, FrameError, RangeError, SingularEquationError
from .frames import FixedPointFrame
from .kernel import (
    QQ,
    QX,
    SparsePoly,
    TruncatedSeries,
    series_exp,
    series_solve_implicit,
)
from .mirror import as_exponent_tuple

FrameOrDim = Union[FixedPointFrame, int]


def _formal_dim(frame_or_n: FrameOrDim) -> int | None:
    """Formal mode (all weights zero, x kept formal) when given a bare
    ambient dimension; frame mode otherwise."""
    if isinstance(frame_or_n, FixedPointFrame):
        return None
    n = int(frame_or_n)
    if n < 1:
        raise DomainError("ambient dimension must be positive")
    return n


def l_series(frame_or_n: FrameOrDim, a, d_max: int) -> TruncatedSeries:
    """The deformation series L, solved degree by degree.

    Frame mode: coefficients in Q, L(q=0) = alpha_i, right-hand side 0.
    Formal mode: coefficients in Q[x], L(q=0) = x, right-hand side x^n.
    """
    a = as_exponent_tuple(a)
    power = a.self_power
    total = a.abs_sum
    n_formal = _formal_dim(frame_or_n)
    if n_formal is None:
        frame = frame_or_n
        alpha = frame.alpha
        xi_val = alpha[frame.i]
        ring = QQ
        rhs = TruncatedSeries.zero(ring, ("q",), (d_max,))
        q_series = TruncatedSeries.from_rationals(ring, ("q",), (d_max,), {(1,): 1})
        initial = TruncatedSeries.constant(ring, ("q",), (d_max,), Fraction(xi_val))

        def residual(cur: TruncatedSeries) -> TruncatedSeries:
            prod = TruncatedSeries.one(ring, ("q",), (d_max,))
            for ak in alpha:
                prod = prod * (cur - TruncatedSeries.constant(ring, ("q",), (d_max,), ak))
            return prod - q_series * (cur ** total).scale(power) - rhs

        try:
            return series_solve_implicit(residual, initial, d_max)
        except SingularEquationError as exc:
            raise FrameError(f"degenerate frame for the deformation series: {exc}") from exc
    else:
        n = n_formal
        ring = QX
        x = SparsePoly.variable(1, 0)
        rhs = TruncatedSeries.constant(ring, ("q",), (d_max,), x ** n)
        q_series = TruncatedSeries.from_rationals(ring, ("q",), (d_max,), {(1,): 1})
        initial = TruncatedSeries.constant(ring, ("q",), (d_max,), x)

        def residual(cur: TruncatedSeries) -> TruncatedSeries:
            return (cur ** n) - q_series * (cur ** total).scale(power) - rhs

    return series_solve_implicit(residual, initial, d_max)


def xi_series(frame_or_n: FrameOrDim, a, d_max: int) -> TruncatedSeries:
    """xi with xi(q=0) = 0 and x + q dxi/dq = L, i.e. xi_d = L_d / d."""
    big_l = l_series(frame_or_n, a, d_max)
    coeffs = {}
    for d in range(1, d_max + 1):
        c = big_l.coefficient(d)
        scaled = c * Fraction(1, d) if isinstance(c, Fraction) else c.scale(Fraction(1, d))
        coeffs[(d,)] = scaled
    return TruncatedSeries(big_l.ring, ("q",), (d_max,), coeffs)


@dataclass(frozen=True)
class LXiPair:
    """L and xi for one frame (or the formal mode), with the mode tag."""

    mode: str  # "frame" | "formal"
    L: TruncatedSeries
    xi: TruncatedSeries


def l_xi_pair(frame_or_n: FrameOrDim, a, d_max: int) -> LXiPair:
    mode = "formal" if _formal_dim(frame_or_n) is not None else "frame"
    return LXiPair(mode, l_series(frame_or_n, a, d_max), xi_series(frame_or_n, a, d_max))


# ---------------------------------------------------------------------------
# Twisted Hurwitz numbers
# ---------------------------------------------------------------------------


def hurwitz_f(frame: FixedPointFrame, a, b1: int, b2: int, d_max: int) -> TruncatedSeries:
    """F^(b1,b2) at the frame's fixed point, via the closed form in xi."""
    if b1 < 0 or b2 < 0:
        raise RangeError("descendant exponents must be nonnegative")
    xi = xi_series(frame, a, d_max)
    b = b1 + b2
    return (xi ** (b + 1)).scale(Fraction(comb(b, b1), factorial(b + 1)))


@dataclass(frozen=True)
class HurwitzTable:
    """F^(b1,b2) series for all requested descendant exponents at one frame."""

    frame: FixedPointFrame
    a: tuple[int, ...]
    d_max: int
    series: Mapping[tuple[int, int], TruncatedSeries]

    def __getitem__(self, key: tuple[int, int]) -> TruncatedSeries:
        return self.series[key]

    def to_json(self) -> dict:
        return {
            "frame": self.frame.to_json(),
            "i": self.frame.i,
            "a": list(self.a),
            "d_max": self.d_max,
            "rows": {
                f"{b1},{b2}": {
                    str(d): f"{c.numerator}/{c.denominator}"
                    for (d,), c in sorted(s.coeffs.items())
                }
                for (b1, b2), s in sorted(self.series.items())
            },
        }


def hurwitz_table(frame: FixedPointFrame, a, b_max: int, d_max: int) -> HurwitzTable:
    a = as_exponent_tuple(a)
    xi = xi_series(frame, a, d_max)
    series = {}
    powers = {1: xi}
    for b in range(1, 2 * b_max + 1):
        powers[b + 1] = powers[b] * xi
    for b1 in range(b_max + 1):
        for b2 in range(b_max + 1):
            b = b1 + b2
            series[(b1, b2)] = powers[b + 1].scale(
                Fraction(comb(b, b1), factorial(b + 1))
            )
    return HurwitzTable(frame, a.entries, d_max, series)


def hurwitz_identity_sides(
    frame: FixedPointFrame,
    a,
    d_max: int,
    h_orders: tuple[int, int] = (3, 3),
) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Both sides of the two-descendant generating identity, as series in
    (1/h1, 1/h2, q) over Q, for comparison by the caller.

    The left side is 1 + (h1 + h2) * sum_{b1,b2} h1^-(b1+1) h2^-(b2+1)
    F^(b1,b2); the right side is exp(xi/h1 + xi/h2).
    """
    a = as_exponent_tuple(a)
    h1, h2 = h_orders
    vars3 = ("h1inv", "h2inv", "q")
    orders = (h1, h2, d_max)
    table = hurwitz_table(frame, a, max(h1, h2), d_max)
    lhs_coeffs: dict[tuple[int, int, int], Fraction] = {(0, 0, 0): Fraction(1)}
    for b1 in range(h1 + 1):
        for b2 in range(h2 + 1):
            for (d,), c in table[b1, b2].coeffs.items():
                for u, v in ((b1, b2 + 1), (b1 + 1, b2)):
                    if u <= h1 and v <= h2:
                        key = (u, v, d)
                        lhs_coeffs[key] = lhs_coeffs.get(key, Fraction(0)) + c
    lhs = TruncatedSeries(QQ, vars3, orders, lhs_coeffs)

    xi = xi_series(frame, a, d_max)
    arg_coeffs: dict[tuple[int, int, int], Fraction] = {}
    for (d,), c in xi.coeffs.items():
        arg_coeffs[(1, 0, d)] = c
        arg_coeffs[(0, 1, d)] = c
    rhs = series_exp(TruncatedSeries(QQ, vars3, orders, arg_coeffs))
    return lhs, rhs


# ---------------------------------------------------------------------------
# Fleck-moduli psi integrals
# ---------------------------------------------------------------------------


def m02d_psi_integral(d: int, a1: int, a2: int, b_list: Sequence[int] = ()) -> Fraction:
    """Closed form: the multinomial (d-1)! / (a1! a2!) when every fleck
    exponent vanishes and a1 + a2 = d - 1; zero otherwise."""
    if d < 1:
        raise RangeError("d must be >= 1")
    if a1 < 0 or a2 < 0 or any(b < 0 for b in b_list):
        raise RangeError("exponents must be nonnegative")
    if any(b > 0 for b in b_list) or a1 + a2 != d - 1:
        return Fraction(0)
    return Fraction(factorial(d - 1), factorial(a1) * factorial(a2))


def m02d_psi_integral_recursive(
    d: int, a1: int, a2: int, b_list: Sequence[int] = ()
) -> Fraction:
    """Independent oracle: induction along the forgetful map that drops one
    fleck carrying exponent zero, splitting the integral by which marked
    point the dropped fleck bubbles off with."""
    if d < 1:
        raise RangeError("d must be >= 1")
    if a1 < 0 or a2 < 0 or any(b < 0 for b in b_list):
        raise RangeError("exponents must be nonnegative")
    b = list(b_list) + [0] * (d - len(b_list))
    if len(b) != d:
        raise RangeError(f"at most {d} fleck exponents allowed")
    if a1 + a2 + sum(b) != d - 1:
        return Fraction(0)
    if d == 1:
        return Fraction(1) if (a1, a2) == (0, 0) else Fraction(0)
    # sum(b) <= d - 1 < d forces a zero entry; flecks are interchangeable.
    drop = b.index(0)
    rest = b[:drop] + b[drop + 1 :]
    total = Fraction(0)
    if a1 > 0:
        total += m02d_psi_integral_recursive(d - 1, a1 - 1, a2, rest)
    if a2 > 0:
        total += m02d_psi_integral_recursive(d - 1, a1, a2 - 1, rest)
    return total


@dataclass(frozen=True)
class IdentityReport:
    passed: bool
    witness: str | None

    def to_json(self) -> dict:
        return {"pass": self.passed, "witness": self.witness}


def l0_identity_check(d_max: int = 6, h_orders: tuple[int, int] = (6, 6)) -> IdentityReport:
    """Assemble the tuple-free two-descendant series from the psi integrals
    and compare against exp(q/h1 + q/h2).

    The assembled summand is (h1^-a1 h2^-(a2+1) + h1^-(a1+1) h2^-a2)
    * q^(a1+a2+1)/(a1+a2+1)! * integral(d=a1+a2+1; a1, a2); any mismatch is
    reported with its first differing coefficient rather than corrected.
    """
    h1, h2 = h_orders
    vars3 = ("h1inv", "h2inv", "q")
    orders = (h1, h2, d_max)
    coeffs: dict[tuple[int, int, int], Fraction] = {(0, 0, 0): Fraction(1)}
    for a1 in range(0, d_max + 1):
        for a2 in range(0, d_max - a1):
            d = a1 + a2 + 1
            if d > d_max:
                continue
            val = m02d_psi_integral(d, a1, a2) / factorial(d)
            if val == 0:
                continue
            for u, v in ((a1, a2 + 1), (a1 + 1, a2)):
                if u <= h1 and v <= h2:
                    key = (u, v, d)
                    coeffs[key] = coeffs.get(key, Fraction(0)) + val
    assembled = TruncatedSeries(QQ, vars3, orders, coeffs)
    q_over_h = TruncatedSeries(
        QQ, vars3, orders, {(1, 0, 1): Fraction(1), (0, 1, 1): Fraction(1)}
    )
    expected = series_exp(q_over_h)
    if assembled == expected:
        return IdentityReport(True, None)
    diff = assembled - expected
    key = min(diff.coeffs, key=lambda e: (sum(e), e))
    return IdentityReport(
        False,
        f"first mismatch at (h1inv, h2inv, q) = {key}: "
        f"assembled {assembled.coefficient(key)} != expected {expected.coefficient(key)}",
    )
