"""Rational functions in the descendant variable h, and their Laurent data.

``HRational`` keeps exact pole information as a reduced numerator/denominator
pair; it is only windowed into a ``LaurentWindow`` on demand, because the
residue operations need the poles exactly and expansion destroys them.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import DomainError, NotInvertibleError, PoleError
from .poly import Poly, Rat


class HRational:
    """Reduced ratio of univariate polynomials in h over exact rationals.

    Invariants: gcd(num, den) = 1 and den is monic.  Equality of reduced
    forms coincides with cross-multiplication equality.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            num, den = Poly.zero(), Poly.one()
        else:
            g = Poly.gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
            lead = den.leading
            if lead != 1:
                num = num.scale(1 / lead)
                den = den.scale(1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("HRational is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> HRational:
        return HRational(Poly.zero(), Poly.one())

    @staticmethod
    def one() -> HRational:
        return HRational(Poly.one(), Poly.one())

    @staticmethod
    def from_rational(c: int | Rat) -> HRational:
        return HRational(Poly.const(c), Poly.one())

    @staticmethod
    def from_poly(p: Poly) -> HRational:
        return HRational(p, Poly.one())

    @staticmethod
    def h_power(k: int) -> HRational:
        """h**k for any integer k."""
        if k >= 0:
            return HRational(Poly.one().shift_up(k), Poly.one())
        return HRational(Poly.one(), Poly.one().shift_up(-k))

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Rat)):
            other = HRational.from_rational(other)
        if not isinstance(other, HRational):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"HRational({self.num!r}, {self.den!r})"

    @property
    def denominator_is_one(self) -> bool:
        return self.den == Poly.one()

    @property
    def denominator_is_h_monomial(self) -> bool:
        """True when the reduced denominator is c * h**k (a Laurent polynomial)."""
        return all(c == 0 for c in self.den.coeffs[:-1])

    @property
    def regular_at_zero(self) -> bool:
        return self.is_zero or self.den(0) != 0

    @property
    def valuation(self) -> int:
        """Order of vanishing at h = 0 (negative for a pole)."""
        if self.is_zero:
            raise DomainError("zero has no valuation")
        return self.num.valuation - self.den.valuation

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: HRational | int | Rat) -> HRational:
        if isinstance(other, (int, Rat)):
            other = HRational.from_rational(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        g = Poly.gcd(self.den, other.den)
        if g.degree == 0:
            num = self.num * other.den + other.num * self.den
            den = self.den * other.den
        else:
            d2r = other.den.exact_div(g)
            num = self.num * d2r + other.num * self.den.exact_div(g)
            den = self.den * d2r
        return HRational(num, den)

    __radd__ = __add__

    def __neg__(self) -> HRational:
        return HRational(-self.num, self.den) if not self.is_zero else self

    def __sub__(self, other: HRational | int | Rat) -> HRational:
        if isinstance(other, (int, Rat)):
            other = HRational.from_rational(other)
        return self + (-other)

    def __mul__(self, other: HRational | int | Rat) -> HRational:
        if isinstance(other, (int, Rat)):
            return self.scale(other)
        if self.is_zero or other.is_zero:
            return HRational.zero()
        # Cross-reduce first so the final normalization gcd is trivial.
        g1 = Poly.gcd(self.num, other.den)
        g2 = Poly.gcd(other.num, self.den)
        n1 = self.num if g1.degree == 0 else self.num.exact_div(g1)
        d2 = other.den if g1.degree == 0 else other.den.exact_div(g1)
        n2 = other.num if g2.degree == 0 else other.num.exact_div(g2)
        d1 = self.den if g2.degree == 0 else self.den.exact_div(g2)
        return HRational(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def scale(self, c: int | Rat) -> HRational:
        if c == 0 or self.is_zero:
            return HRational.zero()
        return HRational(self.num.scale(c), self.den)

    def __pow__(self, n: int) -> HRational:
        if n < 0:
            return self.invert() ** (-n)
        result = HRational.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def invert(self) -> HRational:
        if self.is_zero:
            raise NotInvertibleError("cannot invert zero")
        return HRational(self.den, self.num)

    def substitute_negated(self) -> HRational:
        """h -> -h."""
        return HRational(self.num.substitute_negated(), self.den.substitute_negated())

    def shift_h(self, k: int) -> HRational:
        """Multiply by h**k (k of either sign)."""
        if k >= 0:
            return HRational(self.num.shift_up(k), self.den)
        return HRational(self.num, self.den.shift_up(-k))

    def __call__(self, value: int | Rat) -> Rat:
        d = self.den(value)
        if d == 0:
            raise PoleError(f"evaluation at a pole: h = {value}")
        return self.num(value) / d

    @staticmethod
    def sum(values: Iterable[HRational]) -> HRational:
        """Sum over a common denominator with a single final reduction;
        much cheaper than a pairwise fold when massive cancellation occurs."""
        values = [v for v in values if not v.is_zero]
        if not values:
            return HRational.zero()
        den = Poly.one()
        for v in values:
            g = Poly.gcd(den, v.den)
            den = den * (v.den if g.degree == 0 else v.den.exact_div(g))
        num = Poly.zero()
        for v in values:
            num = num + v.num * den.exact_div(v.den)
        return HRational(num, den)

    # -- Laurent data ------------------------------------------------------

    def laurent(self, low: int, high: int) -> "LaurentWindow":
        return laurent_expand(self, low, high)

    def residue_at_zero(self) -> Rat:
        return residue_at_zero(self)

    def laurent_coefficient(self, k: int) -> Rat:
        """Coefficient of h**k in the expansion at h = 0."""
        return laurent_expand(self, k, k).coefficients[0]


class LaurentWindow:
    """Coefficients of a Laurent expansion at h = 0 over a stated window.

    ``coefficients[j]`` is the coefficient of ``h**(low + j)``.  Windows
    obtained from the same function over wider ranges extend, never
    contradict, narrower ones.
    """

    __slots__ = ("low", "coefficients")

    def __init__(self, low: int, coefficients: Sequence[int | Rat]):
        object.__setattr__(self, "low", int(low))
        object.__setattr__(
            self, "coefficients", tuple(Fraction(c) for c in coefficients)
        )

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("LaurentWindow is immutable")

    @property
    def high(self) -> int:
        return self.low + len(self.coefficients) - 1

    def coefficient(self, k: int) -> Rat:
        if not self.low <= k <= self.high:
            raise DomainError(f"exponent {k} outside window [{self.low}, {self.high}]")
        return self.coefficients[k - self.low]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentWindow)
            and self.low == other.low
            and self.coefficients == other.coefficients
        )

    def __hash__(self) -> int:
        return hash((self.low, self.coefficients))

    def __repr__(self) -> str:
        return f"LaurentWindow({self.low}, {list(self.coefficients)!r})"

    def __add__(self, other: LaurentWindow) -> LaurentWindow:
        """Sum on the overlap of the two windows."""
        low = max(self.low, other.low)
        high = min(self.high, other.high)
        if high < low:
            raise DomainError("windows do not overlap")
        return LaurentWindow(
            low,
            [self.coefficient(k) + other.coefficient(k) for k in range(low, high + 1)],
        )

    def __mul__(self, other: LaurentWindow) -> LaurentWindow:
        """Product window; valid when each factor's window starts at or below
        the valuation of the function it expands."""
        low = self.low + other.low
        high = min(self.high + other.low, other.high + self.low)
        if high < low:
            raise DomainError("windows do not overlap")
        out = [Fraction(0)] * (high - low + 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                k = self.low + i + other.low + j
                if low <= k <= high and b != 0:
                    out[k - low] += a * b
        return LaurentWindow(low, out)


def laurent_expand(f: HRational, low: int, high: int) -> LaurentWindow:
    """Window [low, high] of the Laurent expansion of ``f`` at h = 0."""
    if high < low:
        raise DomainError("empty window")
    if f.is_zero:
        return LaurentWindow(low, [0] * (high - low + 1))
    vn = f.num.valuation
    vd = f.den.valuation
    val = vn - vd
    n0 = f.num.shift_down(vn)
    d0 = f.den.shift_down(vd)
    need = high - val
    if need < 0:
        return LaurentWindow(low, [0] * (high - low + 1))
    # Power-series inverse of d0 (unit constant term) to order `need`.
    inv0 = 1 / d0.coefficient(0)
    inv = [inv0]
    for m in range(1, need + 1):
        acc = Fraction(0)
        for k in range(1, min(m, d0.degree) + 1):
            acc += d0.coefficient(k) * inv[m - k]
        inv.append(-acc * inv0)
    series = []
    for m in range(need + 1):
        acc = Fraction(0)
        for k in range(0, min(m, n0.degree) + 1):
            acc += n0.coefficient(k) * inv[m - k]
        series.append(acc)
    out = []
    for e in range(low, high + 1):
        idx = e - val
        out.append(series[idx] if 0 <= idx <= need else Fraction(0))
    return LaurentWindow(low, out)


def residue_at_zero(f: HRational) -> Rat:
    """Coefficient of h**(-1) at h = 0."""
    return laurent_expand(f, -1, -1).coefficients[0]
