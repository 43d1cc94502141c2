"""Non-equivariant mirror series and twisted invariants of projective space.

The hypergeometric series Y attached to a pair (n, a) of an ambient
dimension and a tuple of nonzero twisting integers has q-degree-d
coefficient

    prod_{a_k > 0} prod_{r=1}^{a_k d} (a_k x + r h)
    * prod_{a_k < 0} prod_{r=0}^{-a_k d - 1} (a_k x - r h)
    / prod_{r=1}^{d} (x + r h)^n,

expanded in the ring Q[x]/(x^n) with Laurent exponents in h.  Each factor
1/(x + r h)^n is the finite sum (r h)^{-n} sum_{m<n} binom(-n, m) (x/(r h))^m
because x is nilpotent, which avoids general two-variable series division.

Dividing Y by its scalar normalization I yields the one-point generating
series Z of the quotient-space theory; its Gromov-Witten counterpart is
obtained from Z by an exponential factor and, in the Calabi-Yau case
|a| = n, the change of variables Q = q * exp(J(q)).

Invariant extraction convention (fixed once, used everywhere): pushing the
class psi^p forward along the evaluation map and pairing against x^(n-2-p)
picks out x^(p+1) since the integral of x^(n-1) over projective space is 1,
so a descendant-p invariant at degree d is <a> times the coefficient of
h^-(p+1) x^(p+1) q^d in the relevant series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import InvalidTupleError, RangeError, TheoremDomainError
from .kernel import (
    QQ,
    TruncatedSeries,
    XLaurent,
    XLaurentRing,
    lift_rational_series,
    series_compose,
    series_exp,
    series_invert,
    series_mul,
    series_reversion,
)


@dataclass(frozen=True)
class ExponentTuple:
    """Tuple of nonzero twisting integers with its derived statistics."""

    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        if any(e == 0 for e in entries):
            raise InvalidTupleError(f"zero entry in exponent tuple {entries}")
        object.__setattr__(self, "entries", entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def abs_sum(self) -> int:
        """|a| = sum of absolute values."""
        return sum(abs(e) for e in self.entries)

    @property
    def ratio(self) -> Fraction:
        """<a> = product of positive entries over product of negative entries."""
        num, den = 1, 1
        for e in self.entries:
            if e > 0:
                num *= e
            else:
                den *= e
        return Fraction(num, den)

    @property
    def factorial(self) -> int:
        """a! = product of factorials of the positive entries."""
        out = 1
        for e in self.entries:
            if e > 0:
                out *= factorial(e)
        return out

    @property
    def self_power(self) -> int:
        """a^a = product over all entries of a_k ** |a_k|."""
        out = 1
        for e in self.entries:
            out *= e ** abs(e)
        return out

    @property
    def plus_count(self) -> int:
        return sum(1 for e in self.entries if e > 0)

    @property
    def minus_count(self) -> int:
        return sum(1 for e in self.entries if e < 0)

    @property
    def net_count(self) -> int:
        return self.plus_count - self.minus_count


def as_exponent_tuple(a) -> ExponentTuple:
    if isinstance(a, ExponentTuple):
        return a
    return ExponentTuple(tuple(a))


@dataclass(frozen=True)
class TupleStats:
    length: int
    abs_sum: int
    ratio: Fraction
    factorial: int
    self_power: int
    plus_count: int
    minus_count: int
    net_count: int


def tuple_stats(a) -> TupleStats:
    """All derived statistics of an exponent tuple in one record."""
    a = as_exponent_tuple(a)
    return TupleStats(
        length=len(a),
        abs_sum=a.abs_sum,
        ratio=a.ratio,
        factorial=a.factorial,
        self_power=a.self_power,
        plus_count=a.plus_count,
        minus_count=a.minus_count,
        net_count=a.net_count,
    )


@dataclass(frozen=True)
class InvariantRecord:
    """One twisted one-point invariant, exact."""

    n: int
    a: tuple[int, ...]
    d: int
    p: int
    value: Fraction
    flavor: str  # "SQ" | "GW"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "a": list(self.a),
            "flavor": self.flavor,
            "d": self.d,
            "p": self.p,
            "value": f"{self.value.numerator}/{self.value.denominator}",
        }


# ---------------------------------------------------------------------------
# Hypergeometric series
# ---------------------------------------------------------------------------

#: Series in q whose coefficients are polynomials in the hyperplane class x
#: truncated mod x^n, themselves carrying Laurent exponents in h down to a
#: stated floor; the shape returned by y_series, z_series and zgw_series.
XClassSeries = TruncatedSeries


def _numerator_factors(a: ExponentTuple, d: int, ring: XLaurentRing) -> XLaurent:
    out = ring.one()
    for ak in a:
        if ak > 0:
            for r in range(1, ak * d + 1):
                out = out * XLaurent(ring.xdim, ring.hfloor, {(1, 0): ak, (0, 1): r})
        else:
            for r in range(0, -ak * d):
                out = out * XLaurent(ring.xdim, ring.hfloor, {(1, 0): ak, (0, 1): -r})
    return out


def _inverse_x_plus_rh_pow_n(n: int, r: int, ring: XLaurentRing) -> XLaurent:
    """(x + r h)^(-n) as the finite nilpotent-x expansion."""
    terms = {}
    for m in range(ring.xdim):
        c = Fraction((-1) ** m * comb(n + m - 1, m), r ** (n + m))
        terms[(m, -(n + m))] = c
    return XLaurent(ring.xdim, ring.hfloor, terms)


def y_series(n: int, a, d_max: int = 6, h_order: int | None = None) -> TruncatedSeries:
    """Hypergeometric series in q over Q[x]/(x^n), keeping h-exponents
    >= -h_order.  The q^0 coefficient is 1.

    Work happens at an internal floor deep enough to hold every inverse
    denominator factor (whose exponents reach -(2n - 1)); beyond that,
    multiplying the numerator first and the inverse factors afterwards only
    lowers h-exponents, so clipping partial products at the floor never
    discards terms that could re-enter the window.
    """
    a = as_exponent_tuple(a)
    if h_order is None:
        h_order = d_max + 2
    ring = XLaurentRing(n, -max(h_order, 2 * n - 1))
    out_ring = XLaurentRing(n, -h_order)
    coeffs = {(0,): out_ring.one()}
    for d in range(1, d_max + 1):
        acc = _numerator_factors(a, d, ring)
        for r in range(1, d + 1):
            acc = acc * _inverse_x_plus_rh_pow_n(n, r, ring)
        coeffs[(d,)] = XLaurent(n, -h_order, acc.terms)
    return TruncatedSeries(out_ring, ("q",), (d_max,), coeffs)


def i_series(n: int, a, d_max: int = 6) -> TruncatedSeries:
    """Scalar normalization series: 1 below the borderline, and the x = 0,
    h = 1 evaluation of the hypergeometric series on it."""
    a = as_exponent_tuple(a)
    excess = a.abs_sum - a.minus_count
    if excess > n:
        raise TheoremDomainError(
            f"|a| - minus_count = {excess} exceeds n = {n}; outside the dichotomy"
        )
    coeffs = {(0,): Fraction(1)}
    if excess == n:
        for d in range(1, d_max + 1):
            val = Fraction(1)
            for ak in a:
                if ak > 0:
                    val *= factorial(ak * d)
                else:
                    for r in range(0, -ak * d):
                        val *= -r  # r = 0 factor kills the coefficient
            val /= Fraction(factorial(d)) ** n
            if val:
                coeffs[(d,)] = val
    return TruncatedSeries(QQ, ("q",), (d_max,), coeffs)


def z_series(n: int, a, d_max: int = 6, h_order: int | None = None) -> TruncatedSeries:
    """One-point quotient-theory series Z = Y / I."""
    a = as_exponent_tuple(a)
    if a.abs_sum > n:
        raise TheoremDomainError(f"|a| = {a.abs_sum} > n = {n}")
    y = y_series(n, a, d_max, h_order)
    inv_i = series_invert(i_series(n, a, d_max))
    return series_mul(y, lift_rational_series(y.ring, inv_i))


def mirror_map_j(n: int, a, d_max: int = 6) -> TruncatedSeries:
    """Mirror-map series J over Q.

    Calabi-Yau case |a| = n: the x h^-1 coefficient of Z.  Borderline case
    |a| = n - 1 with no negative entries: a! q.  Otherwise 0.
    """
    a = as_exponent_tuple(a)
    if a.abs_sum > n:
        raise TheoremDomainError(f"|a| = {a.abs_sum} > n = {n}")
    if a.abs_sum == n:
        z = z_series(n, a, d_max, h_order=max(2, d_max))
        coeffs = {}
        for d in range(1, d_max + 1):
            c = z.coefficient(d).coefficient(1, -1)
            if c:
                coeffs[(d,)] = c
        return TruncatedSeries(QQ, ("q",), (d_max,), coeffs)
    if a.abs_sum == n - 1 and a.minus_count == 0:
        return TruncatedSeries(QQ, ("q",), (d_max,), {(1,): Fraction(a.factorial)})
    return TruncatedSeries.zero(QQ, ("q",), (d_max,))


def zgw_series(n: int, a, d_max: int = 6, h_order: int | None = None) -> TruncatedSeries:
    """Gromov-Witten one-point series, in the transformed variable for the
    Calabi-Yau case and in q otherwise."""
    a = as_exponent_tuple(a)
    if a.abs_sum > n:
        raise TheoremDomainError(f"|a| = {a.abs_sum} > n = {n}")
    z = z_series(n, a, d_max, h_order)
    ring = z.ring
    if a.abs_sum == n:
        j = mirror_map_j(n, a, d_max)
        exp_arg = TruncatedSeries(
            ring,
            ("q",),
            (d_max,),
            {
                (d,): XLaurent(ring.xdim, ring.hfloor, {(1, -1): -c})
                for (d,), c in j.coeffs.items()
            },
        )
        w = series_mul(series_exp(exp_arg), z)
        q_of_big_q = series_mul(
            TruncatedSeries(QQ, ("q",), (d_max,), {(1,): Fraction(1)}), series_exp(j)
        )
        return series_compose(w, series_reversion(q_of_big_q))
    if a.abs_sum == n - 1 and a.minus_count == 0:
        exp_arg = TruncatedSeries(
            ring,
            ("q",),
            (d_max,),
            {(1,): XLaurent(ring.xdim, ring.hfloor, {(0, -1): -a.factorial})},
        )
        return series_mul(series_exp(exp_arg), z)
    return z


# ---------------------------------------------------------------------------
# Invariant extraction
# ---------------------------------------------------------------------------


def _check_ranges(n: int, a: ExponentTuple, d: int, p: int) -> None:
    if d < 1:
        raise RangeError(f"degree d = {d} must be >= 1")
    if not 0 <= p <= n - 2 - a.net_count:
        raise RangeError(
            f"descendant power p = {p} outside [0, {n - 2 - a.net_count}]"
        )


def _extract(series: TruncatedSeries, a: ExponentTuple, d: int, p: int) -> Fraction:
    return a.ratio * series.coefficient(d).coefficient(p + 1, -(p + 1))


def _working_h_order(n: int, p: int, h_order: int | None) -> int:
    if h_order is None:
        return max(p + 1, n - 1) + 1
    if h_order < p + 1:
        raise RangeError(f"h_order = {h_order} too small for descendant power {p}")
    return h_order


def sq_invariant(n: int, a, d: int, p: int, h_order: int | None = None) -> InvariantRecord:
    """Quotient-theory descendant invariant, exact."""
    a = as_exponent_tuple(a)
    _check_ranges(n, a, d, p)
    z = z_series(n, a, d_max=d, h_order=_working_h_order(n, p, h_order))
    value = _extract(z, a, d, p)
    if p <= a.minus_count - 2 and value != 0:
        raise ArithmeticError(
            f"vanishing guard violated: p = {p} <= minus_count - 2 but value = {value}"
        )
    return InvariantRecord(n, a.entries, d, p, value, "SQ")


def gw_invariant(n: int, a, d: int, p: int, h_order: int | None = None) -> InvariantRecord:
    """Gromov-Witten descendant invariant, exact."""
    a = as_exponent_tuple(a)
    _check_ranges(n, a, d, p)
    zgw = zgw_series(n, a, d_max=d, h_order=_working_h_order(n, p, h_order))
    value = _extract(zgw, a, d, p)
    return InvariantRecord(n, a.entries, d, p, value, "GW")


# ---------------------------------------------------------------------------
# Reference table for the quintic threefold
# ---------------------------------------------------------------------------

#: Exact column values, degrees 1..5.  Columns: GW descendant-1 over d,
#: SQ descendant-0, SQ descendant-1 over d, minus SQ descendant-2 over 2.
#: Each entry is pinned by the series computation and an independent
#: rational-function expansion oracle.
TABLE1_GOLDEN: dict[int, tuple[str, str, str, str]] = {
    1: ("2875", "3850", "2875", "2875"),
    2: ("4876875/8", "3589125", "19660875/8", "13731875/8"),
    3: ("8564575000/27", "16126540000/3", "76579948750/27", "175851761875/108"),
    4: (
        "15517926796875/64",
        "19736572853125/2",
        "801135363990625/192",
        "1123498525946875/576",
    ),
    5: (
        "229305888887648",
        "20310770587807020",
        "14274970288322171/2",
        "125303832133435229/48",
    ),
}


@dataclass(frozen=True)
class Table1Row:
    d: int
    gw_tau1_over_d: Fraction
    sq_tau0: Fraction
    sq_tau1_over_d: Fraction
    sq_tau2_neghalf: Fraction

    def values(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (
            self.gw_tau1_over_d,
            self.sq_tau0,
            self.sq_tau1_over_d,
            self.sq_tau2_neghalf,
        )


def table1(d_max: int = 5) -> list[Table1Row]:
    """Quintic-threefold invariant table for degrees 1..d_max, computed from
    one pass over the series for (n, a) = (5, (5))."""
    n, a = 5, as_exponent_tuple((5,))
    h_order = 5
    z = z_series(n, a, d_max, h_order)
    zgw = zgw_series(n, a, d_max, h_order)
    rows = []
    for d in range(1, d_max + 1):
        gw1 = _extract(zgw, a, d, 1)
        sq0 = _extract(z, a, d, 0)
        sq1 = _extract(z, a, d, 1)
        sq2 = _extract(z, a, d, 2)
        rows.append(Table1Row(d, gw1 / d, sq0, sq1 / d, -sq2 / 2))
    return rows
