"""Truncated power series over exchangeable coefficient rings.

A ``TruncatedSeries`` carries named variables with explicit per-variable
truncation orders and a sparse coefficient map keyed by exponent tuples.
Binary operations resolve mismatched truncation orders to the componentwise
minimum.  Coefficients live in one of the small ring adapters below
(rationals, rational functions in h, the nilpotent-x ring, or univariate
formal polynomials), all of which expose zero/one/embedding of Q and enough
inversion for the series algorithms.

Everything here is immutable and side-effect free.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, Mapping

from ..errors import (
    DomainError,
    NotInvertibleError,
    NotReversibleError,
    RingMismatchError,
    SingularEquationError,
)
from .poly import Rat, SparsePoly
from .ratfun import HRational
from .xlaurent import XLaurent


class RationalRing:
    """Scalars in Q."""

    name = "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_rational(self, c: int | Rat):
        return Fraction(c)

    def is_zero(self, c) -> bool:
        return c == 0

    def invert(self, c):
        if c == 0:
            raise NotInvertibleError("zero is not a unit in Q")
        return 1 / Fraction(c)

    def solve_linear(self, a, b):
        """Solution c of a * c = b."""
        if a == 0:
            raise SingularEquationError("linearization vanishes")
        return Fraction(b) / Fraction(a)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalRing)

    def __hash__(self) -> int:
        return hash("RationalRing")


class HRationalRing:
    """Rational functions of h."""

    name = "Q(h)"

    def zero(self):
        return HRational.zero()

    def one(self):
        return HRational.one()

    def from_rational(self, c: int | Rat):
        return HRational.from_rational(c)

    def is_zero(self, c) -> bool:
        return c.is_zero

    def invert(self, c: HRational):
        return c.invert()

    def solve_linear(self, a: HRational, b: HRational):
        if a.is_zero:
            raise SingularEquationError("linearization vanishes")
        return b * a.invert()

    def __eq__(self, other) -> bool:
        return isinstance(other, HRationalRing)

    def __hash__(self) -> int:
        return hash("HRationalRing")


class XLaurentRing:
    """Q[x]/(x**xdim) with h-Laurent exponents floored at hfloor."""

    def __init__(self, xdim: int, hfloor: int):
        self.xdim = xdim
        self.hfloor = hfloor
        self.name = f"XL({xdim},{hfloor})"

    def zero(self):
        return XLaurent.zero(self.xdim, self.hfloor)

    def one(self):
        return XLaurent.one(self.xdim, self.hfloor)

    def from_rational(self, c: int | Rat):
        return XLaurent.from_rational(self.xdim, self.hfloor, c)

    def is_zero(self, c) -> bool:
        return c.is_zero

    def invert(self, c: XLaurent):
        return c.invert()

    def solve_linear(self, a: XLaurent, b: XLaurent):
        try:
            return b * a.invert()
        except NotInvertibleError as exc:
            raise SingularEquationError(str(exc)) from exc

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, XLaurentRing)
            and self.xdim == other.xdim
            and self.hfloor == other.hfloor
        )

    def __hash__(self) -> int:
        return hash(("XLaurentRing", self.xdim, self.hfloor))


class FormalPolyRing:
    """Univariate polynomials Q[x], for solving in a formal variable."""

    name = "Q[x]"

    def zero(self):
        return SparsePoly.zero(1)

    def one(self):
        return SparsePoly.one(1)

    def from_rational(self, c: int | Rat):
        return SparsePoly.constant(1, c)

    def is_zero(self, c) -> bool:
        return c.is_zero

    def invert(self, c: SparsePoly):
        if c.total_degree() != 0:
            raise NotInvertibleError("non-constant polynomial is not a unit")
        return SparsePoly.constant(1, 1 / c.terms[(0,)])

    def solve_linear(self, a: SparsePoly, b: SparsePoly):
        """Exact polynomial division b / a (the linearization need not be a
        unit as long as it divides the right-hand side)."""
        if a.is_zero:
            raise SingularEquationError("linearization vanishes")
        if b.is_zero:
            return self.zero()
        try:
            return b.exact_div(a)
        except DomainError as exc:
            raise SingularEquationError(str(exc)) from exc

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalPolyRing)

    def __hash__(self) -> int:
        return hash("FormalPolyRing")


QQ = RationalRing()
QH = HRationalRing()
QX = FormalPolyRing()


def _iter_exponents(orders: tuple[int, ...]):
    """All exponent tuples within the box, in graded order."""
    if not orders:
        yield ()
        return
    boxes = [()]
    for n in orders:
        boxes = [e + (k,) for e in boxes for k in range(n + 1)]
    yield from sorted(boxes, key=lambda e: (sum(e), e))


class TruncatedSeries:
    """Power series in named variables with explicit truncation orders.

    ``coeffs`` maps exponent tuples (one entry per variable) to nonzero ring
    elements; every stored key lies within the per-variable orders.  The zero
    series is representable as an empty map.
    """

    __slots__ = ("ring", "vars", "orders", "coeffs")

    def __init__(
        self,
        ring,
        vars: tuple[str, ...],
        orders: tuple[int, ...],
        coeffs: Mapping[tuple[int, ...], object] | None = None,
    ):
        vars = tuple(vars)
        orders = tuple(int(o) for o in orders)
        if len(vars) != len(orders) or any(o < 0 for o in orders):
            raise DomainError("variables and truncation orders do not match")
        clean: dict[tuple[int, ...], object] = {}
        for exps, c in (coeffs or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(vars) or any(e < 0 for e in exps):
                raise DomainError(f"bad exponent tuple {exps!r}")
            if any(e > o for e, o in zip(exps, orders)):
                continue
            if not ring.is_zero(c):
                clean[exps] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("TruncatedSeries is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(ring, vars: tuple[str, ...], orders: tuple[int, ...]) -> TruncatedSeries:
        return TruncatedSeries(ring, vars, orders)

    @staticmethod
    def constant(ring, vars: tuple[str, ...], orders: tuple[int, ...], value) -> TruncatedSeries:
        return TruncatedSeries(ring, vars, orders, {(0,) * len(vars): value})

    @staticmethod
    def one(ring, vars: tuple[str, ...], orders: tuple[int, ...]) -> TruncatedSeries:
        return TruncatedSeries.constant(ring, vars, orders, ring.one())

    @staticmethod
    def from_rationals(ring, vars, orders, coeffs: Mapping[tuple[int, ...], int | Rat]) -> TruncatedSeries:
        return TruncatedSeries(
            ring, vars, orders, {e: ring.from_rational(c) for e, c in coeffs.items()}
        )

    # -- structure ---------------------------------------------------------

    def coefficient(self, exps):
        """Coefficient at an exponent tuple (a bare int for one variable)."""
        if isinstance(exps, int):
            exps = (exps,)
        exps = tuple(exps)
        if any(e > o for e, o in zip(exps, self.orders)):
            raise DomainError(f"exponent {exps} beyond truncation {self.orders}")
        return self.coeffs.get(exps, self.ring.zero())

    @property
    def constant_term(self):
        return self.coeffs.get((0,) * len(self.vars), self.ring.zero())

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.vars == other.vars
            and self.orders == other.orders
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        raise TypeError("TruncatedSeries is not hashable")

    def __repr__(self) -> str:
        body = ", ".join(f"{e}: {c}" for e, c in sorted(self.coeffs.items())[:8])
        more = "..." if len(self.coeffs) > 8 else ""
        return (
            f"TruncatedSeries({self.ring.name}, vars={self.vars},"
            f" orders={self.orders}, {{{body}{more}}})"
        )

    def _common(self, other: TruncatedSeries) -> tuple[int, ...]:
        if self.ring != other.ring:
            raise RingMismatchError(
                f"coefficient rings differ: {self.ring.name} vs {other.ring.name}"
            )
        if self.vars != other.vars:
            raise RingMismatchError(f"variables differ: {self.vars} vs {other.vars}")
        return tuple(min(a, b) for a, b in zip(self.orders, other.orders))

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        orders = self._common(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            prev = out.get(e)
            out[e] = c if prev is None else prev + c
        return TruncatedSeries(self.ring, self.vars, orders, out)

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(
            self.ring, self.vars, self.orders, {e: -c for e, c in self.coeffs.items()}
        )

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        return self + (-other)

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        orders = self._common(other)
        out: dict[tuple[int, ...], object] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if any(k > o for k, o in zip(e, orders)):
                    continue
                prod = c1 * c2
                prev = out.get(e)
                out[e] = prod if prev is None else prev + prod
        return TruncatedSeries(self.ring, self.vars, orders, out)

    def scale(self, c: int | Rat) -> TruncatedSeries:
        factor = self.ring.from_rational(c)
        return self.map_coefficients(lambda v: v * factor)

    def map_coefficients(self, fn: Callable) -> TruncatedSeries:
        return TruncatedSeries(
            self.ring, self.vars, self.orders, {e: fn(c) for e, c in self.coeffs.items()}
        )

    def truncated(self, orders: tuple[int, ...]) -> TruncatedSeries:
        return TruncatedSeries(self.ring, self.vars, orders, self.coeffs)

    def with_coefficient(self, exps, value) -> TruncatedSeries:
        if isinstance(exps, int):
            exps = (exps,)
        out = dict(self.coeffs)
        if self.ring.is_zero(value):
            out.pop(tuple(exps), None)
        else:
            out[tuple(exps)] = value
        return TruncatedSeries(self.ring, self.vars, self.orders, out)

    def __pow__(self, n: int) -> TruncatedSeries:
        if n < 0:
            raise DomainError("negative series power; use series_invert")
        result = TruncatedSeries.one(self.ring, self.vars, self.orders)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def series_mul(s1: TruncatedSeries, s2: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated to the componentwise minimum of the orders."""
    return s1 * s2


def series_invert(s: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse; requires a unit constant term."""
    c0 = s.constant_term
    if s.ring.is_zero(c0):
        raise NotInvertibleError("constant term is zero")
    b0 = s.ring.invert(c0)
    out = {(0,) * len(s.vars): b0}
    for exps in _iter_exponents(s.orders):
        if all(e == 0 for e in exps):
            continue
        acc = None
        for f, a in s.coeffs.items():
            if all(x == 0 for x in f):
                continue
            rest = tuple(e - x for e, x in zip(exps, f))
            if any(r < 0 for r in rest):
                continue
            b = out.get(rest)
            if b is None:
                continue
            term = a * b
            acc = term if acc is None else acc + term
        if acc is not None and not s.ring.is_zero(acc):
            out[exps] = -(b0 * acc)
    return TruncatedSeries(s.ring, s.vars, s.orders, out)


def series_exp(s: TruncatedSeries) -> TruncatedSeries:
    """exp of a series with zero constant term, as sum of s**k / k!."""
    if not s.ring.is_zero(s.constant_term):
        raise DomainError("exp requires a zero constant term")
    result = TruncatedSeries.one(s.ring, s.vars, s.orders)
    power = TruncatedSeries.one(s.ring, s.vars, s.orders)
    for k in range(1, sum(s.orders) + 1):
        power = power * s
        if power.is_zero:
            break
        result = result + power.scale(Fraction(1, factorial(k)))
    return result


def series_log(s: TruncatedSeries) -> TruncatedSeries:
    """log of a series with constant term 1 (inverse of series_exp)."""
    one = TruncatedSeries.one(s.ring, s.vars, s.orders)
    u = s - one
    if not s.ring.is_zero((s.constant_term - s.ring.one())):
        raise DomainError("log requires constant term 1")
    result = TruncatedSeries.zero(s.ring, s.vars, s.orders)
    power = one
    for k in range(1, sum(s.orders) + 1):
        power = power * u
        if power.is_zero:
            break
        result = result + power.scale(Fraction((-1) ** (k + 1), k))
    return result


def _require_univariate(s: TruncatedSeries, what: str) -> None:
    if len(s.vars) != 1:
        raise DomainError(f"{what} requires a series in one variable")


def series_compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """outer(inner) for univariate series; inner must have zero constant term.

    The inner series may live over the rationals even when the outer one does
    not; its coefficients are embedded through the outer ring.
    """
    _require_univariate(outer, "composition")
    _require_univariate(inner, "composition")
    if isinstance(inner.ring, RationalRing) and not isinstance(outer.ring, RationalRing):
        inner = lift_rational_series(outer.ring, inner)
    if outer.ring != inner.ring:
        raise RingMismatchError("composition over mismatched rings")
    if not inner.ring.is_zero(inner.constant_term):
        raise DomainError("composition requires zero inner constant term")
    n = min(outer.orders[0], inner.orders[0])
    result = TruncatedSeries.zero(inner.ring, inner.vars, (n,))
    for d in range(min(outer.orders[0], n), -1, -1):
        result = result * inner.truncated((n,))
        c = outer.coeffs.get((d,))
        if c is not None:
            result = result + TruncatedSeries.constant(inner.ring, inner.vars, (n,), c)
    return result


def series_reversion(s: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse t with s(t) = identity, for s = q * (unit)."""
    _require_univariate(s, "reversion")
    ring = s.ring
    if not ring.is_zero(s.constant_term):
        raise NotReversibleError("constant term must vanish")
    n = s.orders[0]
    if n < 1:
        raise NotReversibleError("truncation order too small")
    c1 = s.coefficient(1)
    try:
        inv1 = ring.invert(c1)
    except NotInvertibleError as exc:
        raise NotReversibleError("linear coefficient is not a unit") from exc
    t = TruncatedSeries(ring, s.vars, (n,), {(1,): inv1})
    for k in range(2, n + 1):
        # With t exact below degree k, the composite s(t) is the identity
        # below degree k; the degree-k defect is linear in the unknown t_k.
        defect = series_compose(s, t).coefficient(k)
        if not ring.is_zero(defect):
            t = t.with_coefficient(k, -(inv1 * defect))
    return t


def series_solve_implicit(
    residual: Callable[[TruncatedSeries], TruncatedSeries],
    initial: TruncatedSeries,
    order: int | None = None,
) -> TruncatedSeries:
    """Unique series agreeing with ``initial`` at order 0 whose residual
    vanishes to the truncation order, solved degree by degree.

    At each degree the linearization of the residual in the unknown degree-d
    coefficient is exact (the perturbation enters quadratically only beyond
    the degree), so one linear solve per degree suffices and a singular
    linearization is detected immediately.
    """
    _require_univariate(initial, "implicit solving")
    ring = initial.ring
    n = initial.orders[0] if order is None else int(order)
    cur = initial.truncated((n,))
    r0 = residual(cur).coefficient(0)
    if not ring.is_zero(r0):
        raise DomainError("residual does not vanish at order 0 for the initial value")
    one = ring.one()
    for m in range(1, n + 1):
        rm = residual(cur).coefficient(m)
        probe = cur.with_coefficient(m, cur.coefficient(m) + one)
        linearization = residual(probe).coefficient(m) - rm
        if ring.is_zero(linearization):
            raise SingularEquationError(f"linearization vanishes at degree {m}")
        if ring.is_zero(rm):
            continue
        delta = ring.solve_linear(linearization, -rm)
        cur = cur.with_coefficient(m, cur.coefficient(m) + delta)
    return cur


def substitute_q_scaled(s: TruncatedSeries, z_order: int) -> TruncatedSeries:
    """Replace q by q * exp(h z) in a series over rational functions of h.

    The coefficient of q**d picks up the factor sum_m (d h)**m z**m / m!,
    truncated at z_order; the output is a series in (z, q).
    """
    _require_univariate(s, "q-scaling substitution")
    if not isinstance(s.ring, HRationalRing):
        raise RingMismatchError("q-scaling substitution needs HRational coefficients")
    n = s.orders[0]
    out: dict[tuple[int, int], HRational] = {}
    for (d,), c in s.coeffs.items():
        out[(0, d)] = c
        if d == 0:
            continue
        for m in range(1, z_order + 1):
            out[(m, d)] = c.shift_h(m).scale(Fraction(d ** m, factorial(m)))
    return TruncatedSeries(s.ring, ("z", "q"), (z_order, n), out)


def lift_rational_series(ring, s: TruncatedSeries) -> TruncatedSeries:
    """Embed a series over Q into another coefficient ring."""
    if not isinstance(s.ring, RationalRing):
        raise RingMismatchError("only rational series can be lifted")
    return TruncatedSeries(
        ring, s.vars, s.orders, {e: ring.from_rational(c) for e, c in s.coeffs.items()}
    )
