"""Exact polynomial arithmetic over the rationals.

``Poly`` is a dense univariate polynomial used as numerator/denominator of
rational functions in the descendant variable h.  ``SparsePoly`` is a sparse
multivariate polynomial keyed by exponent vectors, with graded-lexicographic
canonical term order for deterministic serialization.

All values are immutable and all operations are pure functions.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd
from typing import Iterable, Iterator, Mapping, Sequence

from ..errors import DomainError

Rat = Fraction

# Primes for the modular coprimality pre-check in gcd; large enough that the
# leading coefficients of the inputs essentially never vanish mod p.
_GCD_PRIMES = (2305843009213693951, 2147483647, 999999999999999989)


def _rat(value: int | Rat) -> Rat:
    return value if isinstance(value, Rat) else Rat(value)


class Poly:
    """Univariate polynomial over Q, stored as a dense coefficient tuple.

    ``coeffs[k]`` is the coefficient of the k-th power; trailing zeros are
    stripped, the zero polynomial has an empty tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int | Rat]):
        cs = [_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> Poly:
        return Poly(())

    @staticmethod
    def one() -> Poly:
        return Poly((1,))

    @staticmethod
    def const(c: int | Rat) -> Poly:
        return Poly((c,))

    @staticmethod
    def x() -> Poly:
        return Poly((0, 1))

    @staticmethod
    def linear(constant: int | Rat, slope: int | Rat) -> Poly:
        """constant + slope * h"""
        return Poly((constant, slope))

    # -- basic structure ---------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Rat:
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, k: int) -> Rat:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Rat(0)

    @property
    def valuation(self) -> int:
        """Multiplicity of the root at 0; degree+1 convention not used: zero poly raises."""
        if not self.coeffs:
            raise DomainError("zero polynomial has no valuation")
        v = 0
        while self.coeffs[v] == 0:
            v += 1
        return v

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: Poly) -> Poly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return Poly(out)

    def __neg__(self) -> Poly:
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly | int | Rat) -> Poly:
        if isinstance(other, (int, Rat)):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero()
        out = [Rat(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def scale(self, c: int | Rat) -> Poly:
        c = _rat(c)
        if c == 0:
            return Poly.zero()
        return Poly(tuple(c * k for k in self.coeffs))

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise DomainError("negative polynomial power")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift_up(self, k: int) -> Poly:
        """Multiply by h**k."""
        if self.is_zero or k == 0:
            return self
        return Poly((Rat(0),) * k + self.coeffs)

    def shift_down(self, k: int) -> Poly:
        """Exact division by h**k; requires valuation >= k."""
        if self.is_zero:
            return self
        if any(c != 0 for c in self.coeffs[:k]):
            raise DomainError("not divisible by the requested power of h")
        return Poly(self.coeffs[k:])

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < other.degree:
            return Poly.zero(), self
        rem = list(self.coeffs)
        dv = other.degree
        lead = other.leading
        q = [Rat(0)] * (len(rem) - dv)
        for k in range(len(rem) - dv - 1, -1, -1):
            c = rem[k + dv] / lead
            if c == 0:
                continue
            q[k] = c
            for i, oc in enumerate(other.coeffs):
                rem[k + i] -= c * oc
        return Poly(q), Poly(rem)

    def exact_div(self, other: Poly) -> Poly:
        q, r = self.divmod(other)
        if not r.is_zero:
            raise DomainError("polynomial division is not exact")
        return q

    def monic(self) -> Poly:
        if self.is_zero:
            return self
        return self.scale(1 / self.leading)

    def __call__(self, value: int | Rat) -> Rat:
        acc = Rat(0)
        for c in reversed(self.coeffs):
            acc = acc * _rat(value) + c
        return acc

    def derivative(self) -> Poly:
        return Poly(tuple(k * c for k, c in enumerate(self.coeffs) if k >= 1))

    def compose_shift(self, c: int | Rat) -> Poly:
        """The polynomial h -> self(h + c)."""
        out = Poly.zero()
        shift = Poly.linear(c, 1)
        for coeff in reversed(self.coeffs):
            out = out * shift + Poly.const(coeff)
        return out

    def substitute_negated(self) -> Poly:
        """The polynomial h -> self(-h)."""
        return Poly(tuple(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)))

    # -- gcd ---------------------------------------------------------------

    @staticmethod
    def gcd(a: Poly, b: Poly) -> Poly:
        """Monic gcd, via a modular coprimality pre-check and a primitive
        subresultant remainder sequence over the integers."""
        if a.is_zero:
            return b.monic()
        if b.is_zero:
            return a.monic()
        if a.degree == 0 or b.degree == 0:
            return Poly.one()
        fa = _clear_denominators(a.coeffs)
        fb = _clear_denominators(b.coeffs)
        for p in _GCD_PRIMES:
            deg = _gcd_degree_mod_p(fa, fb, p)
            if deg is None:
                continue
            if deg == 0:
                return Poly.one()
            break
        g = _int_poly_gcd(fa, fb)
        return Poly(g).monic()


def _clear_denominators(coeffs: Sequence[Rat]) -> list[int]:
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // _igcd(lcm, c.denominator)
    return [int(c * lcm) for c in coeffs]


def _int_content(f: Sequence[int]) -> int:
    g = 0
    for c in f:
        g = _igcd(g, abs(c))
        if g == 1:
            break
    return g or 1


def _int_primitive(f: Sequence[int]) -> list[int]:
    c = _int_content(f)
    if f and f[-1] < 0:
        c = -c
    return [x // c for x in f]


def _int_pseudo_rem(u: Sequence[int], v: Sequence[int]) -> list[int]:
    """prem(u, v) = lc(v)**(deg u - deg v + 1) * u  mod  v."""
    r = list(u)
    dv = len(v) - 1
    lv = v[-1]
    e = len(u) - len(v) + 1
    while len(r) - 1 >= dv and any(r):
        lead = r[-1]
        r = [lv * c for c in r]
        off = len(r) - 1 - dv
        for i, c in enumerate(v):
            r[off + i] -= lead * c
        while r and r[-1] == 0:
            r.pop()
        e -= 1
    if e > 0:
        f = lv ** e
        r = [c * f for c in r]
    return r


def _int_poly_gcd(u: Sequence[int], v: Sequence[int]) -> list[int]:
    """Primitive gcd of integer polynomials (subresultant PRS)."""
    a = _int_primitive(u)
    b = _int_primitive(v)
    if len(a) < len(b):
        a, b = b, a
    g, h = 1, 1
    while True:
        delta = (len(a) - 1) - (len(b) - 1)
        r = _int_pseudo_rem(a, b)
        if not r:
            return _int_primitive(b)
        if len(r) == 1:
            return [1]
        a, b = b, [c // (g * h ** delta) for c in r]
        g = a[-1]
        h = h if delta == 0 else (g ** delta) // (h ** (delta - 1))


def _gcd_degree_mod_p(u: Sequence[int], v: Sequence[int], p: int) -> int | None:
    """Degree of gcd(u mod p, v mod p); None when a leading coefficient
    vanishes mod p (in which case nothing can be concluded)."""
    if u[-1] % p == 0 or v[-1] % p == 0:
        return None
    a = [c % p for c in u]
    b = [c % p for c in v]
    while any(b):
        inv = pow(b[-1], p - 2, p)
        db = len(b) - 1
        r = list(a)
        while len(r) - 1 >= db and any(r):
            c = (r[-1] * inv) % p
            off = len(r) - 1 - db
            for i, bc in enumerate(b):
                r[off + i] = (r[off + i] - c * bc) % p
            while r and r[-1] == 0:
                r.pop()
        a, b = b, r
    return len(a) - 1


class SparsePoly:
    """Multivariate polynomial over Q, sparse on exponent vectors.

    Invariants: no stored zero coefficients; terms iterate in graded
    lexicographic order, which fixes the serialized form.
    """

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: Mapping[tuple[int, ...], int | Rat] | None = None):
        if arity < 0:
            raise DomainError("arity must be nonnegative")
        clean: dict[tuple[int, ...], Rat] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != arity or any(e < 0 for e in exps):
                raise DomainError(f"bad exponent vector {exps!r} for arity {arity}")
            c = _rat(c)
            if c != 0:
                clean[exps] = clean.get(exps, Rat(0)) + c
                if clean[exps] == 0:
                    del clean[exps]
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("SparsePoly is immutable")

    @staticmethod
    def zero(arity: int) -> SparsePoly:
        return SparsePoly(arity)

    @staticmethod
    def one(arity: int) -> SparsePoly:
        return SparsePoly.constant(arity, 1)

    @staticmethod
    def constant(arity: int, c: int | Rat) -> SparsePoly:
        return SparsePoly(arity, {(0,) * arity: c})

    @staticmethod
    def variable(arity: int, index: int) -> SparsePoly:
        exps = tuple(1 if k == index else 0 for k in range(arity))
        return SparsePoly(arity, {exps: 1})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> Iterator[tuple[tuple[int, ...], Rat]]:
        """Terms in graded lexicographic order (total degree, then lex)."""
        for exps in sorted(self.terms, key=lambda e: (sum(e), e)):
            yield exps, self.terms[exps]

    def _check_arity(self, other: SparsePoly) -> None:
        if self.arity != other.arity:
            raise DomainError("arity mismatch")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparsePoly)
            and self.arity == other.arity
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.arity, tuple(self.sorted_terms())))

    def __repr__(self) -> str:
        return f"SparsePoly({self.arity}, {dict(self.sorted_terms())!r})"

    def __add__(self, other: SparsePoly) -> SparsePoly:
        self._check_arity(other)
        out = dict(self.terms)
        for exps, c in other.terms.items():
            out[exps] = out.get(exps, Rat(0)) + c
        return SparsePoly(self.arity, out)

    def __neg__(self) -> SparsePoly:
        return SparsePoly(self.arity, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: SparsePoly) -> SparsePoly:
        return self + (-other)

    def __mul__(self, other: SparsePoly | int | Rat) -> SparsePoly:
        if isinstance(other, (int, Rat)):
            return self.scale(other)
        self._check_arity(other)
        out: dict[tuple[int, ...], Rat] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Rat(0)) + c1 * c2
        return SparsePoly(self.arity, out)

    __rmul__ = __mul__

    def scale(self, c: int | Rat) -> SparsePoly:
        c = _rat(c)
        return SparsePoly(self.arity, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, n: int) -> SparsePoly:
        if n < 0:
            raise DomainError("negative polynomial power")
        result = SparsePoly.one(self.arity)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, point: Sequence[int | Rat]) -> Rat:
        if len(point) != self.arity:
            raise DomainError("evaluation point has wrong arity")
        total = Rat(0)
        for exps, c in self.terms.items():
            term = c
            for e, v in zip(exps, point):
                term *= _rat(v) ** e
            total += term
        return total

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def exact_div(self, other: SparsePoly) -> SparsePoly:
        """Exact division; supported in one variable (all that is needed for
        degree-by-degree implicit solving in a formal variable)."""
        self._check_arity(other)
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.arity != 1:
            raise DomainError("exact division is only supported in one variable")
        num = self._dense()
        den = other._dense()
        q, r = Poly(num).divmod(Poly(den))
        if not r.is_zero:
            raise DomainError("polynomial division is not exact")
        return SparsePoly(1, {(k,): c for k, c in enumerate(q.coeffs)})

    def _dense(self) -> list[Rat]:
        n = self.total_degree()
        out = [Rat(0)] * (n + 1)
        for (e,), c in self.terms.items():
            out[e] = c
        return out
