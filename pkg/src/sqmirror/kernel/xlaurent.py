"""Coefficient ring for series valued in the cohomology of projective space.

An ``XLaurent`` element lives in Q[x]/(x**xdim) tensored with Laurent
polynomials in h, with h-exponents clipped below a floor.  The relation
x**xdim = 0 is enforced on every operation, so expansions of the form
1/(x + r*h)**n are finite sums here.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from ..errors import DomainError, NotInvertibleError, RingMismatchError
from .poly import Rat


class XLaurent:
    """Polynomial in the nilpotent class x with Laurent h-exponents.

    ``terms`` maps (x_power, h_power) to a rational; entries with
    x_power >= xdim or h_power < hfloor are dropped.  Dropping below the
    floor is safe in any computation whose remaining factors only lower
    h-exponents.
    """

    __slots__ = ("xdim", "hfloor", "terms")

    def __init__(self, xdim: int, hfloor: int, terms: Mapping[tuple[int, int], int | Rat] | None = None):
        if xdim < 1:
            raise DomainError("xdim must be >= 1")
        clean: dict[tuple[int, int], Fraction] = {}
        for (xp, hp), c in (terms or {}).items():
            if xp < 0:
                raise DomainError("negative x exponent")
            if xp >= xdim or hp < hfloor:
                continue
            c = Fraction(c)
            if c != 0:
                key = (xp, hp)
                clean[key] = clean.get(key, Fraction(0)) + c
                if clean[key] == 0:
                    del clean[key]
        object.__setattr__(self, "xdim", xdim)
        object.__setattr__(self, "hfloor", hfloor)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("XLaurent is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(xdim: int, hfloor: int) -> XLaurent:
        return XLaurent(xdim, hfloor)

    @staticmethod
    def one(xdim: int, hfloor: int) -> XLaurent:
        return XLaurent(xdim, hfloor, {(0, 0): 1})

    @staticmethod
    def from_rational(xdim: int, hfloor: int, c: int | Rat) -> XLaurent:
        return XLaurent(xdim, hfloor, {(0, 0): c})

    @staticmethod
    def term(xdim: int, hfloor: int, xp: int, hp: int, c: int | Rat = 1) -> XLaurent:
        return XLaurent(xdim, hfloor, {(xp, hp): c})

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, xp: int, hp: int) -> Fraction:
        return self.terms.get((xp, hp), Fraction(0))

    def _check_ring(self, other: XLaurent) -> None:
        if self.xdim != other.xdim or self.hfloor != other.hfloor:
            raise RingMismatchError(
                f"XLaurent parameters differ: ({self.xdim}, {self.hfloor}) vs"
                f" ({other.xdim}, {other.hfloor})"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, XLaurent):
            return NotImplemented
        return self.xdim == other.xdim and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.xdim, tuple(sorted(self.terms.items()))))

    def __repr__(self) -> str:
        items = ", ".join(
            f"x^{xp} h^{hp}: {c}" for (xp, hp), c in sorted(self.terms.items())
        )
        return f"XLaurent({self.xdim}, {self.hfloor}, {{{items}}})"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: XLaurent) -> XLaurent:
        self._check_ring(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, Fraction(0)) + c
        return XLaurent(self.xdim, self.hfloor, out)

    def __neg__(self) -> XLaurent:
        return XLaurent(self.xdim, self.hfloor, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: XLaurent) -> XLaurent:
        return self + (-other)

    def __mul__(self, other: XLaurent | int | Rat) -> XLaurent:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_ring(other)
        out: dict[tuple[int, int], Fraction] = {}
        xdim, hfloor = self.xdim, self.hfloor
        for (x1, h1), c1 in self.terms.items():
            for (x2, h2), c2 in other.terms.items():
                xp = x1 + x2
                if xp >= xdim:
                    continue
                hp = h1 + h2
                if hp < hfloor:
                    continue
                key = (xp, hp)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return XLaurent(self.xdim, self.hfloor, out)

    __rmul__ = __mul__

    def scale(self, c: int | Rat) -> XLaurent:
        c = Fraction(c)
        return XLaurent(self.xdim, self.hfloor, {k: c * v for k, v in self.terms.items()})

    def __pow__(self, n: int) -> XLaurent:
        if n < 0:
            raise DomainError("negative power; use invert")
        result = XLaurent.one(self.xdim, self.hfloor)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def invert(self) -> XLaurent:
        """Inverse of c * h**m * (1 + w) where w carries only positive
        x-powers (hence is nilpotent); this covers every unit that occurs
        when dividing by products of factors x + r*h or by unit scalars.

        The result is the true inverse truncated at this ring's floor, so
        callers must work at a floor deep enough for their final window.
        """
        scalar_keys = [key for key in self.terms if key[0] == 0]
        if len(scalar_keys) != 1:
            raise NotInvertibleError("no single invertible scalar part")
        (_, m) = scalar_keys[0]
        c = self.terms[scalar_keys[0]]
        # Work at a floor deep enough that the final shift by -m lands
        # exactly on this ring's floor.
        floor = self.hfloor + min(m, 0)
        w = XLaurent(
            self.xdim,
            floor,
            {(xp, hp - m): v / c for (xp, hp), v in self.terms.items() if xp > 0},
        )
        acc = XLaurent.one(self.xdim, floor)
        power = XLaurent.one(self.xdim, floor)
        for _ in range(1, self.xdim):
            power = power * (-w)
            if power.is_zero:
                break
            acc = acc + power
        inv = {(xp, hp - m): v / c for (xp, hp), v in acc.terms.items()}
        return XLaurent(self.xdim, self.hfloor, inv)

    def restrict(self, hfloor: int) -> XLaurent:
        """Re-truncate to a shallower floor."""
        if hfloor < self.hfloor:
            raise DomainError("cannot deepen a floor after truncation")
        return XLaurent(self.xdim, hfloor, self.terms)
