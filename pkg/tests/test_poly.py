from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sqmirror.errors import DomainError
from sqmirror.kernel import Poly, SparsePoly

small_rat = st.fractions(
    min_value=Fraction(-6), max_value=Fraction(6), max_denominator=4
)


def poly_strategy(max_degree=5):
    return st.lists(small_rat, min_size=0, max_size=max_degree + 1).map(Poly)


class TestPoly:
    def test_normalization_strips_trailing_zeros(self):
        assert Poly([1, 2, 0, 0]).coeffs == (Fraction(1), Fraction(2))
        assert Poly([0, 0]).is_zero
        assert Poly([]).degree == -1

    def test_mul_and_divmod(self):
        p = Poly.linear(2, 1) * Poly.linear(-3, 1)  # (h+2)(h-3) = h^2 - h - 6
        assert p == Poly([-6, -1, 1])
        q, r = p.divmod(Poly.linear(2, 1))
        assert q == Poly.linear(-3, 1) and r.is_zero
        q, r = Poly([1, 0, 1]).divmod(Poly.linear(-1, 1))
        assert r == Poly.const(2)  # h^2+1 at h=1

    def test_exact_div_raises_on_remainder(self):
        with pytest.raises(DomainError):
            Poly([1, 0, 1]).exact_div(Poly.linear(-1, 1))

    def test_eval_and_shift(self):
        p = Poly([1, 2, 3])
        assert p(2) == 1 + 4 + 12
        assert p.compose_shift(1)(1) == p(2)
        assert p.substitute_negated()(2) == p(-2)

    def test_valuation_and_shifts(self):
        p = Poly([0, 0, 5, 1])
        assert p.valuation == 2
        assert p.shift_down(2) == Poly([5, 1])
        assert Poly([5, 1]).shift_up(2) == p

    @given(poly_strategy(), poly_strategy(), poly_strategy(3))
    @settings(max_examples=60, deadline=None)
    def test_ring_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)

    @given(poly_strategy(4), poly_strategy(4), poly_strategy(3))
    @settings(max_examples=60, deadline=None)
    def test_gcd_divides_and_is_maximal(self, a, b, m):
        # gcd(m*a, m*b) is divisible by m (up to the monic normalization)
        g = Poly.gcd(a * m, b * m)
        if a.is_zero and b.is_zero:
            assert g.is_zero or g == (m.monic() if not m.is_zero else g)
            return
        if m.is_zero:
            assert g.is_zero
            return
        if not g.is_zero:
            assert (a * m).divmod(g)[1].is_zero
            assert (b * m).divmod(g)[1].is_zero
            if not (a.is_zero and b.is_zero):
                assert g.divmod(m.monic())[1].is_zero

    def test_gcd_known(self):
        a = Poly.linear(1, 1) * Poly.linear(2, 1) ** 2
        b = Poly.linear(2, 1) * Poly.linear(-5, 1)
        assert Poly.gcd(a, b) == Poly.linear(2, 1)
        assert Poly.gcd(a, Poly.linear(7, 1)) == Poly.one()


class TestSparsePoly:
    def test_zero_coefficients_dropped(self):
        p = SparsePoly(2, {(1, 0): 1, (0, 1): 0})
        assert (0, 1) not in p.terms

    def test_grlex_order(self):
        p = SparsePoly(2, {(2, 0): 1, (0, 1): 2, (1, 1): 3, (0, 0): 4})
        keys = [e for e, _ in p.sorted_terms()]
        assert keys == [(0, 0), (0, 1), (1, 1), (2, 0)]

    def test_mul_and_eval(self):
        x = SparsePoly.variable(2, 0)
        y = SparsePoly.variable(2, 1)
        p = (x + y) * (x - y)
        assert p == x * x - y * y
        assert p((3, 2)) == 5

    def test_pow(self):
        x = SparsePoly.variable(1, 0)
        assert (x + SparsePoly.one(1)) ** 2 == x * x + x.scale(2) + SparsePoly.one(1)

    def test_exact_div_univariate(self):
        x = SparsePoly.variable(1, 0)
        p = x ** 3
        assert p.exact_div(x) == x ** 2
        with pytest.raises(DomainError):
            (p + SparsePoly.one(1)).exact_div(x)
