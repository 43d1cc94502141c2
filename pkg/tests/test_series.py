from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sqmirror.errors import (
    DomainError,
    NotInvertibleError,
    NotReversibleError,
    RingMismatchError,
    SingularEquationError,
)
from sqmirror.kernel import (
    QH,
    QQ,
    QX,
    HRational,
    Poly,
    SparsePoly,
    TruncatedSeries,
    series_compose,
    series_exp,
    series_invert,
    series_log,
    series_mul,
    series_reversion,
    series_solve_implicit,
    substitute_q_scaled,
)


def q_series(coeffs, order=None):
    order = order if order is not None else max(coeffs) if coeffs else 0
    return TruncatedSeries.from_rationals(QQ, ("q",), (order,), {(d,): c for d, c in coeffs.items()})


class TestMul:
    def test_difference_of_squares(self):
        s = series_mul(q_series({0: 1, 1: 1}, 3), q_series({0: 1, 1: -1}, 3))
        assert s == q_series({0: 1, 2: -1}, 3)

    def test_geometric_inverse(self):
        geo = q_series({d: 1 for d in range(6)}, 5)
        assert series_mul(geo, q_series({0: 1, 1: -1}, 5)) == q_series({0: 1}, 5)

    def test_identity(self):
        s = q_series({0: 1, 1: 2, 2: 3}, 2)
        assert series_mul(s, q_series({0: 1}, 2)) == s

    def test_min_truncation(self):
        a = q_series({0: 1, 1: 1}, 5)
        b = q_series({0: 1}, 2)
        assert (a * b).orders == (2,)

    def test_ring_mismatch(self):
        a = q_series({0: 1}, 2)
        b = TruncatedSeries.one(QH, ("q",), (2,))
        with pytest.raises(RingMismatchError):
            series_mul(a, b)
        c = TruncatedSeries.one(QQ, ("z",), (2,))
        with pytest.raises(RingMismatchError):
            series_mul(a, c)


class TestInvert:
    def test_scalar_normalization_inverse(self):
        # frozen via multiply-back: (1 + 120q + 113400q^2)^-1
        s = q_series({0: 1, 1: 120, 2: 113400}, 2)
        inv = series_invert(s)
        assert inv == q_series({0: 1, 1: -120, 2: 120 ** 2 - 113400}, 2)
        assert series_mul(s, inv) == q_series({0: 1}, 2)

    def test_identity(self):
        assert series_invert(q_series({0: 1}, 3)) == q_series({0: 1}, 3)

    def test_geometric(self):
        inv = series_invert(q_series({0: 1, 1: -1}, 4))
        assert inv == q_series({d: 1 for d in range(5)}, 4)

    def test_nonunit_rejected(self):
        with pytest.raises(NotInvertibleError):
            series_invert(q_series({1: 1}, 3))

    @given(
        st.lists(
            st.fractions(min_value=Fraction(-4), max_value=Fraction(4), max_denominator=3),
            min_size=1,
            max_size=5,
        ).filter(lambda cs: cs[0] != 0)
    )
    @settings(max_examples=100, deadline=None)
    def test_invert_then_mul_is_one(self, coeffs):
        order = len(coeffs) - 1
        s = q_series(dict(enumerate(coeffs)), order)
        assert series_mul(s, series_invert(s)) == q_series({0: 1}, order)

    def test_invert_two_variables(self):
        s = TruncatedSeries.from_rationals(
            QQ, ("z", "q"), (2, 2), {(0, 0): 1, (1, 0): 1, (0, 1): -2, (1, 1): 3}
        )
        one = TruncatedSeries.from_rationals(QQ, ("z", "q"), (2, 2), {(0, 0): 1})
        assert series_mul(s, series_invert(s)) == one


class TestExp:
    def test_exp_q(self):
        assert series_exp(q_series({1: 1}, 3)) == q_series(
            {0: 1, 1: 1, 2: Fraction(1, 2), 3: Fraction(1, 6)}, 3
        )

    def test_exp_zero(self):
        assert series_exp(q_series({}, 4)) == q_series({0: 1}, 4)

    def test_exp_q_plus_q2(self):
        # frozen via the term-by-term oracle sum s^k / k!
        s = q_series({1: 1, 2: 1}, 3)
        expected = {0: Fraction(1), 1: Fraction(1), 2: Fraction(3, 2), 3: Fraction(7, 6)}
        by_oracle = q_series({}, 3)
        power = q_series({0: 1}, 3)
        fact = 1
        for k in range(0, 4):
            if k:
                power = power * s
                fact *= k
            by_oracle = by_oracle + power.scale(Fraction(1, fact))
        assert by_oracle == q_series(expected, 3)
        assert series_exp(s) == by_oracle

    def test_log_exp_roundtrip(self):
        s = q_series({1: 2, 2: -1, 3: Fraction(1, 3)}, 4)
        assert series_log(series_exp(s)) == s

    def test_nonzero_constant_rejected(self):
        with pytest.raises(DomainError):
            series_exp(q_series({0: 1, 1: 1}, 2))


class TestReversion:
    def test_q_plus_q2(self):
        # frozen by fixed-point iteration t <- Q - t^2, then verified below
        t = series_reversion(q_series({1: 1, 2: 1}, 3))
        assert t == q_series({1: 1, 2: -1, 3: 2}, 3)

    def test_identity(self):
        assert series_reversion(q_series({1: 1}, 4)) == q_series({1: 1}, 4)

    def test_q_exp_q_roundtrip(self):
        s = series_mul(q_series({1: 1}, 5), series_exp(q_series({1: 1}, 5)))
        t = series_reversion(s)
        assert series_compose(s, t) == q_series({1: 1}, 5)
        assert series_compose(t, s) == q_series({1: 1}, 5)

    @given(
        st.lists(
            st.fractions(min_value=Fraction(-3), max_value=Fraction(3), max_denominator=2),
            min_size=0,
            max_size=3,
        ),
        st.sampled_from([1, -1, 2, Fraction(1, 2)]),
    )
    @settings(max_examples=60, deadline=None)
    def test_roundtrip_random(self, tail, lead):
        coeffs = {1: lead}
        coeffs.update({d + 2: c for d, c in enumerate(tail)})
        s = q_series(coeffs, 5)
        t = series_reversion(s)
        ident = q_series({1: 1}, 5)
        assert series_compose(s, t) == ident
        assert series_compose(t, s) == ident

    def test_not_reversible(self):
        with pytest.raises(NotReversibleError):
            series_reversion(q_series({0: 1, 1: 1}, 3))
        with pytest.raises(NotReversibleError):
            series_reversion(q_series({2: 1}, 3))


class TestSolveImplicit:
    def test_quadratic_catalan(self):
        # L - q L^2 = x with L(0) = x, formal variable
        x = SparsePoly.variable(1, 0)
        rhs = TruncatedSeries.constant(QX, ("q",), (3,), x)
        qs = TruncatedSeries(QX, ("q",), (3,), {(1,): SparsePoly.one(1)})

        def residual(cur):
            return cur - qs * (cur * cur) - rhs

        sol = series_solve_implicit(residual, rhs)
        assert sol.coefficient(1) == x ** 2
        assert sol.coefficient(2) == (x ** 3).scale(2)
        assert residual(sol).is_zero

    def test_linear(self):
        x = SparsePoly.variable(1, 0)
        rhs = TruncatedSeries.constant(QX, ("q",), (4,), x)
        qs = TruncatedSeries(QX, ("q",), (4,), {(1,): SparsePoly.one(1)})

        def residual(cur):
            return cur - qs - rhs

        sol = series_solve_implicit(residual, rhs)
        assert sol == rhs + qs

    def test_geometric_closed_form(self):
        # (L - c) - q L = 0 with L(0) = c: L = c/(1-q), degree-d coefficient c
        c = Fraction(7, 2)
        init = TruncatedSeries.constant(QQ, ("q",), (5,), c)
        qs = TruncatedSeries.from_rationals(QQ, ("q",), (5,), {(1,): 1})

        def residual(cur):
            return cur - TruncatedSeries.constant(QQ, ("q",), (5,), c) - qs * cur

        sol = series_solve_implicit(residual, init)
        assert all(sol.coefficient(d) == c for d in range(6))
        assert residual(sol).is_zero

    def test_determinism(self):
        c = Fraction(3)
        init = TruncatedSeries.constant(QQ, ("q",), (4,), c)
        qs = TruncatedSeries.from_rationals(QQ, ("q",), (4,), {(1,): 1})

        def residual(cur):
            return cur - TruncatedSeries.constant(QQ, ("q",), (4,), c) - qs * (cur * cur)

        a = series_solve_implicit(residual, init)
        b = series_solve_implicit(residual, init)
        assert a == b

    def test_singular_linearization(self):
        init = TruncatedSeries.constant(QQ, ("q",), (3,), Fraction(0))
        qs = TruncatedSeries.from_rationals(QQ, ("q",), (3,), {(1,): 1})

        def residual(cur):
            # residual q^1 coefficient is 1 regardless of the unknown
            return cur * cur - qs

        with pytest.raises(SingularEquationError):
            series_solve_implicit(residual, init)


class TestSubstituteQScaled:
    def _h_series(self, coeffs, order):
        return TruncatedSeries(
            QH, ("q",), (order,), {(d,): HRational.from_rational(c) for d, c in coeffs.items()}
        )

    def test_constant(self):
        s = self._h_series({0: 1}, 2)
        out = substitute_q_scaled(s, 2)
        assert out.coefficient((0, 0)) == HRational.one()
        assert out.coefficient((1, 0)).is_zero

    def test_degree_one(self):
        s = self._h_series({1: 1}, 2)
        out = substitute_q_scaled(s, 2)
        h = HRational(Poly.x(), Poly.one())
        assert out.coefficient((0, 1)) == HRational.one()
        assert out.coefficient((1, 1)) == h
        assert out.coefficient((2, 1)) == h * h * Fraction(1, 2)

    def test_degree_two(self):
        s = self._h_series({2: 1}, 2)
        out = substitute_q_scaled(s, 1)
        assert out.coefficient((1, 2)) == HRational(Poly([0, 2]), Poly.one())


class TestXLaurentRing:
    def test_invert_requires_single_scalar_part(self):
        from sqmirror.kernel import XLaurent

        u = XLaurent(3, -4, {(0, 0): 2, (1, -1): 3})
        assert u * u.invert() == XLaurent.one(3, -4)
        # the floor must be deep enough to hold the full inverse
        unit_with_shift = XLaurent(3, -6, {(0, 2): Fraction(1, 2), (1, 0): 1})
        assert unit_with_shift * unit_with_shift.invert() == XLaurent.one(3, -6)
        with pytest.raises(NotInvertibleError):
            XLaurent(3, -4, {(1, 0): 1}).invert()
        with pytest.raises(NotInvertibleError):
            XLaurent(3, -4, {(0, 0): 1, (0, 1): 1}).invert()

    def test_parameter_mismatch(self):
        from sqmirror.kernel import XLaurent

        with pytest.raises(RingMismatchError):
            XLaurent.one(3, -4) * XLaurent.one(3, -5)
        with pytest.raises(RingMismatchError):
            XLaurent.one(3, -4) + XLaurent.one(2, -4)

    def test_nilpotency_and_floor(self):
        from sqmirror.kernel import XLaurent

        x = XLaurent(3, -4, {(1, 0): 1})
        assert (x ** 3).is_zero
        deep = XLaurent(3, -4, {(0, -5): 1})
        assert deep.is_zero  # below floor at construction


class TestRingAxioms:
    @given(
        st.lists(
            st.fractions(min_value=Fraction(-3), max_value=Fraction(3), max_denominator=2),
            min_size=0,
            max_size=4,
        ),
        st.lists(
            st.fractions(min_value=Fraction(-3), max_value=Fraction(3), max_denominator=2),
            min_size=0,
            max_size=4,
        ),
        st.lists(
            st.fractions(min_value=Fraction(-3), max_value=Fraction(3), max_denominator=2),
            min_size=0,
            max_size=4,
        ),
    )
    @settings(max_examples=80, deadline=None)
    def test_associativity_distributivity(self, ca, cb, cc):
        a = q_series(dict(enumerate(ca)), 3)
        b = q_series(dict(enumerate(cb)), 3)
        c = q_series(dict(enumerate(cc)), 3)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + (b + c) == (a + b) + c
        assert a * b == b * a

    def test_zero_series_is_absorbed(self):
        z = TruncatedSeries.zero(QQ, ("q",), (3,))
        s = q_series({0: 2, 1: 1}, 3)
        assert s + z == s
        assert (s * z).is_zero
