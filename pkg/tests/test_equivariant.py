from fractions import Fraction

import pytest

from sqmirror.equivariant import (
    check_exponential_regularity,
    check_mirror_identity,
    check_polynomiality,
    check_recursivity,
    default_hurwitz_provider,
    edge_coefficient_via_euler,
    phi_series,
    reconstruct_z,
    recursion_coefficient,
    secondary_coefficients_y,
    y_equivariant,
    y_equivariant_family,
    y_equivariant_formal,
)
from sqmirror.errors import FrameError, TheoremDomainError
from sqmirror.frames import FixedPointFrame, random_frames, validate_frame
from sqmirror.kernel import (
    QH,
    HRational,
    Poly,
    TruncatedSeries,
    series_invert,
    series_mul,
    lift_rational_series,
)
from sqmirror.mirror import i_series, y_series


def frame2() -> FixedPointFrame:
    return FixedPointFrame(2, (Fraction(3), Fraction(7)), 0)


class TestFrames:
    def test_distinctness_required(self):
        with pytest.raises(FrameError):
            FixedPointFrame(2, (Fraction(1), Fraction(1)))

    def test_validate_rejects_zero_weight(self):
        with pytest.raises(FrameError):
            validate_frame(FixedPointFrame(2, (Fraction(0), Fraction(1))), (), 2)

    def test_validate_rejects_resonant(self):
        # (a2 - a1)/2 == (a3 - a1)/1 collides for (0?,...) -> craft: a1=1, a2=5, a3=3
        frame = FixedPointFrame(3, (Fraction(1), Fraction(5), Fraction(3)))
        with pytest.raises(FrameError):
            validate_frame(frame, (), 2)

    def test_random_frames_reproducible(self):
        a = random_frames(5, (5,), 4, 3, seed=11)
        b = random_frames(5, (5,), 4, 3, seed=11)
        assert [f.alpha for f in a] == [f.alpha for f in b]
        for f in a:
            validate_frame(f, (5,), 4)


class TestYEquivariant:
    def test_untwisted_n2_degree_one(self):
        ys = y_equivariant(frame2(), (), 2)
        # 1/(h * (a1 - a2 + h)) with a1 - a2 = -4
        expected = HRational(Poly.one(), Poly.x() * Poly.linear(-4, 1))
        assert ys.coefficient(1) == expected

    def test_degree_zero_is_one(self):
        assert y_equivariant(frame2(), (3, -1), 3).coefficient(0) == HRational.one()

    def test_pole_order_bound(self):
        fr = random_frames(5, (5,), 4, 1, seed=3)[0]
        ys = y_equivariant(fr, (5,), 4)
        for d in range(1, 5):
            c = ys.coefficient(d)
            assert c.den.valuation <= d

    def test_formal_zero_mode_matches_series(self):
        for n, a in [(2, ()), (3, (2,)), (5, (5,)), (5, (3, -1)), (5, (-2,))]:
            formal = y_equivariant_formal(n, a, 3, 6)
            direct = y_series(n, a, 3, 6)
            for d in range(4):
                assert formal.coefficient(d) == direct.coefficient(d)


class TestStructureCoefficients:
    def test_untwisted_n2(self):
        assert recursion_coefficient(frame2(), (), 1, 1) == Fraction(1, 4)
        assert edge_coefficient_via_euler(frame2(), (), 1, 1) == Fraction(1, 4)

    def test_twisted_n2(self):
        # 2 a2 (a1 + a2) / (a2 - a1) at a = (3, 7)
        expected = Fraction(2 * 7 * 10, 4)
        assert recursion_coefficient(frame2(), (2,), 1, 1) == expected
        assert edge_coefficient_via_euler(frame2(), (2,), 1, 1) == expected

    def test_zero_numerator_factor(self):
        # choose weights so that a_k alpha_i + r (alpha_j - alpha_i)/d = 0:
        # a=(1), alpha_i=2, alpha_j-alpha_i = -2, d = 1, r = 1
        frame = FixedPointFrame(2, (Fraction(2), Fraction(0)), 0)
        assert recursion_coefficient(frame, (1,), 1, 1) == 0

    def test_euler_route_matches_everywhere(self):
        cases = [(2, ()), (3, (2,)), (5, (5,)), (5, (3, -1)), (5, (-2,))]
        for n, a in cases:
            fr = random_frames(n, a, 4, 1, seed=5)[0]
            for i in range(n):
                fi = fr.with_fixed_point(i)
                for j in range(n):
                    if j == i:
                        continue
                    for d in range(1, 5):
                        assert recursion_coefficient(
                            fi, a, j, d
                        ) == edge_coefficient_via_euler(fi, a, j, d)


class TestRecursivity:
    def test_untwisted_worked_example(self):
        fr = frame2()
        family = y_equivariant_family(fr, (), 1)
        report = check_recursivity(fr, family, (), 1)
        assert report.passed
        # remainder at i = 0 is -1/(c h) with c = a2 - a1 = 4
        assert report.remainders[0] == HRational(
            Poly.const(Fraction(-1, 4)), Poly.x()
        )

    def test_degree_zero(self):
        fr = frame2()
        family = y_equivariant_family(fr, (), 1)
        report = check_recursivity(fr, family, (), 0)
        assert report.passed
        assert report.remainders[0] == HRational.one()

    def test_quintic_three_frames(self):
        for fr in random_frames(5, (5,), 3, 3, seed=9):
            family = y_equivariant_family(fr, (5,), 3)
            for d_star in range(1, 4):
                assert check_recursivity(fr, family, (5,), d_star).passed

    def test_six_weights(self):
        fr = random_frames(6, (5,), 3, 1, seed=9)[0]
        family = y_equivariant_family(fr, (5,), 3)
        for d_star in range(1, 4):
            assert check_recursivity(fr, family, (5,), d_star).passed

    def test_remainders_match_secondary_coefficients(self):
        for n, a in [(2, ()), (3, (2,)), (5, (3, -1))]:
            fr = random_frames(n, a, 3, 1, seed=13)[0]
            family = y_equivariant_family(fr, a, 3)
            data = secondary_coefficients_y(fr, a, 3)
            for d_star in range(1, 4):
                report = check_recursivity(fr, family, a, d_star)
                assert report.passed
                for i in range(n):
                    expected = HRational.zero()
                    for r in range(-d_star, 1):
                        expected = expected + HRational.from_rational(
                            data.secondary[(i, r, d_star)]
                        ).shift_h(r)
                    assert report.remainders[i] == expected

    def test_secondary_examples(self):
        fr = frame2()
        data = secondary_coefficients_y(fr, (), 1)
        assert data.secondary[(0, -1, 1)] == Fraction(1, 3 - 7)
        fr5 = random_frames(5, (5,), 2, 1, seed=2)[0]
        data5 = secondary_coefficients_y(fr5, (5,), 2)
        assert all(data5.secondary[(i, 0, 1)] == 120 for i in range(5))
        # below the borderline the r = 0 row vanishes in positive degree
        fr4 = random_frames(4, (2,), 2, 1, seed=2)[0]
        data4 = secondary_coefficients_y(fr4, (2,), 2)
        assert all(data4.secondary[(i, 0, d)] == 0 for i in range(4) for d in (1, 2))


class TestPolynomiality:
    def test_untwisted_z0q0_cancels(self):
        fr = frame2()
        family = y_equivariant_family(fr, (), 3)
        phi = phi_series(fr, (), family, 3, 2)
        assert phi.coefficient((0, 0)).is_zero

    def test_constant_family_is_h_free(self):
        fr = frame2()
        ones = [TruncatedSeries.one(QH, ("q",), (3,)) for _ in range(2)]
        phi = phi_series(fr, (), ones, 3, 2)
        assert check_polynomiality(phi).passed
        for c in phi.coeffs.values():
            assert c.den == Poly.one() and c.num.degree <= 0

    def test_negative_control(self):
        fr = FixedPointFrame(1, (Fraction(2),), 0)
        f = TruncatedSeries(
            QH,
            ("q",),
            (3,),
            {(0,): HRational.one(), (1,): HRational(Poly.one(), Poly.x())},
        )
        report = check_polynomiality(phi_series(fr, (), [f], 3, 2))
        assert not report.passed
        assert "(0, 2)" in report.witness

    def test_quintic(self):
        fr = random_frames(5, (5,), 3, 1, seed=21)[0]
        family = y_equivariant_family(fr, (5,), 3)
        phi = phi_series(fr, (5,), family, 3, 3)
        assert check_polynomiality(phi).passed


class TestReconstruction:
    def test_untwisted_equals_y(self):
        fr = random_frames(2, (), 3, 1, seed=17)[0]
        provider = default_hurwitz_provider(fr, (), 3)
        recon = reconstruct_z(fr, (), 3, provider)
        family = y_equivariant_family(fr, (), 3)
        for i in range(2):
            for d in range(4):
                assert recon[i].coefficient(d) == family[i].coefficient(d)

    def test_degree_zero_is_one(self):
        fr = frame2()
        recon = reconstruct_z(fr, (), 1, default_hurwitz_provider(fr, (), 1))
        assert all(recon[i].coefficient(0) == HRational.one() for i in range(2))

    def test_quintic_equals_y_over_i(self):
        fr = random_frames(5, (5,), 3, 1, seed=17)[0]
        provider = default_hurwitz_provider(fr, (5,), 3)
        recon = reconstruct_z(fr, (5,), 3, provider)
        inv_i = lift_rational_series(QH, series_invert(i_series(5, (5,), 3)))
        family = y_equivariant_family(fr, (5,), 3)
        for i in range(5):
            target = series_mul(family[i], inv_i)
            for d in range(4):
                assert recon[i].coefficient(d) == target.coefficient(d)

    def test_missing_provider_data(self):
        from sqmirror.errors import DependencyError

        fr = frame2()

        def provider(i, b1, b2):
            raise KeyError((i, b1, b2))

        with pytest.raises(DependencyError):
            reconstruct_z(fr, (), 2, provider)


class TestMirrorIdentity:
    def test_domain(self):
        fr = random_frames(4, (2,), 2, 1, seed=1)[0]
        with pytest.raises(TheoremDomainError):
            check_mirror_identity(fr, (5,), 2)

    def test_small_tuple(self):
        fr = random_frames(4, (2,), 3, 1, seed=23)[0]
        assert check_mirror_identity(fr, (2,), 3).passed

    def test_mixed_signs(self):
        fr = random_frames(5, (3, -1), 3, 1, seed=23)[0]
        assert check_mirror_identity(fr, (3, -1), 3).passed

    def test_frame_independence(self):
        verdicts = [
            check_mirror_identity(fr, (5,), 2).passed
            for fr in random_frames(5, (5,), 2, 3, seed=29)
        ]
        assert verdicts == [True, True, True]


class TestRegularity:
    def test_quintic(self):
        fr = random_frames(5, (5,), 3, 1, seed=31)[0]
        assert check_exponential_regularity(fr, (5,), 3).passed

    def test_report_json_shape(self):
        fr = frame2()
        report = check_exponential_regularity(fr, (), 2)
        record = report.to_json()
        assert record["check"] == "regularity"
        assert record["pass"] is True
        assert record["n"] == 2
