"""Rational reconstruction, functional equations, Weyl involution."""

from fractions import Fraction
from math import factorial

import pytest

from localvertex.qfield import QRat
from localvertex.rationality import (
    FitError,
    WeylClass,
    check_Q_functional,
    check_q_inversion,
    denominator_series,
    find_exponent,
    fit_rational,
    normalized_pt,
    w_dot_beta,
    weyl_reflect,
)
from localvertex.series import TruncSeries


def geometric(order):
    return TruncSeries(order, {d: 1 for d in range(order + 1)})


class TestFit:
    def test_geometric(self):
        fit = fit_rational(geometric(8), ((1, 1),), window=(0, 0))
        assert fit.numerator == {0: 1}
        assert fit.surplus == 8

    def test_odd_numbers(self):
        series = TruncSeries(8, {d: 2 * d + 1 for d in range(9)})
        fit = fit_rational(series, ((1, 2),), window=(0, 1))
        assert fit.numerator == {0: 1, 1: 1}

    def test_exponential_rejected(self):
        series = TruncSeries(8, {d: Fraction(1, factorial(d)) for d in range(9)})
        with pytest.raises(FitError):
            fit_rational(series, ((1, 2),))

    def test_auto_window(self):
        series = TruncSeries(9, {d: 2 * d + 1 for d in range(10)})
        fit = fit_rational(series, ((1, 2),))
        assert fit.numerator == {0: 1, 1: 1}
        assert fit.surplus >= 3

    def test_window_needs_surplus(self):
        with pytest.raises(FitError):
            fit_rational(geometric(4), ((1, 1),), window=(0, 2))

    def test_expand_round_trip(self):
        series = TruncSeries(8, {d: (d + 1) * (d + 2) // 2 for d in range(9)})
        fit = fit_rational(series, ((1, 3),))
        assert fit.expand(8) == series

    def test_zero_series(self):
        fit = fit_rational(TruncSeries(6), ((1, 2),))
        assert fit.is_zero()
        assert check_Q_functional(fit, a=17)

    def test_denominator_series(self):
        got = denominator_series(((1, 1), (2, 1)), 4)
        assert got == TruncSeries(4, {0: 1, 1: -1, 2: -1, 3: 1})

    def test_to_json(self):
        fit = fit_rational(geometric(8), ((1, 1),))
        doc = fit.to_json()
        assert doc["denom_spec"] == [[1, 1]]
        assert doc["numerator"] == {"0": {"num": 1, "den": 1}}


class TestQFunctional:
    def test_li_minus_one_symmetric(self):
        series = TruncSeries(8, {d: d for d in range(9)})  # Q/(1-Q)^2
        fit = fit_rational(series, ((1, 2),))
        assert check_Q_functional(fit, a=0)
        assert find_exponent(fit, -4, 4) == 0

    def test_antisymmetric(self):
        series = TruncSeries(8, {0: 1, **{d: 2 for d in range(1, 9)}})  # (1+Q)/(1-Q)
        fit = fit_rational(series, ((1, 1),))
        assert check_Q_functional(fit, a=0, sign=-1)
        assert not check_Q_functional(fit, a=0)

    def test_geometric_not_symmetric(self):
        fit = fit_rational(geometric(8), ((1, 1),))
        assert not check_Q_functional(fit, a=0)

    def test_monomial_exponent(self):
        fit = fit_rational(TruncSeries(8, {2: 1}), ())
        assert find_exponent(fit, -8, 8) == 4

    def test_zero_rejected(self):
        fit = fit_rational(TruncSeries(6), ((1, 1),))
        assert find_exponent(fit, -4, 4) is None


class TestQInversion:
    def test_constant(self):
        ok, witness = check_q_inversion(TruncSeries(2, {0: QRat.one()}))
        assert ok and witness is None

    def test_asymmetric_witness(self):
        ok, witness = check_q_inversion(TruncSeries(2, {1: QRat.q_power(1)}))
        assert not ok
        assert witness == 1

    def test_palindromic_coefficient(self):
        one = QRat.one()
        q = QRat.q_power(1)
        series = TruncSeries(1, {1: q * 2 / (one - q) ** 2})
        ok, _ = check_q_inversion(series)
        assert ok


class TestNormalizedPT:
    def test_rejects_m0(self):
        with pytest.raises(ValueError):
            normalized_pt(0, 0, 2)

    def test_constant_term_matches_numerator(self, scache):
        from localvertex.vertex import pt_series

        norm = normalized_pt(0, 1, 4, cache=scache)
        assert norm[0] == pt_series(0, 1, 4, cache=scache)[0]

    def test_q_inversion_small(self, scache):
        ok, witness = check_q_inversion(normalized_pt(0, 1, 5, cache=scache))
        assert ok, witness


class TestWeyl:
    def test_pairing(self):
        assert w_dot_beta(1, 0, 0) == -2
        assert w_dot_beta(1, 0, 1) == -1
        assert w_dot_beta(2, 3, 0) == -10

    def test_reflect_example(self):
        got = weyl_reflect(WeylClass(r=0, m=1, j=0, n=5), r_surface=0)
        assert got == WeylClass(r=0, m=1, j=-2, n=-5)

    def test_zero_class_fixed_up_to_n(self):
        got = weyl_reflect(WeylClass(r=0, m=0, j=0, n=3), r_surface=1)
        assert got == WeylClass(r=0, m=0, j=0, n=-3)

    def test_involution(self):
        for r_surface in (0, 1, 2):
            for cls in (
                WeylClass(0, 1, 2, 3),
                WeylClass(1, 2, -1, -4),
                WeylClass(2, 0, 5, 0),
            ):
                assert weyl_reflect(weyl_reflect(cls, r_surface), r_surface) == cls
