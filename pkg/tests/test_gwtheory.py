"""q = e^(iu) expansion, GW extraction, ring membership, polynomiality."""

from fractions import Fraction

import pytest

from localvertex.gwtheory import (
    GWTable,
    RealityError,
    finite_differences,
    gw_extract,
    polynomiality_check,
    qseries_to_u,
    tilde_pt0,
    to_u_series,
    u_coefficient_real,
    verify_R,
)
from localvertex.qfield import QRat
from localvertex.rationality import find_exponent, fit_rational
from localvertex.series import GaussianRational as G
from localvertex.series import TruncSeries

ONE = QRat.one()
Q = QRat.q_power(1)


class TestUExpansion:
    def test_exponential(self):
        got = to_u_series(Q, 3)
        assert got[0] == G(1)
        assert got[1] == G(0, 1)
        assert got[2] == G(Fraction(-1, 2))
        assert got[3] == G(0, Fraction(-1, 6))

    def test_bernoulli(self):
        got = to_u_series(ONE / (ONE - Q), 1)
        assert got[-1] == G(0, 1)
        assert got[0] == G(Fraction(1, 2))
        assert got[1] == G(0, Fraction(-1, 12))

    def test_double_pole(self):
        got = to_u_series(Q * 2 / (ONE - Q) ** 2, 4)
        assert got[-2] == G(-2)
        assert got.coeffs.get(-1) is None
        assert got[0] == G(Fraction(-1, 6))
        assert got.coeffs.get(1) is None
        assert got[2] == G(Fraction(-1, 120))
        assert got[4] == G(Fraction(-1, 3024))

    def test_zero(self):
        assert to_u_series(QRat.zero(), 3) == TruncSeries(3)

    def test_realness_conversion(self):
        inner = TruncSeries(2, {1: G(Fraction(1, 3))})
        assert u_coefficient_real(inner)[1] == Fraction(1, 3)
        with pytest.raises(RealityError):
            u_coefficient_real(TruncSeries(2, {1: G(0, 1)}))

    def test_transpose(self):
        series = TruncSeries(2, {1: Q * 2 / (ONE - Q) ** 2})
        got = qseries_to_u(series, 2)
        assert got[-2][1] == G(-2)
        assert got[0][1] == G(Fraction(-1, 6))


class TestGWClosedForms:
    def test_fiber_genus_zero(self, gw_table_r0):
        for j in range(1, 5):
            assert gw_table_r0.value(0, 0, j) == Fraction(-2, j**3)

    def test_fiber_genus_one(self, gw_table_r0):
        for j in range(1, 5):
            assert gw_table_r0.value(1, 0, j) == Fraction(-1, 6 * j)

    def test_excluded_slot(self, gw_table_r0):
        assert (0, 0, 0) not in gw_table_r0.entries
        assert (1, 0, 0) not in gw_table_r0.entries

    def test_section_genus_zero_r0(self, gw_table_r0):
        for j in range(6):
            assert gw_table_r0.value(0, 1, j) == -2 * (j + 1)

    def test_section_genus_zero_r1(self, gw_table_r1):
        for j in range(6):
            assert gw_table_r1.value(0, 1, j) == 2 * j + 1

    def test_fiber_classes_agree_across_r(self, gw_table_r0, gw_table_r1):
        """GW of the fiber class only sees the ruling, not r."""
        for g in range(4):
            for j in range(1, 6):
                assert gw_table_r0.value(g, 0, j) == gw_table_r1.value(g, 0, j)


class TestGWTable:
    def test_column(self, gw_table_r0):
        col = gw_table_r0.column(0, 1)
        assert col[3] == -8

    def test_csv_shape(self):
        table = GWTable(r=0, g_max=0, m_max=0, j_max=1)
        table.entries[(0, 0, 1)] = Fraction(-2)
        lines = table.to_csv().strip().splitlines()
        assert lines[0] == "g,m,j,value_num,value_den"
        assert lines[1] == "0,0,1,-2,1"

    def test_json_shape(self, gw_table_r0):
        doc = gw_table_r0.to_json()
        assert doc["r"] == 0
        assert {"g", "m", "j", "num", "den"} <= set(doc["entries"][0])


class TestTildeSeries:
    def test_no_poles_no_odd_powers(self, tilde_series):
        assert tilde_series.degrees() == [0, 2, 4, 6]

    def test_constant_term(self, tilde_series):
        f0 = u_coefficient_real(tilde_series[0])
        assert f0 == TruncSeries(f0.order, {0: 1})

    def test_u2_coefficient_is_li(self, tilde_series):
        # c_2 * Li_{-1}(Q) with c_2 = -1/120 from 2e^{iu}/(1-e^{iu})^2
        f2 = u_coefficient_real(tilde_series[2])
        for j in range(1, f2.order + 1):
            assert f2[j] == Fraction(-j, 120)

    def test_membership(self, tilde_series):
        report = verify_R(tilde_series, 0, 0, 6)
        assert report.passed
        doc = report.to_json()
        assert doc["passed"] is True
        assert set(doc["per_h"]) == {str(h) for h in range(7)}


class TestVerifyR:
    def test_single_li_function(self):
        li = TruncSeries(8, {d: Fraction(d) for d in range(9)})
        useries = TruncSeries(2, {2: li.map_coeffs(G)})
        report = verify_R(useries, 0, 0, 2)
        assert report.passed

    def test_zero_series(self):
        report = verify_R(TruncSeries(4), 0, 0, 4)
        assert report.passed

    def test_failure_recorded_not_fatal(self):
        geo = TruncSeries(8, {d: G(1) for d in range(9)})
        report = verify_R(TruncSeries(2, {0: geo}), 0, 0, 2)
        assert not report.passed
        assert not report.per_h[0]["symmetry_ok"]


class TestPolynomiality:
    def test_finite_differences(self):
        assert finite_differences([1, 4, 9, 16], 2) == [2, 2]
        assert finite_differences([5, 5, 5], 1) == [0, 0]

    def test_constant_passes(self):
        table = GWTable(r=0, g_max=0, m_max=1, j_max=9)
        for j in range(10):
            table.entries[(0, 1, j)] = Fraction(7)
        passed, report = polynomiality_check(table, 0, 1, 2, 8)
        assert passed
        assert report["difference_order"] == 2

    def test_degree_too_high_fails(self):
        table = GWTable(r=0, g_max=0, m_max=1, j_max=9)
        for j in range(10):
            table.entries[(0, 1, j)] = Fraction(j**2)
        passed, report = polynomiality_check(table, 0, 1, 2, 8)
        assert not passed
        assert report["max_nonvanishing_difference_order"] == 2

    def test_short_window_rejected(self):
        table = GWTable(r=0, g_max=1, m_max=1, j_max=9)
        with pytest.raises(ValueError):
            polynomiality_check(table, 1, 1, 3, 5)

    def test_genus_zero_section_r0(self, gw_table_r0):
        passed, _ = polynomiality_check(gw_table_r0, 0, 1, 2, 8)
        assert passed


class TestColumnRationality:
    def test_genus_columns_fit_and_unique_exponent(self, gw_table_r0):
        for g in range(4):
            fit = fit_rational(gw_table_r0.column(g, 1), ((1, 2 + 2 * g),))
            assert fit.surplus >= 3
            assert find_exponent(fit, -8, 8) == -2
