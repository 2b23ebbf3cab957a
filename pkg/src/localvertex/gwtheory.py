"""The q = e^(iu) change of variables and Gromov-Witten extraction.

A rational function of q with a pole at q = 1 becomes a Laurent series in
u; the logarithm of the vertex partition function then exposes the
GW invariants as the coefficients of u^(2g-2) Q_c^m Q^j.  All expansion
is exact (Gaussian-rational Taylor coefficients of e^(iu)), never
numerical, and every extracted value is asserted to be real and to sit
on an even u-power.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .qfield import QRat
from .rationality import FitError, RationalFit, check_Q_functional, fit_rational
from .series import GaussianRational, TruncSeries, polylog_series
from .vertex import SCache, VertexError, pt_series, z_hirzebruch

G = GaussianRational


class RealityError(ArithmeticError):
    """A value that must be real (or an even u-power) is not; a bug."""


# ---------------------------------------------------------------------------
# q = e^(iu) expansion of a single rational function


def _t_multiplicity_at_one(poly) -> int:
    """Multiplicity of the root t = 1 of a dense (high-first) ZZ poly."""
    from sympy.polys.domains import ZZ
    from sympy.polys.densearith import dup_exquo
    from sympy.polys.densetools import dup_eval

    count = 0
    while poly and dup_eval(poly, ZZ(1), ZZ) == 0:
        poly = dup_exquo(poly, [ZZ(1), ZZ(-1)], ZZ)
        count += 1
    return count


def _poly_u_series(poly, shift: int, n_terms: int):
    """u-Taylor coefficients of t^shift * poly(t) under t = e^(iu/2).

    Each monomial c*t^k contributes c * (ik/2)^n / n! at u^n.
    """
    out = [G(0)] * n_terms
    degree = len(poly) - 1
    for pos, c in enumerate(poly):
        if not c:
            continue
        k = shift + degree - pos
        c = int(c)
        power = G(c)
        out[0] += power
        for n in range(1, n_terms):
            power = power * G(0, Fraction(k, 2))
            out[n] += power * Fraction(1, factorial(n))
    return out


def to_u_series(a: QRat, u_order: int) -> TruncSeries:
    """Expand a(q) around q = 1 as a Laurent series in u, q = e^(iu).

    The pole order at q = 1 becomes the (finite) Laurent depth.  Returns
    a TruncSeries in u with GaussianRational coefficients.
    """
    if a.is_zero():
        return TruncSeries(u_order)
    v = _t_multiplicity_at_one(a.den)
    # the quotient needs u-degrees up to u_order + v of numerator and
    # denominator to pin the result through u^u_order
    n_terms = u_order + 2 * v + 1
    num = _poly_u_series(a.num, a.shift, n_terms)
    den = _poly_u_series(a.den, 0, n_terms)
    for n in range(v):
        if den[n]:
            raise RealityError("denominator valuation mismatch at u^%d" % n)
    lead = den[v]
    if not lead:
        raise RealityError("denominator vanishes to higher order than expected")
    # solve num = den * result for result with u-valuation >= -v
    result = {}
    res_list = []
    for k in range(u_order + v + 1):
        acc = num[k]
        for j in range(1, k + 1):
            acc = acc - den[v + j] * res_list[k - j]
        r = acc / lead
        res_list.append(r)
        if r:
            result[k - v] = r
    return TruncSeries(u_order, result)


def qseries_to_u(series: TruncSeries, u_order: int) -> TruncSeries:
    """Transpose a Q-series with QRat coefficients into a u-series whose
    coefficients are Q-series over Gaussian rationals."""
    outer = {}
    for j in series.degrees():
        u_ser = to_u_series(series.coeffs[j], u_order)
        for h, c in u_ser.coeffs.items():
            outer.setdefault(h, {})[j] = c
    return TruncSeries(
        u_order, {h: TruncSeries(series.order, cs) for h, cs in outer.items()}
    )


def u_coefficient_real(inner: TruncSeries) -> TruncSeries:
    """Convert a Q-series over Gaussian rationals to Fractions, asserting realness."""
    out = {}
    for d, c in inner.coeffs.items():
        if isinstance(c, G):
            if not c.is_real():
                raise RealityError("imaginary part survives at Q^%d" % d)
            out[d] = c.re
        else:
            out[d] = Fraction(c)
    return TruncSeries(inner.order, out)


# ---------------------------------------------------------------------------
# GW tables


@dataclass
class GWTable:
    """Exact GW invariants GW_{g, m*c + j*b} of K_{F_r}."""

    r: int
    g_max: int
    m_max: int
    j_max: int
    entries: dict = field(default_factory=dict)  # (g, m, j) -> Fraction

    def value(self, g: int, m: int, j: int) -> Fraction:
        return self.entries.get((g, m, j), Fraction(0))

    def column(self, g: int, m: int) -> TruncSeries:
        """The series sum_j GW_{g, m*c + j*b} Q^j as a truncated Q-series."""
        return TruncSeries(
            self.j_max,
            {j: self.value(g, m, j) for j in range(self.j_max + 1)},
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["g", "m", "j", "value_num", "value_den"])
        for (g, m, j) in sorted(self.entries):
            v = self.entries[(g, m, j)]
            writer.writerow([g, m, j, v.numerator, v.denominator])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "bounds": {"g_max": self.g_max, "m_max": self.m_max, "j_max": self.j_max},
            "entries": [
                {
                    "g": g,
                    "m": m,
                    "j": j,
                    "num": v.numerator,
                    "den": v.denominator,
                }
                for (g, m, j), v in sorted(self.entries.items())
            ],
        }


def log_z(r: int, m_max: int, order: int, cache: SCache = None) -> dict:
    """Coefficients [Q_c^m] log Z as Q-series with QRat coefficients."""
    z = z_hirzebruch(r, m_max, order, cache=cache)
    logs = {0: z[0].log()}
    if m_max >= 1:
        z0_inv = z[0].inverse()
        x = {m: z[m] * z0_inv for m in range(1, m_max + 1)}
        acc = {m: TruncSeries(order) for m in range(1, m_max + 1)}
        power = dict(x)
        for n in range(1, m_max + 1):
            coeff = Fraction((-1) ** (n + 1), n)
            for m in range(n, m_max + 1):
                acc[m] = acc[m] + power[m] * coeff
            if n < m_max:
                power = _qc_convolve(power, x, m_max, order)
        logs.update(acc)
    return logs


def _qc_convolve(a: dict, b: dict, m_max: int, order: int) -> dict:
    out = {m: TruncSeries(order) for m in range(1, m_max + 1)}
    for m1, s1 in a.items():
        for m2, s2 in b.items():
            m = m1 + m2
            if m <= m_max:
                out[m] = out[m] + s1 * s2
    return out


def gw_extract(
    r: int, m_max: int, order: int, g_max: int, cache: SCache = None
) -> GWTable:
    """Read GW_{g, m*c + j*b} off the logarithm of the partition function.

    The coefficient of u^(2g-2) Q_c^m Q^j of log Z after q = e^(iu) is the
    invariant; realness and vanishing of odd u-powers are hard assertions.
    The empty slot (g, beta) = (0, 0) never carries a value.
    """
    u_order = 2 * g_max - 2
    logs = log_z(r, m_max, order, cache=cache)
    table = GWTable(r=r, g_max=g_max, m_max=m_max, j_max=order)
    for m, series in logs.items():
        for j in series.degrees():
            u_ser = to_u_series(series.coeffs[j], u_order)
            for h, c in u_ser.coeffs.items():
                if h % 2:
                    raise RealityError(
                        "odd u-power u^%d at Q_c^%d Q^%d" % (h, m, j)
                    )
                if not c.is_real():
                    raise RealityError(
                        "imaginary GW value at (h=%d, m=%d, j=%d)" % (h, m, j)
                    )
                if h < -2:
                    raise RealityError(
                        "u-pole deeper than genus 0 at Q_c^%d Q^%d" % (m, j)
                    )
                g = (h + 2) // 2
                table.entries[(g, m, j)] = c.re
    return table


# ---------------------------------------------------------------------------
# The modified exceptional series and ring membership


def tilde_pt0(order: int, u_order: int, cache: SCache = None) -> TruncSeries:
    """PT_0(e^(iu), Q) * exp(2/u^2 Li_3(Q) + 1/6 Li_1(Q)).

    The exponential factor cancels the genus-0 and genus-1 fiber
    contributions; the result has no u-poles and no odd u-powers, which
    is asserted.  Returned as a u-series whose coefficients are Q-series
    over Gaussian rationals.
    """
    # deep u-poles of the correction factor couple high u-degrees of PT_0
    # down into the reported window, so expand PT_0 further in u
    inner_u_order = u_order + 2 * order
    pt0_u = qseries_to_u(pt_series(0, 0, order, cache=cache), inner_u_order)
    li3 = polylog_series(3, order)
    li1 = polylog_series(1, order)
    correction = TruncSeries(
        inner_u_order, {-2: li3 * 2, 0: li1 * Fraction(1, 6)}
    )
    product = pt0_u * _exp_u_mixed(correction, order)
    result = product.truncate(u_order)
    for h, c in result.coeffs.items():
        if h < 0 or h % 2:
            inner = c if isinstance(c, TruncSeries) else None
            if inner is None or inner:
                raise RealityError("residual singular/odd term at u^%d" % h)
    return result


def _exp_u_mixed(series: TruncSeries, q_order: int) -> TruncSeries:
    """exp of a u-Laurent series whose coefficients have Q-valuation >= 1.

    Convergence is Q-adic: the n-th power has Q-valuation >= n, so the
    sum stops after q_order terms regardless of u-poles.
    """
    result = TruncSeries(series.order, {0: TruncSeries(q_order, {0: 1})})
    term = result
    for n in range(1, q_order + 1):
        term = term * series * Fraction(1, n)
        if not any(term.coeffs.values()):
            break
        result = result + term
    return result


@dataclass
class RMembership:
    """Per-u-degree verification of membership in the ring R_{a,b}."""

    a: int
    b: int
    per_h: dict = field(default_factory=dict)  # h -> dict(fit, fit_ok, symmetry_ok)

    @property
    def passed(self) -> bool:
        return all(
            row["fit_ok"] and row["symmetry_ok"] for row in self.per_h.values()
        )

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "passed": self.passed,
            "per_h": {
                str(h): {
                    "fit_ok": row["fit_ok"],
                    "symmetry_ok": row["symmetry_ok"],
                    "error": row.get("error"),
                    "fit": row["fit"].to_json() if row.get("fit") else None,
                }
                for h, row in sorted(self.per_h.items())
            },
        }


def verify_R(
    useries: TruncSeries, a: int, b: int, h_max: int, h_min: int = None
) -> RMembership:
    """Check each u-coefficient f_h against denominator (1-Q)^(b+h) and the
    symmetry Q^a f_h(1/Q) = (-1)^h f_h(Q).

    Fit failures are recorded per h, not fatal.
    """
    result = RMembership(a=a, b=b)
    lo = h_min if h_min is not None else min(0, useries.valuation() or 0)
    for h in range(lo, h_max + 1):
        coeff = useries.coeffs.get(h)
        if coeff is None or not coeff:
            result.per_h[h] = {"fit_ok": True, "symmetry_ok": True, "fit": None}
            continue
        row = {"fit_ok": False, "symmetry_ok": False, "fit": None}
        try:
            f_h = u_coefficient_real(coeff)
            power = b + h
            denom_spec = ((1, power),) if power > 0 else ()
            fit = fit_rational(f_h, denom_spec)
            row["fit"] = fit
            row["fit_ok"] = True
            row["symmetry_ok"] = check_Q_functional(fit, a, sign=(-1) ** h)
        except (FitError, RealityError) as err:
            row["error"] = str(err)
        result.per_h[h] = row
    return result


# ---------------------------------------------------------------------------
# Eventual polynomiality in j


def finite_differences(values, depth: int):
    """The depth-th forward differences of a sequence."""
    out = list(values)
    for _ in range(depth):
        out = [b - a for a, b in zip(out, out[1:])]
    return out


def polynomiality_check(table: GWTable, g: int, m: int, j_lo: int, j_hi: int):
    """Check that j -> GW_{g, m*c + j*b} is a polynomial of degree
    < 4m + 2g - 2 across [j_lo, j_hi], via vanishing finite differences.

    Returns (passed, report) where the report carries the difference
    order, the window, and the detected polynomial degree.
    """
    depth = 4 * m + 2 * g - 2
    length = j_hi - j_lo + 1
    if length < depth + 1:
        raise ValueError(
            "window of length %d too short for order-%d differences"
            % (length, depth)
        )
    values = [table.value(g, m, j) for j in range(j_lo, j_hi + 1)]
    diffs = finite_differences(values, depth)
    passed = all(d == 0 for d in diffs)
    degree = None
    for k in range(length):
        if any(d != 0 for d in finite_differences(values, k)):
            degree = k
    report = {
        "g": g,
        "m": m,
        "window": [j_lo, j_hi],
        "difference_order": depth,
        "max_nonvanishing_difference_order": degree,
        "passed": passed,
    }
    return passed, report
