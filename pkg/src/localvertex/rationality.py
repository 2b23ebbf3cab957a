"""Rational reconstruction from truncated series and functional equations.

A fit certifies that a truncated Q-series is the expansion of
num(Q) / prod_i (1 - Q^(a_i))^(e_i) by multiplying through and demanding
that every coefficient beyond the numerator window vanish; the count of
vanishing surplus coefficients is the confidence certificate (>= 3 for
an accepted fit).

Functional equations in Q are checked on the reconstructed rational
function by exact numerator manipulation, never on truncations: Q -> 1/Q
is ill-defined on a one-sided expansion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .qfield import QRat
from .series import TruncSeries, _is_zero
from .vertex import SCache, pt_series


class FitError(ArithmeticError):
    """The series is not rational with the prescribed denominator."""

    def __init__(self, message, offending_degree=None):
        super().__init__(message)
        self.offending_degree = offending_degree


@dataclass
class RationalFit:
    """A certified rational function num(Q)/prod (1-Q^a)^e."""

    numerator: dict  # Q-degree -> coefficient (Fraction or QRat), Laurent
    denom_spec: tuple  # ((a, e), ...) meaning prod (1 - Q^a)^e
    surplus: int
    order: int  # truncation order of the fitted input

    def denominator_degree(self) -> int:
        return sum(a * e for a, e in self.denom_spec)

    def expand(self, order: int) -> TruncSeries:
        """Re-expand the fit as a truncated series (for certification)."""
        num = TruncSeries(order, dict(self.numerator))
        series = num
        for a, e in self.denom_spec:
            base = TruncSeries(order, {0: 1, a: -1})
            series = series * base.pow_int(-e)
        return series

    def is_zero(self) -> bool:
        return not self.numerator

    def to_json(self):
        return {
            "numerator": {str(d): _coeff_json(c) for d, c in sorted(self.numerator.items())},
            "denom_spec": [list(p) for p in self.denom_spec],
            "surplus": self.surplus,
            "order": self.order,
        }


def _coeff_json(c):
    if isinstance(c, QRat):
        return c.to_json()
    c = Fraction(c)
    return {"num": c.numerator, "den": c.denominator}


def denominator_series(denom_spec, order: int) -> TruncSeries:
    """The polynomial prod (1 - Q^a)^e as a truncated series."""
    out = TruncSeries.one(order)
    for a, e in denom_spec:
        out = out * TruncSeries(order, {0: 1, a: -1}).pow_int(e)
    return out


def fit_rational(series: TruncSeries, denom_spec, window=None) -> RationalFit:
    """Reconstruct series = num(Q) / prod (1-Q^a)^e with a surplus certificate.

    ``window`` is the inclusive (lo, hi) degree interval allowed for the
    numerator.  When omitted, the window starts at
    [valuation, deg(denominator)] and the upper end is widened on failure
    while a surplus of at least 3 matched coefficients remains.
    """
    denom_spec = tuple(sorted(tuple(p) for p in denom_spec))
    cleared = series * denominator_series(denom_spec, series.order)
    degrees = cleared.degrees()
    if not degrees:
        return RationalFit({}, denom_spec, surplus=series.order, order=series.order)
    lo = min(degrees[0], 0)
    if window is not None:
        lo, hi = window
        if series.order < hi + 3:
            raise FitError(
                "truncation order %d leaves no surplus beyond window end %d"
                % (series.order, hi)
            )
        return _attempt(cleared, denom_spec, lo, hi, series.order)
    hi = max(lo + sum(a * e for a, e in denom_spec), degrees[0])
    last_error = None
    while series.order - hi >= 3:
        try:
            return _attempt(cleared, denom_spec, lo, hi, series.order)
        except FitError as err:
            last_error = err
            hi = max(hi + 1, err.offending_degree or hi + 1)
    raise last_error or FitError("no admissible window leaves a surplus of 3")


def _attempt(cleared, denom_spec, lo, hi, order):
    numerator = {}
    for d in cleared.degrees():
        c = cleared.coeffs[d]
        if lo <= d <= hi:
            numerator[d] = c
        else:
            raise FitError(
                "nonvanishing coefficient at Q^%d outside window [%d, %d]"
                % (d, lo, hi),
                offending_degree=d,
            )
    return RationalFit(numerator, denom_spec, surplus=order - hi, order=order)


def check_Q_functional(fit: RationalFit, a: int, sign: int = 1) -> bool:
    """Exact check of Q^a * f(1/Q) = sign * f(Q) on the fitted function.

    With denominator prod (1-Q^(a_i))^(e_i), substituting 1/Q multiplies
    the denominator by (-1)^E Q^(-D) with E = sum e_i, D = sum a_i e_i;
    the identity reduces to num(Q) = sign * (-1)^E * Q^(a+D) * num(1/Q),
    a finite palindromy condition on the numerator.
    """
    if fit.is_zero():
        return True
    E = sum(e for _, e in fit.denom_spec)
    D = fit.denominator_degree()
    total_sign = sign * (-1) ** E
    for d, c in fit.numerator.items():
        mirrored = fit.numerator.get(a + D - d, 0)
        if not _is_zero(c - total_sign * mirrored):
            return False
    return True


def find_exponent(fit: RationalFit, lo: int, hi: int, sign: int = 1):
    """The unique a in [lo, hi] with Q^a f(1/Q) = sign * f(Q), or None.

    The zero function is rejected (every exponent works).
    """
    if fit.is_zero():
        return None
    found = None
    for a in range(lo, hi + 1):
        if check_Q_functional(fit, a, sign=sign):
            if found is not None:
                raise ArithmeticError(
                    "multiple exponents satisfy the functional equation"
                )
            found = a
    return found


def check_q_inversion(series: TruncSeries):
    """Verify every Q-coefficient is fixed by q -> 1/q (t -> 1/t).

    Returns (True, None) or (False, first failing Q-degree).
    """
    for d in series.degrees():
        c = series.coeffs[d]
        if isinstance(c, QRat) and c.invert_t() != c:
            return False, d
    return True, None


def normalized_pt(r: int, m: int, order: int, cache: SCache = None) -> TruncSeries:
    """PT_{mc}/PT_0 in the truncated ring (Theorem `wall-crossing` quotient)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    numerator = pt_series(r, m, order, cache=cache)
    return numerator * pt_series(r, 0, order, cache=cache).inverse()


# ---------------------------------------------------------------------------
# The class-level Weyl involution


@dataclass(frozen=True)
class WeylClass:
    """A K-theory class slot (r*w, m*c + j*b, n)."""

    r: int
    m: int
    j: int
    n: int


def w_dot_beta(m: int, j: int, r_surface: int) -> int:
    """The pairing w . (m*c + j*b) = K_W . beta on F_{r_surface}.

    Uses K_W = -2c - (r+2)b and the intersection table c^2 = -r,
    b^2 = 0, b.c = 1.
    """
    return m * (r_surface - 2) - 2 * j


def weyl_reflect(cls: WeylClass, r_surface: int) -> WeylClass:
    """The involution (r*w, beta, n) -> (r*w, beta + (w.beta - 2r) b, -n)."""
    shift = w_dot_beta(cls.m, cls.j, r_surface) - 2 * cls.r
    return WeylClass(r=cls.r, m=cls.m, j=cls.j + shift, n=-cls.n)
