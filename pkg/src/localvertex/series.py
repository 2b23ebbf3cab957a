"""Truncated Laurent series with exact coefficients.

The single class here is generic over the coefficient ring: coefficients
may be ints, Fractions, QRat values, or nested TruncSeries, as long as
they support ring arithmetic with each other and with ints/Fractions.
Absent degrees denote zero; all stored degrees are <= order.
"""

from __future__ import annotations

from fractions import Fraction

from .qfield import QRat


class SeriesError(ArithmeticError):
    pass


class TruncSeries:
    """Laurent series truncated at a fixed order (inclusive)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs=None):
        self.order = order
        cleaned = {}
        if coeffs:
            for d, c in coeffs.items():
                if d <= order and not _is_zero(c):
                    cleaned[d] = c
        self.coeffs = cleaned

    @classmethod
    def one(cls, order: int):
        return cls(order, {0: 1})

    @classmethod
    def monomial(cls, order: int, degree: int, coeff=1):
        return cls(order, {degree: coeff})

    def __getitem__(self, degree: int):
        if degree > self.order:
            raise SeriesError(
                "coefficient of degree %d beyond truncation order %d"
                % (degree, self.order)
            )
        return self.coeffs.get(degree, 0)

    def __bool__(self):
        return bool(self.coeffs)

    def valuation(self):
        """Lowest stored degree; None for the zero series."""
        return min(self.coeffs) if self.coeffs else None

    def degrees(self):
        return sorted(self.coeffs)

    def truncate(self, order: int) -> "TruncSeries":
        if order >= self.order:
            return TruncSeries(order if order == self.order else self.order, self.coeffs)
        return TruncSeries(order, {d: c for d, c in self.coeffs.items() if d <= order})

    def map_coeffs(self, fn) -> "TruncSeries":
        return TruncSeries(self.order, {d: fn(c) for d, c in self.coeffs.items()})

    def shifted(self, k: int) -> "TruncSeries":
        """Multiplication by the monomial x^k (order shifts along)."""
        return TruncSeries(self.order + k, {d + k: c for d, c in self.coeffs.items()})

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            other = _scalar_series(other, self.order)
            if other is NotImplemented:
                return NotImplemented
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out.get(d, 0) + c
        return TruncSeries(order, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.order, {d: -c for d, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, TruncSeries) else -_as_coeff(other))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            if _is_zero(other):
                return TruncSeries(self.order)
            return TruncSeries(
                self.order, {d: c * other for d, c in self.coeffs.items()}
            )
        order = min(self.order, other.order)
        out = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                d = d1 + d2
                if d > order:
                    continue
                prod = c1 * c2
                if d in out:
                    out[d] = out[d] + prod
                else:
                    out[d] = prod
        return TruncSeries(order, out)

    __rmul__ = __mul__

    def inverse(self) -> "TruncSeries":
        """Multiplicative inverse; the lowest coefficient must be a unit."""
        v = self.valuation()
        if v is None:
            raise SeriesError("inverting the zero series")
        lead = self.coeffs[v]
        lead_inv = _coeff_inverse(lead)
        # a = lead*x^v * (1 + x), invert the unit part by geometric series
        rest = TruncSeries(
            self.order - v,
            {d - v: c * lead_inv for d, c in self.coeffs.items() if d != v},
        )
        geom = TruncSeries.one(self.order - v)
        power = TruncSeries.one(self.order - v)
        n = rest.valuation()
        if n is not None:
            for _ in range(0, (self.order - v) // n + 1):
                power = power * (-rest)
                if not power:
                    break
                geom = geom + power
        return TruncSeries(
            self.order - 2 * v, {d - v: c * lead_inv for d, c in geom.coeffs.items()}
        ).truncate(self.order - 2 * v)

    def pow_int(self, k: int) -> "TruncSeries":
        if k == 0:
            return TruncSeries.one(self.order)
        base = self if k > 0 else self.inverse()
        k = abs(k)
        result = None
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __pow__(self, k: int):
        return self.pow_int(k)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        if self.order != other.order:
            return False
        degrees = set(self.coeffs) | set(other.coeffs)
        return all(_is_zero(self.coeffs.get(d, 0) - other.coeffs.get(d, 0)) for d in degrees)

    def __repr__(self):
        terms = ", ".join("%d: %r" % (d, self.coeffs[d]) for d in self.degrees())
        return "TruncSeries(order=%d, {%s})" % (self.order, terms)

    # -- transcendental operations ----------------------------------------

    def exp(self) -> "TruncSeries":
        """Truncated exponential; requires valuation >= 1."""
        v = self.valuation()
        if v is not None and v < 1:
            raise SeriesError("exp requires vanishing constant term")
        result = TruncSeries.one(self.order)
        term = TruncSeries.one(self.order)
        if v is None:
            return result
        for n in range(1, self.order // v + 1):
            term = term * self * Fraction(1, n)
            if not term:
                break
            result = result + term
        return result

    def log(self) -> "TruncSeries":
        """Truncated logarithm; requires constant term 1."""
        if not _is_one(self[0] if 0 <= self.order else 0):
            raise SeriesError("log requires constant term 1")
        x = self - 1
        v = x.valuation()
        result = TruncSeries(self.order)
        if v is None:
            return result
        if v < 1:
            raise SeriesError("log requires constant term 1")
        power = TruncSeries.one(self.order)
        for n in range(1, self.order // v + 1):
            power = power * x
            if not power:
                break
            result = result + power * Fraction((-1) ** (n + 1), n)
        return result


class GaussianRational:
    """An exact complex number re + im*i with Fraction components.

    Used for the q = e^(iu) substitution; final outputs are asserted real,
    which doubles as a pipeline correctness check.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    @classmethod
    def i_power(cls, n: int):
        """i**n for integer n."""
        return (cls(1), cls(0, 1), cls(-1), cls(0, -1))[n % 4]

    @classmethod
    def _coerce(cls, x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        return NotImplemented

    def __bool__(self):
        return bool(self.re or self.im)

    def is_real(self) -> bool:
        return not self.im

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __add__(self, other):
        other = GaussianRational._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = GaussianRational._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = GaussianRational._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self):
        norm = self.re * self.re + self.im * self.im
        if not norm:
            raise ZeroDivisionError("inverting zero Gaussian rational")
        return GaussianRational(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        other = GaussianRational._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __eq__(self, other):
        other = GaussianRational._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        if not self.im:
            return "G(%s)" % self.re
        return "G(%s, %s)" % (self.re, self.im)


def _is_zero(c):
    if isinstance(c, (int, Fraction)):
        return c == 0
    return not c


def _is_one(c):
    if isinstance(c, QRat):
        return c.is_one()
    if isinstance(c, TruncSeries):
        return c == TruncSeries.one(c.order)
    return c == 1


def _coeff_inverse(c):
    if isinstance(c, int):
        if c in (1, -1):
            return c
        return Fraction(1, c)
    if isinstance(c, Fraction):
        return 1 / c
    if isinstance(c, QRat):
        return c.reciprocal()
    return c.inverse()


def _as_coeff(x):
    return x


def _scalar_series(x, order):
    if isinstance(x, (int, Fraction, QRat)):
        return TruncSeries(order, {0: x})
    return NotImplemented


def geometric_inverse_factor(order: int, coeff, degree: int = 1) -> TruncSeries:
    """(1 - coeff*x^degree)^(-1) truncated at the given order."""
    out = {0: 1}
    c = 1
    for d in range(degree, order + 1, degree):
        c = c * coeff
        out[d] = c
    return TruncSeries(order, out)


def binomial_factor(order: int, coeff, degree: int, exponent: int) -> TruncSeries:
    """(1 - coeff*x^degree)^exponent for integer exponent, truncated."""
    base = TruncSeries(order, {0: 1, degree: -coeff})
    return base.pow_int(exponent)


def cyclo_product(exponents, order: int) -> TruncSeries:
    """prod over (i, j) of (1 - q^(j+i) * Q)^e(i,j), truncated at Q^order.

    Keys of ``exponents`` are pairs (i, j) with j >= 1; values are integer
    exponents.  Factors whose linear Q-term cannot contribute below the
    truncation are skipped.
    """
    result = TruncSeries.one(order)
    for (i, j), e in sorted(exponents.items()):
        if e == 0 or order < 1:
            continue
        factor = binomial_factor(order, QRat.q_power(j + i), 1, e)
        result = result * factor
    return result


def polylog_neg(n: int) -> QRat:
    """The rational function Li_{1-n}(Q) for n >= 1, variable read as Q.

    Computed by the ladder Li_{s-1}(Q) = Q * d/dQ Li_s(Q) starting from
    Li_0(Q) = Q/(1-Q).  Writing Li_{1-n} = p_n(Q)/(1-Q)^n, the ladder
    becomes p_{n+1} = Q*(p_n'*(1-Q) + n*p_n), which keeps the prescribed
    cyclotomic denominator explicit.  The returned QRat reads t as Q.
    """
    if n < 1:
        raise ValueError("polylog_neg requires n >= 1")
    p = [Fraction(0), Fraction(1)]  # p_1 = Q
    for m in range(1, n):
        dp = [k * c for k, c in enumerate(p)][1:] or [Fraction(0)]
        term = _poly_sub(_poly_mul(dp, [Fraction(1), Fraction(-1)]), [-m * c for c in p])
        p = [Fraction(0)] + term  # multiply by Q
    den = [Fraction(1)]
    for _ in range(n):
        den = _poly_mul(den, [Fraction(1), Fraction(-1)])
    return _qrat_from_ascending(p) / _qrat_from_ascending(den)


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)
    ]


def _qrat_from_ascending(coeffs):
    acc = QRat.zero()
    for k, c in enumerate(coeffs):
        if c:
            acc = acc + QRat.from_rational(c) * QRat.t_power(k)
    return acc


def polylog_series(s: int, order: int) -> TruncSeries:
    """The truncated sum_{k=1}^{order} Q^k / k^s with Fraction coefficients."""
    return TruncSeries(
        order, {k: Fraction(1, k**s) if s >= 0 else Fraction(k ** (-s)) for k in range(1, order + 1)}
    )
