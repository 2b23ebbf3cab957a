"""The 2-leg topological vertex engine for local Hirzebruch surfaces.

Three independent routes to the two-partition sum S_{mu,nu}(q,Q), the
specialized partition function for K_{F_r}, the general toric N-leg sum,
and the extraction of stable-pairs generating series.

The raw quadruple vertex sum is never materialized: summing out the two
fiber legs turns the partition function into a sum over pairs
(mu2, mu4) weighted by S_{mu2,mu4}^2, which drops the complexity from
quartic to quadratic in the number of partitions.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from fractions import Fraction

from .partitions import Partition, partitions_of, partitions_up_to
from .qfield import QRat
from .series import TruncSeries, cyclo_product
from .symmfun import p_shifted, w_one, w_two

FORMAT_VERSION = 1


class VertexError(ArithmeticError):
    """An internal invariant (parity, clearing) failed; implementation bug."""


# ---------------------------------------------------------------------------
# S_{mu,nu} three ways


def s_direct(mu: Partition, nu: Partition, order: int) -> TruncSeries:
    """S_{mu,nu} summed over its definition: sum_lambda W_{mu,lambda} W_{nu,lambda} Q^|lambda|.

    Brute force; the independent oracle for the closed and product forms.
    """
    coeffs = {}
    for lam in partitions_up_to(order):
        term = w_two(mu, lam) * w_two(nu, lam)
        d = lam.size
        coeffs[d] = coeffs.get(d, QRat.zero()) + term
    return TruncSeries(order, coeffs)


def s_closed(mu: Partition, nu: Partition, order: int) -> TruncSeries:
    """S_{mu,nu} via the exponential closed formula.

    S = W_mu W_nu exp(sum_{k>=1} p_mu(q^k) p_nu(q^k) (qQ)^k / k); the
    k-sum truncates at k = order since higher terms sit above Q^order.
    """
    arg = TruncSeries(
        order,
        {
            k: p_shifted(mu, k) * p_shifted(nu, k) * QRat.q_power(k) * Fraction(1, k)
            for k in range(1, order + 1)
        },
    )
    return arg.exp() * (w_one(mu) * w_one(nu))


@dataclass(frozen=True)
class AICoeffs:
    """The finite coefficient window of p_mu(q) p_nu(q) (1-q)^2."""

    s: int
    a: dict

    def __post_init__(self):
        total = sum(self.a.values())
        weighted = sum(i * c for i, c in self.a.items())
        if total != 1 or weighted != 0:
            raise VertexError(
                "a_i constraints violated: sum=%s, weighted=%s" % (total, weighted)
            )


def ai_coeffs(mu: Partition, nu: Partition) -> AICoeffs:
    """Clear p_mu(q) p_nu(q) to the form (sum_i a_i q^i) / (1-q)^2."""
    q = QRat.q_power(1)
    cleared = p_shifted(mu, 1) * p_shifted(nu, 1) * (QRat.one() - q) ** 2
    if not cleared.is_polynomial():
        raise VertexError("(1-q)^2 clearing failed for %r, %r" % (mu, nu))
    if not cleared.has_even_t_powers():
        raise VertexError("odd t-power in a_i clearing for %r, %r" % (mu, nu))
    a = {}
    degree = len(cleared.num) - 1
    for pos, c in enumerate(cleared.num):
        if not c:
            continue
        texp = cleared.shift + (degree - pos)
        a[texp // 2] = int(c)
    s = max(abs(i) for i in a)
    return AICoeffs(s=s, a=a)


def s_product(mu: Partition, nu: Partition, order: int) -> TruncSeries:
    """S_{mu,nu} via the infinite product over (1 - q^(j+i) Q)^(-j a_i).

    Truncating the product in j is not exact in q (every factor touches
    every Q-degree), so the j-product is resummed in closed form:

        log prod_{j>=1} (1 - q^(j+i) Q)^(-j)
            = sum_{k>=1} q^((i+1)k) / (k (1-q^k)^2) * Q^k.

    The a_i enter linearly in the exponent; non-integer rational a_i are
    covered by the same formula (exp of a_i times the log).
    """
    ai = ai_coeffs(mu, nu)
    arg = TruncSeries(order)
    for i, c in ai.a.items():
        coeffs = {}
        for k in range(1, order + 1):
            den = (QRat.one() - QRat.q_power(k)) ** 2
            coeffs[k] = QRat.q_power((i + 1) * k) / den * Fraction(c, k)
        arg = arg + TruncSeries(order, coeffs)
    return arg.exp() * (w_one(mu) * w_one(nu))


# ---------------------------------------------------------------------------
# Memoized S with optional disk persistence


class SCache:
    """In-process (and optionally on-disk) cache of S_{mu,nu} series.

    Entries computed at a larger truncation order serve smaller orders by
    truncation.  Disk entries are one JSON document per (mu, nu) pair
    under a content-addressed filename; concurrent writers of the same
    key produce identical content, so writes are idempotent.
    """

    def __init__(self, directory=None):
        self.directory = directory
        self._mem = {}
        if directory:
            os.makedirs(directory, exist_ok=True)

    def _path(self, mu, nu):
        key = "%d:%s:%s" % (FORMAT_VERSION, list(mu.parts), list(nu.parts))
        digest = hashlib.sha256(key.encode()).hexdigest()[:24]
        return os.path.join(self.directory, "s_%s.json" % digest)

    def get(self, mu: Partition, nu: Partition, order: int) -> TruncSeries:
        held = self._mem.get((mu, nu))
        if held is not None and held.order >= order:
            return held.truncate(order)
        if self.directory:
            path = self._path(mu, nu)
            if os.path.exists(path):
                series = self._load(path, mu, nu)
                if series is not None and series.order >= order:
                    self._mem[(mu, nu)] = series
                    return series.truncate(order)
        series = s_closed(mu, nu, order)
        self._mem[(mu, nu)] = series
        if self.directory:
            self._store(mu, nu, series)
        return series

    def _load(self, path, mu, nu):
        try:
            with open(path) as fh:
                doc = json.load(fh)
        except (OSError, ValueError):
            raise VertexError("corrupt cache file: %s" % path)
        if doc.get("version") != FORMAT_VERSION:
            return None
        if doc.get("mu") != list(mu.parts) or doc.get("nu") != list(nu.parts):
            raise VertexError("cache key collision in %s" % path)
        coeffs = {int(d): QRat.from_json(c) for d, c in doc["coeffs"].items()}
        return TruncSeries(doc["N"], coeffs)

    def _store(self, mu, nu, series):
        doc = {
            "version": FORMAT_VERSION,
            "mu": list(mu.parts),
            "nu": list(nu.parts),
            "N": series.order,
            "coeffs": {str(d): series.coeffs[d].to_json() for d in series.degrees()},
        }
        path = self._path(mu, nu)
        tmp = path + ".tmp.%d" % os.getpid()
        with open(tmp, "w") as fh:
            json.dump(doc, fh)
        os.replace(tmp, path)


_default_cache = SCache()


# ---------------------------------------------------------------------------
# Partition functions


def z_hirzebruch(r: int, m_max: int, order: int, cache: SCache = None) -> dict:
    """Coefficients [Q_c^m] Z^(K_{F_r}) for 0 <= m <= m_max, as Q-series.

    [Q_c^m] Z = (-1)^(rm) sum over |mu2|+|mu4|=m of
    q^(r(k(mu2)-k(mu4))/2) Q^(r|mu2|) S_{mu2,mu4}(q,Q)^2, truncated at
    Q^order.  Every resulting coefficient must lie in Q(q): a surviving
    odd t-power is a hard error.
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    cache = cache or _default_cache
    out = {}
    for m in range(m_max + 1):
        total = TruncSeries(order)
        for a in range(m + 1):
            for mu2 in partitions_of(a):
                for mu4 in partitions_of(m - a):
                    s = cache.get(mu2, mu4, order)
                    term = (s * s).truncate(order)
                    prefactor = QRat.t_power(r * (mu2.kappa() - mu4.kappa()))
                    term = term * prefactor
                    if r * mu2.size:
                        term = term.shifted(r * mu2.size).truncate(order)
                    total = total + term
        if (r * m) % 2:
            total = -total
        _assert_even_powers(total, r, m)
        out[m] = total
    return out


def _assert_even_powers(series: TruncSeries, r, m):
    for d in series.degrees():
        if not series.coeffs[d].has_even_t_powers():
            raise VertexError(
                "odd t-power survives in [Q_c^%d]Z at Q^%d (r=%d)" % (m, d, r)
            )


def check_integrality(series: TruncSeries, q_terms: int = 40) -> bool:
    """True if every coefficient q-expands with integer coefficients."""
    for d in series.degrees():
        _, coeffs = series.coeffs[d].t_expansion(q_terms)
        if any(c.denominator != 1 for c in coeffs):
            return False
    return True


@dataclass(frozen=True)
class ToricSurface:
    """A smooth toric surface given by its cycle of toric divisors.

    divisor_classes holds (c_coeff, b_coeff) pairs expressing each D_j in
    the H_2 basis {c, b}; self_intersections holds the s_j = D_j^2.
    """

    divisor_classes: tuple
    self_intersections: tuple

    def __post_init__(self):
        if len(self.divisor_classes) < 3:
            raise ValueError("a toric surface needs at least 3 divisors")
        if len(self.divisor_classes) != len(self.self_intersections):
            raise ValueError("divisor/self-intersection length mismatch")

    @classmethod
    def hirzebruch(cls, r: int) -> "ToricSurface":
        """F_r with D_1 = b = D_3, D_2 = c + r*b, D_4 = c; s = (0, r, 0, -r)."""
        return cls(
            divisor_classes=((0, 1), (1, r), (0, 1), (1, 0)),
            self_intersections=(0, r, 0, -r),
        )


def z_toric(surface: ToricSurface, c_bound: int, b_bound: int) -> dict:
    """The general N-leg vertex sum, truncated by (c, b) multidegree.

    Returns a map (m, n) -> QRat for the coefficient of Q_c^m Q^n.  Used
    as a cross-check of z_hirzebruch on the Hirzebruch preset; the raw
    product-sum is exponential in N and meant for small bounds only.
    """
    n_div = len(surface.divisor_classes)
    out = {}

    def rec(j, sizes):
        if j == n_div:
            _toric_term(surface, sizes, out, c_bound, b_bound)
            return
        c_used = sum(s * surface.divisor_classes[i][0] for i, s in enumerate(sizes))
        b_used = sum(s * surface.divisor_classes[i][1] for i, s in enumerate(sizes))
        cj, bj = surface.divisor_classes[j]
        limit = 0
        if cj:
            limit = (c_bound - c_used) // cj
        if bj:
            room = (b_bound - b_used) // bj
            limit = room if not cj else min(limit, room)
        if not cj and not bj:
            raise ValueError("divisor with zero class; degree bound impossible")
        for size in range(limit + 1):
            rec(j + 1, sizes + [size])

    rec(0, [])
    return out


def _toric_term(surface, sizes, out, c_bound, b_bound):
    n_div = len(surface.divisor_classes)
    degree_c = sum(s * surface.divisor_classes[i][0] for i, s in enumerate(sizes))
    degree_b = sum(s * surface.divisor_classes[i][1] for i, s in enumerate(sizes))
    if degree_c > c_bound or degree_b > b_bound:
        return
    groups = [list(partitions_of(s)) for s in sizes]

    def rec(j, chosen):
        if j == n_div:
            value = QRat.one()
            for i, mu in enumerate(chosen):
                sj = surface.self_intersections[i]
                sign = -1 if (sj * mu.size) % 2 else 1
                value = value * sign * QRat.t_power(mu.kappa() * sj)
                value = value * w_two(mu, chosen[(i + 1) % n_div])
            key = (degree_c, degree_b)
            out[key] = out.get(key, QRat.zero()) + value
            return
        for mu in groups[j]:
            rec(j + 1, chosen + [mu])

    rec(0, [])


def pt_series(r: int, m: int, order: int, cache: SCache = None) -> TruncSeries:
    """The PT generating series of the class m*c, in raw q^n convention.

    The (-q)^n sign of the printed convention is applied only at the
    reporting boundary; see pt_invariants.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    return z_hirzebruch(r, m, order, cache=cache)[m]


def pt_invariants(r: int, m: int, order: int, q_terms: int = 24, cache: SCache = None):
    """Individual integers PT_{mc+jb, n} for j <= order, |n| bounded by q_terms.

    Returns a list of (j, n, value) triples; n is the Euler characteristic
    slot and the value carries the (-q)^n sign convention.
    """
    series = pt_series(r, m, order, cache=cache)
    rows = []
    for j in series.degrees():
        lowest, coeffs = series.coeffs[j].t_expansion(2 * q_terms + 2)
        for pos, c in enumerate(coeffs):
            texp = lowest + pos
            if not c:
                continue
            if texp % 2:
                raise VertexError("odd t-power in PT coefficient (r=%d, m=%d)" % (r, m))
            if c.denominator != 1:
                raise VertexError("non-integer PT coefficient (r=%d, m=%d)" % (r, m))
            n = texp // 2
            value = int(c) if n % 2 == 0 else -int(c)
            rows.append((j, n, value))
    return rows
