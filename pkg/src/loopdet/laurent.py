"""Precision-tracked Laurent series over a local artinian ring A.

A :class:`LaurentSeries` stores finitely many coefficients together with a
horizon ``prec``: coefficients at degrees ``>= prec`` are unknown.  An exact
Laurent polynomial has ``prec == INF``.  Every operation propagates the
horizon soundly, so a coefficient that is reported is never a truncation
artifact.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from gmpy2 import mpq
from numbers import Rational

from .errors import NotAUnitError, PrecisionError, RingMismatchError
from .ring import NilAlgebra, RingElement, exp_nilpotent, format_rational, log_one_plus_nilpotent

INF = math.inf


class LaurentSeries:
    __slots__ = ("ring", "coeffs", "prec")

    def __init__(self, ring: NilAlgebra, coeffs=None, prec=INF):
        if prec != INF:
            prec = int(prec)
        clean = {}
        for deg, c in (coeffs or {}).items():
            deg = int(deg)
            if deg >= prec:
                continue
            c = ring(c)
            if c:
                clean[deg] = c
        self.ring = ring
        self.coeffs = clean
        self.prec = prec

    @classmethod
    def _make(cls, ring, coeffs, prec=INF):
        obj = object.__new__(cls)
        obj.ring = ring
        obj.coeffs = coeffs
        obj.prec = prec
        return obj

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, ring, prec=INF):
        return cls._make(ring, {}, prec)

    @classmethod
    def one(cls, ring):
        return cls._make(ring, {0: ring.one})

    @classmethod
    def monomial(cls, ring, coeff, deg):
        return cls(ring, {deg: coeff})

    @classmethod
    def t(cls, ring):
        return cls._make(ring, {1: ring.one})

    @classmethod
    def constant(cls, ring, coeff):
        return cls(ring, {0: coeff})

    # -- inspection -----------------------------------------------------------

    @property
    def is_exact(self):
        return self.prec == INF

    @property
    def valuation(self):
        """Lowest stored degree, or ``None`` when nothing is stored."""
        return min(self.coeffs) if self.coeffs else None

    @property
    def degree(self):
        return max(self.coeffs) if self.coeffs else None

    def low(self):
        """Lowest degree that can carry a nonzero coefficient (used by the
        multiplication horizon rule)."""
        if self.coeffs:
            return min(self.coeffs)
        return self.prec

    def is_zero(self):
        return not self.coeffs

    def coeff(self, deg):
        if deg >= self.prec:
            raise PrecisionError(f"coefficient of t^{deg} is beyond the horizon {self.prec}")
        return self.coeffs.get(deg, self.ring.zero)

    __getitem__ = coeff

    def principal_width(self):
        """Number of degrees the series reaches below zero."""
        v = self.valuation
        return max(0, -v) if v is not None else 0

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentSeries):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Rational, RingElement)):
            c = self.ring(other)
            return LaurentSeries._make(self.ring, {0: c} if c else {})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = min(self.prec, other.prec)
        out = {d: c for d, c in self.coeffs.items() if d < prec}
        for d, c in other.coeffs.items():
            if d >= prec:
                continue
            s = out.get(d)
            if s is None:
                out[d] = c
            else:
                s = s + c
                if s:
                    out[d] = s
                else:
                    del out[d]
        return LaurentSeries._make(self.ring, out, prec)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries._make(self.ring, {d: -c for d, c in self.coeffs.items()}, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = min(self.prec + other.low(), other.prec + self.low())
        if not self.coeffs or not other.coeffs:
            return LaurentSeries._make(self.ring, {}, prec)
        out = {}
        for da, ca in self.coeffs.items():
            for db, cb in other.coeffs.items():
                d = da + db
                if d >= prec:
                    continue
                p = ca * cb
                if not p:
                    continue
                s = out.get(d)
                out[d] = p if s is None else s + p
        return LaurentSeries._make(self.ring, {d: c for d, c in out.items() if c}, prec)

    __rmul__ = __mul__

    def scale(self, c):
        c = self.ring(c)
        out = {}
        for d, v in self.coeffs.items():
            p = v * c
            if p:
                out[d] = p
        return LaurentSeries._make(self.ring, out, self.prec)

    def shift(self, k):
        """Multiply by t^k."""
        return LaurentSeries._make(
            self.ring, {d + k: c for d, c in self.coeffs.items()}, self.prec + k
        )

    def truncate(self, prec):
        """Forget everything at degree >= prec."""
        prec = min(prec, self.prec)
        return LaurentSeries._make(
            self.ring, {d: c for d, c in self.coeffs.items() if d < prec}, prec
        )

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = LaurentSeries.one(self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def part(self, lo=None, hi=None):
        """Exact piece with degrees in [lo, hi).  Requires hi <= prec."""
        if hi is not None and hi > self.prec:
            raise PrecisionError(f"degrees up to {hi} requested beyond horizon {self.prec}")
        out = {
            d: c for d, c in self.coeffs.items()
            if (lo is None or d >= lo) and (hi is None or d < hi)
        }
        prec = INF if hi is not None else self.prec
        return LaurentSeries._make(self.ring, out, prec)

    # -- comparison -----------------------------------------------------------

    def agrees_with(self, other, upto=None):
        """True when all coefficients below both horizons (and ``upto``) match."""
        other = self._coerce(other)
        bound = min(self.prec, other.prec)
        if upto is not None:
            bound = min(bound, upto)
        for d in set(self.coeffs) | set(other.coeffs):
            if d < bound and self.coeffs.get(d) != other.coeffs.get(d):
                return False
        return True

    def compare(self, other):
        """``"exact"`` if equal as exact series, ``"known"`` if equal as far
        as both horizons allow, ``None`` if they differ."""
        if not self.agrees_with(other):
            return None
        if self.is_exact and other.is_exact:
            return "exact"
        return "known"

    def __eq__(self, other):
        if isinstance(other, (int, Rational, RingElement)):
            other = self._coerce(other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.ring == other.ring and self.prec == other.prec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.prec, frozenset(self.coeffs.items())))

    # -- display --------------------------------------------------------------

    def term_pairs(self):
        for d in sorted(self.coeffs):
            tpart = "" if d == 0 else ("t" if d == 1 else f"t^{d}")
            for e, c in self.coeffs[d].sorted_terms():
                mono = self.coeffs[d].monomial_string(e)
                yield c, "*".join(x for x in (mono, tpart) if x)

    def __str__(self):
        from .ring import format_terms

        body = format_terms(self.term_pairs())
        if self.is_exact:
            return body
        return f"{body} : prec {self.prec}"

    def __repr__(self):
        return f"LaurentSeries({self.ring}, {self})"


# ---------------------------------------------------------------------------
# units, order, inversion


def _check_ring(a, b):
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring} vs {b.ring}")


def is_unit(a: LaurentSeries) -> bool:
    """A series over a local artinian ring is invertible iff some coefficient
    is a unit (all lower ones are then automatically nilpotent)."""
    return any(c.is_unit() for c in a.coeffs.values())


def ord(a: LaurentSeries) -> int:
    units = [d for d, c in a.coeffs.items() if c.is_unit()]
    if not units:
        raise NotAUnitError(f"{a} is not a unit of {a.ring}((t))")
    return min(units)


def _nilpotent_geometric_inverse(m: LaurentSeries) -> LaurentSeries:
    """Exact inverse of 1 + m when every coefficient of m is nilpotent."""
    result = LaurentSeries.one(m.ring)
    power = LaurentSeries.one(m.ring)
    neg = -m
    for _ in range(1, m.ring.nilpotency_index):
        power = power * neg
        if power.is_zero():
            break
        result = result + power
    return result


def _power_series_inverse(p: LaurentSeries, prec) -> LaurentSeries:
    """Inverse of a power series with unit constant term, known to ``prec``."""
    if p.valuation is not None and p.valuation < 0:
        raise ValueError("not a power series")
    prec = min(prec, p.prec)
    if prec == INF:
        raise PrecisionError("power series inverse needs a finite horizon")
    b0 = p.coeff(0).inverse()
    out = [b0]
    pc = p.coeffs
    zero = p.ring.zero
    for k in range(1, prec):
        s = zero
        for i in range(1, k + 1):
            ai = pc.get(i)
            if ai is not None:
                s = s + ai * out[k - i]
        out.append(-(b0 * s))
    return LaurentSeries._make(p.ring, {d: c for d, c in enumerate(out) if c}, prec)


@dataclass(frozen=True)
class UnitDecomposition:
    """a = t^n * a0 * plus * minus with plus in 1 + tA[[t]] and minus in
    1 + t^{-1} m[t^{-1}], m the maximal ideal of A."""

    n: int
    a0: RingElement
    plus: LaurentSeries
    minus: LaurentSeries

    def compose(self) -> LaurentSeries:
        return (self.plus * self.minus).scale(self.a0).shift(self.n)


def _nilpotent_exp(m: LaurentSeries) -> LaurentSeries:
    """Exact exp(m) when every coefficient of m is nilpotent."""
    result = LaurentSeries.one(m.ring)
    power = LaurentSeries.one(m.ring)
    for j in range(1, m.ring.nilpotency_index):
        power = power * m
        if power.is_zero():
            break
        result = result + power.scale(mpq(1, math.factorial(j)))
    return result


@functools.lru_cache(maxsize=4096)
def unit_decompose(a: LaurentSeries) -> UnitDecomposition:
    """Split a unit into order, constant, positive and nilpotent-negative factors.

    a0 and minus only depend on finitely many coefficients of a (see
    :func:`_negative_factor`); plus is then the quotient a / (t^n a0 minus),
    exact whenever a is.
    """
    n = ord(a)
    u = a.shift(-n).scale(a.coeff(n).inverse())
    ring = a.ring
    c, minus = _negative_factor(u)
    a0 = a.coeff(n) * c
    plus = u.scale(c.inverse()) * _nilpotent_geometric_inverse(minus - 1)
    if plus.prec <= 0 or plus.part(hi=1) != LaurentSeries.one(ring):
        raise PrecisionError("input is not known far enough to determine its positive factor")
    return UnitDecomposition(n, a0, plus, minus)


def _negative_factor(u: LaurentSeries):
    """For u with constant term 1 and nilpotent principal part, return
    ``(c, minus)`` with u = c * plus * minus.

    Write u = P (1 + x) with P = 1 + (positive part of u); every coefficient
    of x is nilpotent, so log(1 + x) is a finite sum.  Its constant term is
    log c and its negative part is log minus.  If the principal part reaches
    down to t^-w, the terms of degree <= 0 of x^j only involve coefficients
    of x below degree (j - 1) w + 1, so u is only needed below
    (nu - 1) w + 1; the tracked precision certifies this.
    """
    ring = u.ring
    one = LaurentSeries.one(ring)
    h = u - 1
    low = h.part(hi=1)
    if low.is_zero():
        return ring.one, one
    if not all(x.is_nilpotent() for x in low.coeffs.values()):
        raise NotAUnitError("principal part is not nilpotent")
    nu = ring.nilpotency_index
    w = max(0, -low.valuation)
    horizon = max(1, (nu - 2) * w + 1)
    if u.prec < horizon + w:
        raise PrecisionError(f"input must be known below t^{horizon + w} to split off its principal part")
    p = one + h.part(lo=1, hi=horizon + w)
    x = low * _power_series_inverse(p, horizon + w)
    log_x = LaurentSeries.zero(ring)
    power = one
    for j in range(1, nu):
        power = power * x
        log_x = log_x + power.part(hi=1).scale(mpq((-1) ** (j + 1), j))
    c = exp_nilpotent(log_x.coeff(0))
    return c, _nilpotent_exp(log_x.part(hi=0))


def invert(a: LaurentSeries, target_prec=None) -> LaurentSeries:
    """Inverse of a unit; exact when a = t^n * a0 * minus, otherwise known
    to ``target_prec`` or as far as the input determines it, whichever is
    lower (the horizon of the result says which)."""
    dec = unit_decompose(a)
    minus_inv = _nilpotent_geometric_inverse(dec.minus - 1)
    head = minus_inv.scale(dec.a0.inverse()).shift(-dec.n)
    if dec.plus == LaurentSeries.one(a.ring):
        return head
    if target_prec is None:
        raise PrecisionError(f"inverse of {a} is an infinite series; give target_prec")
    need = min(target_prec - head.low(), dec.plus.prec)
    plus_inv = _power_series_inverse(dec.plus, max(need, 1))
    return (plus_inv * head).truncate(target_prec)


def derivative(a: LaurentSeries) -> LaurentSeries:
    out = {}
    for d, c in a.coeffs.items():
        if d:
            v = c.scale(d)
            if v:
                out[d - 1] = v
    return LaurentSeries._make(a.ring, out, a.prec - 1)


def residue(a: LaurentSeries) -> RingElement:
    if a.prec < 0:
        raise PrecisionError(f"residue of {a} is beyond its horizon")
    return a.coeffs.get(-1, a.ring.zero)


def _power_series_log(p: LaurentSeries, prec) -> LaurentSeries:
    """log p for p in 1 + tA[[t]], as the antiderivative of p'/p."""
    prec = min(prec, p.prec)
    if p == LaurentSeries.one(p.ring):
        return LaurentSeries.zero(p.ring)
    q = derivative(p) * _power_series_inverse(p, prec - 1)
    q = q.truncate(prec - 1)
    out = {}
    for d, c in q.coeffs.items():
        if d >= 0:
            out[d + 1] = c.scale(mpq(1, d + 1))
    return LaurentSeries._make(p.ring, out, q.prec + 1)


def _nilpotent_log(m: LaurentSeries) -> LaurentSeries:
    """Exact log(1 + m) when all coefficients of m are nilpotent."""
    result = LaurentSeries.zero(m.ring)
    power = LaurentSeries.one(m.ring)
    for j in range(1, m.ring.nilpotency_index):
        power = power * m
        if power.is_zero():
            break
        result = result + power.scale(mpq((-1) ** (j + 1), j))
    return result


def log_special(b: LaurentSeries, prec=None) -> LaurentSeries:
    """log b for b = 1 + h with h nilpotent in degrees <= 0.

    Uses b = a0 * plus * minus and adds the three logarithms; the nilpotent
    ones are finite sums.  Exact when plus == 1, else known to ``prec``.
    """
    if b.prec <= 0:
        raise PrecisionError("constant term of the argument is unknown")
    if not (b.coeff(0) - 1).is_nilpotent():
        raise ValueError(f"log_special needs constant term in 1 + m, got {b.coeff(0)}")
    if any(not c.is_nilpotent() for d, c in b.coeffs.items() if d < 0):
        raise ValueError("log_special needs nilpotent coefficients in negative degrees")
    dec = unit_decompose(b)
    if dec.n != 0:
        raise ValueError("log_special argument must have order 0")
    out = LaurentSeries.constant(b.ring, log_one_plus_nilpotent(dec.a0 - 1))
    out = out + _nilpotent_log(dec.minus - 1)
    if dec.plus == LaurentSeries.one(b.ring):
        return out
    if prec is None:
        raise PrecisionError("log of a series with a positive part needs prec")
    return out + _power_series_log(dec.plus, prec)


__all__ = [
    "INF",
    "LaurentSeries",
    "UnitDecomposition",
    "derivative",
    "format_rational",
    "invert",
    "is_unit",
    "log_special",
    "ord",
    "residue",
    "unit_decompose",
]
