"""Local artinian coefficient rings Q[x_1..x_k]/(x_1^e_1, ..., x_k^e_k).

Elements are stored as sparse maps from exponent vectors to nonzero
rational (``gmpy2.mpq``) coefficients, so the stored form is canonical and equality
is structural.
"""

from __future__ import annotations

import itertools
import math
from gmpy2 import mpq
from numbers import Rational

from .errors import NotAUnitError, NotNilpotentError, RingMismatchError


class NilAlgebra:
    """The ring Q[x_1..x_k]/(x_i^{e_i}).

    ``generators`` is a sequence of ``(name, nilpotency_order)`` pairs.  With
    no generators the ring is Q itself.
    """

    def __init__(self, generators=()):
        gens = tuple((str(name), int(order)) for name, order in generators)
        names = [name for name, _ in gens]
        if len(set(names)) != len(names):
            raise ValueError(f"generator names must be distinct: {names}")
        for name, order in gens:
            if order < 1:
                raise ValueError(f"nilpotency order of {name} must be >= 1")
            if not name.isidentifier() or name == "t":
                raise ValueError(f"invalid generator name {name!r}")
        self.generators = gens
        self.names = tuple(names)
        self.orders = tuple(order for _, order in gens)
        self.k = len(gens)
        self._unit_exp = (0,) * self.k
        self.monomials = tuple(
            sorted(itertools.product(*(range(e) for e in self.orders)),
                   key=lambda m: (sum(m), m))
        )
        # smallest nu with m^nu = 0 for the maximal ideal m
        self.nilpotency_index = sum(e - 1 for e in self.orders) + 1
        # exponent -> {exponent -> product exponent}, surviving products only
        self._mul_table = {
            a: {b: m for b in self.monomials if (m := self._mono_mul(a, b)) is not None}
            for a in self.monomials
        }
        self.zero = RingElement._make(self, {})
        self.one = RingElement._make(self, {self._unit_exp: mpq(1)})

    @property
    def dimension(self):
        return len(self.monomials)

    @property
    def is_field(self):
        return self.nilpotency_index == 1

    def __eq__(self, other):
        return isinstance(other, NilAlgebra) and self.generators == other.generators

    def __hash__(self):
        return hash(("NilAlgebra", self.generators))

    def __repr__(self):
        return f"NilAlgebra({list(self.generators)!r})"

    def __str__(self):
        if not self.generators:
            return "Q"
        return "Q[" + ",".join(f"{n}^{e}" for n, e in self.generators) + "]"

    def __call__(self, value):
        """Coerce an int, rational or element of this ring."""
        if isinstance(value, RingElement):
            if value.parent != self:
                raise RingMismatchError(f"element of {value.parent} used in {self}")
            return value
        if isinstance(value, (int, Rational)):
            c = mpq(value)
            return RingElement._make(self, {self._unit_exp: c} if c else {})
        raise TypeError(f"cannot coerce {type(value).__name__} into {self}")

    def element(self, terms):
        """Build an element from ``{exponent_tuple: coefficient}``, reducing
        exponents beyond the nilpotency bounds to zero."""
        out = {}
        for exps, c in dict(terms).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.k:
                raise ValueError(f"exponent vector {exps} has wrong length for {self}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if any(e >= o for e, o in zip(exps, self.orders)):
                continue
            c = mpq(c)
            if c:
                out[exps] = out.get(exps, mpq(0)) + c
        return RingElement._make(self, {e: c for e, c in out.items() if c})

    def gen(self, name):
        i = self.names.index(name)
        exps = tuple(1 if j == i else 0 for j in range(self.k))
        return self.element({exps: 1})

    def gens(self):
        return [self.gen(n) for n in self.names]

    def _mono_mul(self, a, b):
        m = tuple(x + y for x, y in zip(a, b))
        if any(e >= o for e, o in zip(m, self.orders)):
            return None
        return m


class RingElement:
    """An element of a :class:`NilAlgebra` in canonical sparse form."""

    __slots__ = ("parent", "terms", "_hash")

    def __init__(self, parent, terms):
        other = parent.element(terms)
        self.parent = parent
        self.terms = other.terms
        self._hash = None

    @classmethod
    def _make(cls, parent, terms):
        obj = object.__new__(cls)
        obj.parent = parent
        obj.terms = terms
        obj._hash = None
        return obj

    # -- predicates ---------------------------------------------------------

    @property
    def constant(self):
        return self.terms.get(self.parent._unit_exp, mpq(0))

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return len(self.terms) == 1 and self.terms.get(self.parent._unit_exp) == 1

    def is_unit(self):
        return self.parent._unit_exp in self.terms

    def is_nilpotent(self):
        return self.parent._unit_exp not in self.terms

    def is_constant(self):
        """True when the element lies in Q (no generator appears)."""
        return not self.terms or (len(self.terms) == 1 and self.is_unit())

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.parent is not self.parent and other.parent != self.parent:
                raise RingMismatchError(f"{self.parent} vs {other.parent}")
            return other
        if isinstance(other, (int, Rational)):
            return self.parent(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            if s is None:
                terms[e] = c
            else:
                s += c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return RingElement._make(self.parent, terms)

    __radd__ = __add__

    def __neg__(self):
        return RingElement._make(self.parent, {e: -c for e, c in self.terms.items()})

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
        a, b = self.terms, other.terms
        if not a or not b:
            return self.parent.zero
        parent = self.parent
        if parent.k == 0:
            return RingElement._make(parent, {(): a[()] * b[()]})
        if len(b) == 1:
            (eb, cb), = b.items()
            if eb == parent._unit_exp:
                return RingElement._make(parent, {e: c * cb for e, c in a.items()})
        if len(a) == 1:
            (ea, ca), = a.items()
            if ea == parent._unit_exp:
                return RingElement._make(parent, {e: c * ca for e, c in b.items()})
        table = parent._mul_table
        out = {}
        for ea, ca in a.items():
            row = table[ea]
            for eb, cb in b.items():
                m = row.get(eb)
                if m is not None:
                    v = out.get(m)
                    out[m] = ca * cb if v is None else v + ca * cb
        return RingElement._make(parent, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c):
        c = mpq(c)
        if not c:
            return self.parent.zero
        return RingElement._make(self.parent, {e: v * c for e, v in self.terms.items()})

    def inverse(self):
        """Exact inverse of a unit: c0^{-1} * sum_j (-n/c0)^j, a finite sum."""
        if not self.is_unit():
            raise NotAUnitError(f"{self} is not a unit of {self.parent}")
        c0 = self.constant
        if len(self.terms) == 1:
            return self.parent(1 / c0)
        n = self.scale(1 / c0) - 1
        result = self.parent.one
        power = self.parent.one
        for _ in range(1, self.parent.nilpotency_index):
            power = power * (-n)
            if power.is_zero():
                break
            result = result + power
        return result.scale(1 / c0)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.parent.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- equality / display -------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.parent == other.parent and self.terms == other.terms
        if isinstance(other, (int, Rational)):
            return self.terms == self.parent(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.parent, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: (sum(item[0]), item[0]))

    def monomial_string(self, exps):
        return "*".join(
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(self.parent.names, exps) if e
        )

    def __str__(self):
        return format_terms(
            (c, self.monomial_string(e)) for e, c in self.sorted_terms()
        )

    def __repr__(self):
        return f"RingElement({self.parent}, {self})"


def format_rational(c):
    c = mpq(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_terms(pairs):
    """Render ``(coefficient, monomial_text)`` pairs as ``a*m + b*n - ...``."""
    parts = []
    for c, mono in pairs:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
        else:
            body = format_rational(mag)
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def add(x, y):
    return _check_pair(x, y) + y


def mul(x, y):
    return _check_pair(x, y) * y


def invert(x):
    return x.inverse()


def _check_pair(x, y):
    if x.parent != y.parent:
        raise RingMismatchError(f"{x.parent} vs {y.parent}")
    return x


def exp_nilpotent(x):
    """exp(x) = sum x^j / j! for nilpotent x (the sum is finite)."""
    if not x.is_nilpotent():
        raise NotNilpotentError(f"exp needs a nilpotent argument, got {x}")
    result = x.parent.one
    power = x.parent.one
    for j in range(1, x.parent.nilpotency_index):
        power = power * x
        if power.is_zero():
            break
        result = result + power.scale(mpq(1, math.factorial(j)))
    return result


def log_one_plus_nilpotent(x):
    """log(1 + x) for nilpotent x, inverse to :func:`exp_nilpotent`."""
    if not x.is_nilpotent():
        raise NotNilpotentError(f"log(1+x) needs a nilpotent x, got {x}")
    result = x.parent.zero
    power = x.parent.one
    for j in range(1, x.parent.nilpotency_index):
        power = power * x
        if power.is_zero():
            break
        result = result + power.scale(mpq((-1) ** (j + 1), j))
    return result
