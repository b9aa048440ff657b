"""Seeded random generators for rings, units, lattices and matrices."""

from __future__ import annotations

import random
from fractions import Fraction

from . import matrices as mx
from .laurent import LaurentSeries, is_unit
from .ring import NilAlgebra, RingElement


def rational(rng: random.Random, nonzero=False, bound=8) -> Fraction:
    while True:
        c = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if c or not nonzero:
            return c


def element(rng, ring: NilAlgebra, density=0.5) -> RingElement:
    terms = {m: rational(rng) for m in ring.monomials if rng.random() < density}
    return ring.element(terms)


def nilpotent(rng, ring, density=0.5) -> RingElement:
    x = element(rng, ring, density)
    return x - x.constant


def unit_element(rng, ring) -> RingElement:
    return nilpotent(rng, ring) + rational(rng, nonzero=True)


def laurent_unit(rng, ring, lo=-3, hi=3, order=None) -> LaurentSeries:
    """Exact unit with support in [lo, hi]: nilpotent tail below the order,
    a unit at the order, arbitrary coefficients above."""
    k = rng.randint(lo, hi) if order is None else order
    coeffs = {}
    if not ring.is_field:
        for d in range(lo, k):
            coeffs[d] = nilpotent(rng, ring)
    coeffs[k] = unit_element(rng, ring)
    for d in range(k + 1, hi + 1):
        if rng.random() < 0.6:
            coeffs[d] = element(rng, ring)
    return LaurentSeries(ring, coeffs)


def power_series_unit(rng, ring, hi=3) -> LaurentSeries:
    return laurent_unit(rng, ring, lo=0, hi=hi, order=0)


def steinberg_unit(rng, ring, lo=-3, hi=3) -> LaurentSeries:
    """A unit a with 1 - a also a unit."""
    while True:
        a = laurent_unit(rng, ring, lo, hi)
        if is_unit(1 - a):
            return a


def laurent_poly(rng, ring, lo=-1, hi=1, density=0.6) -> LaurentSeries:
    return LaurentSeries(ring, {d: element(rng, ring) for d in range(lo, hi + 1) if rng.random() < density})


def elementary(ring, n, i, j, a):
    rows = [list(r) for r in mx.identity(ring, n)]
    rows[i][j] = a
    return tuple(tuple(r) for r in rows)


def gl_matrix(rng, ring, n, steps=2, lo=-1, hi=1) -> tuple:
    """Invertible matrix: random diagonal unit times a few transvections."""
    g = mx.diag([laurent_unit(rng, ring, lo, hi) for _ in range(n)])
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        g = mx.mat_mul(g, elementary(ring, n, i, j, laurent_poly(rng, ring, lo, hi)))
    return g


def sl2_matrix(rng, steps=4, lo=-2, hi=2) -> tuple:
    """Random element of SL_2(Q[t, t^-1]) as a product of transvections and
    a monomial torus element."""
    ring = NilAlgebra()
    k = rng.randint(-2, 2)
    c = rational(rng, nonzero=True)
    g = mx.diag([LaurentSeries.monomial(ring, c, k), LaurentSeries.monomial(ring, 1 / c, -k)])
    for s in range(steps):
        i, j = (0, 1) if s % 2 == 0 else (1, 0)
        g = mx.mat_mul(g, elementary(ring, 2, i, j, laurent_poly(rng, ring, lo, hi)))
    return g
