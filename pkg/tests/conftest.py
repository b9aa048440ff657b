import random
import sys

import pytest
from gmpy2 import mpq
from hypothesis import settings
from hypothesis import strategies as st

from loopdet import LaurentSeries, NilAlgebra

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

QQ = NilAlgebra()
D2 = NilAlgebra([("e", 2)])
D3 = NilAlgebra([("e", 3)])
E32 = NilAlgebra([("e1", 3), ("e2", 2)])

RINGS = [QQ, D2, D3, E32]


def series(ring, coeffs, prec=None):
    """Build a series from {degree: int | rational | RingElement}."""
    out = {d: ring(c) for d, c in coeffs.items()}
    if prec is None:
        return LaurentSeries(ring, out)
    return LaurentSeries(ring, out, prec)


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(params=RINGS, ids=str)
def ring(request):
    return request.param


rationals = st.builds(mpq, st.integers(-9, 9), st.integers(1, 6))


@st.composite
def ring_elements(draw, ring):
    terms = draw(st.dictionaries(st.sampled_from(ring.monomials), rationals, max_size=len(ring.monomials)))
    return ring.element(terms)


@st.composite
def nilpotents(draw, ring):
    x = draw(ring_elements(ring))
    return x - x.constant


@st.composite
def laurent_polys(draw, ring, lo=-3, hi=3):
    degrees = draw(st.lists(st.integers(lo, hi), max_size=5))
    return LaurentSeries(ring, {d: draw(ring_elements(ring)) for d in degrees})


@st.composite
def units(draw, ring, lo=-3, hi=3):
    """Exact units: nilpotent tail, unit leading coefficient, arbitrary rest."""
    k = draw(st.integers(lo, hi))
    coeffs = {}
    for d in range(lo, k):
        coeffs[d] = draw(nilpotents(ring))
    coeffs[k] = draw(nilpotents(ring)) + draw(rationals.filter(bool))
    for d in range(k + 1, hi + 1):
        coeffs[d] = draw(ring_elements(ring))
    return LaurentSeries(ring, coeffs)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
