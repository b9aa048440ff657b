import random
from math import factorial

import pytest
from gmpy2 import mpq

from conftest import D2, D3, E32, QQ, series
from loopdet import LaurentSeries, NotAUnitError, cc_symbol, cc_symbol_printed, derivative, residue, tame_symbol
from loopdet.ring import exp_nilpotent
from loopdet.sampling import laurent_unit, steinberg_unit
from loopdet.symbols import VARIANTS, check_bimultiplicative, check_minus, check_skew, check_steinberg

NIL_RINGS = [D2, D3, E32]


def value(a, b, variant="corrected"):
    return cc_symbol(a, b, variant).value


def series_exp(x):
    """exp of a Laurent polynomial with nilpotent coefficients, as a finite sum."""
    out = LaurentSeries.one(x.ring)
    power = LaurentSeries.one(x.ring)
    for k in range(1, x.ring.nilpotency_index):
        power = power * x
        out = out + power.scale(mpq(1, factorial(k)))
    return out


# -- normalization ------------------------------------------------------------------


def test_t_with_itself():
    t = LaurentSeries.t(QQ)
    assert value(t, t) == -1


@pytest.mark.parametrize("c", [2, mpq(-3, 5), 7])
def test_constant_against_t(c):
    t = LaurentSeries.t(QQ)
    a = LaurentSeries.constant(QQ, c)
    assert value(a, t) == c
    assert value(t, a) == QQ(c).inverse()


def test_constants_pair_trivially():
    a = LaurentSeries.constant(QQ, 2)
    b = LaurentSeries.constant(QQ, 3)
    assert value(a, b) == 1


def test_nilpotent_unit_against_t():
    e = D2.gen("e")
    a = series(D2, {-1: 2 * e, 0: 1 + e, 2: 3})
    # a = (1 + e) (1 + 3 t^2 + ...)(1 + 2e t^-1 + ...); only the constant factor survives
    assert value(a, LaurentSeries.t(D2)) == 1 + e


def test_exp_pairing_oracle():
    """{exp x, exp y} = exp Res(x dy) for x, y with nilpotent coefficients and no constant term."""
    e1, e2 = E32.gens()
    rng = random.Random(7)
    for _ in range(15):
        x = LaurentSeries(E32, {d: e1.scale(rng.randint(-4, 4)) for d in (-2, -1, 1, 2)})
        y = LaurentSeries(E32, {d: e2.scale(rng.randint(-4, 4)) + e1 * e1 for d in (-2, -1, 1, 3)})
        expected = exp_nilpotent(residue(x * derivative(y)))
        assert value(series_exp(x), series_exp(y)) == expected


def test_printed_example():
    t = LaurentSeries.t(D2)
    e = D2.gen("e")
    a = series(D2, {-1: -e, 0: 1})
    assert value(a, 1 + t, "printed") == 1 + e


# -- over a field: tame reduction -------------------------------------------------------


def test_tame_specialization():
    rng = random.Random(3)
    for _ in range(40):
        a, b = laurent_unit(rng, QQ), laurent_unit(rng, QQ)
        tame = tame_symbol(a, b).value
        assert value(a, b) == tame
        assert value(a, b, "leading") == tame


def test_tame_symbol_needs_field():
    with pytest.raises(ValueError):
        tame_symbol(LaurentSeries.t(D2), LaurentSeries.t(D2))


# -- variants that must fail -----------------------------------------------------------------


def test_printed_is_not_skew_symmetric():
    t = LaurentSeries.t(QQ)
    two = LaurentSeries.constant(QQ, 2)
    assert cc_symbol_printed(two, t).value == 1
    assert cc_symbol_printed(t, two).value == mpq(1, 2)
    assert not check_skew(two, t, "printed")


def test_leading_fails_over_nilpotents():
    rng = random.Random(11)
    failures = 0
    for _ in range(30):
        a, a2, b = (laurent_unit(rng, D2) for _ in range(3))
        if not (check_skew(a, b, "leading") and check_bimultiplicative(a, a2, b, "leading")):
            failures += 1
    assert failures > 0


# -- relations of the corrected symbol ------------------------------------------------------------


@pytest.mark.parametrize("ring", NIL_RINGS + [QQ], ids=str)
def test_relations(ring):
    rng = random.Random(f"relations:{ring}")
    for _ in range(12):
        a1, a2, b = (laurent_unit(rng, ring) for _ in range(3))
        assert check_bimultiplicative(a1, a2, b)
        assert check_bimultiplicative(b, a1, a2)
        assert check_skew(a1, b)
        assert check_minus(a1)
        assert check_steinberg(steinberg_unit(rng, ring))


def test_values_are_units_and_horizon_independent():
    rng = random.Random(5)
    for _ in range(10):
        a, b = laurent_unit(rng, E32), laurent_unit(rng, E32)
        x = cc_symbol(a, b)
        assert x.value.is_unit()
        assert cc_symbol(a, b, horizon=64).value == x.value


def test_inexact_inputs_with_enough_precision():
    rng = random.Random(9)
    for _ in range(8):
        a, b = laurent_unit(rng, D3), laurent_unit(rng, D3)
        assert value(a.truncate(40), b.truncate(40)) == value(a, b)


def test_rejects_bad_input():
    e = D2.gen("e")
    with pytest.raises(NotAUnitError):
        cc_symbol(series(D2, {0: e}), LaurentSeries.t(D2))
    with pytest.raises(ValueError):
        cc_symbol(LaurentSeries.t(D2), LaurentSeries.t(D2), "nope")
    with pytest.raises(ValueError):
        cc_symbol(LaurentSeries.t(D2), LaurentSeries.t(D3))
    assert VARIANTS[0] == "corrected"
