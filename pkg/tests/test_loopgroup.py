import random

import pytest

from conftest import D2, QQ, series
from loopdet import ElementaryWord, LaurentSeries, PrecisionError, diag, elementary_factor
from loopdet.loopgroup import elementary_matrix, max_word_length
from loopdet.matrices import identity, mat_agrees, mat_mul
from loopdet.sampling import sl2_matrix

P = 12


def random_sl(rng, n, steps=5):
    """Product of random transvections with Laurent-polynomial entries."""
    g = identity(QQ, n)
    for _ in range(steps):
        i, j = rng.sample(range(1, n + 1), 2)
        a = LaurentSeries(QQ, {d: QQ(rng.randint(-3, 3)) for d in range(-2, 3)})
        g = mat_mul(g, elementary_matrix(QQ, n, i, j, a))
    return g


def check_word(word, M, n):
    assert isinstance(word, ElementaryWord)
    assert word.n == n
    assert len(word) <= max_word_length(n)
    for i, j, _ in word.factors:
        assert i != j and 1 <= i <= n and 1 <= j <= n
    assert mat_agrees(word.fold(QQ), M, P)


def test_elementary_matrix_is_one_based():
    a = LaurentSeries.t(QQ)
    e = elementary_matrix(QQ, 2, 1, 2, a)
    assert e[0][1] == a and e[1][0].is_zero()
    with pytest.raises(ValueError):
        elementary_matrix(QQ, 2, 1, 1, a)
    with pytest.raises(ValueError):
        elementary_matrix(QQ, 2, 0, 1, a)


def test_identity_and_single_transvection():
    assert len(elementary_factor(identity(QQ, 2), P)) == 0
    M = elementary_matrix(QQ, 2, 1, 2, series(QQ, {-1: 3, 2: 1}))
    word = elementary_factor(M, P)
    assert len(word) == 1
    assert word.lines() == ["e 1 2 : 3*t^-1 + t^2"]


def test_torus_element():
    t = LaurentSeries.t(QQ)
    M = diag([t, t.shift(-2)])
    check_word(elementary_factor(M, P), M, 2)


def test_inexact_entries():
    # diag(1 - t, (1 - t)^{-1}) with the inverse known below t^40
    a = 1 - LaurentSeries.t(QQ)
    inv = LaurentSeries(QQ, {k: QQ(1) for k in range(40)}, 40)
    M = diag([a, inv])
    check_word(elementary_factor(M, P), M, 2)


def test_random_sl2():
    rng = random.Random(12)
    for _ in range(15):
        M = sl2_matrix(rng)
        check_word(elementary_factor(M, P), M, 2)


@pytest.mark.parametrize("n", [2, 3])
def test_random_products_of_transvections(n):
    rng = random.Random(n)
    for _ in range(6):
        M = random_sl(rng, n)
        check_word(elementary_factor(M, P), M, n)


def test_partial_products_end_at_the_fold():
    rng = random.Random(3)
    M = sl2_matrix(rng)
    word = elementary_factor(M, P)
    steps = list(word.partial_products(QQ))
    assert steps[0] == identity(QQ, 2)
    assert steps[-1] == word.fold(QQ)
    assert len(steps) == len(word) + 1


def test_rejections():
    t = LaurentSeries.t(QQ)
    with pytest.raises(ValueError):
        elementary_factor(diag([t, t]), P)
    e = LaurentSeries.t(D2)
    with pytest.raises(ValueError):
        elementary_factor(diag([e, e.shift(-2)]), P)
    with pytest.raises(PrecisionError):
        elementary_factor(diag([LaurentSeries.one(QQ).truncate(5), LaurentSeries.one(QQ)]), P)
