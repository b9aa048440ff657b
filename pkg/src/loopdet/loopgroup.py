"""Transvection words for SL_N over Q((t)) and diagonal helpers."""

from __future__ import annotations

from dataclasses import dataclass

from . import matrices as mx
from .errors import PrecisionError
from .laurent import INF, LaurentSeries, invert
from .matrices import diag

__all__ = ["ElementaryWord", "elementary_factor", "elementary_matrix", "diag", "max_word_length"]


def elementary_matrix(ring, n, i, j, a):
    """e_ij(a) = I + a E_ij with 1-based indices."""
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"bad transvection indices ({i}, {j}) for size {n}")
    rows = [list(r) for r in mx.identity(ring, n)]
    rows[i - 1][j - 1] = a
    return tuple(tuple(r) for r in rows)


@dataclass(frozen=True)
class ElementaryWord:
    """The product e_{i1 j1}(a1) e_{i2 j2}(a2) ... (1-based indices)."""

    n: int
    factors: tuple

    def __len__(self):
        return len(self.factors)

    def fold(self, ring):
        g = mx.identity(ring, self.n)
        for i, j, a in self.factors:
            g = mx.mat_mul(g, elementary_matrix(ring, self.n, i, j, a))
        return g

    def partial_products(self, ring):
        g = mx.identity(ring, self.n)
        yield g
        for i, j, a in self.factors:
            g = mx.mat_mul(g, elementary_matrix(ring, self.n, i, j, a))
            yield g

    def lines(self):
        return [f"e {i} {j} : {a}" for i, j, a in self.factors]


def max_word_length(n):
    """n^2 transvections for the elimination plus 6 per diagonal pair."""
    return n * n + 6 * (n - 1)


def _known_zero(x):
    return not x.coeffs


def _inverse(y, horizon):
    """1/y, exact when possible, else known as far as y and ``horizon`` allow."""
    if y.prec == INF:
        return invert(y, horizon)
    return invert(y, min(horizon, y.prec - 2 * y.valuation))


def _row_op(M, r, c, q):
    """Row r += q * row c, returned as a new matrix."""
    rows = [list(row) for row in M]
    rows[r] = [x + q * y for x, y in zip(rows[r], rows[c])]
    return rows


def _eliminate(M, horizon):
    """Factor M = word * diag(d) with series divisions known to ``horizon``.

    Returns (factors, diagonal) where factors are the inverses of the row
    operations, in product order.
    """
    n = len(M)
    ring = mx.ring_of(M)
    one = LaurentSeries.one(ring)
    zero = LaurentSeries.zero(ring)
    rows = [list(r) for r in M]
    ops = []
    for c in range(n):
        cands = [r for r in range(c, n) if not _known_zero(rows[r][c])]
        if not cands:
            raise PrecisionError("pivot column vanishes to the working horizon")
        p = min(cands, key=lambda r: (rows[r][c].valuation, r != c))
        if p != c:
            rows = _row_op(rows, c, p, one)
            ops.append((c, p, one))
        piv = rows[c][c]
        piv_inv = _inverse(piv, horizon)
        for r in range(n):
            if r == c or _known_zero(rows[r][c]):
                continue
            q = -(rows[r][c] * piv_inv)
            if horizon < q.prec < INF:
                q = q.truncate(horizon)
            rows = _row_op(rows, r, c, q)
            rows[r][c] = zero
            ops.append((r, c, q))
    factors = [(i + 1, j + 1, -q) for i, j, q in ops]
    return factors, [rows[i][i] for i in range(n)]


def _diagonal_word(d, n, horizon):
    """Transvections whose product is diag(d) for d with product 1:
    diag(x, x^{-1}) = w(x) w(-1) with w(x) = e12(x) e21(-1/x) e12(x)."""
    ring = d[0].ring
    one = LaurentSeries.one(ring)
    factors = []
    acc = one
    for i in range(n - 1):
        acc = acc * d[i]
        if acc == one:
            continue
        x = acc
        xinv = _inverse(x, horizon)
        a, b = i + 1, i + 2
        factors += [(a, b, x), (b, a, -xinv), (a, b, x), (a, b, -one), (b, a, one), (a, b, -one)]
    return factors


def elementary_factor(M, P, margin=8):
    """Transvection word whose product agrees with M modulo t^P.

    M must be in SL_N(Q((t))).  The working horizon starts at P + margin and
    doubles until the folded word is certified to t^P.
    """
    M = mx.as_matrix(mx.ring_of(M), M)
    ring = mx.ring_of(M)
    n = len(M)
    if not ring.is_field:
        raise ValueError(f"elementary factorization needs Q coefficients, got {ring}")
    d = mx.det(M)
    if not d.agrees_with(LaurentSeries.one(ring), P if d.prec == INF else min(P, d.prec)):
        raise ValueError(f"determinant {d} is not 1")
    if d.prec < P:
        raise PrecisionError("determinant only known below t^P")
    horizon = P + margin
    for _ in range(6):
        try:
            factors, dg = _eliminate(M, horizon)
            factors += _diagonal_word(dg, n, horizon)
            word = ElementaryWord(n, tuple(factors))
            g = word.fold(ring)
            if mx.min_prec(g) >= P:
                if not mx.mat_agrees(g, M, P):
                    raise ArithmeticError("transvection word does not reproduce the matrix")
                return word
        except PrecisionError:
            if mx.min_prec(M) < horizon:
                raise
        horizon = 2 * horizon
    raise PrecisionError(f"could not certify the factorization to t^{P}")
