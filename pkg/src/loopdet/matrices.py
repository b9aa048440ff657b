"""Small dense matrices over A((t)), stored as tuples of row tuples."""

from __future__ import annotations

import itertools

from .errors import NotAUnitError, PrecisionError, RingMismatchError
from .laurent import INF, LaurentSeries, invert, is_unit


def as_matrix(ring, rows):
    """Coerce nested sequences of series / scalars into a square matrix."""
    out = []
    for row in rows:
        out.append(tuple(
            x if isinstance(x, LaurentSeries) else LaurentSeries.constant(ring, x)
            for x in row
        ))
    n = len(out)
    if n == 0 or any(len(r) != n for r in out):
        raise ValueError("matrix must be square and non-empty")
    for r in out:
        for x in r:
            if x.ring != ring:
                raise RingMismatchError(f"entry over {x.ring} in a matrix over {ring}")
    return tuple(out)


def ring_of(g):
    return g[0][0].ring


def size(g):
    return len(g)


def identity(ring, n):
    one = LaurentSeries.one(ring)
    zero = LaurentSeries.zero(ring)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def diag(entries):
    entries = list(entries)
    if not entries:
        raise ValueError("diag needs at least one entry")
    ring = entries[0].ring
    for x in entries:
        if not is_unit(x):
            raise NotAUnitError(f"diagonal entry {x} is not a unit")
    zero = LaurentSeries.zero(ring)
    n = len(entries)
    return tuple(tuple(entries[i] if i == j else zero for j in range(n)) for i in range(n))


def block_embed(g1, g2):
    ring = ring_of(g1)
    if ring_of(g2) != ring:
        raise RingMismatchError("blocks over different rings")
    n1, n2 = len(g1), len(g2)
    zero = LaurentSeries.zero(ring)
    rows = []
    for i in range(n1):
        rows.append(tuple(g1[i]) + (zero,) * n2)
    for i in range(n2):
        rows.append((zero,) * n1 + tuple(g2[i]))
    return tuple(rows)


def mat_mul(g, h):
    n = len(g)
    if len(h) != n:
        raise RingMismatchError("matrix sizes differ")
    ring = ring_of(g)
    zero = LaurentSeries.zero(ring)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            s = zero
            for k in range(n):
                s = s + g[i][k] * h[k][j]
            row.append(s)
        rows.append(tuple(row))
    return tuple(rows)


def _minor(g, i, j):
    return tuple(
        tuple(x for c, x in enumerate(row) if c != j)
        for r, row in enumerate(g) if r != i
    )


def det(g):
    n = len(g)
    if n == 1:
        return g[0][0]
    if n == 2:
        return g[0][0] * g[1][1] - g[0][1] * g[1][0]
    ring = ring_of(g)
    total = LaurentSeries.zero(ring)
    for j in range(n):
        if g[0][j].is_zero() and g[0][j].is_exact:
            continue
        term = g[0][j] * det(_minor(g, 0, j))
        total = total + term if j % 2 == 0 else total - term
    return total


def adjugate(g):
    n = len(g)
    ring = ring_of(g)
    if n == 1:
        return ((LaurentSeries.one(ring),),)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            c = det(_minor(g, j, i))
            row.append(c if (i + j) % 2 == 0 else -c)
        rows.append(tuple(row))
    return tuple(rows)


def is_invertible(g):
    return is_unit(det(g))


def inverse(g, prec=None):
    """Inverse as adj(g) / det(g).  Exact when det(g)^{-1} is; otherwise every
    entry is known at least to ``prec``."""
    d = det(g)
    if not is_unit(d):
        raise NotAUnitError("matrix is not invertible over A((t))")
    adj = adjugate(g)
    try:
        dinv = invert(d)
    except PrecisionError:
        if prec is None:
            raise
        lows = [x.low() for row in adj for x in row if x.coeffs]
        dinv = invert(d, prec - min(lows, default=0))
    return tuple(tuple(x * dinv for x in row) for row in adj)


def is_exact(g):
    return all(x.is_exact for row in g for x in row)


def lowest_degree(g):
    """Smallest stored degree over all entries (ignores zero entries)."""
    lows = [x.valuation for row in g for x in row if x.coeffs]
    if not lows:
        raise ValueError("zero matrix")
    return min(lows)


def inverse_lowest_degree(g, h=None):
    """Exact lowest degree appearing in g^{-1} (or in g^{-1} h).

    The inverse is computed at increasing horizons until the minimum over
    entries is attained by a stored coefficient rather than a horizon.
    """
    d = det(g)
    if not is_unit(d):
        raise NotAUnitError("matrix is not invertible over A((t))")
    adj = adjugate(g)
    if h is not None:
        adj = mat_mul(adj, h)
    try:
        dinv = invert(d)
        return lowest_degree(tuple(tuple(x * dinv for x in row) for row in adj))
    except PrecisionError:
        pass
    horizon = 1 + abs(lowest_degree(adj)) + abs(d.valuation)
    while True:
        dinv = invert(d, horizon)
        best = None
        for row in adj:
            for x in row:
                if not x.coeffs and x.is_exact:
                    continue
                y = x * dinv
                cand = (y.low(), bool(y.coeffs))
                if best is None or cand[0] < best[0] or (cand[0] == best[0] and cand[1]):
                    best = cand
        if best is not None and best[1]:
            return best[0]
        horizon *= 2


def mat_equal(g, h):
    return len(g) == len(h) and all(x == y for rg, rh in zip(g, h) for x, y in zip(rg, rh))


def mat_agrees(g, h, upto=None):
    return len(g) == len(h) and all(
        x.agrees_with(y, upto) for rg, rh in zip(g, h) for x, y in zip(rg, rh)
    )


def min_prec(g):
    return min((x.prec for row in g for x in row), default=INF)


def entries(g):
    return itertools.chain.from_iterable(g)


def format_matrix(g):
    return "; ".join(", ".join(str(x) for x in row) for row in g)
