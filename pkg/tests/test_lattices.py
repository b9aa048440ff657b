import random

import pytest

from conftest import D2, D3, E32, QQ, series
from loopdet import REVERSED, STANDARD, Lattice, LaurentSeries, NotAUnitError, diag, lattice_bounds, ord, quotient_basis, rel_det
from loopdet.lattices import compose, echelon, transport
from loopdet.sampling import gl_matrix, laurent_unit, unit_element

CONVENTIONS = [STANDARD, REVERSED]


def t_power(ring, k):
    return LaurentSeries.one(ring).shift(k)


def random_lattice(rng, ring, n):
    return Lattice(gl_matrix(rng, ring, n))


# -- shape ----------------------------------------------------------------------------


def test_standard_lattice():
    L = Lattice.standard(QQ, 2)
    assert (L.depth, L.top) == (0, 0)
    L = Lattice.standard(D2, 3, shift=-2)
    assert (L.depth, L.top) == (-2, -2)


def test_depth_and_top_of_a_diagonal():
    L = Lattice(diag([t_power(QQ, -1), t_power(QQ, 2)]))
    assert (L.depth, L.top) == (2, -1)


def test_depth_sees_nilpotent_tails():
    e = D2.gen("e")
    # a = 1 + e t^-2 has inverse 1 - e t^-2, so t^2 lies in a Lambda_0 but 1 does not
    a = series(D2, {-2: e, 0: 1})
    L = Lattice(diag([a]))
    assert (L.depth, L.top) == (2, -2)
    assert L.contains_vector((t_power(D2, 2),))
    assert not L.contains_vector((LaurentSeries.one(D2),))


def test_non_invertible_basis():
    e = D2.gen("e")
    with pytest.raises(NotAUnitError):
        Lattice(((LaurentSeries.constant(D2, e),),))


# -- bounds -------------------------------------------------------------------------------


def test_bounds_examples():
    L0 = Lattice.standard(QQ, 2)
    assert lattice_bounds(L0, L0) == (0, 0)
    assert lattice_bounds(L0, Lattice.standard(QQ, 2, -1)) == (-1, -1)
    L = Lattice(diag([t_power(QQ, -1), t_power(QQ, 2)]))
    assert lattice_bounds(L0, L) == (2, -1)


@pytest.mark.parametrize("ring", [QQ, D2, E32], ids=str)
def test_bounds_by_membership(ring):
    rng = random.Random(f"bounds:{ring}")
    for _ in range(6):
        F1, F2 = random_lattice(rng, ring, 2), random_lattice(rng, ring, 2)
        a, b = lattice_bounds(F1, F2)
        assert a >= b
        assert F2.contains(F1.scaled(a))
        assert F1.scaled(b).contains(F2)
        assert not F2.contains(F1.scaled(a - 1))
        assert not F1.scaled(b + 1).contains(F2)


# -- echelon and quotients ---------------------------------------------------------------------


def test_quotient_basis_of_standard():
    L0 = Lattice.standard(QQ, 2)
    q = quotient_basis(3, L0)
    assert len(q) == 6
    assert q.pivots == tuple((j, i) for j in range(3) for i in range(2))
    assert quotient_basis(3, L0, REVERSED).pivots == tuple(reversed(q.pivots))


def test_quotient_basis_by_a_sublattice():
    L = Lattice.standard(D2, 2, -1)
    sub = Lattice.standard(D2, 2, 1)
    q = quotient_basis(sub, L)
    assert len(q) == 4
    vecs = q.vectors()
    assert all(len(v) == 2 for v in vecs)
    with pytest.raises(ValueError):
        quotient_basis(L, sub)
    with pytest.raises(ValueError):
        quotient_basis(-5, L)


@pytest.mark.parametrize("ring", [QQ, D3, E32], ids=str)
@pytest.mark.parametrize("conv", CONVENTIONS, ids=lambda c: c.name)
def test_echelon_depends_only_on_span(ring, conv):
    rng = random.Random(f"span:{ring}:{conv.name}")
    for _ in range(5):
        F = random_lattice(rng, ring, 2)
        D = F.depth + 1
        vecs = F.spanning_vectors(D)
        ech = echelon(vecs, ring, conv)
        # unitriangular-times-units recombination of the same generators
        mixed = []
        for i, v in enumerate(vecs):
            u = unit_element(rng, ring)
            w = {p: c * u for p, c in v.items()}
            if i + 1 < len(vecs):
                f = ring(rng.randint(-2, 2))
                for p, c in vecs[i + 1].items():
                    w[p] = w.get(p, ring.zero) + c * f
            mixed.append({p: c for p, c in w.items() if c})
        assert echelon(mixed[::-1], ring, conv).basis == ech.basis


@pytest.mark.parametrize("ring", [QQ, D2, E32], ids=str)
def test_quotient_rank_is_convention_independent(ring):
    rng = random.Random(f"rank:{ring}")
    for _ in range(5):
        F = random_lattice(rng, ring, 2)
        D = F.depth + rng.randint(0, 2)
        sizes = {len(quotient_basis(D, F, conv)) for conv in CONVENTIONS}
        assert len(sizes) == 1


# -- relative determinants -------------------------------------------------------------------


def test_rel_det_examples():
    L0 = Lattice.standard(QQ, 1)
    x = rel_det(Lattice.standard(QQ, 1, -1), L0)
    assert (x.deg, x.scal) == (1, 1)
    assert str(x) == "deg: 1\nscal: 1"
    x = rel_det(L0, Lattice.standard(QQ, 1, 2))
    assert x.deg == 2
    assert rel_det(Lattice.standard(D2, 3), Lattice.standard(D2, 3, -1)).deg == -3


@pytest.mark.parametrize("ring", [QQ, D2, D3, E32], ids=str)
def test_degree_is_minus_order_for_rank_one(ring):
    rng = random.Random(f"deg:{ring}")
    L0 = Lattice.standard(ring, 1)
    for _ in range(10):
        a = laurent_unit(rng, ring)
        assert rel_det(Lattice(diag([a])), L0).deg == -ord(a)


@pytest.mark.parametrize("ring", [QQ, D2, E32], ids=str)
@pytest.mark.parametrize("conv", CONVENTIONS, ids=lambda c: c.name)
def test_rel_det_is_stable_under_deepening(ring, conv):
    rng = random.Random(f"deepen:{ring}:{conv.name}")
    for _ in range(4):
        F1, F2 = random_lattice(rng, ring, 2), random_lattice(rng, ring, 2)
        base = rel_det(F1, F2, conv=conv)
        assert base.scal == 1
        for extra in (1, 3):
            deeper = rel_det(F1, F2, max(F1.depth, F2.depth) + extra, conv)
            assert deeper == base


@pytest.mark.parametrize("ring", [QQ, D2, E32], ids=str)
def test_composition_and_antisymmetry(ring):
    rng = random.Random(f"compose:{ring}")
    for _ in range(4):
        F1, F2, F3 = (random_lattice(rng, ring, 2) for _ in range(3))
        x12, x23, x13 = rel_det(F1, F2), rel_det(F2, F3), rel_det(F1, F3)
        assert compose(x12, x23) == x13
        assert rel_det(F2, F1).deg == -x12.deg
        assert compose(x12, rel_det(F2, F1)).deg == 0


def test_rel_det_rejects_shallow_depth():
    F = Lattice.standard(QQ, 1, -1)
    with pytest.raises(ValueError):
        rel_det(F, Lattice.standard(QQ, 1), depth=-3)


# -- transport ----------------------------------------------------------------------------------


@pytest.mark.parametrize("ring", [QQ, D2], ids=str)
def test_transport_is_multiplicative_along_chains(ring):
    rng = random.Random(f"transport:{ring}")
    for _ in range(4):
        g = gl_matrix(rng, ring, 2)
        F1, F2, F3 = (random_lattice(rng, ring, 2) for _ in range(3))
        assert transport(g, F1, F3) == transport(g, F1, F2) * transport(g, F2, F3)
        assert transport(g, F1, F1) == 1


def test_transport_of_t_on_rank_one():
    t = LaurentSeries.t(QQ)
    g = diag([t])
    L0 = Lattice.standard(QQ, 1)
    assert transport(g, L0, L0.apply(g)) == 1
