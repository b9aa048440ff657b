"""The determinantal central extension of GL_N(A((t))).

An element over g is a pair (g, u) standing for u * omega(Lambda_0 | g Lambda_0),
where omega is the canonical generator of the relative determinant line (see
:mod:`loopdet.lattices`).  Multiplication transports the second factor by g
and contracts:

    (g, u) (h, v) = (gh, u v gamma(g, h)),
    gamma(g, h) = coordinate of g_* omega(Lambda_0 | h Lambda_0) in omega(g Lambda_0 | gh Lambda_0).

For commuting g, h the commutator of the lifts is the central element
gamma(g, h) / gamma(h, g).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import matrices as mx
from .errors import NotAUnitError, RingMismatchError
from .laurent import LaurentSeries, is_unit, ord
from .lattices import STANDARD, Lattice, transport
from .ring import RingElement
from .symbols import cc_symbol


def _as_matrix(g):
    if isinstance(g, LaurentSeries):
        return ((g,),)
    return g


@dataclass(frozen=True)
class LiftedElement:
    g: tuple
    u: RingElement

    def __post_init__(self):
        if not mx.is_invertible(self.g):
            raise NotAUnitError("g is not invertible over A((t))")
        if not self.u.is_unit():
            raise NotAUnitError(f"{self.u} is not a unit")

    def __str__(self):
        return f"g: {mx.format_matrix(self.g)}\nu: {self.u}"


def canonical_lift(g) -> LiftedElement:
    g = _as_matrix(g)
    return LiftedElement(g, mx.ring_of(g).one)


def gamma(g, h, conv=STANDARD) -> RingElement:
    g, h = _as_matrix(g), _as_matrix(h)
    if len(g) != len(h) or mx.ring_of(g) != mx.ring_of(h):
        raise RingMismatchError("matrices of different size or ring")
    ring = mx.ring_of(g)
    base = Lattice.standard(ring, len(g))
    return transport(g, base, Lattice(h), conv)


def lift_mul(x: LiftedElement, y: LiftedElement, conv=STANDARD) -> LiftedElement:
    return LiftedElement(mx.mat_mul(x.g, y.g), x.u * y.u * gamma(x.g, y.g, conv))


def commutes(g, h) -> bool:
    """Exact test of gh = hg (the horizon of any inexact entry is respected)."""
    g, h = _as_matrix(g), _as_matrix(h)
    gh, hg = mx.mat_mul(g, h), mx.mat_mul(h, g)
    return all((x - y).is_zero() for x, y in zip(mx.entries(gh), mx.entries(hg)))


def commutator(a, b, conv=STANDARD) -> RingElement:
    """Commutator pairing of the canonical lifts of commuting a, b."""
    a, b = _as_matrix(a), _as_matrix(b)
    if not commutes(a, b):
        raise ValueError("commutator pairing needs commuting matrices")
    return gamma(a, b, conv) * gamma(b, a, conv).inverse()


def line_degree(g) -> int:
    """Degree of the line (Lambda_0 | g Lambda_0), which is ord(det g)."""
    return ord(mx.det(_as_matrix(g)))


def graded_commutator(a, b, conv=STANDARD) -> RingElement:
    """Commutator pairing with the lines treated as graded: the group
    commutator times the Koszul sign (-1)^{deg a * deg b}.  Unlike the plain
    commutator it is multiplicative under block-diagonal sums."""
    c = commutator(a, b, conv)
    return -c if (line_degree(a) * line_degree(b)) % 2 else c


def block_sign(a_blocks, b_blocks) -> int:
    """(-1)^{sum_{i != j} ord a_i ord b_j}: the factor by which the
    commutator of diag(a_i), diag(b_i) differs from the product of the
    blockwise commutators (each a_i, b_i a unit of A((t)))."""
    oa = [ord(x) for x in a_blocks]
    ob = [ord(y) for y in b_blocks]
    cross = sum(oa[i] * ob[j] for i in range(len(oa)) for j in range(len(ob)) if i != j)
    return -1 if cross % 2 else 1


@dataclass(frozen=True)
class RRReport:
    ord_a: int
    ord_b: int
    commutator: RingElement
    symbol: RingElement
    printed: RingElement

    @property
    def sign(self):
        return -1 if (self.ord_a * self.ord_b) % 2 else 1

    @property
    def matches_plain(self):
        """c = symbol."""
        return self.commutator == self.symbol

    @property
    def matches_signed(self):
        """c = (-1)^{mn} symbol."""
        return self.commutator == self.symbol * self.sign

    def lines(self):
        return [
            f"ord_a: {self.ord_a}",
            f"ord_b: {self.ord_b}",
            f"commutator: {self.commutator}",
            f"cc_symbol: {self.symbol}",
            f"cc_symbol_printed: {self.printed}",
            f"c = symbol: {str(self.matches_plain).lower()}",
            f"c = (-1)^mn symbol: {str(self.matches_signed).lower()}",
        ]


def verify_rr(a: LaurentSeries, b: LaurentSeries) -> RRReport:
    """Compare the lattice commutator of a, b (N = 1) with the symbol."""
    for x in (a, b):
        if not is_unit(x):
            raise NotAUnitError(f"{x} is not a unit")
    return RRReport(
        ord(a),
        ord(b),
        commutator(a, b),
        cc_symbol(a, b).value,
        cc_symbol(a, b, "printed").value,
    )


def infer_identity(reports):
    """Which of 'c = symbol' / 'c = (-1)^mn symbol' holds on every report."""
    plain = all(r.matches_plain for r in reports)
    signed = all(r.matches_signed for r in reports)
    if plain and signed:
        return "both"
    if plain:
        return "c = symbol"
    if signed:
        return "c = (-1)^mn symbol"
    return "none"
