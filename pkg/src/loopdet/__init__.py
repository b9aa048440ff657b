"""Exact Laurent-series arithmetic over artinian rings, Contou-Carrere symbols,
lattice determinant lines and the determinantal central extension."""

from .errors import NotAUnitError, NotNilpotentError, ParseError, PrecisionError, RingMismatchError
from .extension import (
    LiftedElement,
    block_sign,
    canonical_lift,
    commutator,
    gamma,
    graded_commutator,
    infer_identity,
    lift_mul,
    verify_rr,
)
from .lattices import REVERSED, STANDARD, Lattice, QuotientBasis, RelDet, lattice_bounds, quotient_basis, rel_det
from .laurent import INF, LaurentSeries, UnitDecomposition, derivative, invert, is_unit, log_special, ord, residue, unit_decompose
from .loopgroup import ElementaryWord, elementary_factor
from .matrices import block_embed, diag
from .parsing import parse_element, parse_matrix, parse_ring, parse_series
from .ring import NilAlgebra, RingElement, exp_nilpotent, log_one_plus_nilpotent
from .symbols import SymbolValue, cc_symbol, cc_symbol_printed, tame_symbol

__all__ = [
    "INF",
    "ElementaryWord",
    "LaurentSeries",
    "Lattice",
    "LiftedElement",
    "NilAlgebra",
    "NotAUnitError",
    "NotNilpotentError",
    "ParseError",
    "PrecisionError",
    "QuotientBasis",
    "REVERSED",
    "RelDet",
    "RingElement",
    "RingMismatchError",
    "STANDARD",
    "SymbolValue",
    "UnitDecomposition",
    "block_embed",
    "block_sign",
    "canonical_lift",
    "cc_symbol",
    "cc_symbol_printed",
    "commutator",
    "derivative",
    "diag",
    "elementary_factor",
    "exp_nilpotent",
    "gamma",
    "graded_commutator",
    "infer_identity",
    "invert",
    "is_unit",
    "lattice_bounds",
    "lift_mul",
    "log_one_plus_nilpotent",
    "log_special",
    "ord",
    "parse_element",
    "parse_matrix",
    "parse_ring",
    "parse_series",
    "quotient_basis",
    "rel_det",
    "residue",
    "tame_symbol",
    "unit_decompose",
    "verify_rr",
]
