"""Seeded property suites and the deterministic self-test report.

Every suite draws its cases from ``random.Random(f"{seed}:{suite}:{ring}")``
so results do not depend on which other suites run, and a report is a pure
function of its configuration.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import matrices as mx
from .errors import PrecisionError
from .extension import block_sign, commutator, gamma, graded_commutator
from .lattices import REVERSED, Lattice, common_depth, compose, rel_det
from .laurent import LaurentSeries, ord, unit_decompose
from .loopgroup import elementary_factor
from .ring import NilAlgebra
from .sampling import (
    gl_matrix,
    laurent_unit,
    power_series_unit,
    sl2_matrix,
    steinberg_unit,
)
from .symbols import cc_symbol, tame_symbol

SLFACTOR_PREC = 12


@dataclass
class SuiteResult:
    name: str
    ring: str
    cases: int = 0
    failures: int = 0
    counterexample: str | None = None

    @property
    def ok(self):
        return self.failures == 0

    def line(self):
        return f"suite {self.name}: {self.cases - self.failures}/{self.cases} passed"


def _sym(a, b, variant):
    return cc_symbol(a, b, variant).value


def _sign(a, b):
    return -1 if (ord(a) * ord(b)) % 2 else 1


# -- suites: each returns (passed, description of the case) ----------------


def case_ord_hom(rng, ring, variant):
    a, b = laurent_unit(rng, ring), laurent_unit(rng, ring)
    return ord(a * b) == ord(a) + ord(b), f"a = {a}; b = {b}"


def case_decompose(rng, ring, variant):
    """Roundtrip, factor shapes, and invariance under doubling the horizon of
    an inexact input."""
    a = laurent_unit(rng, ring)
    dec = unit_decompose(a)
    ok = dec.compose() == a
    ok = ok and dec.plus.part(hi=1) == 1 and all(d > 0 for d in dec.plus.coeffs if d)
    ok = ok and all(d < 0 or d == 0 for d in dec.minus.coeffs) and dec.minus.coeff(0) == 1
    ok = ok and all(c.is_nilpotent() for d, c in dec.minus.coeffs.items() if d < 0)
    p = power_series_unit(rng, ring)
    x = a * p
    horizon = 6 + x.principal_width() * ring.nilpotency_index
    while True:
        try:
            d1 = unit_decompose(x.truncate(horizon))
            break
        except PrecisionError:
            horizon *= 2
    d2 = unit_decompose(x.truncate(2 * horizon))
    ok = ok and (d1.n, d1.a0, d1.minus) == (d2.n, d2.a0, d2.minus)
    ok = ok and d1.plus.agrees_with(d2.plus) and d1.compose().agrees_with(x)
    return ok, f"a = {a}; p = {p}"


def case_steinberg(rng, ring, variant):
    a = steinberg_unit(rng, ring)
    return _sym(a, 1 - a, variant).is_one(), f"a = {a}"


def case_minus(rng, ring, variant):
    a = laurent_unit(rng, ring)
    return _sym(a, -a, variant).is_one(), f"a = {a}"


def case_bimultiplicative(rng, ring, variant):
    a1, a2, b = (laurent_unit(rng, ring) for _ in range(3))
    left = _sym(a1 * a2, b, variant) == _sym(a1, b, variant) * _sym(a2, b, variant)
    right = _sym(b, a1 * a2, variant) == _sym(b, a1, variant) * _sym(b, a2, variant)
    return left and right, f"a1 = {a1}; a2 = {a2}; b = {b}"


def case_skew(rng, ring, variant):
    a, b = laurent_unit(rng, ring), laurent_unit(rng, ring)
    return (_sym(a, b, variant) * _sym(b, a, variant)).is_one(), f"a = {a}; b = {b}"


def case_tame(rng, ring, variant):
    a, b = laurent_unit(rng, ring), laurent_unit(rng, ring)
    return _sym(a, b, variant) == tame_symbol(a, b).value, f"a = {a}; b = {b}"


def _lattice(rng, ring, n):
    return Lattice(gl_matrix(rng, ring, n))


def case_reldet_depth(rng, ring, variant):
    n = rng.randint(1, 2)
    F1, F2 = _lattice(rng, ring, n), _lattice(rng, ring, n)
    d0 = common_depth(F1, F2)
    x, y = rel_det(F1, F2, d0), rel_det(F1, F2, d0 + rng.randint(1, 3))
    return x == y, f"F1 = {mx.format_matrix(F1.basis)}; F2 = {mx.format_matrix(F2.basis)}"


def case_reldet_compose(rng, ring, variant):
    n = rng.randint(1, 2)
    F1, F2, F3 = (_lattice(rng, ring, n) for _ in range(3))
    ok = compose(rel_det(F1, F2), rel_det(F2, F3)) == rel_det(F1, F3)
    back = rel_det(F2, F1)
    ok = ok and back.deg == -rel_det(F1, F2).deg and (back.scal * rel_det(F1, F2).scal).is_one()
    return ok, " | ".join(mx.format_matrix(F.basis) for F in (F1, F2, F3))


def case_cocycle(rng, ring, variant, n=None):
    n = n or rng.randint(1, 2)
    lo, hi = (-2, 2) if n == 1 else (-1, 1)
    g, h, k = (gl_matrix(rng, ring, n, lo=lo, hi=hi) for _ in range(3))
    gh, hk = mx.mat_mul(g, h), mx.mat_mul(h, k)
    ok = gamma(g, h) * gamma(gh, k) == gamma(g, hk) * gamma(h, k)
    return ok, " | ".join(mx.format_matrix(x) for x in (g, h, k))


def case_conventions(rng, ring, variant):
    a, b = laurent_unit(rng, ring), laurent_unit(rng, ring)
    return commutator(a, b) == commutator(a, b, REVERSED), f"a = {a}; b = {b}"


def case_power_series(rng, ring, variant):
    a, b = power_series_unit(rng, ring), power_series_unit(rng, ring)
    return commutator(a, b).is_one(), f"a = {a}; b = {b}"


def case_rr(rng, ring, variant):
    a, b = laurent_unit(rng, ring), laurent_unit(rng, ring)
    return commutator(a, b) == _sym(a, b, variant) * _sign(a, b), f"a = {a}; b = {b}"


def case_block(rng, ring, variant):
    """Block-diagonal commutators factor up to the sign of swapping the
    graded lines of the two blocks."""
    a1, a2, b1, b2 = (laurent_unit(rng, ring, -2, 2) for _ in range(4))
    lhs = commutator(mx.diag([a1, a2]), mx.diag([b1, b2]))
    rhs = commutator(a1, b1) * commutator(a2, b2) * block_sign([a1, a2], [b1, b2])
    graded = graded_commutator(mx.diag([a1, a2]), mx.diag([b1, b2]))
    ok = lhs == rhs and graded == graded_commutator(a1, b1) * graded_commutator(a2, b2)
    return ok, f"a = ({a1}, {a2}); b = ({b1}, {b2})"


def case_slfactor(rng, ring, variant):
    M = sl2_matrix(rng)
    word = elementary_factor(M, SLFACTOR_PREC)
    g = word.fold(ring)
    return mx.mat_agrees(g, M, SLFACTOR_PREC), mx.format_matrix(M)


# name -> (case function, field only)
SUITES = {
    "ord-hom": (case_ord_hom, False),
    "decompose": (case_decompose, False),
    "steinberg": (case_steinberg, False),
    "minus": (case_minus, False),
    "bimultiplicative": (case_bimultiplicative, False),
    "skew": (case_skew, False),
    "tame": (case_tame, True),
    "reldet-depth": (case_reldet_depth, False),
    "reldet-compose": (case_reldet_compose, False),
    "cocycle": (case_cocycle, False),
    "conventions": (case_conventions, False),
    "power-series": (case_power_series, False),
    "rr": (case_rr, False),
    "block": (case_block, False),
    "slfactor": (case_slfactor, True),
}


def suite_rng(seed, name, ring):
    return random.Random(f"{seed}:{name}:{ring}")


def run_suite(name, ring: NilAlgebra, cases, seed=0, variant="corrected", case_fn=None):
    fn = case_fn or SUITES[name][0]
    rng = suite_rng(seed, name, ring)
    result = SuiteResult(name, str(ring))
    for _ in range(cases):
        try:
            ok, desc = fn(rng, ring, variant)
        except ArithmeticError as exc:
            ok, desc = False, f"error: {exc}"
        result.cases += 1
        if not ok:
            result.failures += 1
            if result.counterexample is None:
                result.counterexample = desc
    return result


@dataclass
class SessionConfig:
    ring: str = "Q"
    seed: int = 0
    cases: int = 10
    variant: str = "corrected"
    suites: tuple = field(default_factory=lambda: tuple(SUITES))
    report: str | None = None


def selftest(config: SessionConfig, ring: NilAlgebra):
    """Run every applicable suite; return (ok, report lines, report dict)."""
    results = []
    for name in config.suites:
        _, field_only = SUITES[name]
        if field_only and not ring.is_field:
            continue
        results.append(run_suite(name, ring, config.cases, config.seed, config.variant))
    ok = all(r.ok for r in results)
    lines = [
        "selftest",
        f"ring: {ring}",
        f"seed: {config.seed}",
        f"cases: {config.cases}",
        f"variant: {config.variant}",
    ]
    lines += [r.line() for r in results]
    lines += [f"counterexample {r.name}: {r.counterexample}" for r in results if not r.ok]
    lines.append(f"status: {'pass' if ok else 'fail'}")
    data = {
        "ring": str(ring),
        "seed": config.seed,
        "cases": config.cases,
        "variant": config.variant,
        "suites": [
            {"name": r.name, "cases": r.cases, "failures": r.failures, "counterexample": r.counterexample}
            for r in results
        ],
        "status": "pass" if ok else "fail",
    }
    return ok, lines, data


def printed_skew_witness(ring: NilAlgebra, c=2):
    """The constant-versus-t pair on which the printed formula is not
    skew-symmetric: returns ({c, t}, {t, c}) in that variant."""
    t = LaurentSeries.t(ring)
    k = LaurentSeries.constant(ring, c)
    return _sym(k, t, "printed"), _sym(t, k, "printed")


__all__ = [
    "SUITES",
    "SessionConfig",
    "SuiteResult",
    "printed_skew_witness",
    "run_suite",
    "selftest",
]
