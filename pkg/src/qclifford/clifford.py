"""The Clifford product of Cl(B,V) on the wedge-basis carrier space.

Products are computed Chevalley-style: the left factor is rewritten in the
Clifford-monomial basis (cached per context, unitriangular against the wedge
basis), and each monomial acts on the right factor as a composition of
generator operators L_i = e_i⌋B + e_i∧ .
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import linalg
from .errors import ComputationError, ShapeError
from .exterior import Multivector, blade_grade, blade_indices, contract_left, wedge


def clifford_apply_generator(i: int, u: Multivector) -> Multivector:
    """L_i(u) = e_i⌋B u + e_i∧u; applying it twice scales by Q(e_i)."""
    ctx = u.ctx
    if not 1 <= i <= ctx.dim:
        raise ShapeError(f"generator index {i} out of range 1..{ctx.dim}")
    e = ctx.e(i)
    return contract_left(e, u, form="B") + wedge(e, u)


def _apply_monomial(bits: int, v: Multivector) -> Multivector:
    """Act with e_{i1}·…·e_{ik} (ascending indices): innermost factor first."""
    for i in reversed(blade_indices(bits)):
        v = clifford_apply_generator(i, v)
        if v.is_zero():
            break
    return v


class MonomialTable:
    """Per-context conversion between the wedge basis and the basis of
    Clifford monomials with ascending index sets.

    Both directions are unitriangular in the grade filtration: the grade-k
    monomial equals the grade-k blade plus strictly lower-grade terms.
    """

    def __init__(self, ctx):
        self.ctx = ctx
        order = sorted(ctx.basis_blades(), key=lambda b: (blade_grade(b), b))
        to_wedge = {0: ctx.one()}
        for bits in order:
            if bits == 0:
                continue
            low = bits & -bits
            rest = bits ^ low
            to_wedge[bits] = clifford_apply_generator(low.bit_length(), to_wedge[rest])
        self.to_wedge = to_wedge

        from_wedge: dict[int, dict[int, object]] = {}
        for bits in order:
            expansion = {bits: Fraction(1)}
            for b, c in to_wedge[bits].terms.items():
                if b == bits:
                    if c != 1:
                        raise ComputationError(
                            "internal: monomial table is not unitriangular"
                        )
                    continue
                if blade_grade(b) >= blade_grade(bits):
                    raise ComputationError(
                        "internal: monomial table is not unitriangular"
                    )
                for k, ck in from_wedge[b].items():
                    new = expansion.get(k, Fraction(0)) - c * ck
                    if new == 0:
                        expansion.pop(k, None)
                    else:
                        expansion[k] = new
            from_wedge[bits] = expansion
        self.from_wedge = from_wedge

    def to_monomial_coords(self, u: Multivector) -> dict:
        coords = {}
        for bits, coeff in u.terms.items():
            for k, ck in self.from_wedge[bits].items():
                new = coords.get(k, Fraction(0)) + coeff * ck
                if new == 0:
                    coords.pop(k, None)
                else:
                    coords[k] = new
        return coords

    def from_monomial_coords(self, coords: dict) -> Multivector:
        acc = self.ctx.zero()
        for bits, coeff in coords.items():
            acc = acc + self.to_wedge[bits].scale(coeff)
        return acc


def monomial_table(ctx) -> MonomialTable:
    if ctx._monomial_table is None:
        ctx._monomial_table = MonomialTable(ctx)
    return ctx._monomial_table


def _pair_product(ctx, left_bits: int, right_bits: int) -> Multivector:
    cached = ctx._pair_products.get((left_bits, right_bits))
    if cached is not None:
        return cached
    table = monomial_table(ctx)
    v = ctx.blade(right_bits)
    acc = ctx.zero()
    for mono_bits, coeff in table.from_wedge[left_bits].items():
        acc = acc + _apply_monomial(mono_bits, v).scale(coeff)
    ctx._pair_products[(left_bits, right_bits)] = acc
    return acc


def clifford_product(u: Multivector, v: Multivector) -> Multivector:
    """Associative unital product with x·x = Q(x)·1 for every vector x."""
    u.ctx.require_compatible(v.ctx)
    ctx = u.ctx
    acc = {}
    for bu, cu in u.terms.items():
        for bv, cv in v.terms.items():
            factor = cu * cv
            for bits, c in _pair_product(ctx, bu, bv).terms.items():
                new = acc.get(bits, Fraction(0)) + factor * c
                if new == 0:
                    acc.pop(bits, None)
                else:
                    acc[bits] = new
    return Multivector(ctx, acc)


@dataclass
class RelationReport:
    """Outcome of checking x_i·x_j + x_j·x_i = 2·target_ij·1 for all pairs."""
    passed: bool
    first_violation: Optional[tuple] = None
    violations: list = field(default_factory=list)
    pairs_checked: int = 0


def verify_generator_relations(gens, target_g) -> RelationReport:
    """Check the anticommutation table of a generator family against a
    symmetric matrix; failures are reported, not raised."""
    gens = list(gens)
    m = len(gens)
    if len(target_g) != m or any(len(row) != m for row in target_g):
        raise ShapeError("target matrix must be square of the generator count")
    report = RelationReport(passed=True)
    for i in range(m):
        gens[0].ctx.require_compatible(gens[i].ctx)
        for j in range(i, m):
            lhs = gens[i] * gens[j] + gens[j] * gens[i]
            residual = lhs - gens[i].ctx.scalar(2 * target_g[i][j])
            report.pairs_checked += 1
            if not residual.is_zero():
                report.passed = False
                if report.first_violation is None:
                    report.first_violation = (i + 1, j + 1)
                report.violations.append((i + 1, j + 1, residual))
    return report


def regular_representation(u: Multivector):
    """Matrix of left multiplication by u in the wedge-blade basis
    (rows and columns ordered by ascending bit pattern)."""
    ctx = u.ctx
    size = 1 << ctx.dim
    cols = []
    for bv in range(size):
        cols.append((u * ctx.blade(bv)).coordinates())
    return [[cols[j][i] for j in range(size)] for i in range(size)]


def inverse(u: Multivector) -> Multivector:
    """Two-sided inverse via the regular representation; raises when u is
    singular (zero divisors are common in these algebras)."""
    ctx = u.ctx
    rhs = [Fraction(0)] * (1 << ctx.dim)
    rhs[0] = Fraction(1)
    solution = linalg.solve(regular_representation(u), rhs)
    if solution is None:
        raise ComputationError("element is not invertible")
    x = Multivector.from_terms(
        ctx, {bits: c for bits, c in enumerate(solution) if c != 0}
    )
    if (u * x != ctx.one()) or (x * u != ctx.one()):
        raise ComputationError("element is not invertible")
    return x
