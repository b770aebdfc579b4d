"""Grassmann layer: blades as bit sets, wedge product, graded involutions,
and the left contractions driven by B, g or A.

A blade is an int whose set bits are the (0-based) generator indices of the
wedge monomial; bit i stands for e_{i+1}. The empty set is the unit.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ContextMismatch, ShapeError
from .scalars import GaussianRational, Scalar, as_scalar, conj


def blade_grade(bits: int) -> int:
    return bits.bit_count()


def blade_indices(bits: int):
    """Ascending 1-based indices of a blade."""
    out = []
    i = 1
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return out


def wedge_sign(left: int, right: int) -> int:
    """Parity sign for merging two disjoint ascending index sets; 0 on overlap."""
    if left & right:
        return 0
    inversions = 0
    r = right
    while r:
        low = r & -r
        # bits of `left` strictly above this index must jump over it
        inversions += (left >> low.bit_length()).bit_count()
        r ^= low
    return -1 if inversions & 1 else 1


def grade_involution_sign(k: int) -> int:
    return -1 if k & 1 else 1


def reversion_sign(k: int) -> int:
    return -1 if (k * (k - 1) // 2) & 1 else 1


class Multivector:
    """A finite Blade -> Scalar mapping over a fixed algebra context.

    Instances are immutable by convention: every operation returns a fresh
    value and zero coefficients are never stored, so equality is plain
    term-by-term comparison.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms):
        self.ctx = ctx
        self.terms = terms

    @classmethod
    def from_terms(cls, ctx, terms) -> "Multivector":
        clean = {}
        limit = 1 << ctx.dim
        for bits, coeff in terms.items():
            if bits < 0 or bits >= limit:
                raise ShapeError(f"blade {bits:#x} outside dimension {ctx.dim}")
            coeff = as_scalar(coeff)
            if coeff != 0:
                clean[bits] = coeff
        return cls(ctx, clean)

    # -- bookkeeping ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def grades(self):
        return sorted({blade_grade(b) for b in self.terms})

    def max_grade(self) -> int:
        return max((blade_grade(b) for b in self.terms), default=0)

    def is_homogeneous(self, k: int) -> bool:
        return all(blade_grade(b) == k for b in self.terms)

    def grade_project(self, k: int) -> "Multivector":
        return Multivector(
            self.ctx, {b: c for b, c in self.terms.items() if blade_grade(b) == k}
        )

    def even_part(self) -> "Multivector":
        return Multivector(
            self.ctx, {b: c for b, c in self.terms.items() if not blade_grade(b) & 1}
        )

    def odd_part(self) -> "Multivector":
        return Multivector(
            self.ctx, {b: c for b, c in self.terms.items() if blade_grade(b) & 1}
        )

    def scalar_part(self) -> Scalar:
        return self.terms.get(0, Fraction(0))

    def coefficient(self, bits: int) -> Scalar:
        return self.terms.get(bits, Fraction(0))

    def coordinates(self):
        """Dense coefficient list over all 2^n blades, ascending bit patterns."""
        return [self.terms.get(b, Fraction(0)) for b in range(1 << self.ctx.dim)]

    def conjugate_coefficients(self) -> "Multivector":
        return Multivector(self.ctx, {b: conj(c) for b, c in self.terms.items()})

    # -- ring structure ----------------------------------------------------

    def _binary(self, other, combine):
        self.ctx.require_compatible(other.ctx)
        terms = dict(self.terms)
        for bits, coeff in other.terms.items():
            new = combine(terms.get(bits, Fraction(0)), coeff)
            if new == 0:
                terms.pop(bits, None)
            else:
                terms[bits] = new
        return Multivector(self.ctx, terms)

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = self.ctx.scalar(other)
        if not isinstance(other, Multivector):
            return NotImplemented
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = self.ctx.scalar(other)
        if not isinstance(other, Multivector):
            return NotImplemented
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return Multivector(self.ctx, {b: -c for b, c in self.terms.items()})

    def scale(self, factor) -> "Multivector":
        factor = as_scalar(factor)
        if factor == 0:
            return Multivector(self.ctx, {})
        return Multivector(self.ctx, {b: c * factor for b, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        if isinstance(other, Multivector):
            from .clifford import clifford_product
            return clifford_product(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(Fraction(1) / as_scalar(other))
        return NotImplemented

    def __xor__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        if isinstance(other, Multivector):
            return wedge(self, other)
        return NotImplemented

    def __or__(self, other):
        """Left contraction with respect to the full form B."""
        if isinstance(other, Multivector):
            return contract_left(self, other, form="B")
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = self.ctx.scalar(other)
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.ctx.compatible(other.ctx) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        from .textio import format_multivector
        return format_multivector(self)


def wedge(u: Multivector, v: Multivector) -> Multivector:
    """Exterior product; alternating, associative, graded-commutative."""
    u.ctx.require_compatible(v.ctx)
    terms = {}
    for bu, cu in u.terms.items():
        for bv, cv in v.terms.items():
            sign = wedge_sign(bu, bv)
            if sign == 0:
                continue
            bits = bu | bv
            coeff = cu * cv if sign > 0 else -(cu * cv)
            new = terms.get(bits, Fraction(0)) + coeff
            if new == 0:
                terms.pop(bits, None)
            else:
                terms[bits] = new
    return Multivector(u.ctx, terms)


def grade_involution(u: Multivector) -> Multivector:
    """Sign flip on odd grades; the hat involution."""
    return Multivector(
        u.ctx,
        {b: (c if grade_involution_sign(blade_grade(b)) > 0 else -c)
         for b, c in u.terms.items()},
    )


def reversion(u: Multivector) -> Multivector:
    """Order reversal of wedge factors: sign (-1)^{k(k-1)/2} on grade k."""
    return Multivector(
        u.ctx,
        {b: (c if reversion_sign(blade_grade(b)) > 0 else -c)
         for b, c in u.terms.items()},
    )


def _form_matrix(ctx, form: str):
    try:
        return {"B": ctx.B, "g": ctx.g, "A": ctx.A}[form]
    except KeyError:
        raise ShapeError(f"unknown form selector {form!r} (expected B, g or A)")


def _vector_contract(i: int, u_terms: dict, matrix) -> dict:
    """One Leibniz pass of e_i⌋ over a term dict; signs from grade involution."""
    row = matrix[i - 1]
    out = {}
    for bits, coeff in u_terms.items():
        position_sign = 1
        rest = bits
        while rest:
            low = rest & -rest
            j = low.bit_length() - 1
            base = row[j]
            if base != 0:
                contrib = coeff * base if position_sign > 0 else -(coeff * base)
                target = bits ^ low
                new = out.get(target, Fraction(0)) + contrib
                if new == 0:
                    out.pop(target, None)
                else:
                    out[target] = new
            position_sign = -position_sign
            rest ^= low
    return out


def contract_left(x: Multivector, u: Multivector, form: str = "B") -> Multivector:
    """Left contraction x⌋u for arbitrary x, extended by the nesting rule
    (u∧v)⌋w = u⌋(v⌋w); a scalar on the left acts by multiplication."""
    x.ctx.require_compatible(u.ctx)
    matrix = _form_matrix(x.ctx, form)
    acc = {}
    for bits, coeff in x.terms.items():
        if bits == 0:
            partial = {b: c * coeff for b, c in u.terms.items()}
        else:
            work = u.terms
            for i in reversed(blade_indices(bits)):
                work = _vector_contract(i, work, matrix)
                if not work:
                    break
            partial = {b: c * coeff for b, c in work.items()}
        for b, c in partial.items():
            new = acc.get(b, Fraction(0)) + c
            if new == 0:
                acc.pop(b, None)
            else:
                acc[b] = new
    return Multivector(x.ctx, acc)
