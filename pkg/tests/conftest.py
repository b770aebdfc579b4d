"""Shared helpers: seeded random generators and independent brute-force
oracles (list-based, no bit tricks) used to cross-check the kernel."""

from __future__ import annotations

import random
from fractions import Fraction

from qclifford import Multivector, split_form


def rand_fraction(rng, span=5, max_den=4):
    return Fraction(rng.randint(-span, span), rng.randint(1, max_den))


def rand_form(rng, n, symmetric=False, ring="Q"):
    B = [[rand_fraction(rng) for _ in range(n)] for _ in range(n)]
    if symmetric:
        for i in range(n):
            for j in range(i + 1, n):
                B[j][i] = B[i][j]
    return split_form(B, ring=ring)


def rand_antisymmetric(rng, n, span=2, max_den=3):
    A = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rand_fraction(rng, span, max_den)
            A[i][j] = v
            A[j][i] = -v
    return A


def rand_multivector(rng, ctx, terms=4):
    d = {}
    for _ in range(terms):
        d[rng.randrange(1 << ctx.dim)] = rand_fraction(rng)
    return Multivector.from_terms(ctx, d)


def rand_vector(rng, ctx):
    return ctx.vector([rand_fraction(rng) for _ in range(ctx.dim)])


def rand_bivector(rng, ctx, density=0.6):
    d = {}
    for i in range(ctx.dim):
        for j in range(i + 1, ctx.dim):
            if rng.random() < density:
                d[(1 << i) | (1 << j)] = rand_fraction(rng)
    return Multivector.from_terms(ctx, d)


# -- independent oracles ----------------------------------------------------
#
# These re-implement wedge and vector contraction on index lists with naive
# sign counting. They share no code with the package internals.


def oracle_wedge_blades(left, right):
    """Wedge two ascending index tuples: (sign, merged) or (0, None)."""
    if set(left) & set(right):
        return 0, None
    seq = list(left) + list(right)
    sign = 1
    # bubble sort, counting swaps
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    return sign, tuple(seq)


def oracle_vector_contract_blade(matrix, i, blade):
    """e_i ⌋ e_blade by the graded Leibniz rule; list of (coeff, blade)."""
    out = []
    for t, j in enumerate(blade):
        coeff = matrix[i - 1][j - 1] * (-1) ** t
        if coeff != 0:
            out.append((coeff, blade[:t] + blade[t + 1:]))
    return out


def terms_from_blades(ctx, pairs):
    """Build a Multivector from (coeff, ascending-index-tuple) pairs."""
    d = {}
    for coeff, blade in pairs:
        bits = 0
        for i in blade:
            bits |= 1 << (i - 1)
        d[bits] = d.get(bits, Fraction(0)) + coeff
    return Multivector.from_terms(ctx, d)
