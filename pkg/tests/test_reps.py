import random
from fractions import Fraction

import pytest

from qclifford import InputError, inverse, split_form
from qclifford.reps import (build_car, corner_split_search, deformed_probe,
                            is_idempotent, left_ideal, peirce_corner,
                            primitive_decomposition, solve_u2_generators,
                            vacuum_functional)
from qclifford.scalars import gaussian

from conftest import rand_multivector


def cl11():
    return split_form([[1, 0], [0, -1]])


def cl22():
    return split_form([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]])


def test_is_idempotent_examples():
    c = cl11()
    assert is_idempotent(c.parse("1/2 + 1/2*e1"))
    assert is_idempotent(c.parse("1/2 + 1/2*e1^e2"))
    assert not is_idempotent(c.e(1))
    assert is_idempotent(c.one()) and is_idempotent(c.zero())


def test_left_ideal_dimensions_cl11():
    c = cl11()
    for text in ("1/2 + 1/2*e1", "1/2 + 1/2*e1^e2"):
        ideal = left_ideal(c.parse(text))
        assert ideal.dimension == 2
        for b in ideal.basis:
            assert b * ideal.idempotent == b
    with pytest.raises(InputError):
        left_ideal(c.e(1))


def test_left_ideal_parametric_idempotent_cl22():
    # two glued hyperbolic factors, undeformed; the closed-form idempotent
    # instance lives in the first factor
    c = cl22()
    f = c.parse("1/2 + 2/5*e1 + 3/10*e1^e2")
    assert is_idempotent(f)
    assert left_ideal(f).dimension == 8  # rank-2 projector in a 16-dim algebra
    split = corner_split_search(f)
    assert split.outcome == "split"
    parts_dims = sorted(left_ideal(p).dimension for p in (split.first, split.second))
    assert parts_dims == [4, 4]


def test_peirce_corner_examples():
    c = cl11()
    f = c.parse("1/2 + 1/2*e1")
    corner = peirce_corner(f)
    assert corner.dimension == 1 and corner.is_primitive
    # direct expansions: f·e2·f = 0 and f·(e1∧e2)·f = 0
    assert (f * c.e(2) * f).is_zero()
    assert (f * c.blade([1, 2]) * f).is_zero()
    assert peirce_corner(c.one()).dimension == 4

    f22 = cl22().parse("1/2 + 1/2*e1")
    assert peirce_corner(f22).dimension == 4


def test_corner_split_search_unit_cl11():
    c = cl11()
    result = corner_split_search(c.one())
    assert result.outcome == "split"
    pair = {str(result.first), str(result.second)}
    assert pair == {"1/2 + 1/2*e1", "1/2 - 1/2*e1"}
    assert result.first * result.second == c.zero()
    # primitive input short-circuits without search
    prim = corner_split_search(c.parse("1/2 + 1/2*e1"))
    assert prim.outcome == "primitive" and prim.trials == []


def test_primitive_decomposition_cl22():
    c = cl22()
    decomposition = primitive_decomposition(c.one())
    assert decomposition.complete
    assert len(decomposition.primitives) == 4
    dims = sorted(left_ideal(p).dimension for p in decomposition.primitives)
    assert dims == [4, 4, 4, 4]
    total = c.zero()
    for p in decomposition.primitives:
        total = total + p
        assert peirce_corner(p).dimension == 1
    assert total == c.one()


def test_orthogonal_split_dimensions_add():
    c = cl22()
    result = corner_split_search(c.one())
    assert result.outcome == "split"
    f1, f2 = result.first, result.second
    assert (f1 * f2).is_zero() and (f2 * f1).is_zero()
    assert left_ideal(f1).dimension + left_ideal(f2).dimension == 16


def test_ideal_dimension_invariant_under_conjugation():
    rng = random.Random(40)
    c = cl22()
    f = c.parse("1/2 + 1/2*e1")
    base = left_ideal(f).dimension
    found = 0
    while found < 4:
        candidate = rand_multivector(rng, c, 4).even_part() + c.one()
        try:
            inv = inverse(candidate)
        except Exception:
            continue
        conj = candidate * f * inv
        assert is_idempotent(conj)
        assert left_ideal(conj).dimension == base
        found += 1


def test_split_certificates_are_exact():
    # every certified split satisfies its algebraic identities bit-exactly
    for ctx in (cl11(), cl22()):
        result = corner_split_search(ctx.one())
        assert result.outcome == "split"
        p = result.first
        assert p * p == p
        assert result.second * result.second == result.second
        assert p + result.second == ctx.one()


# -- CAR / U(2) --------------------------------------------------------------


def test_car_relations():
    car = build_car(2)
    ctx = car.ctx
    for i in (1, 2):
        for j in (1, 2):
            a_i, a_j = car.annihilator(i), car.annihilator(j)
            c_i, c_j = car.creator(i), car.creator(j)
            assert a_i * a_j + a_j * a_i == ctx.zero()
            assert c_i * c_j + c_j * c_i == ctx.zero()
            expected = ctx.one() if i == j else ctx.zero()
            assert a_i * c_j + c_j * a_i == expected
    # wedge squares and Clifford squares both vanish
    from qclifford import wedge
    assert wedge(car.creator(1), car.creator(1)).is_zero()
    assert (car.creator(1) * car.creator(1)).is_zero()


def test_car_relations_robust_to_A():
    A = [[Fraction(0)] * 4 for _ in range(4)]
    A[0][1] = Fraction(1, 3)
    A[1][0] = Fraction(-1, 3)
    A[0][2] = Fraction(1, 2)
    A[2][0] = Fraction(-1, 2)
    car = build_car(2, A)
    ctx = car.ctx
    for i in (1, 2):
        for j in (1, 2):
            expected = ctx.one() if i == j else ctx.zero()
            assert car.annihilator(i) * car.creator(j) + \
                car.creator(j) * car.annihilator(i) == expected


def test_build_car_validation():
    with pytest.raises(InputError):
        bad = [[Fraction(0)] * 4 for _ in range(4)]
        bad[0][1] = Fraction(1)  # not antisymmetric
        build_car(2, bad)
    with pytest.raises(Exception):
        build_car(2, [[Fraction(0)] * 3 for _ in range(3)])


def test_fock_idempotent_and_ideal():
    car = build_car(2)
    f = car.fock_idempotent()
    assert is_idempotent(f)
    assert left_ideal(f).dimension == 4
    # annihilators kill the vacuum from the left modulo the ideal structure:
    # a_i·f is in the ideal and (a_i·f)·f = a_i·f
    for i in (1, 2):
        v = car.annihilator(i) * f
        assert v * f == v


def test_dagger_is_antimultiplicative_at_A0():
    rng = random.Random(41)
    car = build_car(2)
    for _ in range(8):
        u = rand_multivector(rng, car.ctx, 4)
        v = rand_multivector(rng, car.ctx, 4)
        assert car.dagger(u * v) == car.dagger(v) * car.dagger(u)
        assert car.dagger(car.dagger(u)) == u
    assert car.dagger(car.creator(1)) == car.annihilator(1)


def test_vacuum_functional():
    car = build_car(2)
    ctx = car.ctx
    assert vacuum_functional(car, ctx.one()) == 1
    for i in (1, 2):
        for j in (1, 2):
            value = vacuum_functional(car, car.creator(i) * car.annihilator(j))
            assert value == (Fraction(1, 2) if i == j else 0)
    # linearity
    rng = random.Random(42)
    u, v = rand_multivector(rng, ctx), rand_multivector(rng, ctx)
    assert vacuum_functional(car, u + v) == \
        vacuum_functional(car, u) + vacuum_functional(car, v)


def test_vacuum_functional_depends_on_A():
    A = [[Fraction(0)] * 4 for _ in range(4)]
    A[0][1] = Fraction(1, 3)
    A[1][0] = Fraction(-1, 3)
    car0 = build_car(2)
    carA = build_car(2, A)
    u0 = car0.ctx.blade([1, 2])
    uA = carA.ctx.blade([1, 2])
    assert vacuum_functional(car0, u0) == 0
    assert vacuum_functional(carA, uA) == Fraction(-1, 3)


def test_u2_solution_at_A0():
    car = build_car(2)
    sol = solve_u2_generators(car)
    assert sol.status == "solved"
    assert all(sol.checks.values())
    assert sol.shift_dimension == 1
    # N equals Σ a_i†·a_i up to a scalar shift
    number = car.creator(1) * car.annihilator(1) + car.creator(2) * car.annihilator(2)
    diff = sol.N - number
    assert diff.grades() in ([], [0])
    # su(2) relations hold with the solved S_k
    i_unit = gaussian(0, 1)
    assert sol.S[0] * sol.S[1] - sol.S[1] * sol.S[0] == sol.S[2].scale(i_unit)
    # and [N, a_i] = −a_i directly
    for i in (1, 2):
        a = car.annihilator(i)
        assert sol.N * a - a * sol.N == -a
        c = car.creator(i)
        assert sol.N * c - c * sol.N == c


def test_u2_with_A_reports_rather_than_guesses():
    A = [[Fraction(0)] * 4 for _ in range(4)]
    A[0][1] = Fraction(1, 2)
    A[1][0] = Fraction(-1, 2)
    A[2][3] = Fraction(1, 3)
    A[3][2] = Fraction(-1, 3)
    sol = solve_u2_generators(build_car(2, A))
    assert sol.status in ("solved", "unsolvable", "verification-failed")
    if sol.status != "solved":
        assert not all(sol.checks.values())


def test_u2_requires_gaussian_ring():
    with pytest.raises(InputError):
        solve_u2_generators(build_car(2, ring="Q"))


# -- deformed probe -----------------------------------------------------------


def deformed_block():
    return split_form([[1, 0, 1, 0],
                       [0, -1, 0, 0],
                       [0, 0, 1, 0],
                       [0, 0, 0, -1]])


def test_deformed_probe_transcript():
    transcript = deformed_probe(deformed_block())
    assert transcript["status"] == "completed"
    assert transcript["reference_dimension"] == 8
    assert transcript["idempotent_verified"]
    assert transcript["regular_representation_dimension"] == 16
    assert isinstance(transcript["matches_reference"], bool)
    if not transcript["matches_reference"]:
        assert transcript["notes"]


def test_deformed_probe_on_undeformed_surfaces_discrepancy():
    probe = deformed_probe(cl22())
    # the classical algebra splits below dimension 8: the transcript must say so
    assert probe["status"] == "completed"
    assert not probe["matches_reference"]
    assert probe["notes"]
