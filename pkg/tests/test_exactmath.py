"""Scalars, polynomials, matrices, elimination, and the char-poly oracle."""
from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lpkit.errors import DivisionByZero, FieldMismatch, ParseError, ShapeMismatch
from lpkit.exactmath import (GF, RATIONALS, Matrix, Poly, char_poly_oracle,
                             poly_roots_in_field, rank, solve_affine)

GF7 = GF(7)
GF101 = GF(101)


def P(field, *coeffs):
    """Polynomial from integer coefficients, low degree first."""
    return Poly(field, [field.scalar(c) for c in coeffs])


def test_rational_arithmetic():
    half = RATIONALS.scalar(Fraction(1, 2))
    third = RATIONALS.scalar(Fraction(1, 3))
    assert (half + third).value == Fraction(5, 6)
    assert (half * third).value == Fraction(1, 6)
    assert (half - half).is_zero()


def test_prime_field_arithmetic():
    three, five = GF7.scalar(3), GF7.scalar(5)
    assert (three * five).value == 1
    assert (three + five).value == 1
    assert three.inverse().value == 5


def test_inverse_of_zero_raises():
    with pytest.raises(DivisionByZero):
        RATIONALS.zero().inverse()
    with pytest.raises(DivisionByZero):
        GF7.scalar(5) / GF7.zero()


def test_field_mismatch_raises():
    with pytest.raises(FieldMismatch):
        RATIONALS.one() + GF7.one()


def test_parse_scalar_rejects_floats():
    for bad in ("0.5", "1e3", "2.0", ".7"):
        with pytest.raises(ParseError):
            RATIONALS.parse_scalar(bad)
    assert RATIONALS.parse_scalar("1/2").value == Fraction(1, 2)
    assert RATIONALS.parse_scalar("-7/3").value == Fraction(-7, 3)
    assert GF7.parse_scalar("-1").value == 6


def test_matrix_basics():
    x = Matrix.from_rows(RATIONALS, [[1, 2], [3, 4]])
    eye = Matrix.identity(RATIONALS, 2)
    assert eye @ x == x
    assert x.transpose().transpose() == x
    diag = Matrix.diagonal(RATIONALS, [RATIONALS.scalar(v) for v in (2, 0, -2)])
    assert diag.trace().is_zero()


def test_matrix_shape_mismatch():
    x = Matrix.from_rows(RATIONALS, [[1, 2], [3, 4]])
    y = Matrix.from_rows(RATIONALS, [[1, 2, 3]])
    with pytest.raises(ShapeMismatch):
        x @ y


def test_k2_matrix_square():
    # hand-checked product of the d=2 positive-control tridiagonal matrix
    a = Matrix.from_rows(RATIONALS, [[0, 2, 0], [1, 0, 1], [0, 2, 0]])
    sq = Matrix.from_rows(RATIONALS, [[2, 0, 2], [0, 4, 0], [2, 0, 2]])
    assert a @ a == sq


def test_rank_examples():
    assert rank(Matrix.zero(RATIONALS, 3, 3)) == 0
    assert rank(Matrix.identity(RATIONALS, 4)) == 4
    e0 = Matrix.from_rows(RATIONALS, [[Fraction(1, 4), Fraction(1, 2), Fraction(1, 4)]] * 3)
    assert rank(e0) == 1


def test_solve_affine_identity():
    eye = Matrix.identity(RATIONALS, 3)
    v = [RATIONALS.scalar(k) for k in (1, 2, 3)]
    particular, null = solve_affine(eye, v)
    assert list(particular) == v
    assert null == []


def test_solve_affine_inconsistent():
    zero = Matrix.zero(RATIONALS, 2, 2)
    b = [RATIONALS.one(), RATIONALS.zero()]
    assert solve_affine(zero, b) is None


def test_solve_affine_two_by_two():
    # beta + gamma* = 2; -beta + gamma* = -2  =>  beta = 2, gamma* = 0
    m = Matrix.from_rows(RATIONALS, [[1, 1], [-1, 1]])
    b = [RATIONALS.scalar(2), RATIONALS.scalar(-2)]
    particular, null = solve_affine(m, b)
    assert [x.value for x in particular] == [2, 0]
    assert null == []


def test_char_poly_oracle_examples():
    diag = Matrix.diagonal(RATIONALS, [RATIONALS.scalar(v) for v in (2, 0, -2)])
    cp = char_poly_oracle(diag)
    assert cp == P(RATIONALS, 0, -4, 0, 1)
    single = Matrix.from_rows(RATIONALS, [[9]])
    assert char_poly_oracle(single) == P(RATIONALS, -9, 1)
    a = Matrix.from_rows(RATIONALS, [[0, 2, 0], [1, 0, 1], [0, 2, 0]])
    assert char_poly_oracle(a) == P(RATIONALS, 0, -4, 0, 1)


def test_char_poly_oracle_gf2():
    # the division-free algorithm must work over GF(2)
    gf2 = GF(2)
    a = Matrix.from_rows(gf2, [[0, 1, 0], [1, 0, 1], [0, 1, 0]])
    assert char_poly_oracle(a) == P(gf2, 0, 0, 0, 1)


def test_poly_roots_rationals():
    cubic = P(RATIONALS, 0, -4, 0, 1)  # x^3 - 4x
    roots = poly_roots_in_field(cubic)
    assert [(r.value, m) for r, m in roots] == [(-2, 1), (0, 1), (2, 1)]
    assert poly_roots_in_field(P(RATIONALS, 1, 0, 1)) == []


def test_poly_roots_gf7():
    sq = P(GF7, -1, 0, 1)  # x^2 - 1
    roots = poly_roots_in_field(sq)
    assert sorted(r.value for r, _ in roots) == [1, 6]


def test_poly_division_and_deflation():
    x = Poly.x(RATIONALS)
    p = (x - Poly.constant(RATIONALS, 2)) * (x - Poly.constant(RATIONALS, 5))
    q, r = p.divmod(x - Poly.constant(RATIONALS, 2))
    assert r.is_zero()
    assert q == x - Poly.constant(RATIONALS, 5)
    assert p.deflate(RATIONALS.scalar(5)) == x - Poly.constant(RATIONALS, 2)


_rat = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**4)


@settings(max_examples=60, deadline=None)
@given(_rat, _rat, _rat)
def test_field_axioms_rationals(x, y, z):
    a, b, c = (RATIONALS.scalar(v) for v in (x, y, z))
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == RATIONALS.zero()
    if not a.is_zero():
        assert a * a.inverse() == RATIONALS.one()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100), st.integers(0, 100), st.integers(0, 100))
def test_field_axioms_gf101(x, y, z):
    a, b, c = (GF101.scalar(v) for v in (x, y, z))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if not a.is_zero():
        assert a * a.inverse() == GF101.one()


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_rank_submultiplicative(seed):
    import random
    rng = random.Random(seed)
    x = Matrix.from_rows(GF101, [[rng.randrange(101) for _ in range(4)] for _ in range(4)])
    y = Matrix.from_rows(GF101, [[rng.randrange(101) for _ in range(4)] for _ in range(4)])
    assert rank(x @ y) <= min(rank(x), rank(y))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_char_poly_roots_vanish(seed):
    import random
    rng = random.Random(seed)
    n = rng.randrange(2, 7)
    m = Matrix.from_rows(GF101, [[rng.randrange(101) for _ in range(n)] for _ in range(n)])
    cp = char_poly_oracle(m)
    assert cp.leading() == GF101.one() and cp.degree == n
    for root, mult in poly_roots_in_field(cp):
        assert cp(root).is_zero() and mult >= 1
