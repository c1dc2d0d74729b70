"""Exact arithmetic core: canonical form, determinants, solves."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surgerycalc import (
    DimensionMismatch,
    SingularMatrix,
    SquareMatrix,
    as_rational,
    det,
    format_rational,
    inner_product,
    parse_rational,
    solve,
)

from helpers import cofactor_det

fractions_st = st.fractions(
    min_value=-100, max_value=100, max_denominator=50
)


# --------------------------------------------------------------------------
# Rationals


def test_parse_rational_basic():
    assert parse_rational("3") == 3
    assert parse_rational("-5/3") == Fraction(-5, 3)
    assert parse_rational("+1/4") == Fraction(1, 4)
    assert parse_rational(" 2/6 ") == Fraction(1, 3)


@pytest.mark.parametrize("bad", ["", "a", "1.5", "1/0", "1/-2", "--3", "3/", "/2"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_as_rational_rejects_floats_and_bools():
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(TypeError):
        as_rational(True)


def test_format_round_trip():
    for text in ("0", "-7", "2/5", "-13/9"):
        assert format_rational(parse_rational(text)) == text


@settings(deadline=None)
@given(fractions_st, fractions_st, fractions_st)
def test_canonical_form_after_arithmetic(x, y, z):
    # Fractions must stay reduced with positive denominator through any
    # arithmetic; zero is always 0/1.
    for value in (x + y, x - z, x * y, x + y * z, (x - y) * (y - z)):
        assert value.denominator > 0
        from math import gcd

        assert gcd(abs(value.numerator), value.denominator) == 1
    zero = x - x
    assert zero.numerator == 0 and zero.denominator == 1


# --------------------------------------------------------------------------
# Determinants


def test_det_identity_2x2():
    assert det(SquareMatrix.identity(2)) == 1


def test_det_counterexample_matrices():
    assert det(SquareMatrix([[0, -1], [-1, -2]])) == -1
    assert det(SquareMatrix([[0, -1, 0], [-1, 0, -1], [0, -1, -2]])) == 2


def test_det_pushoff_chain_3x3():
    matrix = SquareMatrix([[-1, -2, -2], [-2, -1, -2], [-2, -2, -1]])
    # n = 3 push-offs of a tb = -2 knot: det must equal n*tb + 1 = -5.
    assert det(matrix) == -5
    assert cofactor_det(matrix.rows) == -5


def test_det_dimension_zero_is_one():
    assert det(SquareMatrix([])) == 1


def test_det_matches_cofactor_oracle_randomized():
    rng = random.Random(20260810)
    for _ in range(1000):
        n = rng.randint(0, 6)
        rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert det(SquareMatrix(rows)) == cofactor_det(rows)


def test_det_duplicated_row_is_zero():
    rng = random.Random(99)
    for _ in range(200):
        n = rng.randint(2, 8)
        rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        source, target = rng.sample(range(n), 2)
        rows[target] = list(rows[source])
        assert det(SquareMatrix(rows)) == 0


def test_det_rational_entries():
    matrix = SquareMatrix([["1/2", "1/3"], ["1/4", "1/5"]])
    assert det(matrix) == Fraction(1, 10) - Fraction(1, 12)


def test_matrix_shape_validation():
    with pytest.raises(DimensionMismatch):
        SquareMatrix([[1, 2], [3]])


# --------------------------------------------------------------------------
# Solves


def test_solve_identity():
    assert solve(SquareMatrix.identity(2), (3, 5)) == (3, 5)


def test_solve_pushoff_matrix():
    # n = 2 push-offs of a tb = -2 knot; the solution of M x = (tb, tb)
    # is the constant vector tb/(n*tb + 1) = 2/3 (verified by
    # multiplying back: each row gives (-1 - 2) * 2/3 = -2).
    matrix = SquareMatrix([[-1, -2], [-2, -1]])
    solution = solve(matrix, (-2, -2))
    assert solution == (Fraction(2, 3), Fraction(2, 3))
    assert matrix.apply(solution) == (Fraction(-2), Fraction(-2))


def test_solve_multiply_back_randomized():
    rng = random.Random(4242)
    done = 0
    while done < 200:
        rows = [[rng.randint(-9, 9) for _ in range(4)] for _ in range(4)]
        matrix = SquareMatrix(rows)
        if det(matrix) == 0:
            continue
        vector = tuple(rng.randint(-9, 9) for _ in range(4))
        assert matrix.apply(solve(matrix, vector)) == tuple(
            Fraction(v) for v in vector
        )
        done += 1


def test_solve_singular_raises():
    with pytest.raises(SingularMatrix):
        solve(SquareMatrix([[1, 2], [2, 4]]), (1, 1))


def test_solve_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        solve(SquareMatrix.identity(2), (1, 2, 3))


def test_solve_dimension_zero():
    assert solve(SquareMatrix([]), ()) == ()


@settings(deadline=None, max_examples=60)
@given(
    st.lists(
        st.lists(st.integers(min_value=-9, max_value=9), min_size=3, max_size=3),
        min_size=3,
        max_size=3,
    ),
    st.lists(st.integers(min_value=-9, max_value=9), min_size=3, max_size=3),
)
def test_solve_multiply_back_hypothesis(rows, vector):
    matrix = SquareMatrix(rows)
    if det(matrix) == 0:
        with pytest.raises(SingularMatrix):
            solve(matrix, vector)
        return
    assert matrix.apply(solve(matrix, vector)) == tuple(Fraction(v) for v in vector)


# --------------------------------------------------------------------------
# Inner products


def test_inner_product_empty():
    assert inner_product((), ()) == 0


def test_inner_product_orthogonal_units():
    assert inner_product((1, 0), (0, 1)) == 0


def test_inner_product_rotation_pairing():
    # rot = 1, tb = -2, n = 2: pairing of (rot, rot) with the constant
    # vector tb/(n*tb + 1) = 2/3. Hand expansion: 2 * (1 * 2/3) = 4/3,
    # consistent with rot_Q = rot - 4/3 = -1/3 = rot/(n*tb + 1).
    pairing = inner_product((1, 1), (Fraction(2, 3), Fraction(2, 3)))
    assert pairing == Fraction(4, 3)
    assert 1 - pairing == Fraction(1, 2 * -2 + 1)


def test_inner_product_mismatch():
    with pytest.raises(DimensionMismatch):
        inner_product((1, 2), (1,))
