"""Tests for exact field arithmetic and elimination"""
from fractions import Fraction

import pytest

from arthom.errors import ArthomError, ShapeError
from arthom.exactlin import (
    FieldSpec,
    Mat,
    complement_columns,
    inverse,
    is_invertible,
    kernel_basis,
    rank,
    solve,
    span_rank,
)

Q = FieldSpec.rationals()
GF5 = FieldSpec.prime(5)


def test_field_arithmetic():
    """Test 1: rationals stay exact, GF(p) reduces"""
    assert Q.add(Fraction(1, 3), Fraction(2, 3)) == 1
    assert Q.inv(Fraction(2, 7)) == Fraction(7, 2)
    assert GF5.norm(Fraction(1, 2)) == 3
    assert GF5.mul(3, 4) == 2
    assert GF5.neg(1) == 4
    print("✅ Test passed: Field arithmetic")


def test_field_validation():
    """Test 2: composite moduli and undefined fractions are rejected"""
    with pytest.raises(ArthomError):
        FieldSpec.prime(4)
    with pytest.raises(ArthomError):
        GF5.norm(Fraction(1, 5))
    with pytest.raises(ZeroDivisionError):
        Q.inv(0)
    print("✅ Test passed: Field validation")


def test_rank_and_kernel():
    """Test 3: rank-nullity on a rank one matrix"""
    m = Mat.from_rows(Q, [[1, 2], [2, 4]])
    assert rank(m) == 1
    k = kernel_basis(m)
    assert k.shape == (2, 1)
    assert (m @ k).is_zero()
    assert k.column(0) == (-2, 1)
    print("✅ Test passed: Rank and kernel")


def test_solve_and_inverse():
    """Test 4: solving, inverting and inconsistency"""
    m = Mat.from_rows(Q, [[2, 1], [1, 1]])
    b = Mat.from_columns(Q, [[3, 2]], 2)
    x = solve(m, b)
    assert x.column(0) == (1, 1)
    assert m @ inverse(m) == Mat.identity(Q, 2)
    singular = Mat.from_rows(Q, [[1, 1], [1, 1]])
    assert not is_invertible(singular)
    assert solve(singular, Mat.from_columns(Q, [[1, 0]], 2)) is None
    with pytest.raises(ArthomError):
        inverse(singular)
    print("✅ Test passed: Solve and inverse")


def test_prime_field_elimination():
    """Test 5: a matrix singular over GF(5) but not over Q"""
    rows = [[1, 2], [3, 1]]
    assert rank(Mat.from_rows(Q, rows)) == 2
    assert rank(Mat.from_rows(GF5, rows)) == 1
    print("✅ Test passed: Prime field elimination")


def test_shapes():
    """Test 6: shape errors and empty matrices"""
    with pytest.raises(ShapeError):
        Mat.from_rows(Q, [[1, 2], [3]], 2)
    assert rank(Mat.zeros(Q, 0, 3)) == 0
    assert span_rank(Q, [], 3) == 0
    assert Mat.from_rows(Q, [[1, 2, 3]]).T.shape == (3, 1)
    print("✅ Test passed: Shapes")


def test_complement_columns():
    """Test 7: standard vectors completing a span"""
    span = Mat.from_columns(Q, [[1, 1, 0]], 3)
    chosen = complement_columns(Q, span, 3)
    assert len(chosen) == 2
    cols = [list(span.column(0))] + [[1 if i == k else 0 for i in range(3)] for k in chosen]
    assert span_rank(Q, cols, 3) == 3
    print("✅ Test passed: Complement columns")
