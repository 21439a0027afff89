"""Tests for field arithmetic and dense linear algebra."""

from fractions import Fraction
import random

import pytest

from invariant_syzygies.algebra import (
    DenseMatrix,
    EchelonSpace,
    FieldSpec,
    PrimeFieldElement,
    kernel_basis,
    rank,
    rref,
    scalar_to_json,
)
from invariant_syzygies.errors import RingMismatchError, UsageError


def test_prime_field_arithmetic():
    a, b = PrimeFieldElement(3, 7), PrimeFieldElement(5, 7)
    assert a + b == 1
    assert a * b == 1
    assert a - b == 5
    assert 1 / a == 5
    assert -PrimeFieldElement(2, 7) == 5
    assert PrimeFieldElement(2, 7) ** -1 == 4
    assert a * Fraction(1, 2) == PrimeFieldElement(5, 7)
    assert 2 - a == 6
    assert not PrimeFieldElement(14, 7)


def test_prime_field_mismatch_and_zero_division():
    with pytest.raises(RingMismatchError):
        PrimeFieldElement(1, 5) + PrimeFieldElement(1, 7)
    with pytest.raises(ZeroDivisionError):
        PrimeFieldElement(3, 7) / 0


def test_field_spec_elements(qq, f7):
    assert qq.element("3/4") == Fraction(3, 4)
    assert f7.element("1/2") == 4
    assert f7.element(-1) == 6
    assert str(qq) == "QQ" and str(f7) == "GF(7)"
    assert f7.to_dict() == {"type": "prime", "p": 7}
    with pytest.raises(UsageError):
        FieldSpec.prime(4)
    with pytest.raises(UsageError):
        f7.element(Fraction(1, 7))
    with pytest.raises(UsageError):
        qq.element("one half")


def test_roots_of_unity_and_modular_case(qq, f7):
    assert f7.element_of_order(3) == 2
    assert f7.element_of_order(6) == 3
    assert f7.element_of_order(4) is None
    assert qq.element_of_order(2) == -1
    assert qq.element_of_order(3) is None
    assert f7.divides_order(14)
    assert not f7.divides_order(6)
    assert not qq.divides_order(6)


def test_scalar_to_json(f7):
    assert scalar_to_json(Fraction(3, 1)) == 3
    assert scalar_to_json(Fraction(-1, 2)) == "-1/2"
    assert scalar_to_json(f7.element(10)) == 3


def test_matrix_product_and_transpose(qq):
    m = DenseMatrix.from_rows(qq, [[1, 2], [3, 4]])
    assert m @ DenseMatrix.identity(qq, 2) == m
    assert m.transpose().entries == ((1, 3), (2, 4))
    assert (m @ m).entries == ((7, 10), (15, 22))
    assert DenseMatrix.zero(qq, 2, 3).is_zero()
    with pytest.raises(RingMismatchError):
        m @ DenseMatrix.zero(qq, 3, 1)


def test_rref_rank_and_kernel(qq, f7):
    m = DenseMatrix.from_rows(qq, [[1, 2], [2, 4]])
    echelon = rref(m)
    assert echelon.rank == 1
    assert echelon.pivot_columns == (0,)
    kernel = kernel_basis(m)
    assert kernel.cols == 1
    assert kernel.column(0) == (-2, 1)
    assert (m @ kernel).is_zero()
    # determinant -7
    assert rank(DenseMatrix.from_rows(qq, [[1, 2], [4, 1]])) == 2
    assert rank(DenseMatrix.from_rows(f7, [[1, 2], [4, 1]])) == 1
    assert rank(DenseMatrix.from_rows(f7, [[1, 1], [1, 6]])) == 2


def test_echelon_space():
    space = EchelonSpace()
    assert space.add({"a": Fraction(1), "b": Fraction(1)})
    assert space.add({"a": Fraction(1)})
    assert not space.add({"b": Fraction(2)})
    assert space.rank == 2
    assert space.contains({"a": Fraction(3), "b": Fraction(-1)})
    assert space.reduced_basis() == [{"b": 1}, {"a": 1}]
    assert space.extend([{"c": Fraction(1)}, {"c": Fraction(2), "a": Fraction(1)}]) == 1


def _random_matrix(field, rng: random.Random, rows: int, cols: int) -> DenseMatrix:
    # sparse enough that rank deficiency shows up regularly
    return DenseMatrix.from_rows(field, [[rng.choice([0, 0, 1, -1, 2, -3]) for _ in range(cols)] for _ in range(rows)])


@pytest.mark.parametrize("field", [FieldSpec.rationals(), FieldSpec.prime(7)], ids=str)
def test_rref_properties(field):
    rng = random.Random(1729)
    for _ in range(30):
        m = _random_matrix(field, rng, 4, 5)
        echelon = rref(m)
        assert rref(echelon.reduced) == echelon
        kernel = kernel_basis(m)
        assert echelon.rank + kernel.cols == m.cols
        assert (m @ kernel).is_zero()
        row, scale = rng.randrange(m.rows), rng.choice([2, -1, 3])
        scaled = DenseMatrix.from_rows(
            field, [[x * scale for x in r] if i == row else list(r) for i, r in enumerate(m.entries)]
        )
        assert rref(scaled).reduced == echelon.reduced
        assert rank(m.transpose()) == echelon.rank


def test_prime_characteristic_check():
    assert FieldSpec.prime(7919).characteristic == 7919
    for p in (1, 9, 91, 7917):
        with pytest.raises(UsageError):
            FieldSpec.prime(p)
