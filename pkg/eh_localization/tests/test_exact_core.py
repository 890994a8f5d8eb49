"""
Tests for the exact scalar, field and sparse polynomial layer.
"""

from fractions import Fraction

import pytest
from sympy import Poly, symbols

from eh_localization.core.exact_core import (
    ContractViolation,
    DegenerateSubstitutionError,
    FieldMismatchError,
    InternalConsistencyError,
    PrimeField,
    RationalField,
    Residue,
    SparsePoly,
    exact_integer,
    field_for,
    mod_inverse,
    multinomial,
    poly_coef,
    poly_pow,
    poly_product,
)


def test_residue_arithmetic():
    a, b = Residue(3, 7), Residue(5, 7)
    assert a + b == 1
    assert a - b == 5
    assert a * b == 1
    assert (a / b) * b == a
    assert -a == 4
    assert a**-1 == 5
    assert 10 - a == 0


def test_residues_hash_like_their_representatives():
    assert Residue(9, 7) == 2
    assert Residue(2, 7) != 9
    assert hash(Residue(9, 7)) == hash(2)
    assert {Residue(2, 7), 2} == {2}
    assert len({Residue(2, 7), Residue(9, 7)}) == 1
    assert {Residue(3, 7): "x"}[3] == "x"
    assert Residue(2, 7) != Residue(2, 5)


def test_residue_moduli_do_not_mix():
    with pytest.raises(FieldMismatchError):
        Residue(1, 5) + Residue(1, 7)


def test_mod_inverse_of_multiple_of_p_is_degenerate():
    assert mod_inverse(3, 7) == 5
    with pytest.raises(DegenerateSubstitutionError):
        mod_inverse(14, 7)
    # still a ZeroDivisionError for callers that only know the builtin
    with pytest.raises(ZeroDivisionError):
        Residue(2, 7) / 7


def test_fields():
    assert field_for(0).name == "QQ"
    assert field_for(7) == PrimeField(7)
    assert PrimeField(7).coerce(Fraction(1, 2)) == 4
    with pytest.raises(ContractViolation):
        PrimeField(8)
    with pytest.raises(FieldMismatchError):
        RationalField().coerce(Residue(1, 7))
    with pytest.raises(DegenerateSubstitutionError) as excinfo:
        RationalField().divide(Fraction(1), Fraction(0), "x_1 = x_2")
    assert excinfo.value.context == "x_1 = x_2"


def test_multinomial_and_exact_integer():
    assert multinomial(3, [0, 1, 2]) == 3
    assert multinomial(6, [1, 4, 1]) == 30
    assert exact_integer(Fraction(12, 4), "twelve quarters") == 3
    with pytest.raises(InternalConsistencyError):
        exact_integer(Fraction(3, 2), "three halves")
    with pytest.raises(ContractViolation):
        multinomial(3, [1, 1])


def test_sparse_poly_basics():
    v1, v2 = SparsePoly.variable(2, 0), SparsePoly.variable(2, 1)
    square = (v1 + v2) ** 2
    assert square.coefficient((1, 1)) == 2
    assert square.support() == frozenset({(2, 0), (1, 1), (0, 2)})
    assert square.degree() == 2
    assert square.is_homogeneous(2)
    assert not (square + SparsePoly.constant(2, 1)).is_homogeneous()
    assert square - square == SparsePoly(2)
    assert not (square - square)
    assert poly_pow(v1 + v2, 0) == SparsePoly.constant(2, 1)
    assert poly_product(2, []) == SparsePoly.constant(2, 1)


def test_sparse_poly_agrees_with_sympy():
    x, y = symbols("x y")
    expected = Poly((x + 2 * y) ** 3 * (x - y), x, y)
    ours = SparsePoly.linear([1, 2]) ** 3 * SparsePoly.linear([1, -1])
    for (i, j), coefficient in zip(expected.monoms(), expected.coeffs()):
        assert poly_coef(ours, (i, j)) == int(coefficient)
    assert len(ours) == len(expected.monoms())


def test_derivative_and_evaluate():
    x = SparsePoly.variable(1, 0)
    assert (x**3).derivative(0, 2) == SparsePoly.linear([6])
    assert (x**3).derivative(0, 4) == SparsePoly(1)
    square = SparsePoly.linear([1, 1]) ** 2
    assert square.evaluate([3, 5]) == 64
    assert square.evaluate([3, 5], PrimeField(7)) == 1


def test_sparse_poly_rejects_mismatched_variable_counts():
    with pytest.raises(ContractViolation):
        SparsePoly.variable(2, 0) + SparsePoly.variable(3, 0)
    with pytest.raises(ContractViolation):
        SparsePoly.variable(2, 2)
