import itertools

import pytest
import sympy
from hypothesis import given, strategies as st

from propcodes.errors import DomainError, UsageError
from propcodes.field import FieldSpec, canonical_elements, is_irreducible, prime_power

from conftest import ORDERS


def sympy_product(spec, a, b):
    """Independent oracle: multiply the digit polynomials in GF(p)[x] and reduce."""
    x = sympy.symbols("x")
    digits = lambda v: [(v // spec.p**i) % spec.p for i in range(spec.k)]  # noqa: E731
    pa = sympy.Poly(list(reversed(digits(a))), x, modulus=spec.p)
    pb = sympy.Poly(list(reversed(digits(b))), x, modulus=spec.p)
    mod = sympy.Poly(list(reversed(spec.modulus)), x, modulus=spec.p)
    coeffs = [int(c) % spec.p for c in reversed((pa * pb).rem(mod).all_coeffs())]
    return sum(c * spec.p**i for i, c in enumerate(coeffs))


def test_examples():
    assert FieldSpec(2).add(1, 1) == 0
    assert FieldSpec.of_order(4).mul(2, 3) == 1
    assert FieldSpec(3).inv(2) == 2


def test_canonical_elements():
    assert canonical_elements(FieldSpec(2)) == (0, 1)
    assert canonical_elements(FieldSpec(3)) == (0, 1, 2)
    f4 = FieldSpec.of_order(4)
    assert canonical_elements(f4) == (0, 1, 2, 3)
    assert canonical_elements(f4) == canonical_elements(FieldSpec.of_order(4))


def test_shipped_moduli():
    assert FieldSpec.of_order(4).modulus == (1, 1, 1)
    assert FieldSpec.of_order(8).modulus == (1, 1, 0, 1)
    assert FieldSpec.of_order(9).modulus == (1, 0, 1)


@pytest.mark.parametrize("q", ORDERS)
def test_multiplication_matches_polynomial_oracle(q):
    spec = FieldSpec.of_order(q)
    for a, b in itertools.product(range(q), repeat=2):
        assert spec.mul(a, b) == sympy_product(spec, a, b)


@pytest.mark.parametrize("q", ORDERS)
def test_field_axioms_exhaustive(q):
    F = FieldSpec.of_order(q)
    els = range(q)
    for a, b in itertools.product(els, repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.sub(F.add(a, b), b) == a
    for a, b, c in itertools.product(els, repeat=3):
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    for a in els:
        assert F.add(a, 0) == a and F.mul(a, 1) == a
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("q", [2, 4, 8])
def test_frobenius_in_characteristic_two(q):
    F = FieldSpec.of_order(q)
    sq = lambda v: F.mul(v, v)  # noqa: E731
    for a, b in itertools.product(range(q), repeat=2):
        assert sq(F.add(a, b)) == F.add(sq(a), sq(b))


def test_inverse_of_zero():
    with pytest.raises(DomainError):
        FieldSpec(5).inv(0)


def test_bad_specs():
    with pytest.raises(UsageError):
        FieldSpec(4)
    with pytest.raises(UsageError):
        FieldSpec(2, 2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2
    with pytest.raises(UsageError):
        FieldSpec(11)
    with pytest.raises(UsageError):
        prime_power(6)


def test_ceiling_is_configurable():
    big = FieldSpec(11, max_order=16)
    assert big.mul(3, 4) == 1


def test_irreducibility_check():
    assert is_irreducible((1, 1, 1), 2)
    assert not is_irreducible((0, 1, 1), 2)
    assert is_irreducible((2, 1, 1), 3)  # x^2 + x + 2
    assert not is_irreducible((2, 0, 1), 3)  # x^2 - 1


def test_alternative_modulus_is_a_different_but_valid_field():
    f9 = FieldSpec(3, 2, (2, 1, 1))
    assert f9 != FieldSpec.of_order(9)
    assert all(f9.mul(a, f9.inv(a)) == 1 for a in range(1, 9))


@pytest.mark.parametrize("q", ORDERS)
def test_json_round_trip(q):
    spec = FieldSpec.of_order(q)
    obj = spec.to_json()
    assert ("modulus" in obj) == (spec.k > 1)
    assert FieldSpec.from_json(obj) == spec


@given(st.sampled_from(ORDERS), st.data())
def test_tables_agree_with_scalar_ops(q, data):
    F = FieldSpec.of_order(q)
    a = data.draw(st.integers(0, q - 1))
    b = data.draw(st.integers(0, q - 1))
    assert F.add_table[a, b] == F.add(a, b)
    assert F.mul_table[a, b] == F.mul(a, b)
    assert F.sub_table[a, b] == F.sub(a, b)
