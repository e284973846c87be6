import pytest

from propcodes.field import FieldSpec
from propcodes.linear import LinearCode, hamming_code
from propcodes.quadratic import QuadraticForm, parse_expression
from propcodes.vscode import VSCode

ORDERS = (2, 3, 4, 5, 7, 8, 9)


@pytest.fixture(scope="session")
def F2():
    return FieldSpec(2)


@pytest.fixture(scope="session")
def F3():
    return FieldSpec(3)


@pytest.fixture(scope="session")
def F4():
    return FieldSpec.of_order(4)


@pytest.fixture(scope="session")
def length5(F2):
    """q=2, H=F^2, f = x1 x2: the non-perfect length-5 example."""
    return VSCode(LinearCode.full_space(F2, 2), parse_expression("x1*x2", F2, 2))


@pytest.fixture(scope="session")
def repetition(F2):
    return hamming_code(F2, 2)


@pytest.fixture(scope="session")
def hamming7_zero(F2, repetition):
    return VSCode(repetition, QuadraticForm.zero(F2, 3))


@pytest.fixture(scope="session")
def hamming7_quadratic(F2, repetition):
    return VSCode(repetition, parse_expression("x1*x2 + x1*x3", F2, 3))
