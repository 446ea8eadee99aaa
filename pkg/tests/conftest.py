import pytest

from operad_forge.catalog import builtin
from operad_forge.configurations import parse_config


@pytest.fixture(scope="session")
def As():
    return builtin("As")


@pytest.fixture(scope="session")
def arity():
    return parse_config("arity")


@pytest.fixture(scope="session")
def power():
    return parse_config("power")
