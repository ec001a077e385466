import pytest

from tauforms import builtin_registry, make_context


@pytest.fixture(scope="session")
def registry():
    return builtin_registry()


@pytest.fixture(scope="session")
def ctx500():
    return make_context(500)


@pytest.fixture(scope="session")
def ctx120():
    return make_context(120)
