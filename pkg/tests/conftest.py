import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "pkg",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    max_examples=60,
)
settings.load_profile("pkg")


@pytest.fixture(scope="session")
def chi4():
    from sesquiproj.arith import DirichletCharacter

    return DirichletCharacter.from_kronecker(-4)


