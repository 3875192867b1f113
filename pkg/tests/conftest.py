import pytest

from starkmono.units import make_unit_system


@pytest.fixture(scope="session")
def cgs():
    return make_unit_system("gaussian-cgs")


@pytest.fixture(scope="session")
def au():
    return make_unit_system("atomic")


@pytest.fixture(scope="session", params=["gaussian-cgs", "atomic"])
def units(request):
    return make_unit_system(request.param)
