import pytest

from spindrops.lisabasis import build_basis, build_two_qudit_basis
from spindrops.spincore import SpinSystem, half


def pytest_addoption(parser):
    parser.addoption(
        "--run-long",
        action="store_true",
        default=False,
        help="run long checks (full six-spin basis completeness)",
    )


@pytest.fixture(scope="session")
def run_long(request):
    return request.config.getoption("--run-long")


def _spin_half_system(n):
    return SpinSystem((half("1/2"),) * n)


@pytest.fixture(scope="session")
def basis_cache():
    cache = {}

    def get(n, method="cfp"):
        key = (n, method)
        if key not in cache:
            cache[key] = build_basis(_spin_half_system(n), method)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def pair_basis_cache():
    cache = {}

    def get(j1, j2):
        key = (j1, j2)
        if key not in cache:
            cache[key] = build_two_qudit_basis(half(j1), half(j2))
        return cache[key]

    return get
