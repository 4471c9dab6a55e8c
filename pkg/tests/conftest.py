"""Shared registries; exhaustive universes are built once per session."""
from __future__ import annotations

import pytest

from grkit.grmeasure import measure_universe
from grkit.quiverrep import KRONECKER, W
from grkit.structure import IsoClassRegistry, exhaustive_universe
from grkit.suites import Context


@pytest.fixture(scope="session")
def universe4():
    reg = exhaustive_universe(W, 4, 2)
    measure_universe(reg)
    return reg


@pytest.fixture(scope="session")
def universe5():
    reg = exhaustive_universe(W, 5, 2)
    measure_universe(reg)
    return reg


@pytest.fixture(scope="session")
def ctx2():
    """Suite context over F_2 shared by suite and acceptance tests (caches the cap-6 universe)."""
    return Context(p=2)


@pytest.fixture(scope="session")
def ctx3():
    return Context(p=3)


@pytest.fixture()
def wreg():
    return IsoClassRegistry(W, 2)


@pytest.fixture()
def kreg():
    return IsoClassRegistry(KRONECKER, 2)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
