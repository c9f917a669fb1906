from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from real_quintic.solver import IN_SCOPE, Solver, SolverConfig

# every randomized property runs at least 100 cases
settings.register_profile(
    "exact", max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("exact")


@pytest.fixture(scope="session")
def solver():
    """One solver with every in-scope amplitude resolved (a few seconds)."""
    s = Solver(SolverConfig(order=Fraction(21, 2), d_max=20))
    for gh in IN_SCOPE:
        s.solve(*gh)
    return s


@pytest.fixture(scope="session")
def flagged_solver(solver):
    return Solver(SolverConfig(order=Fraction(21, 2), d_max=20, allow_flagged=True), solver.store)


@pytest.fixture(scope="session")
def periods():
    from real_quintic import geometry

    return geometry.compute_periods(16)


@pytest.fixture(scope="session")
def generator_series(periods):
    from real_quintic import geometry

    return geometry.compute_generator_series(periods)


_ACCEPTANCE = []


@pytest.fixture(scope="session")
def acceptance_lines():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
