import functools

import pytest
from hypothesis import HealthCheck, settings

from coloralg.config import load_fixture

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@functools.lru_cache(maxsize=None)
def fixture_config(name):
    return load_fixture(name)


@functools.lru_cache(maxsize=None)
def fixture_algebra(name):
    return fixture_config(name).algebra()


@pytest.fixture
def record_criterion():
    def record(line: str):
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def quantum_torus_data(m: int) -> dict:
    """Z3 x Z3 graded group algebra of Z^m with hats cycling through (1,0), (0,1), (1,1)."""
    hats = [[1, 0], [0, 1], [1, 1]][:m]
    return {
        "name": f"quantum_torus_m{m}",
        "k": [m, 0, 0, 0],
        "t_colors": [],
        "gamma": {"invariant_factors": [3, 3]},
        "epsilon": {"exponent_matrix": [[0, 2], [4, 0]]},
        "G": {"generators": [[int(i == j) for j in range(m)] for i in range(m)]},
        "hat": {"images": hats},
        "truncation": {"a_radius": 1, "max_t_degree": 0},
    }
