"""Shared fixtures: basis sets, reference polytopes, and fixture paths.

Everything heavy is session-scoped; the 33-state model in particular is
enumerated once from the shipped facet fixture and reused everywhere.
"""
from pathlib import Path

import pytest

from onticmodels.mub import build_mub, projectors
from onticmodels.polytope import (
    HPolytope,
    attach_ontic_labels,
    enumerate_vertices,
    initial_ontic_polytope,
    read_fct,
    trivial_inequalities,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def mub2():
    return build_mub(2)


@pytest.fixture(scope="session")
def mub3():
    return build_mub(3)


@pytest.fixture(scope="session")
def proj2(mub2):
    return projectors(mub2)


@pytest.fixture(scope="session")
def proj3(mub3):
    return projectors(mub3)


@pytest.fixture(scope="session")
def cube():
    return initial_ontic_polytope(2)


@pytest.fixture(scope="session")
def initial3():
    return initial_ontic_polytope(3)


@pytest.fixture(scope="session")
def table1() -> HPolytope:
    return read_fct(FIXTURES / "table1.fct")


@pytest.fixture(scope="session")
def table1_lambda() -> tuple[float, ...]:
    values = []
    for line in (FIXTURES / "table1.lambda").read_text().splitlines():
        body = line.split("#")[0].strip()
        if body:
            values.append(float(body))
    return tuple(values)


@pytest.fixture(scope="session")
def qutrit51(table1) -> HPolytope:
    facets = sorted(
        list(trivial_inequalities(3)) + list(table1.facets), key=lambda f: f.key()
    )
    return HPolytope(8, tuple(facets))


@pytest.fixture(scope="session")
def model33(qutrit51):
    return attach_ontic_labels(enumerate_vertices(qutrit51), 3)
