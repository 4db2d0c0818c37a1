"""Shared fixtures for the test suite.

The builtin fixture corpus is built once per session: chamber enumeration
caches key on complex identity, so sharing the instances across test modules
avoids recomputing conormal chambers for every test.
"""

from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from eulercc import Fixture, builtin_fixtures

settings.register_profile(
    "exact",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")


@pytest.fixture(scope="session")
def builtins() -> list[Fixture]:
    return builtin_fixtures()


@pytest.fixture(scope="session")
def by_name(builtins: list[Fixture]) -> dict[str, Fixture]:
    return {fx.name: fx for fx in builtins}
