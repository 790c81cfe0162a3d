from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from christoffel import TolerancePolicy

settings.register_profile(
    "mp256",
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("mp256")


@pytest.fixture(scope="session")
def policy() -> TolerancePolicy:
    return TolerancePolicy()
