import pytest
from hypothesis import HealthCheck, settings

from heyde_lab.verify import instance_pool

settings.register_profile(
    "desk",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("desk")

ACCEPTANCE_SEED = 20260809


@pytest.fixture(scope="session")
def acceptance_pool():
    """Shared instance pool: 1000 random canonical instances over the six
    reference groups plus the engineered symmetric constructions."""
    return instance_pool(ACCEPTANCE_SEED, random_count=1000)
