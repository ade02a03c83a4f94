import pytest

from crouzeix_lab.seeding import (  # noqa: F401  (shared by test modules)
    random_complex_gaussian,
    random_disk_points,
    rng_for,
    seeded_zero_set,
)


@pytest.fixture
def rng():
    return rng_for(20240901)
