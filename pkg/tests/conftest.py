import numpy as np
import pytest

from config import AppConfig, CacheConfig, SCHEMA_VERSION, SearchConfig
from gf import field_from_order


@pytest.fixture
def gf2():
    return field_from_order(2)


@pytest.fixture
def gf3():
    return field_from_order(3)


@pytest.fixture
def gf4():
    return field_from_order(4)


@pytest.fixture
def gf5():
    return field_from_order(5)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def search():
    return SearchConfig(point_cap=10 ** 7, subspace_cap=10 ** 10, batch_elements=1 << 20, threads=1)


@pytest.fixture
def app_config(search):
    """Environment-independent configuration for driving the CLI."""
    return AppConfig(
        log_level="WARNING",
        log_dir="",
        default_theme="dark",
        search=search,
        cache=CacheConfig(directory="", schema_version=SCHEMA_VERSION),
    )
