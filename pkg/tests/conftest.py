"""
Test configuration and fixtures.
"""
import random

import pytest

from src.groups import make_group
from src.logging_config import setup_logging


@pytest.fixture(scope="session", autouse=True)
def configure_logging():
    """Structured logs go to the session stderr, quiet below WARNING."""
    setup_logging(level="WARNING", json_output=False)


@pytest.fixture
def ga5():
    """GA(1,5) = <X, Y | X^5 = Y^4 = 1, YXY^-1 = X^2>."""
    return make_group(5, 2, 4)


@pytest.fixture
def ga7():
    return make_group(7, 3, 6)


@pytest.fixture
def g21():
    """SmallGroup(21,1), n = (p-1)/2 with an imaginary quadratic field."""
    return make_group(7, 2, 3)


@pytest.fixture
def g55():
    return make_group(11, 4, 5)


@pytest.fixture
def g78():
    """SmallGroup(78,1), the real quadratic case Q(√13)."""
    return make_group(13, 4, 6)


@pytest.fixture
def d14():
    return make_group(7, 6, 2)


@pytest.fixture
def rng():
    """Seeded random source so failures reproduce."""
    return random.Random(20240607)


@pytest.fixture
def store_paths(tmp_path):
    """Census store and checkpoint paths inside a temporary directory."""
    store = tmp_path / "census.jsonl"
    return store, tmp_path / "census.jsonl.ckpt.json"
