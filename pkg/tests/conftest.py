"""Shared instances: a 20-element staircase with a 4-bin reference that it
bins to exactly, and a 6-element two-mode instance whose reference writes
off everything but the modes."""

import random

import pytest

from binident import Distribution

STAIRCASE_WEIGHTS = [1, 2, 3, 0, 3, 3, 2, 1, 4, 3, 5, 4, 2, 0, 0, 3, 4, 2, 4, 4]


@pytest.fixture(scope="session")
def staircase_p20() -> Distribution:
    return Distribution.from_weights(STAIRCASE_WEIGHTS)


@pytest.fixture(scope="session")
def reference_q4() -> Distribution:
    return Distribution(["3/10", "0", "1/2", "1/5"])


@pytest.fixture(scope="session")
def two_mode_p6() -> Distribution:
    return Distribution(["1/20", "2/5", "1/20", "1/80", "37/80", "1/40"])


@pytest.fixture(scope="session")
def two_mode_q6() -> Distribution:
    return Distribution(["0", "1/2", "0", "0", "1/2", "0"])


def random_distribution(rng: random.Random, n: int, max_weight: int = 8) -> Distribution:
    """Random exact-rational distribution over [n], possibly with zero masses."""
    while True:
        weights = [rng.randint(0, max_weight) for _ in range(n)]
        if sum(weights) > 0:
            return Distribution.from_weights(weights)


def random_full_support(rng: random.Random, n: int, max_weight: int = 8) -> Distribution:
    weights = [rng.randint(1, max_weight) for _ in range(n)]
    return Distribution.from_weights(weights)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xB1D)
