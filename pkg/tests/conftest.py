import random

import pytest
from hypothesis import settings

from sepsys.subsets import Kind, S, maximal_collections, rim

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# rim R of [4]: intervals containing 1 or 4, and co-intervals
R4 = rim(4)
W_24 = R4 | {S("2"), S("24"), S("124")}
W_13 = R4 | {S("3"), S("23"), S("13")}


@pytest.fixture(scope="session")
def strong4():
    return maximal_collections(Kind.STRONG, 4)


@pytest.fixture(scope="session")
def weak4():
    return maximal_collections(Kind.WEAK, 4)


@pytest.fixture(scope="session")
def chord4():
    return maximal_collections(Kind.CHORD, 4)


@pytest.fixture
def rng():
    return random.Random(20240611)
