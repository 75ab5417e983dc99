import random

import pytest

from dynbp.difftest import random_tree_bits


def random_bp_bits(rng, n):
    return random_tree_bits(rng, n)


@pytest.fixture
def rng():
    return random.Random(0xBDBD)
