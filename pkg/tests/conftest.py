import random

import pytest

from abeliants.fields import PrimeField, QQ
from abeliants.matrix import Mat


@pytest.fixture
def rng():
    return random.Random(20240817)


def rand_mat(field, n, rng, m=None):
    return Mat(field, [[field.random(rng) for _ in range(m or n)] for _ in range(n)])


def rank1_mat(field, n, rng):
    u = [field.random(rng) for _ in range(n)]
    v = [field.random(rng) for _ in range(n)]
    return Mat(field, [[field.mul(a, b) for b in v] for a in u]), u, v


F7 = PrimeField(7)
F101 = PrimeField(101)
F1009 = PrimeField(1009)
