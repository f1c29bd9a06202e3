import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import numpy as np
import pytest

from hienergy import GroupSet, make_group


@pytest.fixture
def z5():
    return make_group(5)


@pytest.fixture
def f2_3():
    return make_group((2, 2, 2))


def random_set(group, density, rng) -> GroupSet:
    bits = rng.random(group.order) < density
    if not bits.any():
        bits[rng.integers(group.order)] = True
    return GroupSet(group, bits)


def random_int_function(group, rng, lo=-3, hi=3):
    from hienergy import DenseFunction

    vals = [int(v) for v in rng.integers(lo, hi + 1, size=group.order)]
    return DenseFunction.from_values(group, vals, "exact")


SMALL_GROUPS = [
    (5,),
    (4,),
    (6,),
    (2, 2),
    (2, 2, 2),
    (3, 3),
    (4, 2),
    (7,),
]
