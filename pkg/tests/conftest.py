import math

import numpy as np
import pytest

from icowalk import Chirality, apply_2switch, canonical_pair, make_initial_state

ROOT2 = math.sqrt(2.0)


@pytest.fixture
def canon():
    """Reference process pair: two balanced coins vs two trivial diagonals."""
    return canonical_pair(2)


@pytest.fixture
def canon_switch(canon):
    """The reference pair run through a balanced 2-switch from |right, 0>."""
    p0, p1 = canon
    initial = make_initial_state(2, [1 / ROOT2, 1 / ROOT2], 0, Chirality.FORWARD, 4)
    return apply_2switch(initial, p0, p1)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
