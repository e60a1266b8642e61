from __future__ import annotations

import numpy as np
import pytest

import helpers


@pytest.fixture
def ref5():
    return helpers.ref5()


@pytest.fixture
def out_regular3():
    return helpers.out_regular()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
