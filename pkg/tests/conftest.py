from __future__ import annotations

import numpy as np
import pytest

from helpers import DATA, edges
from smpswap.generators import gen_fig1


@pytest.fixture
def fig1():
    return gen_fig1()


@pytest.fixture
def fig1_s():
    return edges((1, 2), (2, 1))


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
