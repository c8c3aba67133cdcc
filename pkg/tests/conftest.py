from __future__ import annotations

import numpy as np
import pytest

from ppflight.config import default_config


@pytest.fixture(scope="session")
def cfg():
    return default_config()


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)
