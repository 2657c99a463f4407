# tests/conftest.py
# Opção --runslow e fixtures compartilhadas.

import numpy as np
import pytest

from src.services.data_io import substream


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="roda os testes marcados como slow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="precisa de --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    return substream(12345, 99)


@pytest.fixture
def gaussian_data(rng):
    X = rng.standard_normal((30, 5))
    y = np.sin(X[:, 0]) + X[:, 1] * X[:, 2]
    return X, y
