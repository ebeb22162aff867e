"""Shared fixtures: seeded generators so every run sees the same samples."""

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240915)
