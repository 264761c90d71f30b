"""Shared fixtures: reduced numerics and the 1-D reference laws."""

import pytest

from src.distributions.catalog import (
    make_isotropic_laplace,
    make_isotropic_uniform,
    make_standard_gaussian,
)
from src.utils.settings import DEFAULT_SETTINGS

# Quick numerics for unit tests; quadrature stays at full precision
FAST = DEFAULT_SETTINGS.with_overrides({
    "grid_size": 512,
    "convolution_nodes": 4096,
    "scan_nodes": 8192,
    "mc_samples": 20_000,
    "seed": 7,
})


@pytest.fixture
def fast_settings():
    return FAST


@pytest.fixture
def gaussian():
    return make_standard_gaussian(1)


@pytest.fixture
def uniform():
    return make_isotropic_uniform(1)


@pytest.fixture
def laplace():
    return make_isotropic_laplace(1)
