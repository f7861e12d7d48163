"""
Fixtures pour les tests de prédiction asymptotique.
"""

import pytest

from constants.services import ConstantsService
from monoids.domain import MonoidParams, XMode
from monoids.services import SpectrumService


@pytest.fixture(scope="session")
def integers_1m():
    return SpectrumService.build_integer_spectrum(1_000_000)


@pytest.fixture(scope="session")
def bundle_h2(integers_1m):
    """Constantes de ℕ pour h = 2, troncature P = 10⁶."""
    return ConstantsService.build_bundle(2, integers_1m, 1_000_000)


@pytest.fixture(scope="session")
def bundle_h3(integers_1m):
    return ConstantsService.build_bundle(3, integers_1m, 1_000_000)


@pytest.fixture
def integer_params(integers_1m):
    return integers_1m.params


@pytest.fixture
def unit_params():
    return MonoidParams(kappa=1.0, theta=0, x_mode=XMode.rational())


@pytest.fixture
def single_two(unit_params):
    return SpectrumService.load_synthetic_spectrum([(2, 1)], unit_params)


@pytest.fixture
def single_two_bundle(single_two):
    return ConstantsService.build_bundle(2, single_two, 2)
