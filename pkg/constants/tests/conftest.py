"""
Fixtures pour les tests des constantes.
"""

import pytest

from monoids.domain import MonoidParams, XMode
from monoids.services import SpectrumService


@pytest.fixture(scope="session")
def integers_1m():
    """Spectre de ℕ complet jusqu'à 10⁶."""
    return SpectrumService.build_integer_spectrum(1_000_000)


@pytest.fixture(scope="session")
def integers_10k():
    return SpectrumService.build_integer_spectrum(10_000)


@pytest.fixture(scope="session")
def poly2_40():
    """Spectre de F_2[x] jusqu'au degré 40 (enregistrements par degré)."""
    return SpectrumService.build_polynomial_spectrum(2, 40)


@pytest.fixture
def unit_params():
    return MonoidParams(kappa=1.0, theta=0, x_mode=XMode.rational())


@pytest.fixture
def single_two(unit_params):
    """Monoïde à un seul premier, de norme 2 (liste exhaustive)."""
    return SpectrumService.load_synthetic_spectrum([(2, 1)], unit_params)


@pytest.fixture
def empty_spectrum(unit_params):
    return SpectrumService.load_synthetic_spectrum([], unit_params)
