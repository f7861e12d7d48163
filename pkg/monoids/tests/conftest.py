"""
Fixtures partagées pour les tests des monoïdes.

Les spectres sont construits une seule fois par session : ils sont
immuables et peuvent être partagés entre tests.
"""

import pytest

from monoids.domain import MonoidParams, XMode
from monoids.services import SpectrumService


@pytest.fixture(scope="session")
def integers_100():
    """Spectre de ℕ complet jusqu'à 100."""
    return SpectrumService.build_integer_spectrum(100)


@pytest.fixture(scope="session")
def poly2_small():
    """Spectre de F_2[x] jusqu'au degré 6."""
    return SpectrumService.build_polynomial_spectrum(2, 6)


@pytest.fixture
def unit_params():
    """Paramètres κ = 1, θ = 0, X = ℚ."""
    return MonoidParams(kappa=1.0, theta=0, x_mode=XMode.rational())
