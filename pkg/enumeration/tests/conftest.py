"""
Fixtures et oracles par force brute pour les tests de dénombrement.

L'oracle factorise chaque entier avec sympy ; il est indépendant du
parcours récursif, du crible et des séries génératrices.
"""

from collections import Counter
from functools import lru_cache

import pytest
from sympy import factorint

from enumeration.domain import Family
from monoids.domain import MonoidParams, XMode
from monoids.services import SpectrumService


@lru_cache(maxsize=None)
def _exponents(n: int):
    return tuple(factorint(n).values())


def brute_force_elements(x: int, family: Family, h: int, excluded_primes=()):
    """Liste (n, Ω, ω) des entiers de la famille, n <= x, premiers exclus évités."""
    family = Family(family)
    result = []
    for n in range(1, x + 1):
        if any(n % p == 0 for p in excluded_primes):
            continue
        exponents = _exponents(n)
        if family is Family.H_FREE:
            admitted = all(e <= h - 1 for e in exponents)
        else:
            admitted = all(e >= h for e in exponents)
        if admitted:
            result.append((n, sum(exponents), len(exponents)))
    return result


def brute_force_histogram(x: int, family: Family, h: int, excluded_primes=()):
    return dict(
        Counter(big for _, big, _ in brute_force_elements(x, family, h, excluded_primes))
    )


@pytest.fixture(scope="session")
def integers_10k():
    """Spectre de ℕ complet jusqu'à 10⁴."""
    return SpectrumService.build_integer_spectrum(10_000)


@pytest.fixture(scope="session")
def integers_1m():
    """Spectre de ℕ complet jusqu'à 10⁶."""
    return SpectrumService.build_integer_spectrum(1_000_000)


@pytest.fixture(scope="session")
def poly2_12():
    """Spectre de F_2[x] jusqu'au degré 12."""
    return SpectrumService.build_polynomial_spectrum(2, 12)


@pytest.fixture
def unit_params():
    return MonoidParams(kappa=1.0, theta=0, x_mode=XMode.rational())


@pytest.fixture
def four_four(unit_params):
    """Deux premiers distincts de norme 4."""
    return SpectrumService.load_synthetic_spectrum([(4, 2)], unit_params)
