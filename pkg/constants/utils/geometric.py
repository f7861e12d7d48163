"""
Sommes géométriques pondérées Σ k·aᵏ et Σ k²·aᵏ sous forme close.

Les formes closes sont évaluées en rationnels exacts puis converties en
double, ce qui évite les compensations de la différence entre la somme
infinie et son reste.
"""

from fractions import Fraction
from typing import Union

from core.exceptions import DomainError
from monoids.utils.arithmetic import validate_h

GEOMETRIC_RATIO_ERROR = "Le rapport a doit vérifier 0 < a < 1"

Ratio = Union[float, Fraction]


def _exact_ratio(a: Ratio) -> Fraction:
    ratio = Fraction(a)
    if not 0 < ratio < 1:
        raise DomainError(f"{GEOMETRIC_RATIO_ERROR} (reçu {a})")
    return ratio


def geom_sum_k_exact(a: Ratio, h: int, r: int) -> Fraction:
    """Σ_{k=h}^{r} k·aᵏ en rationnel exact ; 0 si r < h."""
    validate_h(h)
    a = _exact_ratio(a)
    if r < h:
        return Fraction(0)
    one_minus = 1 - a
    head = h * a**h / one_minus + a ** (h + 1) / one_minus**2
    remainder = a ** (r + 1) * (a * r - r - 1) / one_minus**2
    return head + remainder


def geom_sum_k2_exact(a: Ratio, h: int, r: int) -> Fraction:
    """Σ_{k=h}^{r} k²·aᵏ en rationnel exact ; 0 si r < h."""
    validate_h(h)
    a = _exact_ratio(a)
    if r < h:
        return Fraction(0)
    head = (
        h * h * a**h
        + (-2 * h * h + 2 * h + 1) * a ** (h + 1)
        + (h - 1) ** 2 * a ** (h + 2)
    ) / (1 - a) ** 3
    remainder = (
        a ** (r + 1)
        * (a * a * r * r + (-2 * r * r - 2 * r + 1) * a + (r + 1) ** 2)
        / (a - 1) ** 3
    )
    return head + remainder


def geom_sum_k(a: Ratio, h: int, r: int) -> float:
    """
    Σ_{k=h}^{r} k·aᵏ.

    Args:
        a: Rapport, 0 < a < 1
        h: Premier exposant (>= 2)
        r: Dernier exposant

    Returns:
        float: Valeur de la somme (0 si r < h)

    Raises:
        DomainError: Si a n'est pas dans ]0, 1[
    """
    return float(geom_sum_k_exact(a, h, r))


def geom_sum_k2(a: Ratio, h: int, r: int) -> float:
    """Σ_{k=h}^{r} k²·aᵏ, mêmes conventions que geom_sum_k."""
    return float(geom_sum_k2_exact(a, h, r))
