"""
Utilitaires arithmétiques sur les éléments d'un monoïde.

Ce module contient les fonctions Ω, ω, les tests h-libre / h-plein, le calcul
exact des normes et quelques primitives entières (racines, logarithmes
entiers) partagées par les autres applications.
"""

import math

from sympy import integer_nthroot

from core.exceptions import (
    H_TOO_SMALL_ERROR,
    LOGLOG_DOMAIN_ERROR,
    NORM_OVERFLOW_ERROR,
    UNKNOWN_SLOT_ERROR,
    DomainError,
    InvalidFactorizationError,
    InvalidParameterError,
    NormOverflowError,
)
from monoids.domain import Factorization, NormSpectrum

U128_MAX = (1 << 128) - 1


def validate_h(h: int) -> int:
    """Vérifie que h est un entier >= 2 et le retourne."""
    if isinstance(h, bool) or not isinstance(h, int) or h < 2:
        raise InvalidParameterError(f"{H_TOO_SMALL_ERROR} (reçu {h!r})")
    return h


def norm_of(f: Factorization, s: NormSpectrum) -> int:
    """
    Calcule N(𝔪) = ∏ N(𝔭)^{n_𝔭(𝔪)} en arithmétique entière exacte.

    Args:
        f: Élément à évaluer
        s: Spectre fournissant les normes des premiers

    Returns:
        int: Norme de l'élément (1 pour l'élément neutre)

    Raises:
        InvalidFactorizationError: Si un identifiant est absent du spectre
        NormOverflowError: Si la norme dépasse 2**128 - 1
    """
    norm = 1
    for slot_id, exponent in f.terms:
        if slot_id >= len(s):
            raise InvalidFactorizationError(f"{UNKNOWN_SLOT_ERROR}: {slot_id}")
        base = s.slot(slot_id).norm
        # base**exponent >= 2**(exponent * (bits - 1)) : rejet sans exponentiation
        if exponent * (base.bit_length() - 1) > 128:
            raise NormOverflowError(NORM_OVERFLOW_ERROR)
        norm *= base**exponent
        if norm > U128_MAX:
            raise NormOverflowError(NORM_OVERFLOW_ERROR)
    return norm


def big_omega(f: Factorization) -> int:
    """Ω : nombre de facteurs premiers comptés avec multiplicité."""
    return sum(exponent for _, exponent in f.terms)


def small_omega(f: Factorization) -> int:
    """ω : nombre de facteurs premiers distincts."""
    return len(f.terms)


def is_h_free(f: Factorization, h: int) -> bool:
    validate_h(h)
    return all(exponent <= h - 1 for _, exponent in f.terms)


def is_h_full(f: Factorization, h: int) -> bool:
    validate_h(h)
    return all(exponent >= h for _, exponent in f.terms)


def combine(f: Factorization, g: Factorization) -> Factorization:
    """Somme exposant par exposant (loi du monoïde)."""
    return f + g


def floor_log_power(x: int, base: int) -> int:
    """
    Plus grand k >= 0 tel que base**k <= x, par comparaison entière.

    Args:
        x: Borne entière (>= 1)
        base: Base entière (>= 2)

    Returns:
        int: ⌊log x / log base⌋ calculé sans logarithme flottant
    """
    if base < 2:
        raise InvalidParameterError(f"Base invalide: {base}")
    k = 0
    power = base
    while power <= x:
        k += 1
        power *= base
    return k


def integer_root(x: int, h: int) -> int:
    """⌊x^{1/h}⌋ exact."""
    if x < 1:
        return 0
    root, _ = integer_nthroot(x, h)
    return int(root)


def loglog(x: float) -> float:
    """log log x en logarithmes népériens, défini pour x > 1."""
    if x <= 1:
        raise DomainError(f"{LOGLOG_DOMAIN_ERROR} (reçu {x})")
    return math.log(math.log(x))
