"""
Cribles et dénombrements de premiers.

Crible d'Ératosthène et crible du plus petit facteur premier vectorisés avec
numpy, et nombre de polynômes unitaires irréductibles sur F_q par la
formule des colliers.
"""

import math
from typing import Optional, Tuple

import numpy as np
from sympy import divisors, factorint, mobius


def prime_sieve(limit: int) -> np.ndarray:
    """
    Retourne les nombres premiers <= limit.

    Args:
        limit: Borne supérieure incluse

    Returns:
        np.ndarray: Premiers croissants (int64), tableau vide si limit < 2
    """
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p : limit + 1 : p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def smallest_prime_factors(limit: int) -> np.ndarray:
    """
    Crible du plus petit facteur premier sur [0, limit].

    spf[n] est le plus petit premier divisant n pour n >= 2 ; spf[1] = 1 et
    spf[0] = 0.
    """
    spf = np.zeros(limit + 1, dtype=np.int32)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            multiples = spf[p * p : limit + 1 : p]
            multiples[multiples == 0] = p
    unmarked = spf == 0
    spf[unmarked] = np.arange(limit + 1, dtype=np.int32)[unmarked]
    if limit >= 1:
        spf[1] = 1
    return spf


def prime_power_decomposition(q: int) -> Optional[Tuple[int, int]]:
    """Retourne (p, k) si q = p^k avec p premier et k >= 1, sinon None."""
    if q < 2:
        return None
    factors = factorint(q)
    if len(factors) != 1:
        return None
    (p, k), = factors.items()
    return int(p), int(k)


def irreducible_count(q: int, degree: int) -> int:
    """
    Nombre π_q(d) de polynômes unitaires irréductibles de degré d sur F_q.

    Formule des colliers : (1/d) Σ_{e|d} μ(e) q^{d/e}.
    """
    total = sum(int(mobius(e)) * q ** (degree // e) for e in divisors(degree))
    return total // degree
