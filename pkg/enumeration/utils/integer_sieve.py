"""
Chemin rapide pour les entiers h-libres.

Un crible du plus petit facteur premier sur [1, x] permet de calculer, par
blocs et de façon vectorisée, Ω(n), ω(n) et le plus grand exposant de
chaque entier n : l'entier est h-libre si ce plus grand exposant est <= h-1.
"""

from threading import Lock
from typing import Iterator, Optional, Tuple

import numpy as np

from monoids.utils.sieve import smallest_prime_factors

BLOCK_SIZE = 1 << 20


_spf_lock = Lock()
_spf_cache: dict = {}


def _spf_table(limit: int) -> np.ndarray:
    # un seul crible conservé, réutilisé pour toute borne inférieure
    with _spf_lock:
        table = _spf_cache.get("spf")
        if table is None or table.size <= limit:
            table = smallest_prime_factors(limit)
            _spf_cache["spf"] = table
        return table


def factor_statistics(
    spf: np.ndarray, lo: int, hi: int
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Ω, ω et exposant maximal pour chaque entier de [lo, hi).

    Les facteurs sortent du crible par ordre croissant : un exposant est une
    suite de divisions consécutives par le même premier.
    """
    remaining = np.arange(lo, hi, dtype=np.int64)
    size = remaining.size
    big = np.zeros(size, dtype=np.int16)
    small = np.zeros(size, dtype=np.int16)
    run = np.zeros(size, dtype=np.int16)
    longest = np.zeros(size, dtype=np.int16)
    last = np.zeros(size, dtype=np.int64)

    active = np.flatnonzero(remaining > 1)
    while active.size:
        values = remaining[active]
        p = spf[values].astype(np.int64)
        remaining[active] = values // p
        big[active] += 1
        same = p == last[active]
        current = np.where(same, run[active] + 1, 1).astype(np.int16)
        run[active] = current
        small[active] += (~same).astype(np.int16)
        longest[active] = np.maximum(longest[active], current)
        last[active] = p
        active = active[remaining[active] > 1]
    return big, small, longest


def h_free_blocks(
    x: int, h: int, norm_floor: int = 0
) -> Iterator[Tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """
    Parcourt ]norm_floor, x] par blocs et produit (n, Ω, ω) des entiers h-libres.
    """
    spf = _spf_table(x)
    lo = max(1, norm_floor + 1)
    while lo <= x:
        hi = min(lo + BLOCK_SIZE, x + 1)
        big, small, longest = factor_statistics(spf, lo, hi)
        mask = longest <= h - 1
        values = np.arange(lo, hi, dtype=np.int64)[mask]
        yield values, big[mask], small[mask]
        lo = hi


def h_free_histograms(
    x: int, h: int, norm_floor: int = 0, with_omega: bool = False
) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """Histogrammes de Ω (et de ω) sur les entiers h-libres de ]norm_floor, x]."""
    size = max(1, x.bit_length() + 1)
    hist = np.zeros(size, dtype=np.int64)
    omega_hist = np.zeros(size, dtype=np.int64) if with_omega else None
    for _, big, small in h_free_blocks(x, h, norm_floor):
        hist += np.bincount(big, minlength=size)[:size]
        if omega_hist is not None:
            omega_hist += np.bincount(small, minlength=size)[:size]
    return hist, omega_hist


def h_free_normal_order(
    x: int, h: int, epsilon: float, cutoff: int
) -> Tuple[int, int]:
    """
    Exceptions à (1-ε) log log n <= Ω(n) <= (1+ε) log log n parmi les h-libres.

    Returns:
        Tuple[int, int]: (exceptions, éligibles) pour cutoff < n <= x
    """
    exceptions = 0
    eligible = 0
    if x <= cutoff:
        return 0, 0
    for values, big, _ in h_free_blocks(x, h, cutoff):
        target = np.log(np.log(values.astype(np.float64)))
        outside = (big < (1 - epsilon) * target) | (big > (1 + epsilon) * target)
        exceptions += int(np.count_nonzero(outside))
        eligible += int(values.size)
    return exceptions, eligible
