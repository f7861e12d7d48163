"""
Dénombrement par séries génératrices pour les spectres en puissances de q.

Quand toutes les normes sont des puissances de q (polynômes unitaires sur
F_q), un élément est décrit par son degré et sa valeur de Ω. Les c premiers
de degré d contribuent le facteur G(t^d u)^c, où G(z) = 1 + Σ z^e sur les
exposants e admis ; le produit tronqué au degré n donne le nombre exact
d'éléments par (degré, Ω).
"""

from collections import Counter
from typing import Dict, Iterable, List, Mapping, Tuple

import numpy as np

from core.exceptions import InvalidParameterError
from enumeration.domain import ExponentPolicy
from monoids.utils.arithmetic import floor_log_power


def degree_multiplicities(
    records: Iterable[Tuple[int, int]], q: int, excluded_norms: Iterable[int] = ()
) -> Dict[int, int]:
    """
    Nombre de premiers par degré, premiers exclus retirés.

    Args:
        records: Couples (norme, multiplicité) du spectre
        q: Base des normes
        excluded_norms: Une norme par premier exclu

    Raises:
        InvalidParameterError: Si une norme n'est pas une puissance de q
    """
    removed = Counter(excluded_norms)
    counts: Dict[int, int] = {}
    for norm, multiplicity in records:
        degree = floor_log_power(norm, q)
        if q**degree != norm:
            raise InvalidParameterError(f"La norme {norm} n'est pas une puissance de {q}")
        remaining = multiplicity - removed[norm]
        if remaining > 0:
            counts[degree] = counts.get(degree, 0) + remaining
    return counts


def _truncated_power(base: List[int], exponent: int, length: int) -> List[int]:
    result = [1] + [0] * (length - 1)
    while exponent:
        if exponent & 1:
            result = _truncated_product(result, base, length)
        exponent >>= 1
        if exponent:
            base = _truncated_product(base, base, length)
    return result


def _truncated_product(a: List[int], b: List[int], length: int) -> List[int]:
    out = [0] * length
    for i, ai in enumerate(a):
        if ai:
            for j in range(length - i):
                out[i + j] += ai * b[j]
    return out


def omega_table(
    multiplicities: Mapping[int, int], max_degree: int, policy: ExponentPolicy
) -> np.ndarray:
    """
    Table exacte T[d, w] des éléments admis de degré d et de Ω = w.

    Args:
        multiplicities: Nombre de premiers par degré
        max_degree: Degré de troncature n
        policy: Exposants non nuls autorisés

    Returns:
        np.ndarray: Tableau d'entiers Python (dtype object) de forme (n+1, n+1)
    """
    n = max_degree
    table = np.zeros((n + 1, n + 1), dtype=object)
    table[0, 0] = 1
    for degree, count in sorted(multiplicities.items()):
        top = n // degree
        if count == 0 or top < policy.minimum:
            continue
        series = [1] + [int(policy.admits(e)) for e in range(1, top + 1)]
        power = _truncated_power(series, count, top + 1)
        updated = np.zeros_like(table)
        for k, coefficient in enumerate(power):
            if coefficient:
                shift = degree * k
                updated[shift:, k:] += coefficient * table[: n + 1 - shift, : n + 1 - k]
        table = updated
    return table
