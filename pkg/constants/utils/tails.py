"""
Estimations de queue pour les sommes et produits tronqués sur les premiers.

Deux régimes coexistent. Sur ℕ, la queue Σ_{p>P} |t(p)| est majorée par
comparaison à l'intégrale de c·u^{-β}, c étant l'enveloppe |t(N)|·N^β
mesurée sur le dernier bloc dyadique ]P/2, P]. Ailleurs, on part du dernier
bloc non vide ]m/b, m] (m plus grande norme <= P, b = q en mode q-puissance,
2 sinon) et on extrapole sa contribution par une série géométrique de
rapport b^{1-β}, sans garantie.
"""

import math
from typing import Optional

import numpy as np

from core.exceptions import DIVERGENCE_ERROR, DivergenceError


def _check_exponent(beta: float) -> None:
    if not beta > 1:
        raise DivergenceError(f"{DIVERGENCE_ERROR}: exposant de décroissance {beta}")


def last_block(norms: np.ndarray, truncation_norm: int) -> np.ndarray:
    """Masque des normes du dernier bloc dyadique ]P/2, P]."""
    return (norms > truncation_norm / 2) & (norms <= truncation_norm)


def envelope(norms: np.ndarray, terms: np.ndarray, beta: float) -> float:
    """max |t(N)|·N^β sur les normes fournies (0 si aucune)."""
    if norms.size == 0:
        return 0.0
    return float(np.max(np.abs(terms) * norms**beta))


def integral_tail(constant: float, beta: float, truncation_norm: int) -> float:
    """c·P^{1-β}/(β-1) ≥ Σ_{n>P} c·n^{-β}."""
    _check_exponent(beta)
    return constant * truncation_norm ** (1 - beta) / (beta - 1)


def last_nonempty_block(norms: np.ndarray, base: float = 2) -> np.ndarray:
    """
    Masque du bloc ]m/base, m], m étant la plus grande des normes fournies.

    Pour un spectre en puissances de q et base = q, c'est exactement le
    dernier degré présent sous la troncature.
    """
    if norms.size == 0:
        return np.zeros(0, dtype=bool)
    top = norms[-1]
    return (norms > top / base) & (norms <= top)


def geometric_tail(block_sum: float, beta: float, base: float = 2) -> float:
    """|b|·r/(1-r) avec r = base^{1-β} : blocs suivants supposés géométriques."""
    _check_exponent(beta)
    ratio = float(base) ** (1 - beta)
    return abs(block_sum) * ratio / (1 - ratio)


def zeta_log_tail(
    s: float, truncation_norm: int, kappa: Optional[float] = None
) -> float:
    """
    Queue de log ζ_ℳ(s) au-delà de P.

    Utilise -log(1 - N^{-s}) <= N^{-s}/(1 - 2^{-s}) et la densité κ des
    éléments : Σ_{N(𝔪)>P} N(𝔪)^{-s} <= s·κ·P^{1-s}/(s-1). Sans κ (cas de ℕ),
    la comparaison à Σ_{n>P} n^{-s} donne directement P^{1-s}/(s-1).
    """
    _check_exponent(s)
    factor = 1.0 / (1.0 - 2.0**-s)
    if kappa is None:
        return factor * truncation_norm ** (1 - s) / (s - 1)
    return factor * s * kappa * truncation_norm ** (1 - s) / (s - 1)


def product_tail(value: float, log_tail: float) -> float:
    """Erreur sur un produit ∏(1+t) dont la queue du logarithme est log_tail."""
    return abs(value) * math.expm1(log_tail)
