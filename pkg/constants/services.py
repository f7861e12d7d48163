"""
Services de calcul des constantes des moments de Ω.

Ce module évalue ζ_ℳ(s), γ_h, 𝔄, 𝔅, 𝔠₃, 𝔠₃′, 𝔠₄, 𝔡₃, 𝔡₃′ et 𝔡₄ par
produits eulériens et sommes sur les premiers de norme <= P. Chaque valeur
est accompagnée d'une estimation de la queue négligée : majoration sur ℕ,
extrapolation géométrique ailleurs.
"""

import logging
import math
from typing import Callable, Tuple, Union

import numpy as np

from constants.domain import ConstantsBundle, EulerValue
from constants.utils.tails import (
    envelope,
    geometric_tail,
    integral_tail,
    last_block,
    last_nonempty_block,
    product_tail,
    zeta_log_tail,
)
from core.exceptions import (
    DIVERGENCE_ERROR,
    LOGLOG_DOMAIN_ERROR,
    DivergenceError,
    DomainError,
    InvalidParameterError,
)
from monoids.domain import NormSpectrum, SpectrumKind, XMode
from monoids.utils.arithmetic import loglog, validate_h

logger = logging.getLogger(__name__)

PI_SQUARED_OVER_SIX = math.pi**2 / 6

# En dessous, 𝔄 tronquée n'a guère de sens (log log P <= 0)
MERTENS_WARNING_BOUND = 16

TermFunction = Callable[[np.ndarray], np.ndarray]
Component = Union[EulerValue, float]


# Termes des sommes, vectorisés sur les normes distinctes.
# Les formes en u = 1/N restent finies quand N^h dépasse le double.


def _c3_terms(norms: np.ndarray, h: int) -> np.ndarray:
    u = 1.0 / norms
    u_h = u**h
    numerator = 1 - h * u ** (h - 2) + h * u ** (h - 1) - u_h
    return numerator / (norms * (norms - 1) * (1 - u_h))


def _c3_prime_terms(norms: np.ndarray, h: int) -> np.ndarray:
    u = 1.0 / norms
    u_h = u**h
    b = -2 * h * h + 2 * h + 1
    c = (h - 1) ** 2
    numerator = (
        3
        - u
        + (1 - u) ** 2 * u ** (h - 1)
        - (h * h * u ** (h - 2) + b * u ** (h - 1) + c * u_h)
    )
    return numerator / ((norms - 1) ** 2 * (1 - u_h))


def _c4_terms(norms: np.ndarray, h: int) -> np.ndarray:
    u = 1.0 / norms
    u_h = u**h
    base = (1 - h * u ** (h - 1) + (h - 1) * u_h) / ((norms - 1) * (1 - u_h))
    return base * base


def _d3_terms(norms: np.ndarray, h: int) -> np.ndarray:
    root = norms ** (1.0 / h)
    cofactor = norms / root
    numerator = h * (norms - cofactor - root + 1) + norms
    return numerator / (norms * (root - 1) * (norms - cofactor + 1))


def _d3_prime_terms(norms: np.ndarray, h: int) -> np.ndarray:
    t = norms ** (1.0 / h)
    numerator = (
        (2 * h * h + 2 * h - 1) * norms * t
        - (1 + h) ** 2 * norms * t * t
        - h * h * (norms - t + 2 * t * t - t**3)
    )
    denominator = norms * (norms - t - norms * t) * (t - 1) ** 2
    return numerator / denominator


def _d4_terms(norms: np.ndarray, h: int) -> np.ndarray:
    root = norms ** (1.0 / h)
    base = (h * (root - 1) + 1) / ((root - 1) * (norms - norms / root + 1))
    return base * base


def _gamma_log_terms(norms: np.ndarray, h: int) -> np.ndarray:
    root = norms ** (1.0 / h)
    return np.log1p((norms - root) / (norms * norms * (root - 1)))


def _mertens_terms(norms: np.ndarray) -> np.ndarray:
    return np.log1p(-1.0 / norms) + 1.0 / norms


def _validate_truncation(truncation_norm: int) -> int:
    if (
        isinstance(truncation_norm, bool)
        or not isinstance(truncation_norm, int)
        or truncation_norm < 1
    ):
        raise InvalidParameterError(
            f"La borne de troncature P doit être un entier >= 1 (reçu {truncation_norm!r})"
        )
    return truncation_norm


def _as_component(component: Component, name: str) -> EulerValue:
    if isinstance(component, EulerValue):
        return component
    return EulerValue.exact(float(component), name=name)


class ConstantsService:
    """
    Service d'évaluation des constantes.

    Les méthodes sont des fonctions pures d'un spectre immuable ; toutes les
    valeurs sont en double précision.
    """

    @staticmethod
    def _prime_terms(
        spectrum: NormSpectrum, truncation_norm: int, terms_of: TermFunction
    ) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Normes distinctes <= P, multiplicités et termes correspondants."""
        _validate_truncation(truncation_norm)
        spectrum.require_cover(truncation_norm)
        reach = spectrum.distinct_upto(truncation_norm)
        norms = spectrum.norm_values[:reach]
        weights = spectrum.weight_values[:reach]
        return norms, weights, terms_of(norms)

    @staticmethod
    def _exhausted(spectrum: NormSpectrum, truncation_norm: int) -> bool:
        """Vrai si aucun premier de norme > P n'existe."""
        return spectrum.norm_bound is None and (
            spectrum.is_empty or spectrum.distinct_norms[-1] <= truncation_norm
        )

    @staticmethod
    def _sum_with_tail(
        spectrum: NormSpectrum,
        truncation_norm: int,
        terms_of: TermFunction,
        decay: float,
    ) -> Tuple[float, float, bool]:
        """
        Somme Σ_{N(𝔭)<=P} t(N(𝔭)) et estimation de Σ_{N(𝔭)>P} |t(N(𝔭))|.

        Args:
            decay: Exposant β tel que t(N) = O(N^{-β})

        Returns:
            Tuple[float, float, bool]: (somme, queue, queue rigoureuse)
        """
        norms, weights, terms = ConstantsService._prime_terms(
            spectrum, truncation_norm, terms_of
        )
        total = float(np.sum(weights * terms))
        if ConstantsService._exhausted(spectrum, truncation_norm):
            return total, 0.0, True

        if spectrum.kind is SpectrumKind.INTEGERS:
            block = last_block(norms, truncation_norm)
            bound = envelope(norms[block], terms[block], decay)
            return total, integral_tail(bound, decay, truncation_norm), True

        # Blocs de largeur q en mode q-puissance : ]P/2, P] peut ne contenir
        # aucune norme dès que q >= 3
        base = spectrum.params.x_mode.q or 2
        block = last_nonempty_block(norms, base)
        block_sum = float(np.sum(weights[block] * np.abs(terms[block])))
        return total, geometric_tail(block_sum, decay, base), False

    @staticmethod
    def zeta_M(s: float, spectrum: NormSpectrum, truncation_norm: int) -> EulerValue:
        """
        ζ_ℳ(s) = ∏ (1 - N(𝔭)^{-s})^{-1} tronqué à N(𝔭) <= P.

        Raises:
            DivergenceError: Si s <= 1
            InsufficientSpectrumError: Si le spectre ne couvre pas P
        """
        if not s > 1:
            raise DivergenceError(f"{DIVERGENCE_ERROR} (reçu s = {s})")
        norms, weights, terms = ConstantsService._prime_terms(
            spectrum, truncation_norm, lambda n: -np.log1p(-(n ** -float(s)))
        )
        value = math.exp(float(np.sum(weights * terms)))

        if ConstantsService._exhausted(spectrum, truncation_norm):
            log_tail, rigorous = 0.0, True
        elif spectrum.kind is SpectrumKind.INTEGERS:
            log_tail, rigorous = zeta_log_tail(s, truncation_norm), True
        else:
            log_tail = zeta_log_tail(s, truncation_norm, spectrum.params.kappa)
            rigorous = False

        logger.debug(
            f"ζ_ℳ({s}) sur {spectrum.label} avec P={truncation_norm}: {value}"
        )
        return EulerValue(
            value=value,
            truncation_norm=truncation_norm,
            tail_estimate=product_tail(value, log_tail),
            term_count=spectrum.count_upto(truncation_norm),
            rigorous=rigorous,
            name="zeta",
            spectrum_label=spectrum.label,
        )

    @staticmethod
    def gamma_h(h: int, spectrum: NormSpectrum, truncation_norm: int) -> EulerValue:
        """γ_h = ∏ (1 + (N - N^{1/h}) / (N²(N^{1/h} - 1))), produit tronqué."""
        validate_h(h)
        log_total, log_tail, rigorous = ConstantsService._sum_with_tail(
            spectrum, truncation_norm, lambda n: _gamma_log_terms(n, h), 1 + 1 / h
        )
        value = math.exp(log_total)
        return EulerValue(
            value=value,
            truncation_norm=truncation_norm,
            tail_estimate=product_tail(value, log_tail),
            term_count=spectrum.count_upto(truncation_norm),
            rigorous=rigorous,
            name="gamma",
            h=h,
            spectrum_label=spectrum.label,
        )

    @staticmethod
    def mertens_A(spectrum: NormSpectrum, truncation_norm: int) -> EulerValue:
        """
        Constante de Mertens 𝔄 du monoïde.

        Sur ℕ, forme close γ + Σ_p (log(1 - 1/p) + 1/p), de queue O(1/P).
        Ailleurs, valeur partielle Σ_{N(𝔭)<=P} 1/N(𝔭) - log log P dont la
        queue est la dérive observée entre P/2 et P (convergence en
        O(1/log P) seulement).

        Raises:
            DomainError: Si P < 2
        """
        _validate_truncation(truncation_norm)
        if truncation_norm < 2:
            raise DomainError(f"{LOGLOG_DOMAIN_ERROR} (P = {truncation_norm})")
        if truncation_norm < MERTENS_WARNING_BOUND:
            logger.warning(
                f"𝔄 tronquée à P={truncation_norm} < {MERTENS_WARNING_BOUND}: "
                f"valeur peu significative"
            )

        if spectrum.kind is SpectrumKind.INTEGERS:
            total, tail, rigorous = ConstantsService._sum_with_tail(
                spectrum, truncation_norm, _mertens_terms, 2.0
            )
            value = float(np.euler_gamma) + total
        else:
            value = ConstantsService._mertens_partial(spectrum, truncation_norm)
            half = truncation_norm // 2
            tail = 0.0
            if half >= 2:
                tail = abs(value - ConstantsService._mertens_partial(spectrum, half))
            rigorous = False

        return EulerValue(
            value=value,
            truncation_norm=truncation_norm,
            tail_estimate=tail,
            term_count=spectrum.count_upto(truncation_norm),
            rigorous=rigorous,
            name="A",
            spectrum_label=spectrum.label,
        )

    @staticmethod
    def _mertens_partial(spectrum: NormSpectrum, bound: int) -> float:
        _, weights, reciprocals = ConstantsService._prime_terms(
            spectrum, bound, np.reciprocal
        )
        return float(np.sum(weights * reciprocals)) - loglog(bound)

    @staticmethod
    def B_const(x_mode: XMode) -> float:
        """
        𝔅 = -π²/6 si X = ℚ, (log log q)² - π²/6 si X = {qᶻ}.

        Raises:
            DomainError: Si q n'est pas un entier >= 2
        """
        if x_mode.is_rational:
            return -PI_SQUARED_OVER_SIX
        q = x_mode.q
        if isinstance(q, bool) or not isinstance(q, int) or q < 2:
            raise DomainError(f"q doit être un entier >= 2 (reçu {q!r})")
        return loglog(q) ** 2 - PI_SQUARED_OVER_SIX

    @staticmethod
    def c3(
        h: int, spectrum: NormSpectrum, truncation_norm: int, A: Component
    ) -> EulerValue:
        """𝔠₃ = 𝔄 + Σ (N^h - hN² + hN - 1) / (N(N-1)(N^h-1))."""
        return ConstantsService._shifted_by_A(
            "C3", h, spectrum, truncation_norm, A, _c3_terms, decay=2.0
        )

    @staticmethod
    def c3_prime(
        h: int, spectrum: NormSpectrum, truncation_norm: int, A: Component
    ) -> EulerValue:
        """𝔠₃′ = 𝔄 + Σ des termes de second ordre (même décroissance en N^{-2})."""
        return ConstantsService._shifted_by_A(
            "C3p", h, spectrum, truncation_norm, A, _c3_prime_terms, decay=2.0
        )

    @staticmethod
    def d3(
        h: int, spectrum: NormSpectrum, truncation_norm: int, A: Component
    ) -> EulerValue:
        """𝔡₃ = h(𝔄 - log h) + Σ des termes en N^{-1-1/h}."""
        return ConstantsService._shifted_by_A(
            "D3",
            h,
            spectrum,
            truncation_norm,
            A,
            _d3_terms,
            decay=1 + 1 / h,
            weight=h,
            shift=math.log(h),
        )

    @staticmethod
    def d3_prime(
        h: int, spectrum: NormSpectrum, truncation_norm: int, A: Component
    ) -> EulerValue:
        """𝔡₃′ = h²(𝔄 - log h) + Σ des termes en N^{-1-1/h}."""
        return ConstantsService._shifted_by_A(
            "D3p",
            h,
            spectrum,
            truncation_norm,
            A,
            _d3_prime_terms,
            decay=1 + 1 / h,
            weight=h * h,
            shift=math.log(h),
        )

    @staticmethod
    def _shifted_by_A(
        name: str,
        h: int,
        spectrum: NormSpectrum,
        truncation_norm: int,
        A: Component,
        terms: Callable[[np.ndarray, int], np.ndarray],
        decay: float,
        weight: int = 1,
        shift: float = 0.0,
    ) -> EulerValue:
        # weight·(𝔄 - shift) + Σ_{N(𝔭)<=P} terms(N(𝔭), h)
        validate_h(h)
        A = _as_component(A, "A")
        A.check_compatible(h, spectrum.label)
        total, tail, rigorous = ConstantsService._sum_with_tail(
            spectrum, truncation_norm, lambda n: terms(n, h), decay
        )
        return EulerValue(
            value=weight * (A.value - shift) + total,
            truncation_norm=truncation_norm,
            tail_estimate=weight * A.tail_estimate + tail,
            term_count=spectrum.count_upto(truncation_norm),
            rigorous=rigorous and A.rigorous,
            prime_sum=total,
            name=name,
            h=h,
            spectrum_label=spectrum.label,
        )

    @staticmethod
    def c4(
        h: int,
        C3: Component,
        C3p: Component,
        B: float,
        spectrum: NormSpectrum,
        truncation_norm: int,
    ) -> EulerValue:
        """
        𝔠₄ = 𝔠₃² + 𝔠₃′ + 𝔅 - Σ ((N^h - hN + h - 1) / ((N-1)(N^h-1)))².

        Raises:
            ModeMismatchError: Si 𝔠₃ ou 𝔠₃′ ont été calculées pour un autre
                h ou un autre spectre
        """
        return ConstantsService._squared_composition(
            "C4", h, C3, C3p, B, spectrum, truncation_norm, _c4_terms
        )

    @staticmethod
    def d4(
        h: int,
        D3: Component,
        D3p: Component,
        B: float,
        spectrum: NormSpectrum,
        truncation_norm: int,
    ) -> EulerValue:
        """
        𝔡₄ = 𝔡₃² + 𝔡₃′ + h²𝔅 - Σ s(N)², avec
        s(N) = (h(N^{1/h}-1)+1) / ((N^{1/h}-1)(N - N^{1-1/h} + 1)).
        """
        return ConstantsService._squared_composition(
            "D4", h, D3, D3p, h * h * B, spectrum, truncation_norm, _d4_terms
        )

    @staticmethod
    def _squared_composition(
        name: str,
        h: int,
        first: Component,
        second: Component,
        scaled_B: float,
        spectrum: NormSpectrum,
        truncation_norm: int,
        terms: Callable[[np.ndarray, int], np.ndarray],
    ) -> EulerValue:
        validate_h(h)
        first = _as_component(first, name[0] + "3")
        second = _as_component(second, name[0] + "3p")
        first.check_compatible(h, spectrum.label)
        second.check_compatible(h, spectrum.label)
        total, tail, rigorous = ConstantsService._sum_with_tail(
            spectrum, truncation_norm, lambda n: terms(n, h), 2.0
        )
        value = first.value**2 + second.value + scaled_B - total
        propagated = 2 * abs(first.value) * first.tail_estimate + second.tail_estimate
        return EulerValue(
            value=value,
            truncation_norm=truncation_norm,
            tail_estimate=propagated + tail,
            term_count=spectrum.count_upto(truncation_norm),
            rigorous=rigorous and first.rigorous and second.rigorous,
            prime_sum=total,
            name=name,
            h=h,
            spectrum_label=spectrum.label,
        )

    @staticmethod
    def build_bundle(
        h: int, spectrum: NormSpectrum, truncation_norm: int
    ) -> ConstantsBundle:
        """
        Calcule toutes les constantes pour h sur un même spectre et une même
        borne P.

        Returns:
            ConstantsBundle: 𝔄, 𝔅, ζ_ℳ(h), γ_h, 𝔠₃, 𝔠₃′, 𝔠₄, 𝔡₃, 𝔡₃′, 𝔡₄
        """
        validate_h(h)
        A = ConstantsService.mertens_A(spectrum, truncation_norm)
        B = ConstantsService.B_const(spectrum.params.x_mode)
        C3 = ConstantsService.c3(h, spectrum, truncation_norm, A)
        C3p = ConstantsService.c3_prime(h, spectrum, truncation_norm, A)
        D3 = ConstantsService.d3(h, spectrum, truncation_norm, A)
        D3p = ConstantsService.d3_prime(h, spectrum, truncation_norm, A)
        bundle = ConstantsBundle(
            A=A,
            B=B,
            zeta_h=ConstantsService.zeta_M(h, spectrum, truncation_norm),
            gamma_h=ConstantsService.gamma_h(h, spectrum, truncation_norm),
            C3=C3,
            C3p=C3p,
            C4=ConstantsService.c4(h, C3, C3p, B, spectrum, truncation_norm),
            D3=D3,
            D3p=D3p,
            D4=ConstantsService.d4(h, D3, D3p, B, spectrum, truncation_norm),
            h=h,
            x_mode=spectrum.params.x_mode,
        )
        logger.info(
            f"Constantes h={h} sur {spectrum.label} (P={truncation_norm}): "
            f"𝔄={A.value:.6f}, 𝔠₃={C3.value:.6f}, 𝔡₃={D3.value:.6f}, "
            f"queues {'rigoureuses' if bundle.rigorous_tails else 'heuristiques'}"
        )
        return bundle
