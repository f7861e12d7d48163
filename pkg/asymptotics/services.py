"""
Services de prédiction asymptotique.

Ce module évalue les termes principaux des dénombrements et des moments de
Ω sur les éléments h-libres et h-pleins, classe les termes d'erreur selon
θ et h, et compare les prédictions aux valeurs exactes.
"""

import logging
import math
from fractions import Fraction
from typing import Iterable, Optional, Tuple, Union

from asymptotics.domain import (
    ErrorClass,
    ErrorFamily,
    Moment,
    Prediction,
    PrimeSumPrediction,
)
from constants.domain import ConstantsBundle
from core.exceptions import (
    LOGLOG_DOMAIN_ERROR,
    MODE_MISMATCH_ERROR,
    DomainError,
    InvalidParameterError,
    ModeMismatchError,
)
from enumeration.domain import Family, MomentTally, PrimeSumKind
from enumeration.services import EnumerationService
from monoids.domain import MonoidParams, NormSpectrum, Real
from monoids.utils.arithmetic import loglog, validate_h

logger = logging.getLogger(__name__)

# Plus petit x pour lequel log log x est nettement positif
MIN_PREDICTION_X = 16

THETA_DENOMINATOR_LIMIT = 10**6
THETA_RANGE_ERROR = "θ doit appartenir à [0, 1["

PREDICTED_PRIME_SUMS = ("mertens", "loglog_weighted", "double_recip")


def _exact_theta(theta: Real) -> Fraction:
    """θ en rationnel ; les flottants sont ramenés à la fraction la plus proche."""
    if isinstance(theta, Fraction):
        value = theta
    elif isinstance(theta, int):
        value = Fraction(theta)
    else:
        value = Fraction(theta).limit_denominator(THETA_DENOMINATOR_LIMIT)
    if not 0 <= value < 1:
        raise InvalidParameterError(f"{THETA_RANGE_ERROR} (reçu {theta})")
    return value


def _check_bundle(bundle: ConstantsBundle, h: int, params: MonoidParams) -> None:
    if bundle.h != h:
        raise ModeMismatchError(
            f"{MODE_MISMATCH_ERROR}: constantes pour h={bundle.h}, prédiction pour h={h}"
        )
    if bundle.x_mode != params.x_mode:
        raise ModeMismatchError(
            f"{MODE_MISMATCH_ERROR}: X={bundle.x_mode.label} contre {params.x_mode.label}"
        )


class AsymptoticsService:
    """
    Service des termes principaux.

    Les termes d'erreur ne sont jamais évalués : seule leur échelle sert à
    normaliser les résidus.
    """

    @staticmethod
    def error_exponent_h_free(theta: Real, h: int) -> ErrorClass:
        """
        Classe d'erreur du dénombrement des h-libres.

        x^θ si θ > 1/h, x^θ·log x si θ = 1/h, x^{1/h} sinon. La
        comparaison est faite en rationnels exacts.

        Raises:
            InvalidParameterError: Si θ n'est pas dans [0, 1) ou h < 2
        """
        validate_h(h)
        theta = _exact_theta(theta)
        threshold = Fraction(1, h)
        if theta > threshold:
            return ErrorClass(theta, 0, ErrorFamily.H_FREE_COUNT)
        if theta == threshold:
            return ErrorClass(theta, 1, ErrorFamily.H_FREE_COUNT)
        return ErrorClass(threshold, 0, ErrorFamily.H_FREE_COUNT)

    @staticmethod
    def error_exponent_h_full(theta: Real, h: int) -> ErrorClass:
        """
        Classe d'erreur du dénombrement des h-pleins.

        x^{θ/h} si θ > h/(h+1) ; x^{1/(h+1)}·log x si θ = h/(h+i) pour un
        i dans {1, ..., h-1} ; x^{1/(h+1)} sinon.
        """
        validate_h(h)
        theta = _exact_theta(theta)
        if theta > Fraction(h, h + 1):
            return ErrorClass(theta / h, 0, ErrorFamily.H_FULL_COUNT)
        critical = theta in {Fraction(h, h + i) for i in range(1, h)}
        return ErrorClass(
            Fraction(1, h + 1), 1 if critical else 0, ErrorFamily.H_FULL_COUNT
        )

    @staticmethod
    def moment_error_class(family: Family, moment: Moment, h: int) -> ErrorClass:
        """x/log x, x·log log x/log x et leurs analogues en x^{1/h}."""
        exponent = Fraction(1) if Family(family) is Family.H_FREE else Fraction(1, h)
        return ErrorClass(
            exponent,
            0,
            ErrorFamily.MOMENT,
            inverse_log=True,
            loglog_power=1 if Moment(moment) is Moment.M2 else 0,
        )

    @staticmethod
    def predict(
        x: int,
        h: int,
        family: Union[Family, str],
        moment: Union[Moment, str],
        bundle: ConstantsBundle,
        params: MonoidParams,
    ) -> Prediction:
        """
        Terme principal du dénombrement ou d'un moment de Ω.

        Args:
            x: Borne sur la norme (>= 16)
            h: Paramètre h
            family: ``h_free`` ou ``h_full``
            moment: ``count``, ``m1`` ou ``m2``
            bundle: Constantes calculées pour le même h et le même X
            params: κ, θ et X du monoïde

        Returns:
            Prediction: Termes listés de l'ordre le plus grand au plus petit

        Raises:
            DomainError: Si x < 16
            ModeMismatchError: Si le bundle a été calculé pour un autre h ou X
        """
        validate_h(h)
        family = Family(family)
        moment = Moment(moment)
        if x < MIN_PREDICTION_X:
            raise DomainError(f"{LOGLOG_DOMAIN_ERROR} : prédiction exige x >= 16 ({x})")
        _check_bundle(bundle, h, params)
        if not params.x_mode.contains(x):
            logger.warning(f"x={x} n'appartient pas à X={params.x_mode.label}")

        ll = loglog(x)
        kappa = params.kappa
        if family is Family.H_FREE:
            base = kappa / bundle.zeta_h.value
            C3, C4 = bundle.C3.value, bundle.C4.value
            if moment is Moment.COUNT:
                terms = [("x", base * x)]
            elif moment is Moment.M1:
                terms = [("x loglog x", base * x * ll), ("x", base * C3 * x)]
            else:
                terms = [
                    ("x (loglog x)^2", base * x * ll * ll),
                    ("x loglog x", base * (2 * C3 + 1) * x * ll),
                    ("x", base * C4 * x),
                ]
        else:
            base = kappa * bundle.gamma_h.value * x ** (1 / h)
            D3, D4 = bundle.D3.value, bundle.D4.value
            if moment is Moment.COUNT:
                terms = [("x^(1/h)", base)]
            elif moment is Moment.M1:
                terms = [("x^(1/h) loglog x", h * base * ll), ("x^(1/h)", D3 * base)]
            else:
                terms = [
                    ("x^(1/h) (loglog x)^2", h * h * base * ll * ll),
                    ("x^(1/h) loglog x", (2 * D3 + h) * h * base * ll),
                    ("x^(1/h)", D4 * base),
                ]

        if moment is Moment.COUNT:
            error_class = (
                AsymptoticsService.error_exponent_h_free(params.theta, h)
                if family is Family.H_FREE
                else AsymptoticsService.error_exponent_h_full(params.theta, h)
            )
        else:
            error_class = AsymptoticsService.moment_error_class(family, moment, h)

        prediction = Prediction.from_terms(x, h, family, moment, terms, error_class)
        logger.debug(
            f"Prédiction {family.value} {moment.value} h={h} x={x}: "
            f"{prediction.main_value}"
        )
        return prediction

    @staticmethod
    def predict_restricted_count(
        x: int,
        h: int,
        family: Union[Family, str],
        excluded_norms: Iterable[int],
        bundle: ConstantsBundle,
        params: MonoidParams,
    ) -> Prediction:
        """
        Dénombrement prédit quand les premiers de normes données sont exclus.

        h-libres : facteur ∏ (N^h - N^{h-1})/(N^h - 1) ; h-pleins : division
        par ∏ (1 + N^{-1}/(1 - N^{-1/h})). Une norme répétée compte une fois
        par premier exclu.
        """
        family = Family(family)
        unrestricted = AsymptoticsService.predict(
            x, h, family, Moment.COUNT, bundle, params
        )
        factor = 1.0
        for norm in excluded_norms:
            if norm < 2:
                raise InvalidParameterError(f"Norme de premier invalide: {norm}")
            if family is Family.H_FREE:
                factor *= (1 - 1 / norm) / (1 - float(norm) ** -h)
            else:
                factor /= 1 + (1 / norm) / (1 - float(norm) ** (-1 / h))
        label, value = unrestricted.terms[0]
        return Prediction.from_terms(
            x,
            h,
            family,
            Moment.COUNT,
            [(f"{label} (restreint)", value * factor)],
            unrestricted.error_class,
        )

    @staticmethod
    def residual_report(
        empirical: Union[MomentTally, int],
        prediction: Prediction,
        x: Optional[int] = None,
        h: Optional[int] = None,
        family: Optional[Union[Family, str]] = None,
    ) -> Tuple[float, float]:
        """
        Résidu brut et résidu normalisé par l'échelle du terme d'erreur.

        Args:
            empirical: Tally exact (la composante du moment est extraite)
                ou valeur entière déjà extraite
            prediction: Prédiction à comparer
            x, h, family: Contexte du tally, vérifié s'il est fourni

        Raises:
            ModeMismatchError: Si le contexte ne correspond pas à la prédiction
        """
        if family is not None:
            family = Family(family)
        for name, given, expected in (
            ("x", x, prediction.x),
            ("h", h, prediction.h),
            ("famille", family, prediction.family),
        ):
            if given is not None and given != expected:
                raise ModeMismatchError(
                    f"{MODE_MISMATCH_ERROR}: {name}={given} contre {expected}"
                )

        if isinstance(empirical, MomentTally):
            order = {Moment.COUNT: 0, Moment.M1: 1, Moment.M2: 2}[prediction.moment]
            empirical = empirical.moment(order)
        residual = float(empirical) - prediction.main_value
        normalized = residual / prediction.error_class.scale(prediction.x)
        return residual, normalized

    @staticmethod
    def predict_prime_sum(
        x: int, kind: Union[PrimeSumKind, str], bundle: ConstantsBundle
    ) -> PrimeSumPrediction:
        """
        Terme principal des sommes de type Mertens.

        ``mertens`` : log log x + 𝔄 ; ``loglog_weighted`` :
        (log log x)² + 𝔄 log log x + 𝔅 ; ``double_recip`` :
        (log log x)² + 2𝔄 log log x + 𝔄² + 𝔅.
        """
        if isinstance(kind, str):
            kind = PrimeSumKind.parse(kind)
        if kind.name not in PREDICTED_PRIME_SUMS:
            raise InvalidParameterError(
                f"Pas de terme principal connu pour {kind.label}; "
                f"attendu: {', '.join(PREDICTED_PRIME_SUMS)}"
            )
        if x < MIN_PREDICTION_X:
            raise DomainError(f"{LOGLOG_DOMAIN_ERROR} : prédiction exige x >= 16 ({x})")
        ll = loglog(x)
        A = bundle.A.value
        B = bundle.B
        if kind.name == "mertens":
            terms = [("loglog x", ll), ("A", A)]
        elif kind.name == "loglog_weighted":
            terms = [("(loglog x)^2", ll * ll), ("A loglog x", A * ll), ("B", B)]
        else:
            terms = [
                ("(loglog x)^2", ll * ll),
                ("2A loglog x", 2 * A * ll),
                ("A^2 + B", A * A + B),
            ]
        return PrimeSumPrediction(
            x=x,
            kind=kind.label,
            main_value=math.fsum(value for _, value in terms),
            terms=tuple(terms),
        )

    @staticmethod
    def prime_sum_residual(
        spectrum: NormSpectrum,
        x: int,
        kind: Union[PrimeSumKind, str],
        bundle: ConstantsBundle,
    ) -> float:
        """Somme exacte sur les premiers moins son terme principal."""
        prediction = AsymptoticsService.predict_prime_sum(x, kind, bundle)
        empirical = EnumerationService.prime_sum_empirical(spectrum, x, kind)
        return empirical - prediction.main_value
