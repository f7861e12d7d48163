"""
Types du domaine pour les prédictions asymptotiques.

Une prédiction ne porte que le terme principal d'un énoncé asymptotique ;
le terme d'erreur est représenté par sa classe d'échelle (ErrorClass),
jamais par une constante implicite.
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Tuple

from core.exceptions import InvalidParameterError
from enumeration.domain import Family


class Moment(str, Enum):
    COUNT = "count"
    M1 = "m1"
    M2 = "m2"


class ErrorFamily(str, Enum):
    H_FREE_COUNT = "h_free_count"
    H_FULL_COUNT = "h_full_count"
    MOMENT = "moment"


@dataclass(frozen=True)
class ErrorClass:
    """
    Échelle du terme d'erreur.

    Pour les dénombrements : x^exponent·(log x)^log_power. Pour les moments :
    x^exponent·(log log x)^loglog_power / log x (inverse_log vrai).
    """

    exponent: Fraction
    log_power: int
    family: ErrorFamily
    inverse_log: bool = False
    loglog_power: int = 0

    def __post_init__(self):
        object.__setattr__(self, "exponent", Fraction(self.exponent))
        if not 0 < self.exponent <= 1:
            raise InvalidParameterError(f"Exposant d'erreur hors de ]0, 1]: {self.exponent}")
        if self.log_power not in (0, 1) or self.loglog_power not in (0, 1):
            raise InvalidParameterError("Les puissances logarithmiques valent 0 ou 1")

    def scale(self, x: float) -> float:
        """Valeur de l'échelle en x (x > e)."""
        value = x ** float(self.exponent)
        if self.log_power:
            value *= math.log(x)
        if self.inverse_log:
            value *= math.log(math.log(x)) ** self.loglog_power / math.log(x)
        return value


@dataclass(frozen=True)
class Prediction:
    """Terme principal, détaillé terme à terme, pour un (x, h, famille, moment)."""

    x: int
    h: int
    family: Family
    moment: Moment
    main_value: float
    terms: Tuple[Tuple[str, float], ...]
    error_class: ErrorClass

    @classmethod
    def from_terms(
        cls,
        x: int,
        h: int,
        family: Family,
        moment: Moment,
        terms,
        error_class: ErrorClass,
    ) -> "Prediction":
        terms = tuple((label, float(value)) for label, value in terms)
        return cls(
            x=x,
            h=h,
            family=family,
            moment=moment,
            main_value=math.fsum(value for _, value in terms),
            terms=terms,
            error_class=error_class,
        )


@dataclass(frozen=True)
class PrimeSumPrediction:
    """Terme principal d'une somme sur les premiers (lemmes de type Mertens)."""

    x: int
    kind: str
    main_value: float
    terms: Tuple[Tuple[str, float], ...]
