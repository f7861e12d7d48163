"""
Types du domaine pour le dénombrement des éléments h-libres et h-pleins.
"""

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, Iterable, Mapping, Optional, Tuple, Union

from core.exceptions import InvalidParameterError
from monoids.domain import Factorization, NormSpectrum
from monoids.utils.arithmetic import integer_root, validate_h


class Family(str, Enum):
    """Famille d'éléments sélectionnée."""

    H_FREE = "h_free"
    H_FULL = "h_full"


@dataclass(frozen=True)
class ExponentPolicy:
    """Exposants non nuls admis pour chaque premier : [minimum, maximum]."""

    minimum: int = 1
    maximum: Optional[int] = None

    @classmethod
    def for_family(cls, family: Family, h: int) -> "ExponentPolicy":
        if family is Family.H_FREE:
            return cls(1, h - 1)
        return cls(h, None)

    def admits(self, exponent: int) -> bool:
        return exponent >= self.minimum and (
            self.maximum is None or exponent <= self.maximum
        )


@dataclass(frozen=True)
class SetSelector:
    """
    Sélection d'une famille (h-libre ou h-pleine) avec premiers exclus.

    Les premiers exclus ont un exposant forcé à 0.
    """

    family: Family
    h: int
    excluded_slots: FrozenSet[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        validate_h(self.h)
        excluded = frozenset(int(i) for i in self.excluded_slots)
        if any(i < 0 for i in excluded):
            raise InvalidParameterError("Identifiant de premier exclu négatif")
        object.__setattr__(self, "excluded_slots", excluded)

    @property
    def policy(self) -> ExponentPolicy:
        return ExponentPolicy.for_family(self.family, self.h)

    def excluding(self, *slot_ids: int) -> "SetSelector":
        return SetSelector(self.family, self.h, self.excluded_slots | set(slot_ids))

    def unrestricted(self) -> "SetSelector":
        return SetSelector(self.family, self.h)

    def validate_against(self, spectrum: NormSpectrum) -> None:
        unknown = [i for i in self.excluded_slots if i >= len(spectrum)]
        if unknown:
            raise InvalidParameterError(
                f"Premiers exclus absents du spectre: {sorted(unknown)}"
            )

    def completeness_bound(self, x: int) -> int:
        """Plus grande norme de premier pouvant apparaître sous la borne x."""
        if self.family is Family.H_FULL:
            return integer_root(x, self.h)
        return x

    def admits(self, f: Factorization) -> bool:
        policy = self.policy
        return all(
            slot_id not in self.excluded_slots and policy.admits(exponent)
            for slot_id, exponent in f.terms
        )


@dataclass(frozen=True)
class MomentTally:
    """
    Effectif, ΣΩ, ΣΩ² et histogramme des valeurs de Ω sur un ensemble.

    ``omega_histogram`` (valeurs de ω) n'est rempli que sur demande.
    """

    count: int = 0
    sum_omega: int = 0
    sum_omega_sq: int = 0
    histogram: Mapping[int, int] = field(default_factory=dict)
    omega_histogram: Optional[Mapping[int, int]] = None

    @classmethod
    def from_histogram(
        cls,
        histogram: Union[Mapping[int, int], Iterable[Tuple[int, int]]],
        omega_histogram: Optional[Mapping[int, int]] = None,
    ) -> "MomentTally":
        items = histogram.items() if isinstance(histogram, Mapping) else histogram
        hist = {int(k): int(v) for k, v in items if v}
        omega_hist = None
        if omega_histogram is not None:
            omega_hist = {int(k): int(v) for k, v in omega_histogram.items() if v}
        return cls(
            count=sum(hist.values()),
            sum_omega=sum(k * v for k, v in hist.items()),
            sum_omega_sq=sum(k * k * v for k, v in hist.items()),
            histogram=dict(sorted(hist.items())),
            omega_histogram=(
                dict(sorted(omega_hist.items())) if omega_hist is not None else None
            ),
        )

    def merge(self, other: "MomentTally") -> "MomentTally":
        """Fusion associative et commutative de deux tallies disjoints."""
        histogram = Counter(self.histogram)
        histogram.update(other.histogram)
        omega_histogram = None
        if self.omega_histogram is not None and other.omega_histogram is not None:
            omega_histogram = Counter(self.omega_histogram)
            omega_histogram.update(other.omega_histogram)
        return MomentTally.from_histogram(histogram, omega_histogram)

    __add__ = merge

    def is_consistent(self) -> bool:
        """Vérifie les sommes de l'histogramme et l'inégalité de Cauchy-Schwarz."""
        hist = self.histogram
        return (
            sum(hist.values()) == self.count
            and sum(k * v for k, v in hist.items()) == self.sum_omega
            and sum(k * k * v for k, v in hist.items()) == self.sum_omega_sq
            and self.count * self.sum_omega_sq >= self.sum_omega**2
        )

    def moment(self, order: int) -> int:
        if order == 0:
            return self.count
        if order == 1:
            return self.sum_omega
        if order == 2:
            return self.sum_omega_sq
        raise InvalidParameterError(f"Moment d'ordre {order} non suivi")


@dataclass(frozen=True)
class PrimeSumKind:
    """
    Type de somme sur les premiers, analysé depuis ``nom`` ou ``nom(param)``.

    Les sommes pondérées par un logarithme de x/N(𝔭) portent sur
    N(𝔭) <= x/2 (X = ℚ) ou N(𝔭) <= x/q (X = {q^z}).
    """

    name: str
    parameter: Optional[float] = None

    SIMPLE = ("mertens", "log_weighted", "loglog_weighted", "double_recip", "log_sq_weighted")
    PARAMETRIZED = ("recip_power", "inv_log_power")

    def __post_init__(self):
        if self.name in self.SIMPLE:
            if self.parameter is not None:
                raise InvalidParameterError(f"{self.name} ne prend pas de paramètre")
        elif self.name in self.PARAMETRIZED:
            if self.parameter is None:
                raise InvalidParameterError(f"{self.name} exige un paramètre")
            if self.name == "inv_log_power" and (
                self.parameter < 1 or int(self.parameter) != self.parameter
            ):
                raise InvalidParameterError(
                    f"inv_log_power exige un entier k >= 1 (reçu {self.parameter})"
                )
        else:
            raise InvalidParameterError(f"Type de somme inconnu: {self.name!r}")

    @classmethod
    def parse(cls, text: str) -> "PrimeSumKind":
        text = text.strip()
        if "(" not in text:
            return cls(text)
        if not text.endswith(")"):
            raise InvalidParameterError(f"Type de somme mal formé: {text!r}")
        name, raw = text[:-1].split("(", 1)
        try:
            parameter = float(raw)
        except ValueError as e:
            raise InvalidParameterError(f"Paramètre invalide dans {text!r}") from e
        return cls(name.strip(), parameter)

    @property
    def label(self) -> str:
        if self.parameter is None:
            return self.name
        value = int(self.parameter) if self.parameter.is_integer() else self.parameter
        return f"{self.name}({value})"
