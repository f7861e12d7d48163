"""
Types du domaine pour les monoïdes abéliens libres munis d'une norme.

Un monoïde est entièrement décrit, pour tout ce qui relève du comptage, par
son spectre de normes : la liste triée des normes de ses éléments premiers.
Tous les types sont immuables après construction.
"""

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from itertools import accumulate
from typing import Dict, Mapping, Optional, Tuple, Union

import numpy as np

from core.exceptions import (
    INSUFFICIENT_SPECTRUM_ERROR,
    InsufficientSpectrumError,
    InvalidFactorizationError,
    InvalidParameterError,
    SpectrumFormatError,
)

Real = Union[float, Fraction]


class SpectrumKind(str, Enum):
    """Origine d'un spectre de normes."""

    INTEGERS = "integers"
    POLYNOMIALS = "monic-polynomials"
    SYNTHETIC = "synthetic"


@dataclass(frozen=True)
class XMode:
    """
    Ensemble X des valeurs de x admises par les théorèmes.

    ``q is None`` représente X = ℚ ; sinon X = {q^z}.
    """

    q: Optional[int] = None

    def __post_init__(self):
        if self.q is not None and (not isinstance(self.q, int) or self.q < 2):
            raise InvalidParameterError(
                f"Le mode q-puissance exige un entier q >= 2 (reçu {self.q!r})"
            )

    @classmethod
    def rational(cls) -> "XMode":
        return cls()

    @classmethod
    def q_power(cls, q: int) -> "XMode":
        return cls(q=q)

    @property
    def is_rational(self) -> bool:
        return self.q is None

    @property
    def label(self) -> str:
        return "rational" if self.q is None else f"q-power({self.q})"

    def contains(self, x: int) -> bool:
        """Indique si l'entier x appartient à X."""
        if self.q is None:
            return True
        if x < 1:
            return False
        while x % self.q == 0:
            x //= self.q
        return x == 1


@dataclass(frozen=True)
class MonoidParams:
    """Paramètres (κ, θ, X) de la condition M(x) = κx + O(x^θ)."""

    kappa: float
    theta: Real
    x_mode: XMode = XMode()

    def __post_init__(self):
        if not self.kappa > 0:
            raise InvalidParameterError(f"kappa doit être > 0 (reçu {self.kappa})")
        if not 0 <= self.theta < 1:
            raise InvalidParameterError(
                f"theta doit appartenir à [0, 1) (reçu {self.theta})"
            )


@dataclass(frozen=True)
class PrimeSlot:
    """Élément premier : identifiant dense et norme >= 2."""

    id: int
    norm: int

    def __post_init__(self):
        if self.id < 0:
            raise InvalidParameterError(f"Identifiant négatif: {self.id}")
        if self.norm < 2:
            raise SpectrumFormatError(f"Norme de premier invalide: {self.norm}")


@dataclass(frozen=True)
class NormSpectrum:
    """
    Données premières d'un monoïde, en enregistrements (norme, multiplicité).

    Les identifiants des premiers sont les positions dans la liste développée
    ``norms`` (triée par norme croissante). ``norm_bound`` vaut None lorsque
    la liste est exhaustive : le monoïde n'a pas d'autre premier.
    """

    distinct_norms: Tuple[int, ...]
    multiplicities: Tuple[int, ...]
    kind: SpectrumKind
    params: MonoidParams
    norm_bound: Optional[int] = None
    q: Optional[int] = None

    def __post_init__(self):
        distinct = tuple(int(n) for n in self.distinct_norms)
        counts = tuple(int(c) for c in self.multiplicities)
        object.__setattr__(self, "distinct_norms", distinct)
        object.__setattr__(self, "multiplicities", counts)
        if len(distinct) != len(counts):
            raise SpectrumFormatError("Normes et multiplicités de longueurs différentes")
        if distinct and distinct[0] < 2:
            raise SpectrumFormatError(f"Norme de premier invalide: {distinct[0]}")
        if any(a >= b for a, b in zip(distinct, distinct[1:])):
            raise SpectrumFormatError("Les normes doivent être strictement croissantes")
        if any(c < 1 for c in counts):
            raise SpectrumFormatError("Les multiplicités doivent être >= 1")
        if self.norm_bound is not None and distinct and distinct[-1] > self.norm_bound:
            raise SpectrumFormatError(
                f"Norme {distinct[-1]} au-delà de la borne déclarée {self.norm_bound}"
            )

    @classmethod
    def from_norms(cls, norms, **kwargs) -> "NormSpectrum":
        """Construit un spectre à partir de normes triées, éventuellement répétées."""
        distinct: list = []
        counts: list = []
        for norm in norms:
            if distinct and norm == distinct[-1]:
                counts[-1] += 1
            else:
                distinct.append(norm)
                counts.append(1)
        return cls(tuple(distinct), tuple(counts), **kwargs)

    @cached_property
    def _cumulative(self) -> Tuple[int, ...]:
        return tuple(accumulate(self.multiplicities))

    def __len__(self) -> int:
        return self._cumulative[-1] if self._cumulative else 0

    @cached_property
    def norms(self) -> Tuple[int, ...]:
        """Liste développée : une entrée par premier."""
        if all(c == 1 for c in self.multiplicities):
            return self.distinct_norms
        expanded: list = []
        for norm, count in zip(self.distinct_norms, self.multiplicities):
            expanded.extend([norm] * count)
        return tuple(expanded)

    def norms_upto(self, x: int) -> Tuple[int, ...]:
        """Préfixe de ``norms`` limité aux normes <= x, sans tout développer."""
        index = self.distinct_upto(x)
        if all(c == 1 for c in self.multiplicities[:index]):
            return self.distinct_norms[:index]
        expanded: list = []
        for norm, count in zip(
            self.distinct_norms[:index], self.multiplicities[:index]
        ):
            expanded.extend([norm] * count)
        return tuple(expanded)

    @property
    def records(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(zip(self.distinct_norms, self.multiplicities))

    @cached_property
    def slots(self) -> Tuple[PrimeSlot, ...]:
        return tuple(PrimeSlot(i, n) for i, n in enumerate(self.norms))

    @cached_property
    def norm_values(self) -> np.ndarray:
        """Normes distinctes en double précision, pour les sommes vectorisées."""
        return np.asarray([float(n) for n in self.distinct_norms], dtype=np.float64)

    @cached_property
    def weight_values(self) -> np.ndarray:
        """Multiplicités en double précision, alignées sur ``norm_values``."""
        return np.asarray(self.multiplicities, dtype=np.float64)

    @property
    def is_empty(self) -> bool:
        return not self.distinct_norms

    @property
    def label(self) -> str:
        if self.kind is SpectrumKind.POLYNOMIALS:
            return f"poly({self.q})"
        return self.kind.value

    def slot(self, slot_id: int) -> PrimeSlot:
        if not 0 <= slot_id < len(self):
            raise InvalidFactorizationError(
                f"Identifiant de premier inconnu: {slot_id}"
            )
        return PrimeSlot(slot_id, self.distinct_norms[self._record_of(slot_id)])

    def _record_of(self, slot_id: int) -> int:
        return bisect_right(self._cumulative, slot_id)

    def covers(self, bound: int) -> bool:
        """Vrai si tous les premiers de norme <= bound sont connus."""
        return self.norm_bound is None or self.norm_bound >= bound

    def require_cover(self, bound: int) -> None:
        if not self.covers(bound):
            raise InsufficientSpectrumError(
                f"{INSUFFICIENT_SPECTRUM_ERROR}: borne {self.norm_bound} < {bound}"
            )

    def distinct_upto(self, x: int) -> int:
        """Nombre de normes distinctes <= x."""
        return bisect_right(self.distinct_norms, x)

    def count_upto(self, x: int) -> int:
        """Nombre de premiers de norme <= x."""
        index = self.distinct_upto(x)
        return self._cumulative[index - 1] if index else 0

    def slots_of_norm(self, norm: int) -> range:
        index = bisect_left(self.distinct_norms, norm)
        if index == len(self.distinct_norms) or self.distinct_norms[index] != norm:
            start = self._cumulative[index - 1] if index else 0
            return range(start, start)
        start = self._cumulative[index - 1] if index else 0
        return range(start, self._cumulative[index])


@dataclass(frozen=True)
class Factorization:
    """
    Élément du monoïde, donné par ses couples (identifiant, exposant).

    La liste vide représente l'élément neutre.
    """

    terms: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        terms = tuple((int(i), int(e)) for i, e in self.terms)
        object.__setattr__(self, "terms", terms)
        previous = -1
        for slot_id, exponent in terms:
            if slot_id <= previous:
                raise InvalidFactorizationError(
                    "Identifiants non triés ou dupliqués dans la factorisation"
                )
            if exponent < 1:
                raise InvalidFactorizationError(
                    f"Exposant invalide {exponent} pour le premier {slot_id}"
                )
            previous = slot_id

    @classmethod
    def identity(cls) -> "Factorization":
        return cls(())

    @classmethod
    def from_exponents(cls, exponents: Mapping[int, int]) -> "Factorization":
        """Construit une factorisation à partir d'un dict {id: exposant}."""
        return cls(tuple(sorted((i, e) for i, e in exponents.items() if e != 0)))

    @property
    def exponents(self) -> Dict[int, int]:
        return dict(self.terms)

    def __add__(self, other: "Factorization") -> "Factorization":
        merged = self.exponents
        for slot_id, exponent in other.terms:
            merged[slot_id] = merged.get(slot_id, 0) + exponent
        return Factorization.from_exponents(merged)
