"""
Types du domaine pour les constantes eulériennes.

Une constante tronquée est portée par un EulerValue : la valeur calculée avec
les premiers de norme <= P, une estimation de la queue négligée et, pour les
constantes composées, la somme sur les premiers qui entre dans la composition.
"""

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from core.exceptions import MODE_MISMATCH_ERROR, InvalidParameterError, ModeMismatchError
from monoids.domain import XMode

# Ordre d'exportation des constantes d'un bundle
BUNDLE_ORDER = (
    "A",
    "B",
    "zeta_h",
    "gamma_h",
    "C3",
    "C3p",
    "C4",
    "D3",
    "D3p",
    "D4",
)


@dataclass(frozen=True)
class EulerValue:
    """
    Valeur tronquée d'un produit eulérien ou d'une somme sur les premiers.

    Attributes:
        value: Valeur calculée
        truncation_norm: Borne P sur les normes des premiers utilisés
        tail_estimate: Majoration (ou estimation) de l'erreur de troncature
        term_count: Nombre de premiers de norme <= P
        rigorous: Vrai si tail_estimate est une borne démontrée
        prime_sum: Somme sur les premiers propre à la constante
        name: Nom court de la constante
        h: Paramètre h de la constante (None si sans objet)
        spectrum_label: Spectre sur lequel la valeur a été calculée
    """

    value: float
    truncation_norm: Optional[int]
    tail_estimate: float = 0.0
    term_count: int = 0
    rigorous: bool = True
    prime_sum: float = 0.0
    name: str = ""
    h: Optional[int] = None
    spectrum_label: str = ""

    def __post_init__(self):
        if not self.tail_estimate >= 0:
            raise InvalidParameterError(
                f"Estimation de queue négative pour {self.name}: {self.tail_estimate}"
            )

    @classmethod
    def exact(cls, value: float, name: str = "") -> "EulerValue":
        """Valeur fournie telle quelle, sans troncature."""
        return cls(value=float(value), truncation_norm=None, name=name)

    def check_compatible(self, h: int, spectrum_label: str) -> None:
        """Vérifie que la valeur a été calculée pour le même h et le même spectre."""
        if self.h is not None and self.h != h:
            raise ModeMismatchError(
                f"{MODE_MISMATCH_ERROR}: {self.name} calculée pour h={self.h}, pas h={h}"
            )
        if self.spectrum_label and self.spectrum_label != spectrum_label:
            raise ModeMismatchError(
                f"{MODE_MISMATCH_ERROR}: {self.name} calculée sur "
                f"{self.spectrum_label}, pas {spectrum_label}"
            )


@dataclass(frozen=True)
class ConstantsBundle:
    """Toutes les constantes nécessaires aux prédictions pour un h et un X donnés."""

    A: EulerValue
    B: float
    zeta_h: EulerValue
    gamma_h: EulerValue
    C3: EulerValue
    C3p: EulerValue
    C4: EulerValue
    D3: EulerValue
    D3p: EulerValue
    D4: EulerValue
    h: int
    x_mode: XMode

    @property
    def rigorous_tails(self) -> bool:
        return all(entry.rigorous for _, entry in self.entries())

    def entries(self) -> Tuple[Tuple[str, EulerValue], ...]:
        """Couples (nom, valeur) dans l'ordre d'exportation."""
        result = []
        for name in BUNDLE_ORDER:
            entry = getattr(self, name)
            if name == "B":
                entry = EulerValue.exact(entry, name="B")
            result.append((name, entry))
        return tuple(result)

    def recomposition_residuals(self) -> Dict[str, float]:
        """
        Écarts aux identités de composition de 𝔠₄ et 𝔡₄.

        Ces écarts ne mesurent que les arrondis : ils doivent rester de
        l'ordre de 1e-12.
        """
        h = self.h
        c4 = self.C3.value**2 + self.C3p.value + self.B - self.C4.prime_sum
        d4 = self.D3.value**2 + self.D3p.value + h * h * self.B - self.D4.prime_sum
        return {"C4": abs(c4 - self.C4.value), "D4": abs(d4 - self.D4.value)}
