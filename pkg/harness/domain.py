"""
Types du harnais : configuration d'expérience et lignes de rapport.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Optional, Tuple

from core.exceptions import InvalidParameterError
from enumeration.domain import Family
from monoids.domain import MonoidParams, XMode
from monoids.utils.arithmetic import integer_root, validate_h


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class MonoidKind(str, Enum):
    INTEGERS = "integers"
    POLY = "poly"
    SYNTHETIC = "synthetic"


@dataclass(frozen=True)
class MonoidChoice:
    """
    Monoïde désigné par ``integers``, ``poly(q)`` ou ``synthetic(chemin)``.

    ``synthetic(empty)`` désigne le spectre vide ; tout autre argument est un
    chemin de fichier.
    """

    kind: MonoidKind
    q: Optional[int] = None
    path: Optional[Path] = None

    @property
    def is_empty_synthetic(self) -> bool:
        return self.kind is MonoidKind.SYNTHETIC and self.path is None

    @property
    def label(self) -> str:
        if self.kind is MonoidKind.POLY:
            return f"poly({self.q})"
        if self.kind is MonoidKind.SYNTHETIC:
            return f"synthetic({self.path or 'empty'})"
        return self.kind.value


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Configuration validée d'une commande du harnais.

    ``x_list`` contient des normes : en mode poly(q), les degrés saisis ont
    déjà été convertis en qⁿ.
    """

    monoid: MonoidChoice
    h: int
    family: Family = Family.H_FREE
    x_list: Tuple[int, ...] = ()
    prime_bound: Optional[int] = None
    epsilon: Optional[float] = None
    output: OutputFormat = OutputFormat.JSON
    seed: int = 0
    kappa: float = 1.0
    theta: Fraction = Fraction(0)
    x_mode: XMode = field(default_factory=XMode)
    excluded: Tuple[int, ...] = ()
    workers: Optional[int] = None
    timings: bool = True

    def __post_init__(self):
        validate_h(self.h)
        if list(self.x_list) != sorted(set(self.x_list)):
            raise InvalidParameterError("Les valeurs de x doivent être strictement croissantes")

    @property
    def params(self) -> MonoidParams:
        """Paramètres (κ, θ, X) des spectres synthétiques."""
        return MonoidParams(kappa=self.kappa, theta=self.theta, x_mode=self.x_mode)

    @property
    def max_x(self) -> int:
        return self.x_list[-1] if self.x_list else 1

    def required_bound(self, family: Optional[Family] = None) -> int:
        """Plus grande norme de premier nécessaire pour couvrir x_list."""
        family = family or self.family
        if family is Family.H_FULL:
            return integer_root(self.max_x, self.h)
        return self.max_x


@dataclass(frozen=True)
class ReportRow:
    x: int
    h: int
    family: str
    moment: str
    empirical: int
    predicted: Optional[float]
    residual: Optional[float]
    normalized: Optional[float]
    runtime_ms: int


REPORT_COLUMNS = (
    "x",
    "h",
    "family",
    "moment",
    "empirical",
    "predicted",
    "residual",
    "normalized",
    "runtime_ms",
)


@dataclass(frozen=True)
class CountRow:
    """Effectif exact, prédiction et diagnostics Ω/ω pour une valeur de x."""

    x: int
    h: int
    family: str
    count: int
    predicted: Optional[float]
    restricted_count: Optional[int]
    restricted_predicted: Optional[float]
    mean_big_omega: float
    mean_small_omega: Optional[float]
    runtime_ms: int


@dataclass(frozen=True)
class NormalOrderRow:
    x: int
    h: int
    family: str
    epsilon: float
    exceptions: int
    eligible: int
    fraction: float
    runtime_ms: int


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
