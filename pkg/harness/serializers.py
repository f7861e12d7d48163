"""
Serializers du harnais d'expériences.

Ce module valide les options des commandes (ligne de commande et fichier de
configuration) et décrit les lignes des rapports CSV/JSON.
"""

from fractions import Fraction
from pathlib import Path

from django.conf import settings
from rest_framework import serializers

from enumeration.domain import Family
from harness.domain import (
    ExperimentConfig,
    MonoidChoice,
    MonoidKind,
    OutputFormat,
)
from monoids.domain import XMode
from monoids.utils.arithmetic import integer_root
from monoids.utils.sieve import prime_power_decomposition

# Messages d'erreur constants
H_TOO_SMALL_ERROR = "h doit être un entier supérieur ou égal à 2."
MONOID_FORMAT_ERROR = "Monoïde attendu: integers, poly(q) ou synthetic(chemin|empty)."
NOT_PRIME_POWER_ERROR = "q doit être une puissance d'un nombre premier."
SPECTRUM_FILE_ERROR = "Fichier de spectre introuvable"
X_REQUIRED_ERROR = "Au moins une valeur de x est requise."
X_ORDER_ERROR = "Les valeurs de x doivent être strictement croissantes."
X_MODE_FORMAT_ERROR = "Mode X attendu: rational ou q-power(q)."
THETA_FORMAT_ERROR = "θ doit être un rationnel de [0, 1[ (ex: 1/2)."
KAPPA_ERROR = "κ doit être strictement positif."
EPSILON_ERROR = "ε doit être strictement positif."
EPSILON_REQUIRED_ERROR = "ε est requis pour cette commande."
PRIME_BOUND_ERROR = "La borne P doit couvrir les normes nécessaires"
X_HELP_TEXT = "Valeurs de x séparées par des virgules (degrés n en mode poly(q))"
EXCLUDE_HELP_TEXT = "Identifiants des premiers exclus, séparés par des virgules"


class IntegerListField(serializers.ListField):
    """Liste d'entiers, donnée en liste ou en texte ``a,b,c``."""

    child = serializers.IntegerField()

    def to_internal_value(self, data):
        if isinstance(data, str):
            data = [item.strip() for item in data.split(",") if item.strip()]
        elif isinstance(data, int):
            data = [data]
        return super().to_internal_value(data)


def _call_argument(text: str, name: str):
    """Argument de ``name(arg)``, ou None si le texte n'a pas cette forme."""
    prefix = f"{name}("
    if text.startswith(prefix) and text.endswith(")"):
        return text[len(prefix) : -1].strip()
    return None


def parse_monoid(text: str) -> MonoidChoice:
    """
    Analyse ``integers``, ``poly(q)`` ou ``synthetic(...)``.

    Raises:
        serializers.ValidationError: Si le texte n'a aucune de ces formes
    """
    text = text.strip()
    if text == MonoidKind.INTEGERS.value:
        return MonoidChoice(MonoidKind.INTEGERS)

    raw_q = _call_argument(text, "poly")
    if raw_q is not None:
        try:
            q = int(raw_q)
        except ValueError:
            raise serializers.ValidationError(MONOID_FORMAT_ERROR)
        if prime_power_decomposition(q) is None:
            raise serializers.ValidationError(f"{NOT_PRIME_POWER_ERROR} (reçu {q})")
        return MonoidChoice(MonoidKind.POLY, q=q)

    raw_path = _call_argument(text, "synthetic")
    if raw_path:
        if raw_path == "empty":
            return MonoidChoice(MonoidKind.SYNTHETIC)
        path = Path(raw_path)
        if not path.is_file():
            raise serializers.ValidationError(f"{SPECTRUM_FILE_ERROR}: {path}")
        return MonoidChoice(MonoidKind.SYNTHETIC, path=path)

    raise serializers.ValidationError(f"{MONOID_FORMAT_ERROR} (reçu {text!r})")


def parse_x_mode(text: str) -> XMode:
    text = text.strip()
    if text == "rational":
        return XMode.rational()
    raw_q = _call_argument(text, "q-power")
    if raw_q is not None and raw_q.isdigit() and int(raw_q) >= 2:
        return XMode.q_power(int(raw_q))
    raise serializers.ValidationError(f"{X_MODE_FORMAT_ERROR} (reçu {text!r})")


class ExperimentConfigSerializer(serializers.Serializer):
    """
    Validation d'une configuration d'expérience.

    Contexte reconnu :
        require_x: la commande exige au moins une valeur de x
        require_epsilon: la commande exige ε
        both_families: la commande parcourt les deux familles (borne P
            vérifiée pour les h-libres)
    """

    monoid = serializers.CharField(default="integers")
    h = serializers.IntegerField(
        min_value=2, error_messages={"min_value": H_TOO_SMALL_ERROR}
    )
    family = serializers.ChoiceField(
        choices=[f.value for f in Family], default=Family.H_FREE.value
    )
    x = IntegerListField(required=False, default=list, help_text=X_HELP_TEXT)
    prime_bound = serializers.IntegerField(required=False, allow_null=True, min_value=2)
    epsilon = serializers.FloatField(required=False, allow_null=True)
    output = serializers.ChoiceField(
        choices=[f.value for f in OutputFormat], default=OutputFormat.JSON.value
    )
    seed = serializers.IntegerField(required=False, allow_null=True)
    kappa = serializers.FloatField(default=1.0)
    theta = serializers.CharField(default="0")
    x_mode = serializers.CharField(default="rational")
    exclude = IntegerListField(
        required=False,
        default=list,
        child=serializers.IntegerField(min_value=0),
        help_text=EXCLUDE_HELP_TEXT,
    )
    workers = serializers.IntegerField(required=False, allow_null=True, min_value=1)
    no_timings = serializers.BooleanField(default=False)

    def validate_monoid(self, value: str) -> MonoidChoice:
        return parse_monoid(value)

    def validate_x_mode(self, value: str) -> XMode:
        return parse_x_mode(value)

    def validate_theta(self, value: str) -> Fraction:
        try:
            theta = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise serializers.ValidationError(THETA_FORMAT_ERROR)
        if not 0 <= theta < 1:
            raise serializers.ValidationError(THETA_FORMAT_ERROR)
        return theta

    def validate_kappa(self, value: float) -> float:
        if not value > 0:
            raise serializers.ValidationError(KAPPA_ERROR)
        return value

    def validate_epsilon(self, value):
        if value is not None and not value > 0:
            raise serializers.ValidationError(EPSILON_ERROR)
        return value

    def validate(self, attrs):
        monoid: MonoidChoice = attrs["monoid"]
        x_values = list(attrs.get("x") or [])

        if monoid.kind is MonoidKind.POLY:
            if any(n < 0 for n in x_values):
                raise serializers.ValidationError({"x": "Les degrés doivent être >= 0."})
            x_values = [monoid.q**n for n in x_values]
            attrs["x_mode"] = XMode.q_power(monoid.q)
        elif monoid.kind is MonoidKind.INTEGERS:
            attrs["x_mode"] = XMode.rational()

        if any(x < 1 for x in x_values):
            raise serializers.ValidationError({"x": "x doit être >= 1."})
        if x_values != sorted(set(x_values)):
            raise serializers.ValidationError({"x": X_ORDER_ERROR})
        if self.context.get("require_x") and not x_values:
            raise serializers.ValidationError({"x": X_REQUIRED_ERROR})
        if self.context.get("require_epsilon") and attrs.get("epsilon") is None:
            raise serializers.ValidationError({"epsilon": EPSILON_REQUIRED_ERROR})
        attrs["x"] = x_values

        prime_bound = attrs.get("prime_bound")
        if prime_bound is not None and x_values and monoid.kind is not MonoidKind.SYNTHETIC:
            family = Family(attrs["family"])
            needed = x_values[-1]
            if family is Family.H_FULL and not self.context.get("both_families"):
                needed = integer_root(needed, attrs["h"])
            if prime_bound < needed:
                raise serializers.ValidationError(
                    {"prime_bound": f"{PRIME_BOUND_ERROR} (P={prime_bound} < {needed})."}
                )

        if attrs.get("seed") is None:
            attrs["seed"] = settings.MONOID_LAB["DEFAULT_SEED"]
        return attrs

    def create(self, validated_data) -> ExperimentConfig:
        return ExperimentConfig(
            monoid=validated_data["monoid"],
            h=validated_data["h"],
            family=Family(validated_data["family"]),
            x_list=tuple(validated_data["x"]),
            prime_bound=validated_data.get("prime_bound"),
            epsilon=validated_data.get("epsilon"),
            output=OutputFormat(validated_data["output"]),
            seed=validated_data["seed"],
            kappa=validated_data["kappa"],
            theta=validated_data["theta"],
            x_mode=validated_data["x_mode"],
            excluded=tuple(sorted(set(validated_data["exclude"]))),
            workers=validated_data.get("workers"),
            timings=not validated_data["no_timings"],
        )


class ReportRowSerializer(serializers.Serializer):
    """Ligne x,h,family,moment,empirical,predicted,residual,normalized,runtime_ms."""

    x = serializers.IntegerField()
    h = serializers.IntegerField()
    family = serializers.CharField()
    moment = serializers.CharField()
    empirical = serializers.IntegerField()
    predicted = serializers.FloatField(allow_null=True)
    residual = serializers.FloatField(allow_null=True)
    normalized = serializers.FloatField(allow_null=True)
    runtime_ms = serializers.IntegerField(min_value=0)


class CountRowSerializer(serializers.Serializer):
    x = serializers.IntegerField()
    h = serializers.IntegerField()
    family = serializers.CharField()
    count = serializers.IntegerField()
    predicted = serializers.FloatField(allow_null=True)
    restricted_count = serializers.IntegerField(allow_null=True)
    restricted_predicted = serializers.FloatField(allow_null=True)
    mean_big_omega = serializers.FloatField()
    mean_small_omega = serializers.FloatField(allow_null=True)
    runtime_ms = serializers.IntegerField(min_value=0)


class NormalOrderRowSerializer(serializers.Serializer):
    x = serializers.IntegerField()
    h = serializers.IntegerField()
    family = serializers.CharField()
    epsilon = serializers.FloatField()
    exceptions = serializers.IntegerField()
    eligible = serializers.IntegerField()
    fraction = serializers.FloatField(min_value=0.0, max_value=1.0)
    runtime_ms = serializers.IntegerField(min_value=0)


class CheckResultSerializer(serializers.Serializer):
    name = serializers.CharField()
    passed = serializers.BooleanField()
    detail = serializers.CharField(allow_blank=True)
