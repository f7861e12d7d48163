"""
Serializers pour l'exportation des constantes.

Chaque constante est exportée sous la forme
``{name, value, truncation_norm, tail_estimate}`` dans un ordre fixe.
"""

from rest_framework import serializers

NAME_HELP_TEXT = "Nom court de la constante"
TAIL_HELP_TEXT = "Estimation de l'erreur de troncature (>= 0)"


class EulerValueSerializer(serializers.Serializer):
    """Représentation d'une valeur tronquée."""

    name = serializers.CharField(help_text=NAME_HELP_TEXT)
    value = serializers.FloatField()
    truncation_norm = serializers.IntegerField(allow_null=True)
    tail_estimate = serializers.FloatField(min_value=0.0, help_text=TAIL_HELP_TEXT)


class ConstantsBundleSerializer(serializers.Serializer):
    """
    Représentation d'un ConstantsBundle.

    Les constantes sont listées dans l'ordre A, B, zeta_h, gamma_h, C3, C3p,
    C4, D3, D3p, D4 ; le nom exporté est celui de l'attribut du bundle.
    """

    h = serializers.IntegerField()
    x_mode = serializers.SerializerMethodField()
    rigorous_tails = serializers.BooleanField()
    constants = serializers.SerializerMethodField()

    def get_x_mode(self, bundle) -> str:
        return bundle.x_mode.label

    def get_constants(self, bundle) -> list:
        rows = []
        for name, entry in bundle.entries():
            data = EulerValueSerializer(entry).data
            data["name"] = name
            rows.append(data)
        return rows
