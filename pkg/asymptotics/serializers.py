"""
Serializers pour l'exportation des prédictions.
"""

from rest_framework import serializers


class ErrorClassSerializer(serializers.Serializer):
    """
    Classe d'erreur ; l'exposant est exporté en rationnel exact (``"1/2"``).
    """

    exponent = serializers.SerializerMethodField()
    log_power = serializers.IntegerField()
    family = serializers.CharField(source="family.value")
    inverse_log = serializers.BooleanField()
    loglog_power = serializers.IntegerField()

    def get_exponent(self, error_class) -> str:
        return str(error_class.exponent)


class PredictionTermSerializer(serializers.Serializer):
    label = serializers.CharField()
    value = serializers.FloatField()


class PredictionSerializer(serializers.Serializer):
    """Représentation {x, h, family, moment, main_value, terms[], error_class}."""

    x = serializers.IntegerField()
    h = serializers.IntegerField()
    family = serializers.CharField(source="family.value")
    moment = serializers.CharField(source="moment.value")
    main_value = serializers.FloatField()
    terms = serializers.SerializerMethodField()
    error_class = ErrorClassSerializer()

    def get_terms(self, prediction) -> list:
        return [
            PredictionTermSerializer({"label": label, "value": value}).data
            for label, value in prediction.terms
        ]
