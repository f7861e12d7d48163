from django.apps import AppConfig


class AsymptoticsConfig(AppConfig):
    name = "asymptotics"
    verbose_name = "Termes principaux et classes d'erreur"
