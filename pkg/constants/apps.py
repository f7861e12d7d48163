from django.apps import AppConfig


class ConstantsConfig(AppConfig):
    name = "constants"
    verbose_name = "Constantes (produits eulériens et sommes sur les premiers)"
