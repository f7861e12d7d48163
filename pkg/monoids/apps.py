from django.apps import AppConfig


class MonoidsConfig(AppConfig):
    name = "monoids"
    verbose_name = "Monoïdes, spectres de normes et fonctions Ω / ω"
