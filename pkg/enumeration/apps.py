from django.apps import AppConfig


class EnumerationConfig(AppConfig):
    name = "enumeration"
    verbose_name = "Dénombrement exact et moments de Ω"
