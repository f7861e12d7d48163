"""
Django settings for monoidlab project.

Le projet n'expose aucun endpoint HTTP : Django sert ici de socle pour la
configuration, le logging, les commandes de gestion et l'intégration pytest.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.1/ref/settings/
"""

import os
import sys
from pathlib import Path

import environ

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Initialize environ
env = environ.Env(
    DEBUG=(bool, False),
    SECRET_KEY=(str, "monoidlab-local-only"),
    MONOID_MOMENTS_THREADS=(int, 1),
    MONOID_DEFAULT_PRIME_BOUND=(int, 1_000_000),
    MONOID_DEFAULT_SEED=(int, 20240101),
    MONOID_VERIFY_CASES=(int, 1000),
    MONOID_LOG_DIR=(str, str(BASE_DIR / "logs")),
)

# Charger .env (UTF-8 attendu)
env_file = BASE_DIR / ".env"
if env_file.exists():
    try:
        environ.Env.read_env(env_file)
    except UnicodeDecodeError as e:
        raise RuntimeError(
            "Votre fichier .env doit être enregistré en UTF-8 (sans BOM). "
            "Ouvrez-le et réenregistrez-le en UTF-8, puis relancez."
        ) from e

SECRET_KEY = env("SECRET_KEY")

DEBUG = env("DEBUG")

ALLOWED_HOSTS: list[str] = []


# Application definition

THIRD_PARTY_APPS = [
    "rest_framework",
]

LOCAL_APPS = [
    "core",
    "monoids",
    "enumeration",
    "constants",
    "asymptotics",
    "harness",
]

INSTALLED_APPS = THIRD_PARTY_APPS + LOCAL_APPS

# Aucune persistance : les résultats ne vivent que dans les fichiers de sortie
DATABASES: dict = {}

LANGUAGE_CODE = "fr-fr"

TIME_ZONE = "Europe/Paris"

USE_I18N = True

USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

# Django REST Framework : uniquement les serializers et le rendu JSON
REST_FRAMEWORK = {
    "DEFAULT_RENDERER_CLASSES": [
        "rest_framework.renderers.JSONRenderer",
    ],
    "COERCE_DECIMAL_TO_STRING": False,
    # Sans django.contrib.auth : aucun utilisateur anonyme à construire
    "UNAUTHENTICATED_USER": None,
    "DEFAULT_AUTHENTICATION_CLASSES": [],
    "DEFAULT_PERMISSION_CLASSES": [],
}

# Configuration du laboratoire de monoïdes
MONOID_LAB = {
    # Plafond du parallélisme (balayages et tallies découpés)
    "THREADS": max(1, env("MONOID_MOMENTS_THREADS")),
    # Troncature P par défaut des produits eulériens
    "DEFAULT_PRIME_BOUND": env("MONOID_DEFAULT_PRIME_BOUND"),
    # Graine des vérifications randomisées
    "DEFAULT_SEED": env("MONOID_DEFAULT_SEED"),
    "VERIFY_CASES": env("MONOID_VERIFY_CASES"),
    # Tolérance du harnais sur les résidus normalisés (pas une constante mathématique)
    "RESIDUAL_TOLERANCE": 3.0,
    # Seuil d'éligibilité des ordres normaux : N(m) > ceil(e^e)
    "NORMAL_ORDER_CUTOFF": 16,
}

LOG_DIR = Path(env("MONOID_LOG_DIR"))

# Logging Configuration
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{levelname} {asctime} {module} {process:d} {thread:d} {message}",
            "style": "{",
        },
        "simple": {
            "format": "{levelname} {message}",
            "style": "{",
        },
    },
    "handlers": {
        "file": {
            "level": "INFO",
            "class": "logging.FileHandler",
            "filename": LOG_DIR / "monoidlab.log",
            "formatter": "verbose",
        },
        "console": {
            "level": "WARNING",
            "class": "logging.StreamHandler",
            "formatter": "simple",
        },
    },
    "root": {
        "handlers": ["console"],
        "level": "INFO",
    },
    "loggers": {
        app: {
            "handlers": ["file", "console"],
            "level": "DEBUG" if DEBUG else "INFO",
            "propagate": False,
        }
        for app in ["monoidlab"] + LOCAL_APPS
    },
}

# Create logs directory if it doesn't exist
os.makedirs(LOG_DIR, exist_ok=True)

# Configuration spécifique pour les tests
if "test" in sys.argv or "pytest" in sys.modules:
    # Un seul worker : résultats identiques quel que soit l'environnement
    MONOID_LAB["THREADS"] = 1

    # Désactiver le logging pour les tests
    LOGGING = {
        "version": 1,
        "disable_existing_loggers": False,
        "handlers": {
            "null": {
                "class": "logging.NullHandler",
            },
        },
        "root": {
            "handlers": ["null"],
        },
    }
