"""
Exceptions métier du laboratoire de monoïdes.

Toutes les erreurs du domaine dérivent de ``MonoidLabError``, elle-même
sous-classe de ``ValueError``.
"""

# Constantes pour les messages d'erreur
H_TOO_SMALL_ERROR = "h doit être un entier supérieur ou égal à 2"
X_TOO_SMALL_ERROR = "x doit être un entier supérieur ou égal à 1"
EPSILON_ERROR = "epsilon doit être strictement positif"
ORDER_ERROR = "L'ordre du moment doit valoir 1 ou 2"
UNKNOWN_SLOT_ERROR = "Identifiant de premier inconnu dans la factorisation"
NORM_OVERFLOW_ERROR = "La norme dépasse l'intervalle entier non signé 128 bits"
INSUFFICIENT_SPECTRUM_ERROR = "Spectre incomplet pour la borne demandée"
DIVERGENCE_ERROR = "Le produit eulérien diverge pour s <= 1"
LOGLOG_DOMAIN_ERROR = "log log x n'est défini que pour x > 1"
MODE_MISMATCH_ERROR = "Constantes calculées pour des paramètres différents"


class MonoidLabError(ValueError):
    """Erreur de base du projet."""


class InvalidParameterError(MonoidLabError):
    """Paramètre hors domaine (h < 2, epsilon <= 0, x < 1, ordre inconnu...)."""


class InvalidFactorizationError(MonoidLabError):
    """Factorisation mal formée ou incompatible avec le spectre."""


class NormOverflowError(MonoidLabError):
    """Norme au-delà de 2**128 - 1."""


class EmptySpectrumError(MonoidLabError):
    """Spectre entier demandé avec une borne inférieure à 2."""


class SpectrumFormatError(MonoidLabError):
    """Enregistrements synthétiques mal formés."""


class InsufficientSpectrumError(MonoidLabError):
    """Le spectre ne couvre pas toutes les normes nécessaires."""


class DivergenceError(MonoidLabError):
    """Produit ou série divergente."""


class DomainError(MonoidLabError):
    """Argument hors du domaine d'une fonction réelle."""


class ModeMismatchError(MonoidLabError):
    """Composants calculés pour des h ou des ensembles X différents."""
