"""
Lecture des fichiers de configuration d'expérience.

Format plat ``clé=valeur`` (commentaires ``#``), lu avec python-dotenv. Les
clés reprennent les noms longs des options (``prime-bound`` ou
``prime_bound``) ; les options de la ligne de commande l'emportent.
"""

import logging
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

from dotenv import dotenv_values

from core.exceptions import InvalidParameterError

logger = logging.getLogger(__name__)

CONFIG_KEYS = (
    "monoid",
    "h",
    "family",
    "x",
    "prime_bound",
    "epsilon",
    "output",
    "seed",
    "kappa",
    "theta",
    "x_mode",
    "exclude",
    "workers",
    "no_timings",
)

MISSING_CONFIG_ERROR = "Fichier de configuration introuvable"


def _normalize_key(key: str) -> str:
    return key.strip().lstrip("-").replace("-", "_").lower()


def load_config_file(path: Union[str, Path]) -> Dict[str, str]:
    """
    Lit un fichier de configuration et normalise ses clés.

    Raises:
        InvalidParameterError: Fichier absent ou clé inconnue
    """
    path = Path(path)
    if not path.is_file():
        raise InvalidParameterError(f"{MISSING_CONFIG_ERROR}: {path}")

    values: Dict[str, str] = {}
    for raw_key, value in dotenv_values(path, encoding="utf-8").items():
        key = _normalize_key(raw_key)
        if key not in CONFIG_KEYS:
            raise InvalidParameterError(f"Clé inconnue dans {path}: {raw_key!r}")
        if value is not None:
            values[key] = value
    logger.debug(f"{len(values)} options lues depuis {path}")
    return values


def merge_options(
    file_values: Optional[Mapping[str, Any]], cli_options: Mapping[str, Any]
) -> Dict[str, Any]:
    """Fusionne fichier et ligne de commande ; une option fournie gagne toujours."""
    merged: Dict[str, Any] = dict(file_values or {})
    for key in CONFIG_KEYS:
        value = cli_options.get(key)
        # un drapeau absent (False) ne masque pas la valeur du fichier
        if value is None or (value is False and key in merged):
            continue
        merged[key] = value
    return merged
