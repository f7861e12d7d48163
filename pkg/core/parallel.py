"""
Exécution parallèle déterministe.

Les tâches sont soumises à un pool de threads plafonné par
``settings.MONOID_LAB["THREADS"]`` ; les résultats sont toujours rendus dans
l'ordre des entrées, quel que soit l'ordre d'achèvement.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from django.conf import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def thread_cap() -> int:
    """Retourne le nombre maximal de threads autorisé (toujours >= 1)."""
    return max(1, int(settings.MONOID_LAB.get("THREADS", 1)))


def resolve_workers(requested: Optional[int]) -> int:
    """
    Borne un nombre de workers demandé par le plafond configuré.

    Args:
        requested: Nombre souhaité, ou None pour utiliser le plafond

    Returns:
        int: Nombre effectif de workers
    """
    cap = thread_cap()
    if requested is None:
        return cap
    return max(1, min(int(requested), cap))


def ordered_map(
    func: Callable[[T], R], items: Iterable[T], workers: Optional[int] = None
) -> List[R]:
    """
    Applique ``func`` à chaque élément, en parallèle si possible.

    Args:
        func: Fonction pure à appliquer
        items: Entrées
        workers: Nombre de workers souhaité (plafonné)

    Returns:
        List[R]: Résultats dans l'ordre des entrées
    """
    items = list(items)
    effective = min(resolve_workers(workers), max(1, len(items)))

    if effective == 1:
        return [func(item) for item in items]

    logger.debug(f"Exécution de {len(items)} tâches sur {effective} threads")
    with ThreadPoolExecutor(max_workers=effective) as pool:
        return list(pool.map(func, items))
