"""
Services de dénombrement pour les monoïdes.

Ce module implémente le dénombrement exact des éléments h-libres et
h-pleins, les moments de Ω, les identités de décomposition
𝔪 = k𝔭 + 𝔶 (deuxième chemin de calcul des moments), les exceptions aux
ordres normaux et les sommes empiriques sur les premiers.
"""

import logging
import math
from functools import reduce
from typing import Dict, Optional, Tuple, Union

import numpy as np
from django.conf import settings

from core.exceptions import (
    EPSILON_ERROR,
    ORDER_ERROR,
    X_TOO_SMALL_ERROR,
    InvalidParameterError,
)
from core.parallel import ordered_map, resolve_workers
from enumeration.domain import (
    ExponentPolicy,
    Family,
    MomentTally,
    PrimeSumKind,
    SetSelector,
)
from enumeration.utils.degree_series import degree_multiplicities, omega_table
from enumeration.utils.integer_sieve import h_free_histograms, h_free_normal_order
from enumeration.utils.walker import NormWalker
from monoids.domain import NormSpectrum, SpectrumKind
from monoids.utils.arithmetic import floor_log_power, loglog

logger = logging.getLogger(__name__)

METHOD_AUTO = "auto"
METHOD_WALKER = "walker"
METHOD_SIEVE = "sieve"
METHOD_SERIES = "series"
METHODS = (METHOD_AUTO, METHOD_WALKER, METHOD_SIEVE, METHOD_SERIES)

# Tranches unitaires par worker pour les premiers de petite norme
HEAD_SLOTS_PER_WORKER = 8


def _validate_x(x: int) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or x < 1:
        raise InvalidParameterError(f"{X_TOO_SMALL_ERROR} (reçu {x!r})")
    return x


def _prepare(s: NormSpectrum, x: int, sel: SetSelector) -> None:
    _validate_x(x)
    sel.validate_against(s)
    s.require_cover(sel.completeness_bound(x))


def _sieve_eligible(s: NormSpectrum, sel: SetSelector) -> bool:
    return (
        s.kind is SpectrumKind.INTEGERS
        and sel.family is Family.H_FREE
        and not sel.excluded_slots
    )


def _series_eligible(s: NormSpectrum) -> bool:
    return s.kind is SpectrumKind.POLYNOMIALS and s.q is not None


def _choose_method(
    s: NormSpectrum, sel: SetSelector, requested: str, with_omega: bool = False
) -> str:
    if requested not in METHODS:
        raise InvalidParameterError(f"Méthode inconnue: {requested!r}")
    sieve_ok = _sieve_eligible(s, sel)
    series_ok = _series_eligible(s) and not with_omega
    if requested == METHOD_SIEVE and not sieve_ok:
        raise InvalidParameterError(
            "Le crible n'est disponible que pour les entiers h-libres sans exclusion"
        )
    if requested == METHOD_SERIES and not series_ok:
        raise InvalidParameterError(
            "Les séries génératrices exigent un spectre de polynômes (sans ω)"
        )
    if requested != METHOD_AUTO:
        return requested
    if sieve_ok:
        return METHOD_SIEVE
    if series_ok:
        return METHOD_SERIES
    return METHOD_WALKER


def _degree_table(
    s: NormSpectrum, x: int, policy: ExponentPolicy, excluded=()
) -> np.ndarray:
    max_degree = floor_log_power(x, s.q)
    records = s.records[: s.distinct_upto(x)]
    excluded_norms = [s.slot(i).norm for i in excluded]
    multiplicities = degree_multiplicities(records, s.q, excluded_norms)
    return omega_table(multiplicities, max_degree, policy)


def _as_histogram(values) -> Dict[int, int]:
    return {k: int(v) for k, v in enumerate(values) if v}


class EnumerationService:
    """
    Service de dénombrement exact.

    Trois chemins indépendants coexistent : le parcours récursif (toujours
    disponible), le crible du plus petit facteur (entiers h-libres) et les
    séries génératrices par degré (polynômes sur F_q).
    """

    @staticmethod
    def count_all(s: NormSpectrum, x: int) -> int:
        """
        Nombre M(x) d'éléments de norme <= x, élément neutre compris.

        Raises:
            InsufficientSpectrumError: Si le spectre ne couvre pas x
        """
        _validate_x(x)
        s.require_cover(x)
        if s.kind is SpectrumKind.INTEGERS:
            return x
        if _series_eligible(s):
            return int(_degree_table(s, x, ExponentPolicy()).sum())
        return NormWalker(s.norms_upto(x), ExponentPolicy()).count(x)

    @staticmethod
    def count_selected(
        s: NormSpectrum, x: int, sel: SetSelector, method: str = METHOD_AUTO
    ) -> int:
        """
        Nombre d'éléments de la famille sélectionnée de norme <= x.

        Args:
            s: Spectre du monoïde
            x: Borne sur la norme
            sel: Famille, h et premiers exclus
            method: Chemin de calcul imposé (``auto`` par défaut)

        Returns:
            int: Effectif exact, élément neutre compris
        """
        _prepare(s, x, sel)
        chosen = _choose_method(s, sel, method)
        if chosen == METHOD_SIEVE:
            hist, _ = h_free_histograms(x, sel.h)
            return int(hist.sum())
        if chosen == METHOD_SERIES:
            return int(_degree_table(s, x, sel.policy, sel.excluded_slots).sum())
        walker = NormWalker(s.norms_upto(x), sel.policy, sel.excluded_slots)
        return walker.count(x)

    @staticmethod
    def tally_selected(
        s: NormSpectrum,
        x: int,
        sel: SetSelector,
        workers: Optional[int] = None,
        norm_floor: int = 0,
        with_omega: bool = False,
        method: str = METHOD_AUTO,
    ) -> MomentTally:
        """
        Effectif, ΣΩ, ΣΩ² et histogramme sur les éléments sélectionnés.

        Args:
            s: Spectre du monoïde
            x: Borne supérieure sur la norme
            sel: Famille et h
            workers: Nombre de workers pour le parcours récursif découpé
                par premier de plus petit indice (plafonné par la config)
            norm_floor: Seuls les éléments de norme > norm_floor sont comptés
            with_omega: Remplit aussi l'histogramme de ω
            method: Chemin de calcul imposé

        Returns:
            MomentTally: Tally exact
        """
        _prepare(s, x, sel)
        if norm_floor < 0:
            raise InvalidParameterError(f"norm_floor doit être >= 0 ({norm_floor})")
        chosen = _choose_method(s, sel, method, with_omega)
        logger.debug(
            f"Tally {sel.family.value} h={sel.h} x={x} sur {s.label} ({chosen})"
        )

        if chosen == METHOD_SIEVE:
            hist, omega_hist = h_free_histograms(x, sel.h, norm_floor, with_omega)
            return MomentTally.from_histogram(
                _as_histogram(hist),
                _as_histogram(omega_hist) if omega_hist is not None else None,
            )

        if chosen == METHOD_SERIES:
            table = _degree_table(s, x, sel.policy, sel.excluded_slots)
            first_degree = floor_log_power(norm_floor, s.q) + 1 if norm_floor else 0
            return MomentTally.from_histogram(
                _as_histogram(table[first_degree:].sum(axis=0))
            )

        return EnumerationService._walker_tally(
            s, x, sel, workers, norm_floor, with_omega
        )

    @staticmethod
    def _walker_tally(
        s: NormSpectrum,
        x: int,
        sel: SetSelector,
        workers: Optional[int],
        norm_floor: int,
        with_omega: bool,
    ) -> MomentTally:
        walker = NormWalker(s.norms_upto(x), sel.policy, sel.excluded_slots)
        top = s.count_upto(x)
        effective = resolve_workers(workers)
        if effective == 1:
            ranges = [(0, top)]
        else:
            head = min(top, HEAD_SLOTS_PER_WORKER * effective)
            ranges = [(i, i + 1) for i in range(head)]
            if head < top:
                ranges.append((head, top))
            ranges = ranges or [(0, 0)]

        def run(bounds: Tuple[int, int]) -> MomentTally:
            lo, hi = bounds
            hist, omega_hist = walker.histogram(
                x,
                norm_floor=norm_floor,
                start=lo,
                stop=hi,
                include_identity=lo == 0,
                with_omega=with_omega,
            )
            return MomentTally.from_histogram(
                _as_histogram(hist),
                _as_histogram(omega_hist) if omega_hist is not None else None,
            )

        parts = ordered_map(run, ranges, effective)
        return reduce(MomentTally.merge, parts)

    @staticmethod
    def decomposition_moment(
        s: NormSpectrum, x: int, sel: SetSelector, order: int
    ) -> int:
        """
        ΣΩ (ordre 1) ou ΣΩ² (ordre 2) via la décomposition 𝔪 = k𝔭 + 𝔶.

        Pour chaque premier 𝔭 et chaque exposant k admis, les éléments
        d'exposant exactement k en 𝔭 sont en bijection avec les éléments de
        norme <= ⌊x / N(𝔭)^k⌋ n'utilisant pas 𝔭. L'ordre 2 ajoute la somme
        diagonale des k² et la double somme Σ_{𝔭≠𝔮} k·l avec exclusion des
        deux premiers.

        Returns:
            int: Valeur exacte, à comparer au tally direct
        """
        _prepare(s, x, sel)
        if order not in (1, 2):
            raise InvalidParameterError(f"{ORDER_ERROR} (reçu {order!r})")

        norms = s.norms_upto(x)
        policy = sel.policy
        base_excluded = sel.excluded_slots
        cache: Dict[Tuple[int, Tuple[int, ...]], int] = {}

        def count(y: int, extra: Tuple[int, ...]) -> int:
            if y < 1:
                return 0
            # le résultat ne dépend que du multiensemble des normes restantes
            key = (y, tuple(sorted(norms[i] for i in extra)))
            value = cache.get(key)
            if value is None:
                walker = NormWalker(norms, policy, base_excluded.union(extra))
                value = walker.count(y)
                cache[key] = value
            return value

        def exponents(norm: int, bound: int):
            top = floor_log_power(bound, norm)
            if policy.maximum is not None:
                top = min(top, policy.maximum)
            return range(policy.minimum, top + 1)

        top_slot = s.count_upto(x)
        total = 0
        for i in range(top_slot):
            if i in base_excluded:
                continue
            n_i = norms[i]
            if n_i**policy.minimum > x:
                break
            for k in exponents(n_i, x):
                y_i = x // n_i**k
                weight = k if order == 1 else k * k
                total += weight * count(y_i, (i,))

                if order == 1:
                    continue
                # double somme hors diagonale, paires non ordonnées comptées deux fois
                for j in range(i + 1, s.count_upto(y_i)):
                    if j in base_excluded:
                        continue
                    n_j = norms[j]
                    if n_j**policy.minimum > y_i:
                        break
                    for l in exponents(n_j, y_i):
                        total += 2 * k * l * count(y_i // n_j**l, (i, j))

        logger.debug(
            f"Décomposition ordre {order} {sel.family.value} h={sel.h} x={x}: "
            f"{total} ({len(cache)} dénombrements distincts)"
        )
        return total

    @staticmethod
    def normal_order_exceptions(
        s: NormSpectrum,
        x: int,
        sel: SetSelector,
        epsilon: float,
        method: str = METHOD_AUTO,
    ) -> Tuple[int, int]:
        """
        Compte les éléments violant (1-ε)F <= Ω <= (1+ε)F.

        F vaut log log N(𝔪) (h-libres) ou h·log log N(𝔪) (h-pleins) ; seuls
        les éléments de norme > NORMAL_ORDER_CUTOFF sont éligibles.

        Returns:
            Tuple[int, int]: (exceptions, éligibles)
        """
        _prepare(s, x, sel)
        if not epsilon > 0:
            raise InvalidParameterError(f"{EPSILON_ERROR} (reçu {epsilon})")
        cutoff = settings.MONOID_LAB["NORMAL_ORDER_CUTOFF"]
        if x <= cutoff:
            return 0, 0

        scale = sel.h if sel.family is Family.H_FULL else 1
        lower, upper = 1 - epsilon, 1 + epsilon
        chosen = _choose_method(s, sel, method)

        if chosen == METHOD_SIEVE:
            return h_free_normal_order(x, sel.h, epsilon, cutoff)

        exceptions = 0
        eligible = 0
        if chosen == METHOD_SERIES:
            table = _degree_table(s, x, sel.policy, sel.excluded_slots)
            for degree in range(table.shape[0]):
                norm = s.q**degree
                if norm <= cutoff:
                    continue
                target = scale * loglog(norm)
                for w, amount in enumerate(table[degree]):
                    if amount:
                        eligible += int(amount)
                        if w < lower * target or w > upper * target:
                            exceptions += int(amount)
            return exceptions, eligible

        walker = NormWalker(s.norms_upto(x), sel.policy, sel.excluded_slots)
        for norm, big, _ in walker.elements(x):
            if norm <= cutoff:
                continue
            eligible += 1
            target = scale * loglog(norm)
            if big < lower * target or big > upper * target:
                exceptions += 1
        return exceptions, eligible

    @staticmethod
    def prime_count(s: NormSpectrum, x: int) -> int:
        """Π(x) : nombre de premiers de norme <= x."""
        _validate_x(x)
        s.require_cover(x)
        return s.count_upto(x)

    @staticmethod
    def prime_sum_empirical(
        s: NormSpectrum, x: int, kind: Union[PrimeSumKind, str]
    ) -> float:
        """
        Somme partielle exacte (en double précision) sur les premiers.

        Args:
            s: Spectre du monoïde
            x: Borne
            kind: Type de somme (``mertens``, ``recip_power(α)``,
                ``log_weighted``, ``loglog_weighted``, ``double_recip``,
                ``log_sq_weighted``, ``inv_log_power(k)``)

        Returns:
            float: Valeur de la somme
        """
        _validate_x(x)
        s.require_cover(x)
        if isinstance(kind, str):
            kind = PrimeSumKind.parse(kind)

        name = kind.name
        if name == "double_recip":
            return EnumerationService._double_reciprocal_sum(s, x)

        reach = s.distinct_upto(x)
        values = s.norm_values[:reach]
        weights = s.weight_values[:reach]

        if name == "mertens":
            return float(np.sum(weights / values))
        if name == "recip_power":
            return float(np.sum(weights * values**-kind.parameter))
        if name == "inv_log_power":
            return float(np.sum(weights * np.log(values) ** -kind.parameter))

        # sommes pondérées par log(x/N) : N(𝔭) <= x/2 ou x/q
        divisor = 2 if s.params.x_mode.is_rational else s.params.x_mode.q
        inner = s.distinct_upto(x // divisor)
        selected = values[:inner]
        weights = weights[:inner]
        ratio_log = np.log(x / selected)
        if name == "log_weighted":
            return float(np.sum(weights / (selected * ratio_log)))
        if name == "log_sq_weighted":
            return float(np.sum(weights / (selected * ratio_log**2)))
        return float(np.sum(weights * np.log(ratio_log) / selected))

    @staticmethod
    def _double_reciprocal_sum(s: NormSpectrum, x: int) -> float:
        # Σ_{N(𝔭)N(𝔮) <= x} = Σ_𝔭 (1/N(𝔭))·R(⌊x/N(𝔭)⌋), R somme cumulée des 1/N
        if s.is_empty:
            return 0.0
        reach = s.distinct_upto(x // s.distinct_norms[0])
        if reach == 0:
            return 0.0
        reciprocals = s.weight_values[:reach] / s.norm_values[:reach]
        cumulative = np.concatenate(([0.0], np.cumsum(reciprocals)))
        norms = np.asarray(s.distinct_norms[:reach], dtype=np.int64)
        positions = np.searchsorted(norms, x // norms, side="right")
        return float(math.fsum(reciprocals * cumulative[positions]))
