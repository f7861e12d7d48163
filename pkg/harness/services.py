"""
Services du harnais d'expériences.

Ce module orchestre les autres applications : construction du spectre
demandé, dénombrements et tallies exacts, constantes, prédictions et suite
de vérification des identités exactes.
"""

import logging
import math
import time
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from django.conf import settings

from asymptotics.domain import Moment, Prediction
from asymptotics.services import MIN_PREDICTION_X, AsymptoticsService
from constants.domain import ConstantsBundle
from constants.services import ConstantsService
from constants.utils.geometric import geom_sum_k, geom_sum_k2
from core.parallel import ordered_map
from enumeration.domain import Family, SetSelector
from enumeration.services import EnumerationService
from harness.domain import (
    CheckResult,
    CountRow,
    ExperimentConfig,
    MonoidKind,
    NormalOrderRow,
    ReportRow,
)
from monoids.domain import NormSpectrum, SpectrumKind
from monoids.services import SpectrumService
from monoids.utils.arithmetic import floor_log_power, loglog

logger = logging.getLogger(__name__)

MOMENT_ORDERS = ((Moment.COUNT, 0), (Moment.M1, 1), (Moment.M2, 2))
FAMILY_ORDER = (Family.H_FREE, Family.H_FULL)

# Seuils des vérifications de propriétés (tolérances du harnais)
GEOMETRIC_TOLERANCE = 1e-12
RECOMPOSITION_TOLERANCE = 1e-12
PRIME_COUNT_RATIO_BOUND = 1.3
PRIME_COUNT_MIN_X = 100
LOG_SQ_WEIGHTED_BOUND = 10.0
MERTENS_DRIFT_MIN_X = 32
EXCLUSION_CANDIDATES = 10


def _elapsed_ms(start: float, config: ExperimentConfig) -> int:
    if not config.timings:
        return 0
    return int((time.perf_counter() - start) * 1000)


class ExperimentService:
    """
    Service d'exécution des commandes du harnais.

    Toutes les méthodes sont déterministes pour une configuration donnée,
    à l'exception de la colonne ``runtime_ms``.
    """

    @staticmethod
    def truncation_norm(config: ExperimentConfig) -> int:
        """Borne P des produits eulériens (option ou valeur par défaut)."""
        if config.prime_bound is not None:
            return config.prime_bound
        return settings.MONOID_LAB["DEFAULT_PRIME_BOUND"]

    @staticmethod
    def build_spectrum(
        config: ExperimentConfig,
        family: Optional[Family] = None,
        with_constants: bool = False,
        cover_x: bool = True,
    ) -> NormSpectrum:
        """
        Spectre du monoïde configuré, complet jusqu'à la borne nécessaire.

        Args:
            config: Configuration validée
            family: Famille déterminant la borne de complétude (par défaut
                celle de la configuration)
            with_constants: Le spectre doit aussi couvrir la troncature P
            cover_x: Faux quand seules les constantes sont utiles
        """
        bound = max(2, config.required_bound(family)) if cover_x else 2
        if config.prime_bound is not None:
            bound = max(bound, config.prime_bound)
        if with_constants:
            bound = max(bound, ExperimentService.truncation_norm(config))

        monoid = config.monoid
        if monoid.kind is MonoidKind.INTEGERS:
            spectrum = SpectrumService.build_integer_spectrum(bound)
        elif monoid.kind is MonoidKind.POLY:
            spectrum = SpectrumService.build_polynomial_spectrum_upto(
                monoid.q, max(bound, monoid.q)
            )
        elif monoid.is_empty_synthetic:
            spectrum = SpectrumService.load_synthetic_spectrum([], config.params)
        else:
            spectrum = SpectrumService.load_synthetic_file(monoid.path, config.params)

        logger.info(
            f"Spectre {spectrum.label}: {len(spectrum)} premiers "
            f"(borne {spectrum.norm_bound or 'exhaustive'})"
        )
        return spectrum

    @staticmethod
    def constants(
        config: ExperimentConfig, spectrum: Optional[NormSpectrum] = None
    ) -> ConstantsBundle:
        """Bundle des constantes pour h et le monoïde configurés."""
        if spectrum is None:
            spectrum = ExperimentService.build_spectrum(config, with_constants=True)
        return ConstantsService.build_bundle(
            config.h, spectrum, ExperimentService.truncation_norm(config)
        )

    @staticmethod
    def _predict(
        x: int,
        config: ExperimentConfig,
        family: Family,
        moment: Moment,
        bundle: ConstantsBundle,
        spectrum: NormSpectrum,
    ):
        if x < MIN_PREDICTION_X:
            return None
        return AsymptoticsService.predict(
            x, config.h, family, moment, bundle, spectrum.params
        )

    @staticmethod
    def _moment_point(
        spectrum: NormSpectrum,
        config: ExperimentConfig,
        bundle: ConstantsBundle,
        family: Family,
        x: int,
        workers: Optional[int],
    ) -> List[ReportRow]:
        start = time.perf_counter()
        sel = SetSelector(family, config.h)
        tally = EnumerationService.tally_selected(spectrum, x, sel, workers=workers)
        results = []
        for moment, order in MOMENT_ORDERS:
            empirical = tally.moment(order)
            prediction = ExperimentService._predict(
                x, config, family, moment, bundle, spectrum
            )
            if prediction is None:
                results.append((moment, empirical, None, None, None))
                continue
            residual, normalized = AsymptoticsService.residual_report(
                empirical, prediction
            )
            results.append(
                (moment, empirical, prediction.main_value, residual, normalized)
            )

        runtime_ms = _elapsed_ms(start, config)
        return [
            ReportRow(
                x=x,
                h=config.h,
                family=family.value,
                moment=moment.value,
                empirical=empirical,
                predicted=predicted,
                residual=residual,
                normalized=normalized,
                runtime_ms=runtime_ms,
            )
            for moment, empirical, predicted, residual, normalized in results
        ]

    @staticmethod
    def moment_rows(config: ExperimentConfig) -> List[ReportRow]:
        """Effectif, ΣΩ et ΣΩ² exacts et prédits pour chaque x de la configuration."""
        spectrum = ExperimentService.build_spectrum(config, with_constants=True)
        bundle = ExperimentService.constants(config, spectrum)
        rows: List[ReportRow] = []
        for x in config.x_list:
            rows.extend(
                ExperimentService._moment_point(
                    spectrum, config, bundle, config.family, x, config.workers
                )
            )
            logger.debug(f"Moments {config.family.value} x={x} terminés")
        return rows

    @staticmethod
    def predictions(config: ExperimentConfig) -> List[Prediction]:
        """
        Termes principaux détaillés (effectif, m1, m2) pour chaque x >= 16.

        Aucun dénombrement : le spectre ne couvre que la troncature P.
        """
        spectrum = ExperimentService.build_spectrum(
            config, with_constants=True, cover_x=False
        )
        bundle = ExperimentService.constants(config, spectrum)
        predictions = []
        for x in config.x_list:
            for moment, _ in MOMENT_ORDERS:
                prediction = ExperimentService._predict(
                    x, config, config.family, moment, bundle, spectrum
                )
                if prediction is not None:
                    predictions.append(prediction)
        return predictions

    @staticmethod
    def sweep_rows(config: ExperimentConfig) -> List[ReportRow]:
        """
        Balayage des deux familles sur x_list.

        Chaque point (famille, x) est indépendant ; les points sont répartis
        sur le pool de threads et les lignes triées par x.
        """
        spectrum = ExperimentService.build_spectrum(
            config, Family.H_FREE, with_constants=True
        )
        bundle = ExperimentService.constants(config, spectrum)
        points = [(family, x) for x in config.x_list for family in FAMILY_ORDER]

        def run(point: Tuple[Family, int]) -> List[ReportRow]:
            family, x = point
            return ExperimentService._moment_point(spectrum, config, bundle, family, x, 1)

        parts = ordered_map(run, points, config.workers)
        rows = [row for part in parts for row in part]
        family_rank = {f.value: i for i, f in enumerate(FAMILY_ORDER)}
        moment_rank = {m.value: order for m, order in MOMENT_ORDERS}
        rows.sort(key=lambda r: (r.x, family_rank[r.family], moment_rank[r.moment]))
        logger.info(f"Balayage de {len(points)} points terminé")
        return rows

    @staticmethod
    def count_rows(config: ExperimentConfig) -> List[CountRow]:
        """
        Dénombrements exacts et prédits, avec les premiers exclus s'il y en a.

        Les moyennes de Ω et ω portent sur l'ensemble non restreint.
        """
        spectrum = ExperimentService.build_spectrum(config, with_constants=True)
        bundle = ExperimentService.constants(config, spectrum)
        sel = SetSelector(config.family, config.h)
        restricted = sel.excluding(*config.excluded) if config.excluded else None
        if restricted is not None:
            restricted.validate_against(spectrum)
        excluded_norms = [spectrum.slot(i).norm for i in config.excluded]

        rows: List[CountRow] = []
        for x in config.x_list:
            start = time.perf_counter()
            tally = EnumerationService.tally_selected(
                spectrum, x, sel, workers=config.workers, with_omega=True
            )
            prediction = ExperimentService._predict(
                x, config, config.family, Moment.COUNT, bundle, spectrum
            )
            restricted_count = restricted_predicted = None
            if restricted is not None:
                restricted_count = EnumerationService.count_selected(spectrum, x, restricted)
                if x >= MIN_PREDICTION_X:
                    restricted_predicted = AsymptoticsService.predict_restricted_count(
                        x, config.h, config.family, excluded_norms, bundle, spectrum.params
                    ).main_value

            small_omega = None
            if tally.omega_histogram is not None:
                small_omega = (
                    sum(w * n for w, n in tally.omega_histogram.items()) / tally.count
                )
            rows.append(
                CountRow(
                    x=x,
                    h=config.h,
                    family=config.family.value,
                    count=tally.count,
                    predicted=prediction.main_value if prediction else None,
                    restricted_count=restricted_count,
                    restricted_predicted=restricted_predicted,
                    mean_big_omega=tally.sum_omega / tally.count,
                    mean_small_omega=small_omega,
                    runtime_ms=_elapsed_ms(start, config),
                )
            )
        return rows

    @staticmethod
    def normal_order_rows(config: ExperimentConfig) -> List[NormalOrderRow]:
        """Fraction des éléments violant l'ordre normal, pour chaque x."""
        spectrum = ExperimentService.build_spectrum(config)
        sel = SetSelector(config.family, config.h)
        rows: List[NormalOrderRow] = []
        for x in config.x_list:
            start = time.perf_counter()
            exceptions, eligible = EnumerationService.normal_order_exceptions(
                spectrum, x, sel, config.epsilon
            )
            rows.append(
                NormalOrderRow(
                    x=x,
                    h=config.h,
                    family=config.family.value,
                    epsilon=config.epsilon,
                    exceptions=exceptions,
                    eligible=eligible,
                    fraction=exceptions / eligible if eligible else 0.0,
                    runtime_ms=_elapsed_ms(start, config),
                )
            )
        return rows

    @staticmethod
    def verify(config: ExperimentConfig, inject_fault: bool = False) -> List[CheckResult]:
        """
        Suite de vérification des identités exactes et des propriétés.

        Args:
            config: Configuration (la graine fixe les cas aléatoires)
            inject_fault: Décale le tally d'une unité pour vérifier que le
                harnais détecte l'écart (usage réservé aux tests)

        Returns:
            List[CheckResult]: Un résultat par vérification, dans un ordre fixe
        """
        rng = np.random.default_rng(config.seed)
        spectrum = ExperimentService.build_spectrum(
            config, Family.H_FREE, with_constants=True
        )
        checks: List[CheckResult] = []
        checks.extend(_decomposition_checks(spectrum, config, inject_fault))
        checks.append(_geometric_check(rng, settings.MONOID_LAB["VERIFY_CASES"]))
        checks.append(
            _recomposition_check(ExperimentService.constants(config, spectrum))
        )
        checks.extend(_exclusion_checks(spectrum, config, rng))
        if spectrum.kind is SpectrumKind.POLYNOMIALS:
            checks.extend(_polynomial_checks(spectrum, config))
        if spectrum.kind is SpectrumKind.INTEGERS:
            checks.extend(_prime_sum_checks(spectrum, config))

        failed = [c.name for c in checks if not c.passed]
        if failed:
            logger.error(f"{len(failed)} vérification(s) en échec: {', '.join(failed)}")
        else:
            logger.info(f"{len(checks)} vérifications réussies")
        return checks


def _decomposition_checks(
    spectrum: NormSpectrum, config: ExperimentConfig, inject_fault: bool
) -> List[CheckResult]:
    results = []
    for family in FAMILY_ORDER:
        sel = SetSelector(family, config.h)
        for x in config.x_list:
            tally = EnumerationService.tally_selected(spectrum, x, sel, workers=config.workers)
            for order in (1, 2):
                direct = tally.moment(order) + (1 if inject_fault else 0)
                decomposed = EnumerationService.decomposition_moment(spectrum, x, sel, order)
                results.append(
                    CheckResult(
                        name=f"decomposition[{family.value},h={config.h},x={x},ordre={order}]",
                        passed=direct == decomposed,
                        detail=f"tally={direct} décomposition={decomposed}",
                    )
                )
    return results


def _geometric_check(rng: np.random.Generator, cases: int) -> CheckResult:
    worst = 0.0
    for _ in range(cases):
        a = float(rng.uniform(0.05, 0.9))
        h = int(rng.integers(2, 11))
        r = h + int(rng.integers(0, 60))
        direct_k = math.fsum(k * a**k for k in range(h, r + 1))
        direct_k2 = math.fsum(k * k * a**k for k in range(h, r + 1))
        for closed, direct in ((geom_sum_k(a, h, r), direct_k), (geom_sum_k2(a, h, r), direct_k2)):
            worst = max(worst, abs(closed - direct) / max(1.0, abs(direct)))
    return CheckResult(
        name="geometric_closed_forms",
        passed=worst <= GEOMETRIC_TOLERANCE,
        detail=f"{cases} cas, écart relatif max {worst:.3e}",
    )


def _recomposition_check(bundle: ConstantsBundle) -> CheckResult:
    residuals = bundle.recomposition_residuals()
    worst = max(residuals.values())
    return CheckResult(
        name="bundle_recomposition",
        passed=worst <= RECOMPOSITION_TOLERANCE,
        detail=", ".join(f"{name}: {value:.3e}" for name, value in sorted(residuals.items())),
    )


def _exclusion_checks(
    spectrum: NormSpectrum, config: ExperimentConfig, rng: np.random.Generator
) -> List[CheckResult]:
    # exclure des premiers ne peut que diminuer l'effectif
    results = []
    for family in FAMILY_ORDER:
        sel = SetSelector(family, config.h)
        for x in config.x_list:
            available = min(EXCLUSION_CANDIDATES, spectrum.count_upto(x))
            chosen = sorted(rng.permutation(available)[:2].tolist()) if available else []
            counts = [EnumerationService.count_selected(spectrum, x, sel)]
            for size in range(1, len(chosen) + 1):
                counts.append(
                    EnumerationService.count_selected(spectrum, x, sel.excluding(*chosen[:size]))
                )
            results.append(
                CheckResult(
                    name=f"exclusion_monotonicity[{family.value},x={x}]",
                    passed=all(a >= b for a, b in zip(counts, counts[1:])),
                    detail=f"exclus={chosen} effectifs={counts}",
                )
            )
    return results


def _polynomial_checks(spectrum: NormSpectrum, config: ExperimentConfig) -> List[CheckResult]:
    q = spectrum.q
    top = floor_log_power(config.max_x, q)
    counts = [m for _, m in spectrum.records]
    results = []
    for n in range(1, min(top, len(counts)) + 1):
        gauss = SpectrumService.gauss_sum(q, n, counts)
        results.append(
            CheckResult(
                name=f"gauss_identity[n={n}]",
                passed=gauss == q**n,
                detail=f"Σ dπ(d)={gauss} q^n={q ** n}",
            )
        )
    for n in range(top + 1):
        exact = EnumerationService.count_all(spectrum, q**n)
        expected = SpectrumService.polynomial_element_count(q, n)
        results.append(
            CheckResult(
                name=f"polynomial_count[n={n}]",
                passed=exact == expected,
                detail=f"M(q^n)={exact} attendu={expected}",
            )
        )
    return results


def _bounded_check(
    name: str, x_values: Sequence[int], value_of: Callable[[int], float], bound: float
) -> List[CheckResult]:
    results = []
    for x in x_values:
        value = value_of(x)
        results.append(
            CheckResult(name=f"{name}[x={x}]", passed=value <= bound, detail=f"{value:.6f} <= {bound}")
        )
    return results


def _prime_sum_checks(spectrum: NormSpectrum, config: ExperimentConfig) -> List[CheckResult]:
    def prime_count_ratio(x: int) -> float:
        return EnumerationService.prime_count(spectrum, x) * math.log(x) / x

    def mertens_drift(x: int) -> float:
        # écart de Σ 1/p - log log x entre x/2 et x, rapporté à 1/log x
        def partial(y: int) -> float:
            return EnumerationService.prime_sum_empirical(spectrum, y, "mertens") - loglog(y)

        return abs(partial(x) - partial(x // 2)) * math.log(x)

    def log_sq_weighted(x: int) -> float:
        return EnumerationService.prime_sum_empirical(spectrum, x, "log_sq_weighted") * math.log(x)

    x_list = config.x_list
    return (
        _bounded_check(
            "prime_count_bound",
            [x for x in x_list if x >= PRIME_COUNT_MIN_X],
            prime_count_ratio,
            PRIME_COUNT_RATIO_BOUND,
        )
        + _bounded_check(
            "mertens_drift",
            [x for x in x_list if x >= MERTENS_DRIFT_MIN_X],
            mertens_drift,
            1.0,
        )
        + _bounded_check(
            "log_sq_weighted_bound",
            [x for x in x_list if x >= MIN_PREDICTION_X],
            log_sq_weighted,
            LOG_SQ_WEIGHTED_BOUND,
        )
    )
