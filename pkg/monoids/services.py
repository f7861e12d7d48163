"""
Services de construction des spectres de normes.

Ce module implémente la construction des trois familles de monoïdes
supportées : entiers naturels, polynômes unitaires sur F_q et spectres
synthétiques lus depuis un fichier ``<norme> <multiplicité>``.
"""

import logging
from functools import lru_cache
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from sympy import divisors, factorint

from core.exceptions import (
    EmptySpectrumError,
    InvalidFactorizationError,
    InvalidParameterError,
    SpectrumFormatError,
)
from monoids.domain import (
    Factorization,
    MonoidParams,
    NormSpectrum,
    SpectrumKind,
    XMode,
)
from monoids.utils.arithmetic import floor_log_power
from monoids.utils.sieve import (
    irreducible_count,
    prime_power_decomposition,
    prime_sieve,
)

logger = logging.getLogger(__name__)

# Constantes pour les messages d'erreur
EMPTY_INTEGER_SPECTRUM_ERROR = "La borne du spectre entier doit être >= 2"
NOT_PRIME_POWER_ERROR = "q doit être une puissance d'un nombre premier"
UNSORTED_RECORDS_ERROR = "Les normes doivent être strictement croissantes"

Record = Tuple[int, int]


@lru_cache(maxsize=8)
def _integer_spectrum(norm_bound: int) -> NormSpectrum:
    primes = prime_sieve(norm_bound)
    return NormSpectrum.from_norms(
        primes.tolist(),
        kind=SpectrumKind.INTEGERS,
        params=MonoidParams(kappa=1.0, theta=0, x_mode=XMode.rational()),
        norm_bound=norm_bound,
    )


class SpectrumService:
    """
    Service de construction des spectres.

    Toutes les méthodes retournent des objets immuables ; les spectres
    entiers sont mis en cache par borne.
    """

    @staticmethod
    def build_integer_spectrum(norm_bound: int) -> NormSpectrum:
        """
        Construit le spectre de ℕ : les premiers rationnels <= norm_bound.

        Args:
            norm_bound: Borne de complétude (>= 2)

        Returns:
            NormSpectrum: Spectre avec κ = 1, θ = 0, X = ℚ

        Raises:
            EmptySpectrumError: Si norm_bound < 2
        """
        if norm_bound < 2:
            raise EmptySpectrumError(f"{EMPTY_INTEGER_SPECTRUM_ERROR} ({norm_bound})")
        spectrum = _integer_spectrum(int(norm_bound))
        logger.debug(f"Spectre entier: {len(spectrum)} premiers <= {norm_bound}")
        return spectrum

    @staticmethod
    def build_polynomial_spectrum(q: int, max_degree: int) -> NormSpectrum:
        """
        Construit le spectre des polynômes unitaires de F_q[x].

        Pour chaque degré d <= max_degree, π_q(d) premiers de norme q^d.
        Le spectre est complet jusqu'à q^{max_degree+1} - 1 puisqu'aucune
        norme première n'existe strictement entre deux puissances de q.

        Raises:
            InvalidParameterError: Si q n'est pas une puissance de premier
                ou si max_degree < 1
        """
        if prime_power_decomposition(q) is None:
            raise InvalidParameterError(f"{NOT_PRIME_POWER_ERROR} (reçu {q})")
        if max_degree < 1:
            raise InvalidParameterError(
                f"Le degré maximal doit être >= 1 (reçu {max_degree})"
            )

        degrees = range(1, max_degree + 1)
        counts = tuple(irreducible_count(q, degree) for degree in degrees)

        logger.info(
            f"Spectre poly({q}) construit: {sum(counts)} irréductibles "
            f"de degré <= {max_degree}"
        )
        return NormSpectrum(
            distinct_norms=tuple(q**degree for degree in degrees),
            multiplicities=counts,
            kind=SpectrumKind.POLYNOMIALS,
            params=MonoidParams(
                kappa=q / (q - 1), theta=0, x_mode=XMode.q_power(q)
            ),
            norm_bound=q ** (max_degree + 1) - 1,
            q=q,
        )

    @staticmethod
    def build_polynomial_spectrum_upto(q: int, norm_bound: int) -> NormSpectrum:
        """Spectre poly(q) complet au moins jusqu'à la norme norm_bound."""
        max_degree = floor_log_power(norm_bound, q) if norm_bound >= 1 else 0
        if max_degree < 1:
            raise EmptySpectrumError(
                f"Borne {norm_bound} inférieure à q = {q}: aucun irréductible"
            )
        return SpectrumService.build_polynomial_spectrum(q, max_degree)

    @staticmethod
    def load_synthetic_spectrum(
        records: Iterable[Record],
        params: MonoidParams,
        norm_bound: Optional[int] = None,
    ) -> NormSpectrum:
        """
        Construit un spectre à partir d'enregistrements (norme, multiplicité).

        Args:
            records: Couples (norme, nombre de premiers de cette norme)
            params: Paramètres (κ, θ, X) déclarés pour ce monoïde
            norm_bound: Borne de complétude ; None si la liste est exhaustive

        Raises:
            SpectrumFormatError: Normes non croissantes, dupliquées,
                égales à 1 ou multiplicités < 1
        """
        norms: List[int] = []
        counts: List[int] = []
        previous = None
        for norm, count in records:
            if norm < 2:
                raise SpectrumFormatError(f"Norme de premier invalide: {norm}")
            if count < 1:
                raise SpectrumFormatError(
                    f"Multiplicité invalide {count} pour la norme {norm}"
                )
            if previous is not None and norm <= previous:
                raise SpectrumFormatError(
                    f"{UNSORTED_RECORDS_ERROR} ({previous} puis {norm})"
                )
            norms.append(int(norm))
            counts.append(int(count))
            previous = norm

        return NormSpectrum(
            distinct_norms=tuple(norms),
            multiplicities=tuple(counts),
            kind=SpectrumKind.SYNTHETIC,
            params=params,
            norm_bound=norm_bound,
        )

    @staticmethod
    def parse_synthetic_file(path: Union[str, Path]) -> List[Record]:
        """
        Lit un fichier de spectre synthétique (UTF-8).

        Une ligne par enregistrement ``<norme> <multiplicité>`` ; tout ce qui
        suit ``#`` est ignoré.

        Raises:
            SpectrumFormatError: Si une ligne est mal formée
        """
        records: List[Record] = []
        try:
            content = Path(path).read_text(encoding="utf-8")
        except UnicodeDecodeError as e:
            raise SpectrumFormatError(
                f"Le fichier {path} doit être encodé en UTF-8"
            ) from e

        for line_number, raw_line in enumerate(content.splitlines(), start=1):
            line = raw_line.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            if len(fields) != 2:
                raise SpectrumFormatError(
                    f"{path}:{line_number}: deux champs attendus, {len(fields)} lus"
                )
            try:
                records.append((int(fields[0]), int(fields[1])))
            except ValueError as e:
                raise SpectrumFormatError(
                    f"{path}:{line_number}: entiers attendus ({line!r})"
                ) from e

        logger.debug(f"{len(records)} enregistrements lus depuis {path}")
        return records

    @staticmethod
    def load_synthetic_file(
        path: Union[str, Path], params: MonoidParams
    ) -> NormSpectrum:
        records = SpectrumService.parse_synthetic_file(path)
        return SpectrumService.load_synthetic_spectrum(records, params)

    @staticmethod
    def factor_integer(n: int, spectrum: NormSpectrum) -> Factorization:
        """
        Factorise un entier naturel dans le spectre entier donné.

        Raises:
            InvalidParameterError: Si n < 1 ou si le spectre n'est pas entier
        """
        if spectrum.kind is not SpectrumKind.INTEGERS:
            raise InvalidParameterError("factor_integer exige le spectre de ℕ")
        if n < 1:
            raise InvalidParameterError(f"n doit être >= 1 (reçu {n})")
        exponents = {}
        for p, e in factorint(n).items():
            ids = spectrum.slots_of_norm(int(p))
            if not ids:
                spectrum.require_cover(int(p))
                raise InvalidFactorizationError(f"Premier {p} absent du spectre")
            exponents[ids.start] = int(e)
        return Factorization.from_exponents(exponents)

    @staticmethod
    def polynomial_element_count(q: int, degree: int) -> int:
        """M(q^n) = Σ_{k<=n} q^k = (q^{n+1} - 1)/(q - 1)."""
        return (q ** (degree + 1) - 1) // (q - 1)

    @staticmethod
    def gauss_sum(q: int, degree: int, counts: Optional[Sequence[int]] = None) -> int:
        """
        Σ_{d|n} d·π_q(d), qui vaut q^n.

        Args:
            counts: π_q(1..n) déjà dénombrés (sinon recalculés)
        """
        total = 0
        for d in divisors(degree):
            pi = counts[d - 1] if counts is not None else irreducible_count(q, d)
            total += d * pi
        return total
