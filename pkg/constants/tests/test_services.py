"""
Tests pour le service des constantes.

Les oracles sont indépendants du code testé : séries de mpmath, formes
simplifiées des termes à h = 2, évaluation rationnelle exacte des formules
d'origine et formes en a = N^{-1/h}.
"""

import math
from fractions import Fraction

import mpmath
import pytest

from constants.domain import BUNDLE_ORDER, EulerValue
from constants.serializers import ConstantsBundleSerializer
from constants.services import ConstantsService
from core.exceptions import (
    DivergenceError,
    DomainError,
    InsufficientSpectrumError,
    InvalidParameterError,
    ModeMismatchError,
)
from monoids.domain import XMode
from monoids.services import SpectrumService

MEISSEL_MERTENS = float(mpmath.mertens)
PI2_6 = math.pi**2 / 6


def _primes(spectrum, bound):
    return list(spectrum.norms_upto(bound))


def _c3_exact(n: int, h: int) -> Fraction:
    return Fraction(n**h - h * n * n + h * n - 1, n * (n - 1) * (n**h - 1))


def _c3_prime_exact(n: int, h: int) -> Fraction:
    b = -2 * h * h + 2 * h + 1
    numerator = (
        n**h * (3 * n - 1) + (n - 1) ** 2 - n * (h * h * n * n + b * n + (h - 1) ** 2)
    )
    return Fraction(numerator, n * (n - 1) ** 2 * (n**h - 1))


def _c4_exact(n: int, h: int) -> Fraction:
    return Fraction(n**h - h * n + h - 1, (n - 1) * (n**h - 1)) ** 2


def _d3_oracle(n: float, h: int) -> float:
    a = n ** (-1 / h)
    u = 1 / n
    return h / (n * (1 - a + u)) + a / (n * (1 - a) * (1 - a + u)) - h / n


def _d3_prime_oracle(n: float, h: int) -> float:
    a = n ** (-1 / h)
    u = 1 / n
    b = -2 * h * h + 2 * h + 1
    c = (h - 1) ** 2
    return (h * h + b * a + c * a * a) / (n * (1 - a) ** 2 * (1 - a + u)) - h * h / n


class TestZeta:
    """Tests pour zeta_M."""

    def test_integers_basel(self, integers_1m):
        """Test ζ(2) sur ℕ à P = 10⁶."""
        result = ConstantsService.zeta_M(2, integers_1m, 1_000_000)
        assert result.value == pytest.approx(float(mpmath.zeta(2)), abs=1e-6)
        assert result.rigorous
        assert PI2_6 - result.value <= result.tail_estimate

    def test_polynomials_closed_form(self, poly2_40):
        """Test ζ(2) sur F_2[x] : 1/(1 - 2^{-1}) = 2."""
        result = ConstantsService.zeta_M(2, poly2_40, 2**40)
        assert result.value == pytest.approx(2.0, abs=1e-9)
        assert not result.rigorous
        assert result.term_count == len(poly2_40)

    def test_polynomials_small_degree_expansion(self):
        """Test du produit par degré contre l'expansion exacte à petit degré."""
        spectrum = SpectrumService.build_polynomial_spectrum(3, 4)
        expected = 1.0
        for norm, count in spectrum.records:
            expected *= (1 - norm**-3.0) ** -count
        result = ConstantsService.zeta_M(3, spectrum, 3**4)
        assert result.value == pytest.approx(expected, rel=1e-13)

    def test_empty(self, empty_spectrum):
        """Test avec le spectre vide."""
        result = ConstantsService.zeta_M(2, empty_spectrum, 100)
        assert result.value == 1.0
        assert result.tail_estimate == 0.0

    @pytest.mark.parametrize("s", [1, 0.5, -2])
    def test_divergent(self, integers_10k, s):
        """Test avec s <= 1."""
        with pytest.raises(DivergenceError):
            ConstantsService.zeta_M(s, integers_10k, 1000)

    def test_insufficient_spectrum(self, integers_10k):
        """Test avec P au-delà de la borne du spectre."""
        with pytest.raises(InsufficientSpectrumError):
            ConstantsService.zeta_M(2, integers_10k, 100_000)

    @pytest.mark.parametrize("truncation", [0, 2.5, True])
    def test_invalid_truncation(self, integers_10k, truncation):
        """Test avec une borne P invalide."""
        with pytest.raises(InvalidParameterError):
            ConstantsService.zeta_M(2, integers_10k, truncation)


class TestGamma:
    """Tests pour gamma_h."""

    def test_square_full_identity(self, integers_10k):
        """Test à h = 2 : chaque facteur vaut 1 + p^{-3/2}."""
        expected = math.prod(1 + p**-1.5 for p in _primes(integers_10k, 10_000))
        result = ConstantsService.gamma_h(2, integers_10k, 10_000)
        assert result.value == pytest.approx(expected, rel=1e-12)

    def test_integers_zeta_ratio(self, integers_1m):
        """Test γ₂ ≈ ζ(3/2)/ζ(3) à P = 10⁶, queue comprise."""
        target = float(mpmath.zeta(1.5) / mpmath.zeta(3))
        result = ConstantsService.gamma_h(2, integers_1m, 1_000_000)
        assert result.value <= target
        assert target - result.value <= result.tail_estimate
        assert result.value == pytest.approx(target, abs=1e-3)

    @pytest.mark.slow
    def test_integers_zeta_ratio_ten_million(self):
        """Test γ₂ à 1e-4 de ζ(3/2)/ζ(3) à P = 10⁷."""
        spectrum = SpectrumService.build_integer_spectrum(10_000_000)
        target = float(mpmath.zeta(1.5) / mpmath.zeta(3))
        result = ConstantsService.gamma_h(2, spectrum, 10_000_000)
        assert result.value == pytest.approx(target, abs=1e-4)

    def test_single_prime(self, single_two):
        """Test avec le seul premier de norme 2."""
        expected = 1 + (2 - math.sqrt(2)) / (4 * (math.sqrt(2) - 1))
        result = ConstantsService.gamma_h(2, single_two, 10)
        assert result.value == pytest.approx(expected, rel=1e-14)
        assert result.value == pytest.approx(1.35355, abs=1e-5)
        assert result.tail_estimate == 0.0

    def test_empty(self, empty_spectrum):
        """Test avec le spectre vide."""
        assert ConstantsService.gamma_h(3, empty_spectrum, 10).value == 1.0


class TestMertens:
    """Tests pour mertens_A et B_const."""

    def test_integers(self, integers_1m):
        """Test de la forme close sur ℕ."""
        result = ConstantsService.mertens_A(integers_1m, 1_000_000)
        assert result.value == pytest.approx(0.2615, abs=5e-4)
        assert abs(result.value - MEISSEL_MERTENS) <= result.tail_estimate
        assert result.rigorous

    def test_single_prime(self, single_two):
        """Test de la valeur partielle 1/2 - log log 2."""
        result = ConstantsService.mertens_A(single_two, 2)
        assert result.value == pytest.approx(0.5 - math.log(math.log(2)), abs=1e-14)
        assert result.value == pytest.approx(0.8665, abs=1e-4)
        assert not result.rigorous

    def test_polynomials_reports_drift(self):
        """Test sur F_2[x] : valeur finie et dérive rapportée."""
        spectrum = SpectrumService.build_polynomial_spectrum(2, 20)
        result = ConstantsService.mertens_A(spectrum, 2**20)
        assert math.isfinite(result.value)
        assert result.tail_estimate > 0
        assert not result.rigorous

    def test_domain(self, integers_10k):
        """Test avec P < 2."""
        with pytest.raises(DomainError):
            ConstantsService.mertens_A(integers_10k, 1)

    def test_b_rational(self):
        """Test 𝔅 = -π²/6 pour X = ℚ."""
        value = ConstantsService.B_const(XMode.rational())
        assert value == pytest.approx(-1.644934, abs=1e-6)

    def test_b_q_power(self):
        """Test 𝔅 pour X = {2ᶻ}."""
        expected = math.log(math.log(2)) ** 2 - PI2_6
        value = ConstantsService.B_const(XMode.q_power(2))
        assert value == pytest.approx(expected, abs=1e-15)
        assert value == pytest.approx(-1.510602, abs=1e-6)


class TestSecondOrderSums:
    """Tests pour c3, c3_prime et c4."""

    def test_c3_square_free_simplification(self, integers_1m):
        """Test à h = 2 : le terme vaut -1/(p(p+1))."""
        A = ConstantsService.mertens_A(integers_1m, 100_000)
        result = ConstantsService.c3(2, integers_1m, 100_000, A)
        oracle = A.value - math.fsum(
            1 / (p * (p + 1)) for p in _primes(integers_1m, 100_000)
        )
        assert result.value == pytest.approx(oracle, abs=1e-9)

    def test_c3_prime_square_free_simplification(self, integers_1m):
        """Test à h = 2 : le terme de 𝔠₃′ vaut aussi -1/(p(p+1))."""
        A = ConstantsService.mertens_A(integers_1m, 100_000)
        result = ConstantsService.c3_prime(2, integers_1m, 100_000, A)
        oracle = A.value - math.fsum(
            1 / (p * (p + 1)) for p in _primes(integers_1m, 100_000)
        )
        assert result.value == pytest.approx(oracle, abs=1e-9)

    @pytest.mark.parametrize("h", [2, 3, 4, 6, 10])
    def test_terms_against_exact_formulas(self, unit_params, h):
        """Test des formes stables contre les formules d'origine en rationnels."""
        records = [(2, 1), (3, 1), (5, 2), (7, 1), (11, 1)]
        spectrum = SpectrumService.load_synthetic_spectrum(records, unit_params)
        norms = [n for n, c in records for _ in range(c)]
        c3 = ConstantsService.c3(h, spectrum, 11, 0.0)
        c3p = ConstantsService.c3_prime(h, spectrum, 11, 0.0)
        c4 = ConstantsService.c4(h, c3, c3p, 0.0, spectrum, 11)
        assert c3.value == pytest.approx(
            float(sum(_c3_exact(n, h) for n in norms)), rel=1e-13
        )
        assert c3p.value == pytest.approx(
            float(sum(_c3_prime_exact(n, h) for n in norms)), rel=1e-13
        )
        assert c4.prime_sum == pytest.approx(
            float(sum(_c4_exact(n, h) for n in norms)), rel=1e-13
        )

    def test_large_norm_stays_finite(self, unit_params):
        """Test avec N^h hors de portée du double."""
        spectrum = SpectrumService.load_synthetic_spectrum([(10**12, 1)], unit_params)
        result = ConstantsService.c3(30, spectrum, 10**12, 0.0)
        assert math.isfinite(result.value)
        assert result.value == pytest.approx(1e-24, rel=1e-6)

    def test_single_prime_values(self, single_two):
        """Test avec le seul premier de norme 2, h = 2, 𝔄 = 0."""
        c3 = ConstantsService.c3(2, single_two, 2, 0.0)
        c3p = ConstantsService.c3_prime(2, single_two, 2, 0.0)
        assert c3.value == pytest.approx(-1 / 6, abs=1e-15)
        assert c3p.value == pytest.approx(-1 / 6, abs=1e-15)
        B = ConstantsService.B_const(XMode.rational())
        c4 = ConstantsService.c4(2, c3, c3p, B, single_two, 2)
        assert c4.prime_sum == pytest.approx(1 / 9, abs=1e-15)
        assert c4.value == c3.value**2 + c3p.value + B - c4.prime_sum

    def test_empty(self, empty_spectrum):
        """Test avec le spectre vide."""
        assert ConstantsService.c3(2, empty_spectrum, 10, 0.0).value == 0.0
        assert ConstantsService.c3_prime(2, empty_spectrum, 10, 0.0).value == 0.0
        B = ConstantsService.B_const(XMode.rational())
        c4 = ConstantsService.c4(2, 0.0, 0.0, B, empty_spectrum, 10)
        assert c4.value == pytest.approx(-PI2_6, abs=1e-15)

    def test_mode_mismatch(self, integers_10k, poly2_40):
        """Test avec des composants calculés pour un autre h ou un autre spectre."""
        A = ConstantsService.mertens_A(integers_10k, 1000)
        c3 = ConstantsService.c3(2, integers_10k, 1000, A)
        c3p = ConstantsService.c3_prime(2, integers_10k, 1000, A)
        with pytest.raises(ModeMismatchError):
            ConstantsService.c4(3, c3, c3p, -PI2_6, integers_10k, 1000)
        with pytest.raises(ModeMismatchError):
            ConstantsService.c4(2, c3, c3p, -PI2_6, poly2_40, 1024)
        with pytest.raises(ModeMismatchError):
            ConstantsService.c3(2, poly2_40, 1024, A)


class TestFullSums:
    """Tests pour d3, d3_prime et d4."""

    def test_d3_empty(self, empty_spectrum):
        """Test avec le spectre vide : 𝔡₃ = -h log h."""
        result = ConstantsService.d3(2, empty_spectrum, 10, 0.0)
        assert result.value == pytest.approx(-2 * math.log(2), abs=1e-15)

    def test_d3_single_prime(self, single_two):
        """Test avec le seul premier de norme 2."""
        root = math.sqrt(2)
        summand = (8 - 4 * root) / (2 * (root - 1) * (3 - root))
        result = ConstantsService.d3(2, single_two, 2, 0.0)
        assert result.prime_sum == pytest.approx(summand, rel=1e-14)
        assert result.prime_sum == pytest.approx(1.78361, abs=1e-5)
        assert result.value == pytest.approx(0.39732, abs=1e-5)

    @pytest.mark.parametrize("h", [2, 3, 5])
    def test_against_independent_forms(self, integers_10k, h):
        """Test des sommes de 𝔡₃ et 𝔡₃′ contre les formes en a = N^{-1/h}."""
        primes = _primes(integers_10k, 10_000)
        d3 = ConstantsService.d3(h, integers_10k, 10_000, 0.0)
        d3p = ConstantsService.d3_prime(h, integers_10k, 10_000, 0.0)
        assert d3.prime_sum == pytest.approx(
            math.fsum(_d3_oracle(p, h) for p in primes), rel=1e-9
        )
        assert d3p.prime_sum == pytest.approx(
            math.fsum(_d3_prime_oracle(p, h) for p in primes), rel=1e-9
        )

    def test_d4_recomposition(self, integers_10k):
        """Test de l'identité de composition de 𝔡₄."""
        A = ConstantsService.mertens_A(integers_10k, 10_000)
        d3 = ConstantsService.d3(3, integers_10k, 10_000, A)
        d3p = ConstantsService.d3_prime(3, integers_10k, 10_000, A)
        B = ConstantsService.B_const(XMode.rational())
        d4 = ConstantsService.d4(3, d3, d3p, B, integers_10k, 10_000)
        expected = d3.value**2 + d3p.value + 9 * B - d4.prime_sum
        assert d4.value == pytest.approx(expected, abs=1e-12)

    def test_d4_mode_mismatch(self, integers_10k):
        """Test avec 𝔡₃ calculée pour un autre h."""
        d3 = ConstantsService.d3(2, integers_10k, 1000, 0.0)
        with pytest.raises(ModeMismatchError):
            ConstantsService.d4(3, d3, 0.0, -PI2_6, integers_10k, 1000)


class TestTruncationProperties:
    """Propriétés de la troncature sur ℕ."""

    @pytest.mark.parametrize("truncation", [1_000, 10_000, 100_000])
    @pytest.mark.parametrize("h", [2, 3])
    def test_doubling_within_tail(self, integers_1m, truncation, h):
        """Test |v(2P) - v(P)| <= queue(P)."""
        A1 = ConstantsService.mertens_A(integers_1m, truncation)
        A2 = ConstantsService.mertens_A(integers_1m, 2 * truncation)
        pairs = [
            (
                ConstantsService.zeta_M(h, integers_1m, truncation),
                ConstantsService.zeta_M(h, integers_1m, 2 * truncation),
            ),
            (
                ConstantsService.gamma_h(h, integers_1m, truncation),
                ConstantsService.gamma_h(h, integers_1m, 2 * truncation),
            ),
        ]
        for method in (
            ConstantsService.c3,
            ConstantsService.c3_prime,
            ConstantsService.d3,
            ConstantsService.d3_prime,
        ):
            pairs.append(
                (
                    method(h, integers_1m, truncation, A1),
                    method(h, integers_1m, 2 * truncation, A2),
                )
            )
        for short, long in pairs:
            assert short.rigorous
            assert abs(long.value - short.value) <= short.tail_estimate, short.name

    def test_products_monotone(self, integers_1m):
        """Test : ζ_ℳ et γ_h croissent avec P."""
        bounds = [10, 100, 1_000, 10_000, 100_000]
        zetas = [ConstantsService.zeta_M(2, integers_1m, P).value for P in bounds]
        gammas = [ConstantsService.gamma_h(3, integers_1m, P).value for P in bounds]
        assert zetas == sorted(zetas)
        assert gammas == sorted(gammas)


class TestBundle:
    """Tests pour build_bundle et son exportation."""

    def test_recomposition(self, integers_1m):
        """Test des identités de 𝔠₄ et 𝔡₄ à 1e-12."""
        bundle = ConstantsService.build_bundle(2, integers_1m, 100_000)
        residuals = bundle.recomposition_residuals()
        assert residuals["C4"] <= 1e-12
        assert residuals["D4"] <= 1e-12
        assert bundle.rigorous_tails

    def test_square_free_cross_check(self, integers_1m):
        """Test à h = 2 : 𝔠₃ et 𝔠₃′ coïncident, γ₂ suit ζ(3/2)/ζ(3)."""
        bundle = ConstantsService.build_bundle(2, integers_1m, 1_000_000)
        assert bundle.C3.value == pytest.approx(bundle.C3p.value, abs=1e-12)
        target = float(mpmath.zeta(1.5) / mpmath.zeta(3))
        assert bundle.gamma_h.value == pytest.approx(target, abs=1e-3)
        assert bundle.zeta_h.value == pytest.approx(PI2_6, abs=1e-6)

    def test_polynomial_bundle(self):
        """Test sur F_3[x] : 𝔅 en mode q-puissance, queues heuristiques."""
        spectrum = SpectrumService.build_polynomial_spectrum(3, 12)
        bundle = ConstantsService.build_bundle(3, spectrum, 3**12)
        assert bundle.B == pytest.approx(math.log(math.log(3)) ** 2 - PI2_6)
        assert bundle.zeta_h.value == pytest.approx(1 / (1 - 3**-2), abs=1e-6)
        assert not bundle.rigorous_tails

    def test_serialization_order(self, integers_10k):
        """Test de l'ordre fixe des constantes exportées."""
        bundle = ConstantsService.build_bundle(3, integers_10k, 10_000)
        data = ConstantsBundleSerializer(bundle).data
        assert [row["name"] for row in data["constants"]] == list(BUNDLE_ORDER)
        assert list(data["constants"][0].keys()) == [
            "name",
            "value",
            "truncation_norm",
            "tail_estimate",
        ]
        assert data["h"] == 3
        assert data["x_mode"] == "rational"
        b_row = data["constants"][1]
        assert b_row["truncation_norm"] is None
        assert b_row["tail_estimate"] == 0.0

    def test_exact_component(self):
        """Test d'une valeur exacte sans troncature."""
        value = EulerValue.exact(0.25, name="A")
        assert value.truncation_norm is None
        assert value.rigorous


class TestPolynomialTruncation:
    """Queues heuristiques sur F_q[x] quand P n'est pas une puissance de q."""

    @pytest.mark.parametrize("q", [3, 5])
    @pytest.mark.parametrize("h", [2, 3])
    def test_tail_covers_next_degree(self, q, h):
        """Test avec P = 10⁶ : |v(qP) - v(P)| <= queue(P) et queue > 0"""
        truncation = 1_000_000
        spectrum = SpectrumService.build_polynomial_spectrum_upto(q, q * truncation)
        A1 = ConstantsService.mertens_A(spectrum, truncation)
        A2 = ConstantsService.mertens_A(spectrum, q * truncation)
        pairs = [
            (
                ConstantsService.gamma_h(h, spectrum, truncation),
                ConstantsService.gamma_h(h, spectrum, q * truncation),
            )
        ]
        for method in (
            ConstantsService.c3,
            ConstantsService.c3_prime,
            ConstantsService.d3,
            ConstantsService.d3_prime,
        ):
            pairs.append(
                (
                    method(h, spectrum, truncation, A1),
                    method(h, spectrum, q * truncation, A2),
                )
            )
        for short, long in pairs:
            assert not short.rigorous
            assert short.tail_estimate > 0, short.name
            assert abs(long.value - short.value) <= short.tail_estimate, short.name

    def test_prime_sum_tail_uses_last_degree(self):
        """Test avec poly(5) : aucune norme dans ]P/2, P] pour P = 10⁶"""
        spectrum = SpectrumService.build_polynomial_spectrum(5, 9)
        assert spectrum.count_upto(10**6) == spectrum.count_upto(10**6 // 2)
        result = ConstantsService.c3(2, spectrum, 10**6, EulerValue.exact(0.0, "A"))
        assert result.tail_estimate > 0

    @pytest.mark.parametrize(
        "method, first, second",
        [
            (ConstantsService.c4, "C3", "C3p"),
            (ConstantsService.d4, "D3", "D3p"),
        ],
    )
    def test_fourth_order_sums_cover_next_degree(self, method, first, second):
        """Test avec poly(3), P = 10⁶ : la somme propre de 𝔠₄ et 𝔡₄ a une queue"""
        spectrum = SpectrumService.build_polynomial_spectrum_upto(3, 3 * 10**6)
        zero_first = EulerValue.exact(0.0, first)
        zero_second = EulerValue.exact(0.0, second)
        short = method(2, zero_first, zero_second, 0.0, spectrum, 10**6)
        long = method(2, zero_first, zero_second, 0.0, spectrum, 3 * 10**6)
        assert short.tail_estimate > 0
        assert abs(long.value - short.value) <= short.tail_estimate
