"""
Tests pour les types du domaine de l'énumération.
"""

import pytest

from core.exceptions import InvalidParameterError
from enumeration.domain import (
    ExponentPolicy,
    Family,
    MomentTally,
    PrimeSumKind,
    SetSelector,
)
from monoids.domain import Factorization


class TestMomentTally:
    """Tests pour MomentTally."""

    def test_from_histogram(self):
        """Test avec l'histogramme des sans-facteur-carré <= 10."""
        tally = MomentTally.from_histogram({0: 1, 1: 4, 2: 2})
        assert (tally.count, tally.sum_omega, tally.sum_omega_sq) == (7, 8, 12)
        assert tally.is_consistent()

    def test_zero_bins_dropped(self):
        """Test : les classes vides ne sont pas conservées."""
        tally = MomentTally.from_histogram({0: 1, 1: 0, 3: 2})
        assert tally.histogram == {0: 1, 3: 2}

    def test_merge(self):
        """Test de fusion de deux tallies."""
        left = MomentTally.from_histogram({0: 1, 1: 2})
        right = MomentTally.from_histogram({1: 1, 2: 3})
        merged = left.merge(right)
        assert merged.histogram == {0: 1, 1: 3, 2: 3}
        assert merged == right + left
        assert merged.sum_omega == left.sum_omega + right.sum_omega

    def test_merge_keeps_omega_only_when_both_sides_have_it(self):
        """Test de fusion des histogrammes de ω."""
        with_omega = MomentTally.from_histogram({1: 1}, {1: 1})
        without = MomentTally.from_histogram({1: 1})
        assert with_omega.merge(with_omega).omega_histogram == {1: 2}
        assert with_omega.merge(without).omega_histogram is None

    def test_inconsistent_tally_detected(self):
        """Test avec des sommes incohérentes."""
        tally = MomentTally(count=2, sum_omega=1, sum_omega_sq=5, histogram={1: 2})
        assert tally.is_consistent() is False

    def test_moment_accessor(self):
        """Test de l'accès aux moments par ordre."""
        tally = MomentTally.from_histogram({2: 3})
        assert [tally.moment(k) for k in (0, 1, 2)] == [3, 6, 12]
        with pytest.raises(InvalidParameterError):
            tally.moment(3)


class TestSetSelector:
    """Tests pour SetSelector et ExponentPolicy."""

    def test_family_from_string(self):
        """Test avec une famille donnée par sa valeur."""
        assert SetSelector("h_full", 2).family is Family.H_FULL

    def test_invalid_h(self):
        """Test avec h < 2."""
        with pytest.raises(InvalidParameterError):
            SetSelector(Family.H_FREE, 1)

    def test_policies(self):
        """Test des exposants admis."""
        assert SetSelector(Family.H_FREE, 3).policy == ExponentPolicy(1, 2)
        assert SetSelector(Family.H_FULL, 3).policy == ExponentPolicy(3, None)

    def test_excluding(self):
        """Test d'ajout de premiers exclus."""
        sel = SetSelector(Family.H_FREE, 2).excluding(0).excluding(3)
        assert sel.excluded_slots == frozenset({0, 3})
        assert sel.unrestricted().excluded_slots == frozenset()

    def test_admits(self):
        """Test d'appartenance d'une factorisation."""
        sel = SetSelector(Family.H_FULL, 2, frozenset({1}))
        assert sel.admits(Factorization(((0, 3),)))
        assert not sel.admits(Factorization(((0, 3), (1, 2))))
        assert not sel.admits(Factorization(((0, 1),)))

    def test_completeness_bound(self):
        """Test : un h-plein de norme <= x n'utilise que des premiers <= x^{1/h}."""
        assert SetSelector(Family.H_FULL, 2).completeness_bound(10**10) == 10**5
        assert SetSelector(Family.H_FREE, 2).completeness_bound(10**6) == 10**6


class TestPrimeSumKind:
    """Tests pour l'analyse des types de sommes."""

    @pytest.mark.parametrize(
        "text, name, parameter",
        [
            ("mertens", "mertens", None),
            ("recip_power(2)", "recip_power", 2.0),
            ("recip_power(0.5)", "recip_power", 0.5),
            (" inv_log_power(3) ", "inv_log_power", 3.0),
        ],
    )
    def test_parse(self, text, name, parameter):
        """Test d'analyse des formes acceptées."""
        kind = PrimeSumKind.parse(text)
        assert (kind.name, kind.parameter) == (name, parameter)

    @pytest.mark.parametrize(
        "text",
        ["unknown", "recip_power", "mertens(2)", "recip_power(x)", "inv_log_power(0)",
         "inv_log_power(1.5)", "recip_power(2"],
    )
    def test_parse_errors(self, text):
        """Test avec des types invalides."""
        with pytest.raises(InvalidParameterError):
            PrimeSumKind.parse(text)

    def test_label(self):
        """Test du libellé canonique."""
        assert PrimeSumKind.parse("recip_power(2)").label == "recip_power(2)"
        assert PrimeSumKind.parse("recip_power(1.5)").label == "recip_power(1.5)"
