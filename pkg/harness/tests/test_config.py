"""
Tests de la lecture des fichiers de configuration et du serializer associé.
"""

from fractions import Fraction

import pytest

from core.exceptions import InvalidParameterError
from enumeration.domain import Family
from harness.config import load_config_file, merge_options
from harness.domain import MonoidKind, OutputFormat
from harness.serializers import ExperimentConfigSerializer


def _config(context=None, **data):
    serializer = ExperimentConfigSerializer(data=data, context=context or {})
    assert serializer.is_valid(), serializer.errors
    return serializer.save()


def _errors(context=None, **data):
    serializer = ExperimentConfigSerializer(data=data, context=context or {})
    assert not serializer.is_valid()
    return serializer.errors


class TestConfigFile:
    def test_keys_normalized(self, config_file):
        """Test avec des clés en notation d'option (prime-bound)"""
        values = load_config_file(config_file)
        assert values == {
            "monoid": "integers",
            "h": "2",
            "x": "10,100",
            "prime_bound": "10000",
        }

    def test_missing_file(self, tmp_path):
        with pytest.raises(InvalidParameterError):
            load_config_file(tmp_path / "absent.cfg")

    def test_unknown_key(self, tmp_path):
        path = tmp_path / "bad.cfg"
        path.write_text("colour=blue\n", encoding="utf-8")
        with pytest.raises(InvalidParameterError):
            load_config_file(path)

    def test_flags_win(self, config_file):
        merged = merge_options(
            load_config_file(config_file), {"x": "10", "h": None, "no_timings": False}
        )
        assert merged["x"] == "10"
        assert merged["h"] == "2"
        assert merged["no_timings"] is False

    def test_absent_flag_keeps_file_value(self):
        merged = merge_options({"no_timings": "true"}, {"no_timings": False})
        assert merged["no_timings"] == "true"


class TestExperimentConfigSerializer:
    def test_defaults(self):
        config = _config(h=2, x="10,100")
        assert config.monoid.kind is MonoidKind.INTEGERS
        assert config.family is Family.H_FREE
        assert config.x_list == (10, 100)
        assert config.output is OutputFormat.JSON
        assert config.timings

    def test_file_strings_converted(self, config_file):
        config = _config(**load_config_file(config_file))
        assert config.h == 2
        assert config.prime_bound == 10_000

    def test_poly_degrees(self):
        """Test avec des degrés convertis en normes qⁿ"""
        config = _config(monoid="poly(3)", h=2, x="2,4")
        assert config.x_list == (9, 81)
        assert config.x_mode.q == 3

    def test_synthetic_params(self, spectrum_file):
        config = _config(
            monoid=f"synthetic({spectrum_file})",
            h=3,
            x="50",
            kappa="2.5",
            theta="1/2",
            x_mode="q-power(3)",
        )
        assert config.monoid.path == spectrum_file
        assert config.params.theta == Fraction(1, 2)
        assert config.params.x_mode.q == 3

    def test_synthetic_empty(self):
        assert _config(monoid="synthetic(empty)", h=2).monoid.is_empty_synthetic

    @pytest.mark.parametrize(
        "data,field",
        [
            ({"h": 1}, "h"),
            ({"h": 2, "monoid": "rationals"}, "monoid"),
            ({"h": 2, "monoid": "poly(6)"}, "monoid"),
            ({"h": 2, "monoid": "synthetic(/nulle/part.txt)"}, "monoid"),
            ({"h": 2, "x": "100,10"}, "x"),
            ({"h": 2, "x": "10,10"}, "x"),
            ({"h": 2, "x": "0"}, "x"),
            ({"h": 2, "theta": "1"}, "theta"),
            ({"h": 2, "kappa": "0"}, "kappa"),
            ({"h": 2, "epsilon": "-0.5"}, "epsilon"),
            ({"h": 2, "x_mode": "q-power(1)"}, "x_mode"),
            ({"h": 2, "output": "xml"}, "output"),
        ],
    )
    def test_invalid(self, data, field):
        assert field in _errors(**data)

    def test_x_required(self):
        assert "x" in _errors(context={"require_x": True}, h=2)

    def test_epsilon_required(self):
        assert "epsilon" in _errors(context={"require_epsilon": True}, h=2, x="100")

    def test_prime_bound_below_x(self):
        assert "prime_bound" in _errors(h=2, x="1000", prime_bound=500)

    def test_prime_bound_h_full_root(self):
        """Test avec P couvrant √x : suffisant pour les h-pleins"""
        config = _config(h=2, family="h_full", x="10000", prime_bound=100)
        assert config.prime_bound == 100

    def test_prime_bound_both_families(self):
        errors = _errors(
            context={"both_families": True}, h=2, family="h_full", x="10000", prime_bound=100
        )
        assert "prime_bound" in errors

    def test_default_seed(self, settings):
        settings.MONOID_LAB = {**settings.MONOID_LAB, "DEFAULT_SEED": 7}
        assert _config(h=2).seed == 7

    def test_exclusions_sorted(self):
        assert _config(h=2, exclude="3,0,3").excluded == (0, 3)
