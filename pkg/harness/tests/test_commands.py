"""
Tests d'intégration des commandes du harnais (via call_command).
"""

import csv
import io
import json

import pytest
from django.core.management.base import CommandError

from harness.tests.conftest import run_command, run_json

pytestmark = pytest.mark.integration


class TestConstantsCommand:
    def test_integers(self):
        """Test avec ℕ, h = 2, P = 10⁶"""
        data = run_json("constants", monoid="integers", h=2, prime_bound=1_000_000)
        constants = {c["name"]: c for c in data["constants"]}
        assert data["h"] == 2
        assert data["x_mode"] == "rational"
        assert constants["gamma_h"]["value"] == pytest.approx(2.173, abs=1e-3)
        assert constants["A"]["value"] == pytest.approx(0.2615, abs=5e-4)
        assert list(constants) == [
            "A", "B", "zeta_h", "gamma_h", "C3", "C3p", "C4", "D3", "D3p", "D4"
        ]

    def test_invalid_h(self):
        with pytest.raises(CommandError, match="h"):
            run_command("constants", monoid="integers", h=1)

    def test_empty_synthetic(self):
        """Test avec le spectre vide : produits égaux à 1"""
        data = run_json("constants", monoid="synthetic(empty)", h=2, prime_bound=100)
        constants = {c["name"]: c["value"] for c in data["constants"]}
        assert constants["zeta_h"] == 1.0
        assert constants["gamma_h"] == 1.0
        assert constants["C3"] == pytest.approx(constants["A"])

    def test_csv(self):
        content = run_command(
            "constants", monoid="integers", h=3, prime_bound=10_000, output="csv"
        )
        lines = content.splitlines()
        assert lines[0] == "name,value,truncation_norm,tail_estimate"
        assert len(lines) == 11
        assert lines[1].startswith("A,")

    def test_synthetic_file(self, spectrum_file):
        data = run_json(
            "constants", monoid=f"synthetic({spectrum_file})", h=2, prime_bound=10
        )
        zeta = next(c for c in data["constants"] if c["name"] == "zeta_h")
        # (1 - 1/4)⁻¹ (1 - 1/9)⁻²
        assert zeta["value"] == pytest.approx((4 / 3) * (9 / 8) ** 2)


class TestMomentsCommand:
    def test_squarefree_ten(self):
        """Test avec les sans-facteur-carré <= 10 : ΣΩ = 8"""
        rows = run_json(
            "moments", monoid="integers", h=2, x="10", prime_bound=1000, no_timings=True
        )
        by_moment = {row["moment"]: row for row in rows}
        assert by_moment["count"]["empirical"] == 7
        assert by_moment["m1"]["empirical"] == 8
        assert by_moment["m1"]["predicted"] is None

    def test_empty_x(self):
        with pytest.raises(CommandError, match="x"):
            run_command("moments", monoid="integers", h=2, x="")

    def test_unsorted_x(self):
        with pytest.raises(CommandError):
            run_command("moments", monoid="integers", h=2, x="1000,100")

    def test_rows_ascend(self):
        rows = run_json("moments", monoid="integers", h=2, x="100,1000,10000", prime_bound=10_000)
        xs = [row["x"] for row in rows]
        assert xs == sorted(xs)
        assert len(rows) == 9
        assert all(row["runtime_ms"] >= 0 for row in rows)
        for row in rows:
            assert row["residual"] == pytest.approx(row["empirical"] - row["predicted"])

    def test_csv_matches_json(self):
        """Test avec le même contenu numérique en CSV et en JSON"""
        options = dict(monoid="integers", h=2, x="100,5000", prime_bound=10_000, no_timings=True)
        rows = run_json("moments", **options)
        content = run_command("moments", output="csv", **options)
        reader = list(csv.DictReader(io.StringIO(content)))
        assert reader[0].keys() == rows[0].keys()
        for row, record in zip(rows, reader):
            for column in ("predicted", "residual", "normalized"):
                assert float(record[column]) == pytest.approx(row[column], rel=1e-12)
            assert int(record["empirical"]) == row["empirical"]

    def test_polynomial_degrees(self):
        """Test avec poly(2) : x donné en degrés"""
        rows = run_json("moments", monoid="poly(2)", h=2, x="3,4", no_timings=True)
        assert sorted({row["x"] for row in rows}) == [8, 16]
        count = next(r for r in rows if r["x"] == 16 and r["moment"] == "count")
        assert count["empirical"] == 17

    def test_insufficient_prime_bound(self):
        with pytest.raises(CommandError, match="prime_bound"):
            run_command("moments", monoid="integers", h=2, x="1000", prime_bound=100)

    def test_config_file(self, config_file):
        """Test avec un fichier de configuration et une option prioritaire"""
        rows = run_json("moments", config=str(config_file), x="100")
        assert {row["x"] for row in rows} == {100}

    def test_output_file(self, tmp_path):
        target = tmp_path / "moments.csv"
        stdout = run_command(
            "moments", monoid="integers", h=2, x="100", prime_bound=1000,
            output="csv", out=str(target),
        )
        assert stdout == ""
        assert target.read_text(encoding="utf-8").startswith(
            "x,h,family,moment,empirical,predicted,residual,normalized,runtime_ms"
        )

    def test_predictions_json(self):
        """Test avec le détail des termes principaux (x < 16 ignoré)"""
        data = run_json(
            "moments",
            monoid="integers",
            h=2,
            x="10,10000",
            prime_bound=10_000,
            predictions=True,
        )
        assert [(p["x"], p["moment"]) for p in data] == [
            (10000, "count"),
            (10000, "m1"),
            (10000, "m2"),
        ]
        assert data[0]["error_class"]["exponent"] == "1/2"
        assert data[0]["main_value"] == pytest.approx(
            sum(term["value"] for term in data[0]["terms"])
        )

    def test_predictions_csv_refused(self):
        with pytest.raises(CommandError, match="JSON"):
            run_command(
                "moments",
                monoid="integers",
                h=2,
                x="1000",
                output="csv",
                predictions=True,
            )


class TestCountCommand:
    def test_odd_squarefree(self):
        """Test avec 2 exclu : 9 sans-facteur-carré impairs <= 20"""
        rows = run_json("count", monoid="integers", h=2, x="20", exclude="0", prime_bound=100)
        assert rows[0]["count"] == 13
        assert rows[0]["restricted_count"] == 9
        assert rows[0]["restricted_predicted"] == pytest.approx(
            rows[0]["predicted"] * 2 / 3
        )

    def test_omega_means(self):
        """Test avec ΣΩ = 8 et Σω = 8 sur les sans-facteur-carré <= 10"""
        rows = run_json("count", monoid="integers", h=2, x="10", prime_bound=100)
        assert rows[0]["mean_big_omega"] == pytest.approx(8 / 7)
        assert rows[0]["mean_small_omega"] == pytest.approx(8 / 7)
        assert rows[0]["restricted_count"] is None

    def test_unknown_slot(self):
        with pytest.raises(CommandError):
            run_command("count", monoid="integers", h=2, x="20", exclude="500", prime_bound=100)


class TestNormalOrderCommand:
    def test_epsilon_required(self):
        with pytest.raises(CommandError, match="epsilon"):
            run_command("normal_order", monoid="integers", h=2, x="1000")

    def test_large_epsilon(self):
        """Test avec ε = 10 : aucune exception"""
        rows = run_json("normal_order", monoid="integers", h=2, x="10000", epsilon=10)
        assert rows[0]["exceptions"] == 0
        assert rows[0]["fraction"] == 0.0

    def test_fraction_in_range(self):
        rows = run_json(
            "normal_order", monoid="integers", h=2, family="h_full", x="1000,100000", epsilon=0.3
        )
        assert all(0.0 <= row["fraction"] <= 1.0 for row in rows)

    def test_hyphenated_alias(self):
        """Test avec le nom normal-order : même sortie que normal_order"""
        options = {"monoid": "integers", "h": 2, "x": "10000", "epsilon": 0.5}
        outputs = []
        for name in ("normal-order", "normal_order"):
            rows = run_json(name, **options)
            outputs.append([{k: v for k, v in r.items() if k != "runtime_ms"} for r in rows])
        assert outputs[0] == outputs[1]


class TestSweepCommand:
    def test_sorted_by_x(self):
        rows = run_json("sweep", monoid="integers", h=2, x="100,1000", prime_bound=1000)
        assert [(r["x"], r["family"], r["moment"]) for r in rows[:4]] == [
            (100, "h_free", "count"),
            (100, "h_free", "m1"),
            (100, "h_free", "m2"),
            (100, "h_full", "count"),
        ]
        assert len(rows) == 12

    def test_parallel_identical(self, settings):
        settings.MONOID_LAB = {**settings.MONOID_LAB, "THREADS": 4}
        options = dict(monoid="integers", h=3, x="1000,5000", prime_bound=5000, no_timings=True)
        assert run_command("sweep", workers=4, **options) == run_command(
            "sweep", workers=1, **options
        )


class TestVerifyCommand:
    def test_default_config(self):
        """Test avec la configuration par défaut sur ℕ"""
        content = run_command("verify", prime_bound=100_000)
        checks = json.loads(content)
        assert all(check["passed"] for check in checks)
        names = {check["name"].split("[")[0] for check in checks}
        assert {
            "decomposition",
            "geometric_closed_forms",
            "bundle_recomposition",
            "exclusion_monotonicity",
            "prime_count_bound",
            "mertens_drift",
            "log_sq_weighted_bound",
        } <= names

    def test_injected_fault(self):
        with pytest.raises(CommandError, match="decomposition"):
            run_command("verify", prime_bound=100_000, inject_fault=True)

    def test_deterministic(self):
        options = dict(h=3, x="500,2000", prime_bound=10_000, seed=42, output="csv")
        assert run_command("verify", **options) == run_command("verify", **options)

    def test_polynomials(self):
        content = run_command("verify", monoid="poly(2)", h=2, x="6,10", prime_bound=1024)
        checks = json.loads(content)
        names = {check["name"] for check in checks}
        assert "gauss_identity[n=10]" in names
        assert "polynomial_count[n=10]" in names
        assert all(check["passed"] for check in checks)
