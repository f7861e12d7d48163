"""
Fixtures pour les tests du harnais.
"""

import json
from io import StringIO

import pytest
from django.core.management import call_command


def run_command(name: str, **options) -> str:
    """Exécute une commande et retourne sa sortie standard."""
    out = StringIO()
    call_command(name, stdout=out, stderr=StringIO(), **options)
    return out.getvalue()


def run_json(name: str, **options):
    return json.loads(run_command(name, output="json", **options))


@pytest.fixture
def spectrum_file(tmp_path):
    """Fichier synthétique : un premier de norme 2, deux de norme 3."""
    path = tmp_path / "spectre.txt"
    path.write_text("# norme multiplicité\n2 1\n3 2  # doublé\n", encoding="utf-8")
    return path


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "experience.cfg"
    path.write_text(
        "# expérience de référence\nmonoid=integers\nh=2\nx=10,100\nprime-bound=10000\n",
        encoding="utf-8",
    )
    return path
