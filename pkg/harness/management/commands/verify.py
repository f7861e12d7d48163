"""
Commande Django pour exécuter la suite de vérification des identités exactes.

Usage:
    python manage.py verify
    python manage.py verify --monoid "poly(2)" --h 3 --x 8,12 --output csv
"""

import argparse

from django.core.management.base import CommandError

from harness.management.base import ExperimentCommand
from harness.reports import render_rows
from harness.serializers import CheckResultSerializer
from harness.services import ExperimentService

DEFAULT_VERIFY_OPTIONS = {"h": 2, "x": "1000,10000"}


class Command(ExperimentCommand):
    help = "Vérifie les identités de décomposition, les formes closes et les propriétés"

    both_families = True
    defaults = DEFAULT_VERIFY_OPTIONS

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    def run(self, config, options) -> str:
        self.checks = ExperimentService.verify(config, inject_fault=options["inject_fault"])
        return render_rows(self.checks, CheckResultSerializer, config.output.value)

    def after_emit(self, config) -> None:
        failed = [check.name for check in self.checks if not check.passed]
        if failed:
            raise CommandError(f"{len(failed)} vérification(s) en échec: {', '.join(failed)}")
        self.stderr.write(self.style.SUCCESS(f"✅ {len(self.checks)} vérifications réussies"))
