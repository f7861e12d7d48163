"""
Commande Django pour comparer les moments de Ω à leurs termes principaux.

Usage:
    python manage.py moments --monoid integers --h 2 --x 100000,1000000 --output csv
    python manage.py moments --monoid integers --h 2 --x 1000000 --predictions
"""

from django.core.management.base import CommandError

from asymptotics.serializers import PredictionSerializer
from harness.domain import OutputFormat
from harness.management.base import ExperimentCommand
from harness.reports import render_json, render_rows, serialize_rows
from harness.serializers import ReportRowSerializer
from harness.services import ExperimentService

PREDICTIONS_FORMAT_ERROR = "Le détail des prédictions n'existe qu'au format JSON"


class Command(ExperimentCommand):
    help = "Effectif, ΣΩ et ΣΩ² exacts, prédits et résidus normalisés"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument(
            "--predictions",
            action="store_true",
            help="Écrit les termes principaux détaillés au lieu des lignes de rapport",
        )

    def run(self, config, options) -> str:
        if options.get("predictions"):
            if config.output is OutputFormat.CSV:
                raise CommandError(PREDICTIONS_FORMAT_ERROR)
            predictions = ExperimentService.predictions(config)
            return render_json(serialize_rows(predictions, PredictionSerializer))
        rows = ExperimentService.moment_rows(config)
        return render_rows(rows, ReportRowSerializer, config.output.value)
