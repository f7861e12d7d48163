"""
Commande Django pour balayer les deux familles sur une liste de x.

Les points sont calculés en parallèle (plafond MONOID_MOMENTS_THREADS) puis
triés par x.

Usage:
    python manage.py sweep --monoid integers --h 2 --x 10000,100000,1000000 --workers 4
"""

from harness.management.base import ExperimentCommand
from harness.reports import render_rows
from harness.serializers import ReportRowSerializer
from harness.services import ExperimentService


class Command(ExperimentCommand):
    help = "Moments exacts et prédits des h-libres et h-pleins sur toute la liste de x"

    both_families = True

    def run(self, config, options) -> str:
        rows = ExperimentService.sweep_rows(config)
        return render_rows(rows, ReportRowSerializer, config.output.value)
