"""
Commande Django pour dénombrer les éléments h-libres ou h-pleins.

Usage:
    python manage.py count --monoid integers --h 2 --x 1000,100000
    python manage.py count --monoid integers --h 2 --x 100000 --exclude 0
"""

from harness.management.base import ExperimentCommand
from harness.reports import render_rows
from harness.serializers import CountRowSerializer
from harness.services import ExperimentService


class Command(ExperimentCommand):
    help = "Dénombrements exacts et prédits (restreints si des premiers sont exclus)"

    def run(self, config, options) -> str:
        rows = ExperimentService.count_rows(config)
        return render_rows(rows, CountRowSerializer, config.output.value)
