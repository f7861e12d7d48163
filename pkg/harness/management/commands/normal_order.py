"""
Commande Django pour mesurer les exceptions à l'ordre normal de Ω.

Usage:
    python manage.py normal_order --monoid integers --h 2 --epsilon 0.5 --x 100000,10000000
"""

from harness.management.base import ExperimentCommand
from harness.reports import render_rows
from harness.serializers import NormalOrderRowSerializer
from harness.services import ExperimentService


class Command(ExperimentCommand):
    help = "Fraction des éléments dont Ω s'écarte de plus de ε de son ordre normal"

    require_epsilon = True

    def run(self, config, options) -> str:
        rows = ExperimentService.normal_order_rows(config)
        return render_rows(rows, NormalOrderRowSerializer, config.output.value)
