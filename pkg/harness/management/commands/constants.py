"""
Commande Django pour calculer le bundle des constantes d'un monoïde.

Usage:
    python manage.py constants --monoid integers --h 2 --prime-bound 1000000
    python manage.py constants --monoid "poly(2)" --h 3 --output csv
"""

from constants.serializers import ConstantsBundleSerializer, EulerValueSerializer
from harness.management.base import ExperimentCommand
from harness.reports import render_csv, render_json
from harness.services import ExperimentService


class Command(ExperimentCommand):
    help = "Calcule 𝔄, 𝔅, ζ_ℳ(h), γ_h, 𝔠₃, 𝔠₃′, 𝔠₄, 𝔡₃, 𝔡₃′ et 𝔡₄ avec leurs queues"

    require_x = False

    def run(self, config, options) -> str:
        bundle = ExperimentService.constants(config)
        data = ConstantsBundleSerializer(bundle).data
        if config.output.value == "csv":
            columns = list(EulerValueSerializer().fields.keys())
            return render_csv(data["constants"], columns)
        return render_json(data)
