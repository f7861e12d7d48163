"""
Socle commun des commandes du harnais.

Chaque commande lit ses options (fichier ``--config`` puis ligne de
commande), les valide avec ExperimentConfigSerializer et traduit les erreurs
du domaine en CommandError (code de sortie non nul).
"""

import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from core.exceptions import MonoidLabError
from harness.config import load_config_file, merge_options
from harness.domain import ExperimentConfig
from harness.serializers import ExperimentConfigSerializer

logger = logging.getLogger(__name__)


class ExperimentCommand(BaseCommand):
    """Commande paramétrée par une configuration d'expérience."""

    require_x = True
    require_epsilon = False
    both_families = False
    defaults: dict = {}

    def add_arguments(self, parser):
        parser.add_argument("--config", help="Fichier clé=valeur ; les options l'emportent")
        parser.add_argument(
            "--monoid", help="integers, poly(q) ou synthetic(chemin|empty)"
        )
        parser.add_argument("--h", type=int, help="Paramètre h (>= 2)")
        parser.add_argument("--family", choices=["h_free", "h_full"])
        parser.add_argument(
            "--x", help="Valeurs de x séparées par des virgules (degrés en mode poly)"
        )
        parser.add_argument("--prime-bound", type=int, help="Borne P des produits eulériens")
        parser.add_argument("--epsilon", type=float, help="ε des ordres normaux")
        parser.add_argument("--output", choices=["csv", "json"], help="Format du rapport")
        parser.add_argument("--out", help="Fichier de sortie (sortie standard par défaut)")
        parser.add_argument("--seed", type=int, help="Graine des cas aléatoires")
        parser.add_argument("--kappa", type=float, help="κ d'un spectre synthétique")
        parser.add_argument("--theta", help="θ d'un spectre synthétique (ex: 1/2)")
        parser.add_argument(
            "--x-mode", help="X d'un spectre synthétique : rational ou q-power(q)"
        )
        parser.add_argument("--exclude", help="Identifiants de premiers exclus (a,b,...)")
        parser.add_argument("--workers", type=int, help="Nombre de threads souhaité")
        parser.add_argument(
            "--no-timings",
            action="store_true",
            help="Écrit runtime_ms = 0 (rapports reproductibles à l'octet)",
        )

    def load_config(self, options) -> ExperimentConfig:
        """
        Construit la configuration validée.

        Raises:
            CommandError: Option invalide ou fichier illisible
        """
        file_values = {}
        if options.get("config"):
            try:
                file_values = load_config_file(options["config"])
            except MonoidLabError as e:
                raise CommandError(str(e))

        data = merge_options(file_values, options)
        for key, value in self.defaults.items():
            data.setdefault(key, value)
        serializer = ExperimentConfigSerializer(
            data=data,
            context={
                "require_x": self.require_x,
                "require_epsilon": self.require_epsilon,
                "both_families": self.both_families,
            },
        )
        if not serializer.is_valid():
            raise CommandError(f"Configuration invalide: {_format_errors(serializer.errors)}")
        return serializer.save()

    def emit(self, content: str, options) -> None:
        """Écrit le rapport dans --out ou sur la sortie standard."""
        target = options.get("out")
        if target:
            Path(target).write_text(content, encoding="utf-8")
            self.stderr.write(self.style.SUCCESS(f"Rapport écrit dans {target}"))
        else:
            self.stdout.write(content, ending="")

    def handle(self, *args, **options):
        config = self.load_config(options)
        try:
            content = self.run(config, options)
        except MonoidLabError as e:
            logger.error(f"{self.__module__.rsplit('.', 1)[-1]}: {e}")
            raise CommandError(str(e))
        self.emit(content, options)
        self.after_emit(config)

    def run(self, config: ExperimentConfig, options) -> str:
        raise NotImplementedError

    def after_emit(self, config: ExperimentConfig) -> None:
        """Point d'extension exécuté après l'écriture du rapport."""


def _format_errors(errors) -> str:
    parts = []
    for field, messages in errors.items():
        if isinstance(messages, (list, tuple)):
            messages = " ".join(str(m) for m in messages)
        parts.append(f"{field}: {messages}")
    return "; ".join(parts)
