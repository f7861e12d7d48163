#!/usr/bin/env python3
"""
Crée le fichier .env de MonoidLab à partir de env.example.

La clé SECRET_KEY d'exemple est remplacée par une clé aléatoire.
Usage: python create_env.py [--force]
"""

import sys
from pathlib import Path

from django.core.management.utils import get_random_secret_key

TEMPLATE = Path("env.example")
TARGET = Path(".env")


def render_env(template: str) -> str:
    """Recopie le gabarit en régénérant SECRET_KEY."""
    lines = []
    for line in template.splitlines():
        if line.startswith("SECRET_KEY="):
            line = f"SECRET_KEY={get_random_secret_key()}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def create_env_file(force: bool = False) -> int:
    if TARGET.exists() and not force:
        print("⚠️  .env existe déjà (relancer avec --force pour le remplacer).")
        return 1

    try:
        template = TEMPLATE.read_text(encoding="utf-8")
    except FileNotFoundError:
        print(f"❌ {TEMPLATE} introuvable.")
        return 1

    TARGET.write_text(render_env(template), encoding="utf-8")
    print("✅ .env créé.")
    print("🎯 À ajuster selon la machine : MONOID_MOMENTS_THREADS, MONOID_DEFAULT_PRIME_BOUND")
    return 0


if __name__ == "__main__":
    sys.exit(create_env_file(force="--force" in sys.argv[1:]))
