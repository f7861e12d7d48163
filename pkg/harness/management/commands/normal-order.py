"""
Alias ``normal-order`` de la commande ``normal_order``.

Usage:
    python manage.py normal-order --monoid integers --h 2 --x 1000000 --epsilon 0.2
"""

from harness.management.commands.normal_order import Command  # noqa: F401
