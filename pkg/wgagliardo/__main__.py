"""Permet l'exécution par python -m wgagliardo."""

import sys

from .cli import main

sys.exit(main())
