"""
Exceptions du laboratoire wgagliardo.

Toutes les erreurs levées par le package dérivent de WGagliardoError, ce qui
permet à la ligne de commande de les traduire en codes de sortie.
"""

from typing import Optional


class WGagliardoError(Exception):
    """Erreur de base du package."""


class ParameterError(WGagliardoError, ValueError):
    """Paramètre hors de son domaine de validité (dimension, exposant, ...)."""


class SingularityError(ParameterError):
    """Évaluation en un point singulier (par exemple l'inversion en 0)."""


class UnsupportedError(WGagliardoError, NotImplementedError):
    """Configuration valide mais non prise en charge par le moteur demandé."""


class DivergenceError(WGagliardoError, ArithmeticError):
    """Intégrale non convergente ou raffinement divergent."""


class ConfigError(ParameterError):
    """
    Erreur de configuration localisée dans le texte source.

    Attributes:
        lineno: Numéro de ligne (1-indexé) ou None si inconnu
        key: Clé fautive, si elle est connue
    """

    def __init__(self, message: str, lineno: Optional[int] = None, key: Optional[str] = None):
        self.lineno = lineno
        self.key = key
        prefix = f"ligne {lineno}: " if lineno is not None else ""
        super().__init__(prefix + message)
