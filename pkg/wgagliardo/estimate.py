"""
Résultat numérique commun à tous les moteurs d'intégration.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional


class EstimateMethod(Enum):
    """Méthode ayant produit une estimation."""
    QUAD = "quad"
    MC = "mc"
    WHITNEY_LOWER = "whitney-lower"


@dataclass(frozen=True)
class Estimate:
    """
    Valeur numérique accompagnée d'une borne d'erreur.

    Attributes:
        value: Valeur estimée (puissance p-ième de la semi-norme le cas échéant)
        error: Borne d'erreur absolue
        method: Méthode utilisée
        samples: Nombre d'échantillons (MC) ou de cellules (quadrature)
        seed: Graine aléatoire (MC uniquement)
        one_sided: True si la valeur n'est qu'une borne inférieure
        extra: Métadonnées libres (compteurs, avertissements)
    """
    value: float
    error: float
    method: EstimateMethod
    samples: int = 0
    seed: Optional[int] = None
    one_sided: bool = False
    extra: Dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def relative_error(self) -> float:
        if self.value == 0.0:
            return 0.0 if self.error == 0.0 else float("inf")
        return self.error / abs(self.value)

    def scaled(self, factor: float) -> "Estimate":
        """Multiplie valeur et erreur par un facteur positif."""
        return Estimate(
            value=self.value * factor,
            error=self.error * abs(factor),
            method=self.method,
            samples=self.samples,
            seed=self.seed,
            one_sided=self.one_sided,
            extra=dict(self.extra),
        )

    def to_record(self) -> Dict[str, Any]:
        """Enregistrement JSON {value, error, method, n, seed}."""
        record = {
            "value": self.value,
            "error": self.error,
            "method": self.method.value,
            "n": self.samples,
            "seed": self.seed,
        }
        if self.one_sided:
            record["one_sided"] = True
        return record

    def __str__(self) -> str:
        flag = " (borne inférieure)" if self.one_sided else ""
        return f"{self.value:.10g} ± {self.error:.3g} [{self.method.value}]{flag}"
