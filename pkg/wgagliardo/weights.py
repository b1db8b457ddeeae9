"""
Poids puissances de la distance au bord et critères associés.

Ce module regroupe:
- la classe PowerWeight (x -> d_Omega(x)^{-gamma})
- le critère fermé d'appartenance aux classes de Muckenhoupt A_p
- la fonctionnelle A_p empirique sur des cubes (preuve unilatérale)
- le verdict d'admissibilité des paramètres (s, p, alpha, beta)
- les conditions de plongement (cond1, cond2, A_p de la somme)
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ParameterError
from .geometry import Domain, DomainKind
from .quadrature import gauss_legendre

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PowerWeight:
    """
    Poids w(x) = d_Omega(x)^{-gamma}.

    Attributes:
        gamma: Exposant (gamma > 0 fait exploser le poids au bord)
        domain: Domaine dont le bord porte la singularité
    """
    gamma: float
    domain: Domain

    def __call__(self, points) -> np.ndarray:
        dist = self.domain.distance(points)
        if self.gamma == 0.0:
            return np.ones_like(dist)
        with np.errstate(divide="ignore"):
            return dist ** (-self.gamma)

    def dual(self, p: float) -> "PowerWeight":
        """Poids dual w^{-1/(p-1)} intervenant dans la condition A_p."""
        if not p > 1.0:
            raise ParameterError(f"Le poids dual exige p > 1 (reçu {p})")
        return PowerWeight(-self.gamma / (p - 1.0), self.domain)


# ----------------------------------------------------------------------
# Classes de Muckenhoupt
# ----------------------------------------------------------------------

def ap_closed_form(gamma: float, p: float, codim: float) -> bool:
    """
    Critère fermé d'appartenance de d_Omega^{-gamma} à A_p.

    Pour p > 1: -(p-1) codim < gamma < codim. Pour p = 1: 0 <= gamma < codim.

    Args:
        gamma: Exposant du poids
        p: Exposant de la classe (p >= 1)
        codim: Codimension d'Assouad inférieure du bord (> 0)

    Raises:
        ParameterError: p < 1 ou codim <= 0

    Example:
        >>> ap_closed_form(0.5, 2.0, 1.0)
        True
    """
    if not p >= 1.0:
        raise ParameterError(f"La classe A_p exige p >= 1 (reçu {p})")
    if not codim > 0.0:
        raise ParameterError(f"La codimension doit être strictement positive (reçue {codim})")
    if p == 1.0:
        return 0.0 <= gamma < codim
    return -(p - 1.0) * codim < gamma < codim


@dataclass(frozen=True)
class Cube:
    """Cube fermé de centre center et de côté side."""
    center: Tuple[float, ...]
    side: float

    @property
    def lower(self) -> np.ndarray:
        return np.array(self.center) - 0.5 * self.side

    @property
    def upper(self) -> np.ndarray:
        return np.array(self.center) + 0.5 * self.side

    @property
    def measure(self) -> float:
        return self.side ** len(self.center)


@dataclass
class ApEstimate:
    """
    Fonctionnelle A_p empirique sur un échantillon de cubes.

    Attributes:
        value: Maximum sur les cubes retenus
        values: Valeur de la fonctionnelle pour chaque cube retenu
        skipped: Nombre de cubes ignorés (hors du domaine)
    """
    value: float
    values: List[float] = field(default_factory=list)
    skipped: int = 0

    def __float__(self) -> float:
        return float(self.value)

    @property
    def median(self) -> float:
        return float(np.median(self.values)) if self.values else math.nan


def _tensor_rule(dimension: int, n: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = gauss_legendre(n)
    unit_nodes = 0.5 * (nodes + 1.0)
    unit_weights = 0.5 * weights
    grids = np.meshgrid(*([unit_nodes] * dimension), indexing="ij")
    wgrids = np.meshgrid(*([unit_weights] * dimension), indexing="ij")
    points = np.stack([g.ravel() for g in grids], axis=1)
    w = np.prod(np.stack([g.ravel() for g in wgrids], axis=1), axis=1)
    return points, w


def _cube_integrals(
    domain: Domain,
    exponents: Sequence[float],
    cube: Cube,
    quad_points: int,
    levels: int,
) -> List[float]:
    """
    Intègre d_Omega^{-e} sur le cube pour chaque exposant e.

    Gauss-Legendre composite: les cellules dyadiques proches du bord sont
    subdivisées pendant levels générations.
    """
    d = len(cube.center)
    ref_points, ref_weights = _tensor_rule(d, quad_points)
    totals = np.zeros(len(exponents))
    lows = cube.lower.reshape(1, d)
    side = cube.side
    children = np.array(np.meshgrid(*([[0.0, 1.0]] * d), indexing="ij")).reshape(d, -1).T
    for generation in range(levels + 1):
        centers = lows + 0.5 * side
        if generation < levels:
            near = domain.distance(centers) <= 0.5 * side * math.sqrt(d)
        else:
            near = np.zeros(lows.shape[0], dtype=bool)
        far = lows[~near]
        if far.shape[0]:
            points = (far[:, None, :] + side * ref_points[None, :, :]).reshape(-1, d)
            dist = domain.distance(points).reshape(far.shape[0], -1)
            for k, e in enumerate(exponents):
                with np.errstate(divide="ignore"):
                    values = np.ones_like(dist) if e == 0.0 else dist ** (-e)
                totals[k] += side ** d * float(np.sum(values @ ref_weights))
        if not np.any(near):
            break
        half = 0.5 * side
        lows = (lows[near][:, None, :] + half * children[None, :, :]).reshape(-1, d)
        side = half
    return [float(v) for v in totals]


def _ap_functional(weight: PowerWeight, p: float, cube: Cube, quad_points: int, levels: int) -> float:
    exponents = (weight.gamma, -weight.gamma / (p - 1.0))
    direct, dual = _cube_integrals(weight.domain, exponents, cube, quad_points, levels)
    return (direct ** (1.0 / p)) * (dual ** ((p - 1.0) / p)) / cube.measure


def ap_constant_empirical(
    weight: PowerWeight,
    p: float,
    cube_sample: Sequence[Cube],
    quad_points: int = 8,
    levels: int = 8,
) -> ApEstimate:
    """
    Fonctionnelle A_p empirique

        max_Q |Q|^{-1} (\\int_Q w)^{1/p} (\\int_Q w^{-1/(p-1)})^{(p-1)/p}

    sur un échantillon de cubes. Les cubes qui ne rencontrent pas le domaine
    sont ignorés et comptés.

    Args:
        weight: Poids puissance
        p: Exposant (p > 1)
        cube_sample: Cubes à tester
        quad_points: Points de Gauss-Legendre par direction et par cellule
        levels: Générations de raffinement dyadique vers le bord

    Returns:
        ApEstimate (maximum, valeurs par cube, nombre de cubes ignorés)
    """
    if not p > 1.0:
        raise ParameterError(f"La fonctionnelle A_p empirique exige p > 1 (reçu {p})")
    domain = weight.domain
    values = []
    skipped = 0
    for cube in cube_sample:
        if len(cube.center) != domain.dimension:
            raise ParameterError("Cube de dimension incompatible avec le domaine")
        if domain.cube_outside(cube.lower, cube.upper):
            skipped += 1
            continue
        values.append(_ap_functional(weight, p, cube, quad_points, levels))
    if skipped:
        logger.warning("A_p empirique: %d cubes hors du domaine ignorés", skipped)
    value = max(values) if values else math.nan
    return ApEstimate(value, values, skipped)


def default_cube_sample(
    domain: Domain,
    count: int = 200,
    generations: int = 10,
    seed: int = 0,
) -> List[Cube]:
    """
    Échantillon de cubes par défaut: moitié de cubes dyadiques centrés en des
    points du bord, moitié de cubes aléatoires (centre uniforme, côté
    log-uniforme).
    """
    if count < 2:
        raise ParameterError("L'échantillon doit contenir au moins deux cubes")
    d = domain.dimension
    box = domain.bounding_box()
    if box is None:
        lo, hi = np.full(d, -2.0), np.full(d, 2.0)
    else:
        lo, hi = box
    side0 = 0.5 * float(np.max(hi - lo))

    rng = np.random.default_rng(seed)
    anchored = count // 2
    cubes: List[Cube] = []
    if domain.has_boundary:
        cloud = domain.boundary_points(side0 / 8.0)
        n_anchors = min(4, cloud.shape[0])
        anchors = cloud[np.linspace(0, cloud.shape[0] - 1, n_anchors).round().astype(int)]
        per_anchor = max(1, anchored // n_anchors)
        for anchor in anchors:
            for g in range(per_anchor):
                side = side0 * 0.5 ** (g % generations)
                cubes.append(Cube(tuple(float(v) for v in anchor), side))
    while len(cubes) < count:
        center = rng.uniform(lo, hi)
        side = side0 * 0.5 ** rng.uniform(0.0, generations)
        cubes.append(Cube(tuple(float(v) for v in center), float(side)))
    return cubes[:count]


def ap_boundary_sequence(
    weight: PowerWeight,
    p: float,
    generations: int = 6,
    anchor: Optional[Sequence[float]] = None,
    side: float = 1.0,
    quad_points: int = 8,
    base_levels: int = 6,
) -> List[float]:
    """
    Fonctionnelle A_p des cubes dyadiques centrés en un point du bord.

    La résolution absolue est fixée: le cube de génération g est raffiné sur
    base_levels + g générations. Pour un poids hors de A_p la suite croît sans
    borne; elle reste bornée sinon.
    """
    domain = weight.domain
    if anchor is None:
        box = domain.bounding_box()
        spacing = float(np.max(box[1] - box[0])) / 8.0 if box is not None else 0.25
        anchor = domain.boundary_points(spacing)[0]
    center = tuple(float(v) for v in np.atleast_1d(anchor))
    sequence = []
    for g in range(generations):
        cube = Cube(center, side * 0.5 ** g)
        sequence.append(_ap_functional(weight, p, cube, quad_points, base_levels + g))
    return sequence


# ----------------------------------------------------------------------
# Admissibilité
# ----------------------------------------------------------------------

class AdmissibilityRegime(Enum):
    """Régime garantissant la finitude de la semi-norme pondérée."""
    DV_RANGE = "DV-range"
    INVERSION_RANGE = "inversion-range"
    BOUNDED_UNIFORM_RANGE = "bounded-uniform-range"
    UNKNOWN = "unknown"


CITATIONS = {
    AdmissibilityRegime.DV_RANGE: "compact support in R^d: -sp<alpha,beta<d and alpha+beta<d",
    AdmissibilityRegime.INVERSION_RANGE: "support away from 0, inversion: -sp<alpha,beta<d and d-2sp<alpha+beta<2d-sp",
    AdmissibilityRegime.BOUNDED_UNIFORM_RANGE: "bounded uniform domain: alpha,beta<codim and alpha+beta<d-dimM+p(1-s)",
    AdmissibilityRegime.UNKNOWN: "no sufficient condition applies",
}

INVERSION_S0_CITATION = "support away from 0, s=0: 0<alpha,beta<d"


@dataclass(frozen=True)
class AdmissibilityVerdict:
    """
    Verdict de finitude.

    Attributes:
        finite: True si une condition suffisante s'applique, None sinon
        regime: Régime reconnu
        citation: Condition suffisante invoquée
    """
    finite: Optional[bool]
    regime: AdmissibilityRegime
    citation: str

    @property
    def is_known(self) -> bool:
        return self.regime != AdmissibilityRegime.UNKNOWN

    def to_record(self) -> Dict[str, object]:
        return {"finite": self.finite, "regime": self.regime.value, "citation": self.citation}

    def __str__(self) -> str:
        state = "fini" if self.finite else "inconnu"
        return f"{state} [{self.regime.value}] {self.citation}"


# Domaines à bord lipschitzien (codimension 1, dimension de Minkowski d - 1).
# Le demi-espace, non borné, est admis dans le régime borné uniforme: f est à
# support compact, et la queue lointaine impose en plus alpha, beta > -sp.
_LIPSCHITZ_KINDS = (
    DomainKind.INTERVAL, DomainKind.BOX, DomainKind.BALL,
    DomainKind.ANNULUS, DomainKind.HALF_SPACE,
)


def admissible_parameters(
    d: int,
    p: float,
    s: float,
    alpha: float,
    beta: float,
    support_excludes_origin: bool = False,
    domain_kind: Optional[DomainKind] = None,
) -> AdmissibilityVerdict:
    """
    Classe (s, p, alpha, beta) dans un régime de finitude connu.

    Les régimes sont des conditions suffisantes: un verdict "unknown" n'est
    pas une preuve de divergence.

    Args:
        d: Dimension
        p: Exposant (p >= 1)
        s: Ordre fractionnaire, 0 <= s < 1
        alpha, beta: Exposants des poids
        support_excludes_origin: True si le support de f évite 0
        domain_kind: Type de domaine (pour le régime borné uniforme)

    Raises:
        ParameterError: s hors de [0, 1[ ou p < 1

    Example:
        >>> admissible_parameters(1, 2.0, 0.5, 0.2, 0.2).regime
        <AdmissibilityRegime.DV_RANGE: 'DV-range'>
    """
    if not 0.0 <= s < 1.0:
        raise ParameterError(f"L'ordre s doit vérifier 0 <= s < 1 (reçu {s})")
    if not p >= 1.0:
        raise ParameterError(f"L'exposant p doit vérifier p >= 1 (reçu {p})")

    sp = s * p
    in_strip = -sp < alpha < d and -sp < beta < d
    total = alpha + beta

    if support_excludes_origin and s == 0.0 and 0.0 < alpha < d and 0.0 < beta < d:
        return AdmissibilityVerdict(True, AdmissibilityRegime.INVERSION_RANGE, INVERSION_S0_CITATION)
    if in_strip and total < d:
        regime = AdmissibilityRegime.DV_RANGE
        return AdmissibilityVerdict(True, regime, CITATIONS[regime])
    if support_excludes_origin and in_strip and d - 2.0 * sp < total < 2.0 * d - sp:
        regime = AdmissibilityRegime.INVERSION_RANGE
        return AdmissibilityVerdict(True, regime, CITATIONS[regime])
    if domain_kind in _LIPSCHITZ_KINDS:
        # Bord lipschitzien: codimension 1, dimension de Minkowski d - 1
        codim = 1.0
        dim_m = d - 1.0
        tail_ok = domain_kind != DomainKind.HALF_SPACE or (alpha > -sp and beta > -sp)
        if tail_ok and alpha < codim and beta < codim and total < d - dim_m + p * (1.0 - s):
            regime = AdmissibilityRegime.BOUNDED_UNIFORM_RANGE
            return AdmissibilityVerdict(True, regime, CITATIONS[regime])
    regime = AdmissibilityRegime.UNKNOWN
    return AdmissibilityVerdict(None, regime, CITATIONS[regime])


# ----------------------------------------------------------------------
# Conditions de plongement
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class EmbeddingConditions:
    """
    Conditions de la proposition de plongement.

    Attributes:
        cond1: d^{-alpha} et d^{-beta} sont dans A_1
        cond2: alpha beta >= 0 et d^{-alpha-beta} est dans A_1
        ap_sum: d^{-alpha-beta} est dans A_p
    """
    cond1: bool
    cond2: bool
    ap_sum: bool

    def to_record(self) -> Dict[str, bool]:
        return {"cond1": self.cond1, "cond2": self.cond2, "ap_sum": self.ap_sum}


def embedding_conditions(alpha: float, beta: float, p: float, codim: float) -> EmbeddingConditions:
    """
    Évalue cond1, cond2 et l'appartenance A_p du poids somme par le critère fermé.

    Example:
        >>> embedding_conditions(0.3, 0.3, 2.0, 1.0)
        EmbeddingConditions(cond1=True, cond2=True, ap_sum=True)
    """
    cond1 = ap_closed_form(alpha, 1.0, codim) and ap_closed_form(beta, 1.0, codim)
    cond2 = holder_comparison_applies(alpha, beta) and ap_closed_form(alpha + beta, 1.0, codim)
    ap_sum = ap_closed_form(alpha + beta, p, codim)
    return EmbeddingConditions(cond1, cond2, ap_sum)


def holder_comparison_applies(alpha: float, beta: float) -> bool:
    """Hypothèse alpha beta >= 0 de la comparaison [f]_{alpha,beta} <= [f]_{alpha+beta,0}."""
    return alpha * beta >= 0.0
