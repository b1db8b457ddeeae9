"""
Domaines ouverts de R^d et géométrie de leur bord.

Ce module fournit:
- la classe Domain (intervalle, pavé, boule, couronne, demi-espace,
  espace épointé R^d \\ {0}, espace entier) avec une distance au bord exacte
- la décomposition de Whitney en cubes dyadiques
- les estimateurs de codimension d'Assouad inférieure (condition d'Aikawa)
  et de dimension de Minkowski supérieure (comptage de boîtes)
"""

import logging
import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .constants import sphere_measure
from .errors import ParameterError, UnsupportedError
from .estimate import Estimate, EstimateMethod

logger = logging.getLogger(__name__)

Point = Union[float, Sequence[float], np.ndarray]


class DomainKind(Enum):
    """Type de domaine (tous à distance au bord explicite)."""
    INTERVAL = "interval"
    BOX = "box"
    BALL = "ball"
    ANNULUS = "annulus"
    HALF_SPACE = "half-space"
    PUNCTURED_SPACE = "punctured-space"
    FULL_SPACE = "full-space"


_BOUNDED_KINDS = (DomainKind.INTERVAL, DomainKind.BOX, DomainKind.BALL, DomainKind.ANNULUS)


def as_points(points: Point, dimension: int) -> np.ndarray:
    """
    Convertit un point ou un nuage de points en tableau (n, d).

    Raises:
        ParameterError: Si la dimension ne correspond pas
    """
    array = np.asarray(points, dtype=float)
    if array.ndim == 0:
        array = array.reshape(1, 1)
    elif array.ndim == 1:
        if dimension == 1 and array.shape[0] != 1:
            array = array.reshape(-1, 1)
        else:
            array = array.reshape(1, -1)
    if array.ndim != 2 or array.shape[1] != dimension:
        raise ParameterError(
            f"Dimension incompatible: attendu {dimension}, reçu un tableau de forme {np.shape(points)}"
        )
    return array


@dataclass(frozen=True)
class Domain:
    """
    Domaine ouvert Omega de R^d.

    Les constructeurs de classe (interval, box, ball, ...) sont la manière
    normale de créer un domaine.

    Attributes:
        kind: Type de domaine
        dimension: Dimension d de l'espace ambiant
        lower: Coin inférieur (intervalle, pavé)
        upper: Coin supérieur (intervalle, pavé)
        center: Centre (boule, couronne)
        radius: Rayon (boule) ou rayon extérieur (couronne)
        inner_radius: Rayon intérieur (couronne)
    """
    kind: DomainKind
    dimension: int
    lower: Tuple[float, ...] = ()
    upper: Tuple[float, ...] = ()
    center: Tuple[float, ...] = ()
    radius: float = 0.0
    inner_radius: float = 0.0

    def __post_init__(self):
        d = self.dimension
        if int(d) != d or d < 1:
            raise ParameterError(f"La dimension doit être un entier >= 1 (reçu {d})")
        if self.kind in (DomainKind.INTERVAL, DomainKind.BOX):
            if len(self.lower) != d or len(self.upper) != d:
                raise ParameterError("Les coins du pavé doivent avoir la dimension du domaine")
            if any(lo >= hi for lo, hi in zip(self.lower, self.upper)):
                raise ParameterError("Pavé vide: chaque borne inférieure doit précéder la borne supérieure")
        if self.kind in (DomainKind.BALL, DomainKind.ANNULUS):
            if len(self.center) != d:
                raise ParameterError("Le centre doit avoir la dimension du domaine")
            if not self.radius > 0.0:
                raise ParameterError(f"Rayon strictement positif requis (reçu {self.radius})")
        if self.kind == DomainKind.ANNULUS and not 0.0 < self.inner_radius < self.radius:
            raise ParameterError("Couronne: il faut 0 < rayon intérieur < rayon extérieur")

    # ------------------------------------------------------------------
    # Constructeurs
    # ------------------------------------------------------------------

    @classmethod
    def interval(cls, a: float, b: float) -> "Domain":
        """Intervalle ouvert ]a, b[ de R."""
        return cls(DomainKind.INTERVAL, 1, lower=(float(a),), upper=(float(b),))

    @classmethod
    def box(cls, lower: Sequence[float], upper: Sequence[float]) -> "Domain":
        """Pavé ouvert prod ]lower_i, upper_i[."""
        lower = tuple(float(v) for v in lower)
        upper = tuple(float(v) for v in upper)
        return cls(DomainKind.BOX, len(lower), lower=lower, upper=upper)

    @classmethod
    def unit_cube(cls, dimension: int) -> "Domain":
        return cls.box([0.0] * dimension, [1.0] * dimension)

    @classmethod
    def ball(cls, center: Sequence[float], radius: float) -> "Domain":
        center = tuple(float(v) for v in np.atleast_1d(center))
        return cls(DomainKind.BALL, len(center), center=center, radius=float(radius))

    @classmethod
    def annulus(cls, center: Sequence[float], inner_radius: float, outer_radius: float) -> "Domain":
        center = tuple(float(v) for v in np.atleast_1d(center))
        return cls(
            DomainKind.ANNULUS, len(center), center=center,
            radius=float(outer_radius), inner_radius=float(inner_radius),
        )

    @classmethod
    def half_space(cls, dimension: int) -> "Domain":
        """Demi-espace {x_d > 0}."""
        return cls(DomainKind.HALF_SPACE, dimension)

    @classmethod
    def punctured_space(cls, dimension: int) -> "Domain":
        """R^d privé de l'origine: d_Omega(x) = |x|."""
        return cls(DomainKind.PUNCTURED_SPACE, dimension)

    @classmethod
    def full_space(cls, dimension: int) -> "Domain":
        """R^d entier: bord vide, distance au bord infinie."""
        return cls(DomainKind.FULL_SPACE, dimension)

    # ------------------------------------------------------------------
    # Propriétés
    # ------------------------------------------------------------------

    @property
    def is_bounded(self) -> bool:
        return self.kind in _BOUNDED_KINDS

    @property
    def has_boundary(self) -> bool:
        return self.kind != DomainKind.FULL_SPACE

    @property
    def codimension(self) -> float:
        """Codimension d'Assouad inférieure exacte du bord (connue pour chaque type)."""
        if self.kind == DomainKind.PUNCTURED_SPACE:
            return float(self.dimension)
        if self.kind == DomainKind.FULL_SPACE:
            return math.inf
        return 1.0

    @property
    def boundary_dimension(self) -> float:
        """Dimension de Minkowski supérieure exacte du bord."""
        if self.kind == DomainKind.PUNCTURED_SPACE:
            return 0.0
        if self.kind == DomainKind.FULL_SPACE:
            return -math.inf
        return float(self.dimension - 1)

    def bounding_box(self) -> Optional[Tuple[np.ndarray, np.ndarray]]:
        """Boîte englobante (None pour un domaine non borné)."""
        if self.kind in (DomainKind.INTERVAL, DomainKind.BOX):
            return np.array(self.lower), np.array(self.upper)
        if self.kind in (DomainKind.BALL, DomainKind.ANNULUS):
            c = np.array(self.center)
            return c - self.radius, c + self.radius
        return None

    # ------------------------------------------------------------------
    # Distance au bord et appartenance (vectorisées)
    # ------------------------------------------------------------------

    def distance(self, points: Point) -> np.ndarray:
        """
        Distance au bord d_Omega pour un nuage de points (n, d).

        La formule est exacte pour tous les types, y compris hors du domaine.
        """
        x = as_points(points, self.dimension)
        kind = self.kind
        if kind in (DomainKind.INTERVAL, DomainKind.BOX):
            lo = np.array(self.lower)
            hi = np.array(self.upper)
            inside = np.all((x > lo) & (x < hi), axis=1)
            inner = np.min(np.minimum(x - lo, hi - x), axis=1)
            outer = np.linalg.norm(np.maximum(np.maximum(lo - x, x - hi), 0.0), axis=1)
            return np.where(inside, inner, outer)
        if kind == DomainKind.BALL:
            rho = np.linalg.norm(x - np.array(self.center), axis=1)
            return np.abs(rho - self.radius)
        if kind == DomainKind.ANNULUS:
            rho = np.linalg.norm(x - np.array(self.center), axis=1)
            return np.minimum(np.abs(rho - self.inner_radius), np.abs(rho - self.radius))
        if kind == DomainKind.HALF_SPACE:
            return np.abs(x[:, -1])
        if kind == DomainKind.PUNCTURED_SPACE:
            return np.linalg.norm(x, axis=1)
        return np.full(x.shape[0], np.inf)

    def contains(self, points: Point) -> np.ndarray:
        """Test d'appartenance au domaine ouvert."""
        x = as_points(points, self.dimension)
        kind = self.kind
        if kind in (DomainKind.INTERVAL, DomainKind.BOX):
            return np.all((x > np.array(self.lower)) & (x < np.array(self.upper)), axis=1)
        if kind == DomainKind.BALL:
            return np.linalg.norm(x - np.array(self.center), axis=1) < self.radius
        if kind == DomainKind.ANNULUS:
            rho = np.linalg.norm(x - np.array(self.center), axis=1)
            return (rho > self.inner_radius) & (rho < self.radius)
        if kind == DomainKind.HALF_SPACE:
            return x[:, -1] > 0.0
        if kind == DomainKind.PUNCTURED_SPACE:
            return np.linalg.norm(x, axis=1) > 0.0
        return np.ones(x.shape[0], dtype=bool)

    # ------------------------------------------------------------------
    # Outils unidimensionnels (utilisés par les quadratures en d = 1)
    # ------------------------------------------------------------------

    def boundary_points_1d(self) -> List[float]:
        """Points du bord en dimension 1, triés."""
        self._require_dimension_one()
        kind = self.kind
        if kind == DomainKind.INTERVAL:
            return [self.lower[0], self.upper[0]]
        if kind == DomainKind.BALL:
            c = self.center[0]
            return [c - self.radius, c + self.radius]
        if kind == DomainKind.ANNULUS:
            c = self.center[0]
            return [c - self.radius, c - self.inner_radius, c + self.inner_radius, c + self.radius]
        if kind in (DomainKind.HALF_SPACE, DomainKind.PUNCTURED_SPACE):
            return [0.0]
        return []

    def components_1d(self) -> List[Tuple[float, float]]:
        """Composantes connexes (intervalles ouverts) du domaine en dimension 1."""
        self._require_dimension_one()
        kind = self.kind
        if kind in (DomainKind.INTERVAL, DomainKind.BALL):
            b = self.boundary_points_1d()
            return [(b[0], b[1])]
        if kind == DomainKind.ANNULUS:
            b = self.boundary_points_1d()
            return [(b[0], b[1]), (b[2], b[3])]
        if kind == DomainKind.HALF_SPACE:
            return [(0.0, math.inf)]
        if kind == DomainKind.PUNCTURED_SPACE:
            return [(-math.inf, 0.0), (0.0, math.inf)]
        return [(-math.inf, math.inf)]

    def nearest_boundary_1d(self, x: float) -> Optional[float]:
        """Point du bord réalisant d_Omega(x) (None si le bord est vide)."""
        points = self.boundary_points_1d()
        if not points:
            return None
        return min(points, key=lambda b: (abs(x - b), b))

    def switch_points_1d(self) -> List[float]:
        """Points où le point du bord le plus proche change (milieux)."""
        points = self.boundary_points_1d()
        return [0.5 * (a + b) for a, b in zip(points[:-1], points[1:])]

    def _require_dimension_one(self) -> None:
        if self.dimension != 1:
            raise ParameterError("Opération réservée aux domaines de dimension 1")

    # ------------------------------------------------------------------
    # Cubes (décomposition de Whitney)
    # ------------------------------------------------------------------

    def _cube_radii(self, lo: np.ndarray, hi: np.ndarray) -> Tuple[float, float]:
        c = np.array(self.center)
        near = float(np.linalg.norm(np.maximum(np.maximum(lo - c, c - hi), 0.0)))
        far = float(np.linalg.norm(np.maximum(np.abs(lo - c), np.abs(hi - c))))
        return near, far

    def cube_inside(self, lo: np.ndarray, hi: np.ndarray) -> bool:
        """Vrai si l'adhérence du cube est contenue dans le domaine."""
        kind = self.kind
        if kind in (DomainKind.INTERVAL, DomainKind.BOX):
            return bool(np.all(lo > np.array(self.lower)) and np.all(hi < np.array(self.upper)))
        if kind == DomainKind.BALL:
            return self._cube_radii(lo, hi)[1] < self.radius
        if kind == DomainKind.ANNULUS:
            near, far = self._cube_radii(lo, hi)
            return near > self.inner_radius and far < self.radius
        if kind == DomainKind.HALF_SPACE:
            return bool(lo[-1] > 0.0)
        if kind == DomainKind.PUNCTURED_SPACE:
            return float(np.linalg.norm(np.maximum(np.maximum(lo, -hi), 0.0))) > 0.0
        return True

    def cube_outside(self, lo: np.ndarray, hi: np.ndarray) -> bool:
        """Vrai si l'intérieur du cube ne rencontre pas le domaine."""
        kind = self.kind
        if kind in (DomainKind.INTERVAL, DomainKind.BOX):
            return bool(np.any(hi <= np.array(self.lower)) or np.any(lo >= np.array(self.upper)))
        if kind == DomainKind.BALL:
            return self._cube_radii(lo, hi)[0] >= self.radius
        if kind == DomainKind.ANNULUS:
            near, far = self._cube_radii(lo, hi)
            return far <= self.inner_radius or near >= self.radius
        if kind == DomainKind.HALF_SPACE:
            return bool(hi[-1] <= 0.0)
        return False

    def cube_distance(self, lo: np.ndarray, hi: np.ndarray) -> float:
        """dist(Q, bord) pour un cube Q dont l'adhérence est dans le domaine."""
        kind = self.kind
        if kind in (DomainKind.INTERVAL, DomainKind.BOX):
            return float(min(np.min(lo - np.array(self.lower)), np.min(np.array(self.upper) - hi)))
        if kind == DomainKind.BALL:
            return self.radius - self._cube_radii(lo, hi)[1]
        if kind == DomainKind.ANNULUS:
            near, far = self._cube_radii(lo, hi)
            return min(near - self.inner_radius, self.radius - far)
        if kind == DomainKind.HALF_SPACE:
            return float(lo[-1])
        if kind == DomainKind.PUNCTURED_SPACE:
            return float(np.linalg.norm(np.maximum(np.maximum(lo, -hi), 0.0)))
        return math.inf

    # ------------------------------------------------------------------
    # Nuages de points du bord
    # ------------------------------------------------------------------

    def boundary_points(self, spacing: float) -> np.ndarray:
        """
        Nuage de points du bord avec un pas d'au plus spacing.

        Pour le demi-espace, seule la fenêtre [-1, 1]^{d-1} du bord est
        échantillonnée.

        Raises:
            ParameterError: Bord vide ou pas non positif
            UnsupportedError: Sphères en dimension > 3
        """
        if not spacing > 0.0:
            raise ParameterError(f"Le pas d'échantillonnage doit être positif (reçu {spacing})")
        d = self.dimension
        kind = self.kind
        if kind == DomainKind.FULL_SPACE:
            raise ParameterError("L'espace entier n'a pas de bord")
        if kind == DomainKind.PUNCTURED_SPACE:
            return np.zeros((1, d))
        if kind == DomainKind.HALF_SPACE:
            if d == 1:
                return np.zeros((1, 1))
            window = _grid(np.full(d - 1, -1.0), np.full(d - 1, 1.0), spacing)
            return np.hstack([window, np.zeros((window.shape[0], 1))])
        if kind in (DomainKind.INTERVAL, DomainKind.BOX):
            return _box_surface(np.array(self.lower), np.array(self.upper), spacing)
        clouds = [_sphere_points(np.array(self.center), self.radius, spacing)]
        if kind == DomainKind.ANNULUS:
            clouds.append(_sphere_points(np.array(self.center), self.inner_radius, spacing))
        return np.vstack(clouds)

    def __str__(self) -> str:
        return format_domain(self)


def _grid(lo: np.ndarray, hi: np.ndarray, spacing: float) -> np.ndarray:
    axes = [np.linspace(a, b, int(math.ceil((b - a) / spacing)) + 1) for a, b in zip(lo, hi)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def _box_surface(lo: np.ndarray, hi: np.ndarray, spacing: float) -> np.ndarray:
    d = lo.shape[0]
    if d == 1:
        return np.array([[lo[0]], [hi[0]]])
    faces = []
    for axis in range(d):
        others = [k for k in range(d) if k != axis]
        face = _grid(lo[others], hi[others], spacing)
        for value in (lo[axis], hi[axis]):
            points = np.empty((face.shape[0], d))
            points[:, others] = face
            points[:, axis] = value
            faces.append(points)
    return np.vstack(faces)


def _sphere_points(center: np.ndarray, radius: float, spacing: float) -> np.ndarray:
    d = center.shape[0]
    if d == 1:
        return np.array([[center[0] - radius], [center[0] + radius]])
    if d == 2:
        n = int(math.ceil(2.0 * math.pi * radius / spacing))
        theta = 2.0 * math.pi * np.arange(n) / n
        return center + radius * np.stack([np.cos(theta), np.sin(theta)], axis=1)
    if d == 3:
        # Réseau de Fibonacci: pas moyen ~ sqrt(4 pi r^2 / n)
        n = int(math.ceil(4.0 * math.pi * radius ** 2 / spacing ** 2))
        k = np.arange(n) + 0.5
        z = 1.0 - 2.0 * k / n
        phi = math.pi * (1.0 + math.sqrt(5.0)) * k
        rho = np.sqrt(1.0 - z * z)
        return center + radius * np.stack([rho * np.cos(phi), rho * np.sin(phi), z], axis=1)
    raise UnsupportedError("Échantillonnage de sphères limité à d <= 3")


# ----------------------------------------------------------------------
# Opérations
# ----------------------------------------------------------------------

def distance_to_boundary(domain: Domain, x: Point) -> float:
    """
    Distance du point x au bord du domaine.

    Args:
        domain: Domaine
        x: Point de dimension domain.dimension

    Returns:
        d_Omega(x)

    Raises:
        ParameterError: Si la dimension de x ne correspond pas

    Example:
        >>> distance_to_boundary(Domain.ball([0.0, 0.0], 1.0), [0.5, 0.0])
        0.5
    """
    points = as_points(x, domain.dimension)
    if points.shape[0] != 1:
        raise ParameterError("distance_to_boundary attend un seul point")
    return float(domain.distance(points)[0])


@dataclass(frozen=True)
class WhitneyCube:
    """
    Cube dyadique d'une décomposition de Whitney.

    Attributes:
        center: Centre du cube
        side: Longueur du côté l(Q)
        generation: Profondeur dyadique (0 pour le cube racine)
        distance: dist(Q, bord) (0 pour un cube tronqué qui touche le bord)
        truncated: True si le cube a été émis faute de pouvoir être subdivisé
    """
    center: Tuple[float, ...]
    side: float
    generation: int
    distance: float
    truncated: bool = False

    @property
    def dimension(self) -> int:
        return len(self.center)

    @property
    def diameter(self) -> float:
        return self.side * math.sqrt(self.dimension)

    @property
    def measure(self) -> float:
        return self.side ** self.dimension

    @property
    def lower(self) -> np.ndarray:
        return np.array(self.center) - 0.5 * self.side

    @property
    def upper(self) -> np.ndarray:
        return np.array(self.center) + 0.5 * self.side


def whitney_decompose(domain: Domain, min_side: float) -> List[WhitneyCube]:
    """
    Décomposition de Whitney d'un domaine borné en cubes dyadiques.

    Un cube est accepté quand son adhérence est dans le domaine et que
    diam(Q) <= dist(Q, bord); la construction garantit alors
    dist(Q, bord) <= 4 diam(Q). Les cubes qui devraient être subdivisés
    sous min_side sont émis avec truncated=True.

    Args:
        domain: Domaine borné
        min_side: Côté minimal autorisé

    Returns:
        Liste des cubes, acceptés puis tronqués, dans l'ordre de parcours

    Raises:
        UnsupportedError: Domaine non borné
        ParameterError: min_side <= 0
    """
    if not domain.is_bounded:
        raise UnsupportedError(f"Décomposition de Whitney impossible: domaine {domain.kind.value} non borné")
    if not min_side > 0.0:
        raise ParameterError(f"min_side doit être strictement positif (reçu {min_side})")

    lo, hi = domain.bounding_box()
    side = float(np.max(hi - lo))
    d = domain.dimension
    offsets = np.array(np.meshgrid(*([[0.0, 1.0]] * d), indexing="ij")).reshape(d, -1).T

    cubes: List[WhitneyCube] = []
    truncated = 0
    queue = deque([(lo.astype(float), side, 0)])
    while queue:
        corner, length, generation = queue.popleft()
        upper = corner + length
        if domain.cube_outside(corner, upper):
            continue
        diameter = length * math.sqrt(d)
        center = tuple(float(v) for v in corner + 0.5 * length)
        if domain.cube_inside(corner, upper):
            dist = domain.cube_distance(corner, upper)
            if dist >= diameter:
                cubes.append(WhitneyCube(center, length, generation, dist))
                continue
        half = 0.5 * length
        if half >= min_side:
            for offset in offsets:
                queue.append((corner + half * offset, half, generation + 1))
        else:
            truncated += 1
            dist = domain.cube_distance(corner, upper) if domain.cube_inside(corner, upper) else 0.0
            cubes.append(WhitneyCube(center, length, generation, max(dist, 0.0), truncated=True))

    if truncated:
        logger.warning("Whitney: %d cubes tronqués au côté %.3g", truncated, min_side)
    return cubes


# ----------------------------------------------------------------------
# Condition d'Aikawa et dimensions du bord
# ----------------------------------------------------------------------

def _stratified_directions(d: int, n: int, rng: np.random.Generator) -> np.ndarray:
    if d == 1:
        signs = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
        return rng.permutation(signs).reshape(n, 1)
    if d == 2:
        theta = 2.0 * math.pi * (np.arange(n) + 0.5) / n
        theta = rng.permutation(theta)
        return np.stack([np.cos(theta), np.sin(theta)], axis=1)
    directions = rng.standard_normal((n, d))
    return directions / np.linalg.norm(directions, axis=1, keepdims=True)


def aikawa_ratio(
    domain: Domain,
    rho: float,
    x: Point,
    r: float,
    n_samples: int = 4096,
    seed: int = 0,
) -> Estimate:
    """
    Estimation Monte-Carlo du quotient d'Aikawa

        r^rho |B(x, r)|^{-1} \\int_{B(x,r)} dist(y, bord)^{-rho} dy.

    Les rayons suivent la densité t^{d-kappa-1} (kappa = rho si rho < d) par
    strates au point milieu; les directions sont stratifiées en angle en
    dimension 2. Une estimation divergente est renvoyée telle quelle (elle
    croît avec n_samples), jamais levée.

    Args:
        domain: Domaine
        rho: Exposant de la condition
        x: Centre de la boule (en général un point du bord)
        r: Rayon de la boule
        n_samples: Nombre d'échantillons
        seed: Graine du générateur

    Returns:
        Estimate (valeur, erreur à 3 écarts-types)
    """
    d = domain.dimension
    center = as_points(x, d)[0]
    if not r > 0.0:
        raise ParameterError(f"Le rayon doit être strictement positif (reçu {r})")
    if n_samples < 2:
        raise ParameterError("Au moins deux échantillons sont nécessaires")

    kappa = rho if rho < d else d - 0.5
    rng = np.random.default_rng(seed)
    u = (np.arange(n_samples) + 0.5) / n_samples
    t = r * u ** (1.0 / (d - kappa))
    directions = _stratified_directions(d, n_samples, rng)
    y = center + t[:, None] * directions
    dist = domain.distance(y)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        terms = d / (d - kappa) * (t / r) ** kappa * (dist / r) ** (-rho)
    value = float(np.mean(terms))
    if np.all(np.isfinite(terms)):
        error = 3.0 * float(np.std(terms, ddof=1)) / math.sqrt(n_samples)
    else:
        error = math.inf
    return Estimate(value, error, EstimateMethod.MC, samples=n_samples, seed=seed)


def _anchor_points(domain: Domain, count: int) -> np.ndarray:
    box = domain.bounding_box()
    extent = float(np.max(box[1] - box[0])) if box is not None else 2.0
    cloud = domain.boundary_points(extent / 64.0)
    if cloud.shape[0] <= count:
        return cloud
    index = np.linspace(0, cloud.shape[0] - 1, count).round().astype(int)
    return cloud[index]


def _aikawa_bounded(
    domain: Domain,
    rho: float,
    anchors: np.ndarray,
    radii: Sequence[float],
    n_samples: int,
    growth: int,
    seed: int,
) -> bool:
    for anchor in anchors:
        base = aikawa_ratio(domain, rho, anchor, radii[0], n_samples, seed).value
        if not math.isfinite(base):
            return False
        for r in radii:
            small = aikawa_ratio(domain, rho, anchor, r, n_samples, seed).value
            large = aikawa_ratio(domain, rho, anchor, r, growth * n_samples, seed).value
            if not (math.isfinite(small) and math.isfinite(large)):
                return False
            # Borné: au plus 10 fois la valeur au rayon le plus grossier, sans croissance en n
            if small > 10.0 * base or large > 1.5 * small:
                return False
    return True


def lower_assouad_codim(
    domain: Domain,
    rho_grid: Sequence[float],
    n_samples: int = 2048,
    seed: int = 0,
    anchors: int = 3,
    levels: int = 4,
    growth: int = 16,
    refinements: int = 3,
    verbose: bool = False,
) -> float:
    """
    Estimation de la codimension d'Assouad inférieure du bord.

    Renvoie le plus grand rho de la grille pour lequel le quotient d'Aikawa
    reste borné sur les points du bord et rayons dyadiques testés, affiné par
    dichotomie vers le premier rho non borné. L'estimateur est unilatéral:
    il certifie les échecs et ne fait que suggérer les succès.

    Raises:
        ParameterError: Grille vide, non croissante ou hors de ]0, d]
    """
    grid = [float(v) for v in rho_grid]
    d = domain.dimension
    if not grid:
        raise ParameterError("La grille des exposants rho est vide")
    if any(b <= a for a, b in zip(grid[:-1], grid[1:])):
        raise ParameterError("La grille des exposants rho doit être strictement croissante")
    if grid[0] <= 0.0 or grid[-1] > d:
        raise ParameterError(f"Les exposants rho doivent être dans ]0, {d}]")

    points = _anchor_points(domain, anchors)
    box = domain.bounding_box()
    r0 = 0.25 * float(np.max(box[1] - box[0])) if box is not None else 0.5
    radii = [r0 * 0.5 ** k for k in range(levels)]
    log = logger.info if verbose else logger.debug

    def bounded(rho: float) -> bool:
        result = _aikawa_bounded(domain, rho, points, radii, n_samples, growth, seed)
        log("Aikawa rho=%.4f: %s", rho, "borné" if result else "non borné")
        return result

    last_bounded: Optional[float] = None
    first_unbounded: Optional[float] = None
    for rho in grid:
        if bounded(rho):
            last_bounded = rho
        else:
            first_unbounded = rho
            break

    if last_bounded is None:
        logger.warning("Aucun exposant de la grille ne vérifie la condition d'Aikawa")
        return 0.0
    if first_unbounded is None:
        return last_bounded

    lo, hi = last_bounded, first_unbounded
    for _ in range(refinements):
        mid = 0.5 * (lo + hi)
        if bounded(mid):
            lo = mid
        else:
            hi = mid
    return lo


def minkowski_upper_dim(domain: Union[Domain, np.ndarray], scales: Sequence[float]) -> float:
    """
    Dimension de Minkowski supérieure du bord par comptage de boîtes.

    Pente de la droite des moindres carrés de log N(eps) contre log(1/eps).
    Accepte un domaine (son bord est échantillonné au pas min(scales)/4) ou
    directement un nuage de points (n, d).

    Raises:
        ParameterError: Moins de 3 échelles, échelles non décroissantes ou non positives
    """
    eps = np.asarray(scales, dtype=float)
    if eps.size < 3:
        raise ParameterError("Au moins 3 échelles sont nécessaires")
    if np.any(eps <= 0.0) or np.any(np.diff(eps) >= 0.0):
        raise ParameterError("Les échelles doivent être positives et strictement décroissantes")

    if isinstance(domain, Domain):
        points = domain.boundary_points(float(eps.min()) / 4.0)
    else:
        points = np.atleast_2d(np.asarray(domain, dtype=float))

    # Décalage irrationnel de la grille pour éviter les alignements exacts
    offset = 1.0 / math.pi
    counts = []
    for e in eps:
        boxes = np.floor(points / e + offset)
        counts.append(np.unique(boxes, axis=0).shape[0])
    slope, _ = np.polyfit(np.log(1.0 / eps), np.log(np.asarray(counts, dtype=float)), 1)
    return float(slope)


def aikawa_closed_form(dimension: int, rho: float) -> float:
    """Quotient d'Aikawa exact d/(d - rho) de l'espace épointé centré en 0."""
    if rho >= dimension:
        return math.inf
    return dimension / (dimension - rho)


# ----------------------------------------------------------------------
# Sérialisation clé = valeur
# ----------------------------------------------------------------------

def _format_vector(values: Sequence[float]) -> str:
    return ", ".join(repr(float(v)) for v in values)


def _parse_vector(text: str) -> Tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise ParameterError(f"Vecteur décimal invalide: {text!r}") from exc


def domain_to_block(domain: Domain) -> Dict[str, str]:
    """Descripteur texte d'un domaine (clés du bloc [domain])."""
    block = {"kind": domain.kind.value, "dimension": str(domain.dimension)}
    if domain.kind in (DomainKind.INTERVAL, DomainKind.BOX):
        block["lower"] = _format_vector(domain.lower)
        block["upper"] = _format_vector(domain.upper)
    if domain.kind in (DomainKind.BALL, DomainKind.ANNULUS):
        block["center"] = _format_vector(domain.center)
        block["radius"] = repr(domain.radius)
    if domain.kind == DomainKind.ANNULUS:
        block["inner_radius"] = repr(domain.inner_radius)
    return block


DOMAIN_KEYS = ("kind", "dimension", "lower", "upper", "center", "radius", "inner_radius")


def domain_from_block(block: Mapping[str, str]) -> Domain:
    """
    Reconstruit un domaine à partir de son descripteur texte.

    Raises:
        ParameterError: Type inconnu, clé manquante ou valeur invalide
    """
    unknown = set(block) - set(DOMAIN_KEYS)
    if unknown:
        raise ParameterError(f"Clés de domaine inconnues: {', '.join(sorted(unknown))}")
    try:
        kind = DomainKind(block.get("kind", "").strip())
    except ValueError:
        raise ParameterError(f"Type de domaine inconnu: {block.get('kind')!r}") from None

    def need(key: str) -> str:
        if key not in block:
            raise ParameterError(f"Clé '{key}' requise pour un domaine {kind.value}")
        return block[key]

    def number(key: str) -> float:
        try:
            return float(need(key))
        except ValueError:
            raise ParameterError(f"Valeur décimale invalide pour '{key}': {block[key]!r}") from None

    if kind == DomainKind.INTERVAL:
        return Domain.interval(_parse_vector(need("lower"))[0], _parse_vector(need("upper"))[0])
    if kind == DomainKind.BOX:
        return Domain.box(_parse_vector(need("lower")), _parse_vector(need("upper")))
    if kind == DomainKind.BALL:
        return Domain.ball(_parse_vector(need("center")), number("radius"))
    if kind == DomainKind.ANNULUS:
        return Domain.annulus(_parse_vector(need("center")), number("inner_radius"), number("radius"))

    text = need("dimension")
    try:
        dimension = int(text)
    except ValueError:
        raise ParameterError(f"Dimension entière invalide: {text!r}") from None
    if kind == DomainKind.HALF_SPACE:
        return Domain.half_space(dimension)
    if kind == DomainKind.PUNCTURED_SPACE:
        return Domain.punctured_space(dimension)
    return Domain.full_space(dimension)


def format_domain(domain: Domain) -> str:
    """Représentation lisible d'un domaine."""
    kind = domain.kind
    if kind in (DomainKind.INTERVAL, DomainKind.BOX):
        sides = " x ".join(f"]{lo:g}, {hi:g}[" for lo, hi in zip(domain.lower, domain.upper))
        return f"{kind.value} {sides}"
    if kind == DomainKind.BALL:
        return f"ball B({_format_vector(domain.center)}; {domain.radius:g})"
    if kind == DomainKind.ANNULUS:
        return f"annulus {domain.inner_radius:g} < |x - ({_format_vector(domain.center)})| < {domain.radius:g}"
    return f"{kind.value} (d={domain.dimension})"
