"""
Fonctions tests et normes pondérées.

Ce module fournit:
- la classe TestFunction (valeur, gradient analytique, support, régularité)
- les fonctions prédéfinies (bosse polynomiale, triangle, gaussienne tronquée,
  bosse de couronne, fonction linéaire, indicatrice de boule, plateau)
- les normes L^p pondérées et énergies de gradient pondérées
- l'inversion T(x) = x / |x|^2 et l'opérateur Tf = f o T
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate

from .constants import sphere_measure
from .errors import DivergenceError, ParameterError, SingularityError, UnsupportedError
from .estimate import Estimate, EstimateMethod
from .geometry import Domain, DomainKind, as_points
from .quadrature import integrate_piecewise

logger = logging.getLogger(__name__)

ValueOracle = Callable[[np.ndarray], np.ndarray]
GradientOracle = Callable[[np.ndarray], np.ndarray]


class Smoothness(Enum):
    """Régularité d'une fonction test."""
    C2C = "C2c"
    C1C = "C1c"
    C1_LIMIT = "C1-limit-infinity"
    PIECEWISE_C1 = "piecewise-C1"
    INDICATOR = "indicator"

    @property
    def has_gradient(self) -> bool:
        return self != Smoothness.INDICATOR


class SupportKind(Enum):
    BOX = "box"
    SHELL = "shell"


@dataclass(frozen=True)
class Support:
    """
    Descripteur de support (fermé).

    Un support BOX est un pavé [lower, upper]. Un support SHELL est la
    couronne {inner <= |x - center| <= outer}; inner = 0 donne une boule et
    outer = inf l'extérieur d'une boule.
    """
    kind: SupportKind
    lower: Tuple[float, ...] = ()
    upper: Tuple[float, ...] = ()
    center: Tuple[float, ...] = ()
    inner: float = 0.0
    outer: float = math.inf

    @classmethod
    def box(cls, lower: Sequence[float], upper: Sequence[float]) -> "Support":
        return cls(SupportKind.BOX, lower=tuple(map(float, lower)), upper=tuple(map(float, upper)))

    @classmethod
    def shell(cls, center: Sequence[float], inner: float, outer: float) -> "Support":
        return cls(SupportKind.SHELL, center=tuple(map(float, center)), inner=float(inner), outer=float(outer))

    @property
    def dimension(self) -> int:
        return len(self.lower) if self.kind == SupportKind.BOX else len(self.center)

    @property
    def is_bounded(self) -> bool:
        return self.kind == SupportKind.BOX or math.isfinite(self.outer)

    def norm_range(self) -> Tuple[float, float]:
        """Bornes inf et sup de |x| sur le support."""
        if self.kind == SupportKind.BOX:
            lo = np.array(self.lower)
            hi = np.array(self.upper)
            nearest = np.clip(0.0, lo, hi)
            farthest = np.maximum(np.abs(lo), np.abs(hi))
            return float(np.linalg.norm(nearest)), float(np.linalg.norm(farthest))
        c = float(np.linalg.norm(self.center))
        low = max(0.0, self.inner - c, c - self.outer)
        return low, c + self.outer

    @property
    def excludes_origin(self) -> bool:
        return self.norm_range()[0] > 0.0

    def bounding_box(self) -> Optional[Tuple[np.ndarray, np.ndarray]]:
        if self.kind == SupportKind.BOX:
            return np.array(self.lower), np.array(self.upper)
        if not math.isfinite(self.outer):
            return None
        c = np.array(self.center)
        return c - self.outer, c + self.outer

    def intervals_1d(self) -> List[Tuple[float, float]]:
        """Intervalles fermés portant le support en dimension 1."""
        if self.kind == SupportKind.BOX:
            return [(self.lower[0], self.upper[0])]
        c = self.center[0]
        if self.inner <= 0.0:
            return [(c - self.outer, c + self.outer)]
        return [(c - self.outer, c - self.inner), (c + self.inner, c + self.outer)]

    def contains(self, points: np.ndarray) -> np.ndarray:
        if self.kind == SupportKind.BOX:
            return np.all((points >= np.array(self.lower)) & (points <= np.array(self.upper)), axis=1)
        rho = np.linalg.norm(points - np.array(self.center), axis=1)
        return (rho >= self.inner) & (rho <= self.outer)


@dataclass(frozen=True, eq=False)
class TestFunction:
    """
    Fonction test f: R^d -> R.

    Les oracles sont vectorisés: value reçoit un tableau (n, d) et renvoie (n,),
    gradient renvoie (n, d).

    Attributes:
        name: Nom de la famille
        dimension: Dimension d
        value: Oracle d'évaluation
        gradient: Oracle du gradient (None pour une indicatrice)
        support: Descripteur de support
        smoothness: Régularité
        kinks: Points de non-dérivabilité (abscisses en dimension 1,
            rayons autour de radial_center sinon)
        limit_at_infinity: Limite constante à l'infini, si f n'est pas à support compact
        radial_center: Centre de symétrie radiale, si f est radiale
        params: Paramètres de construction (sérialisation)
    """
    __test__ = False

    name: str
    dimension: int
    value: ValueOracle
    gradient: Optional[GradientOracle]
    support: Support
    smoothness: Smoothness
    kinks: Tuple[float, ...] = ()
    limit_at_infinity: Optional[float] = None
    radial_center: Optional[Tuple[float, ...]] = None
    params: Dict[str, object] = field(default_factory=dict)

    def __call__(self, points) -> np.ndarray:
        return self.value(as_points(points, self.dimension))

    def scalar(self, x: float) -> float:
        """Évaluation rapide en un point de R (dimension 1)."""
        return float(self.value(np.array([[x]]))[0])

    def derivative(self, x: float) -> float:
        return float(self.gradient(np.array([[x]]))[0, 0])

    @property
    def limit_value(self) -> Optional[float]:
        """Limite à l'infini effective (0 pour un support borné)."""
        if self.limit_at_infinity is not None:
            return self.limit_at_infinity
        return 0.0 if self.support.is_bounded else None

    def __repr__(self) -> str:
        return f"TestFunction({self.name}, d={self.dimension}, {self.smoothness.value})"


def evaluate(f: TestFunction, x) -> float:
    """
    Valeur de f en un point.

    Raises:
        ParameterError: Dimension incompatible ou plusieurs points
    """
    points = as_points(x, f.dimension)
    if points.shape[0] != 1:
        raise ParameterError("evaluate attend un seul point")
    return float(f.value(points)[0])


# ----------------------------------------------------------------------
# Fonctions prédéfinies
# ----------------------------------------------------------------------

def _center(dimension: int, center) -> np.ndarray:
    if center is None:
        return np.zeros(dimension)
    c = np.atleast_1d(np.asarray(center, dtype=float))
    if c.shape != (dimension,):
        raise ParameterError("Le centre doit avoir la dimension de la fonction")
    return c


def _radial_kinks(center: np.ndarray, radii: Sequence[float]) -> Tuple[float, ...]:
    if center.shape[0] != 1:
        return tuple(sorted(float(r) for r in radii if math.isfinite(r)))
    c = float(center[0])
    points = set()
    for r in radii:
        if math.isfinite(r):
            points.update((c - r, c + r))
    return tuple(sorted(points))


def bump(dimension: int = 1, center=None, radius: float = 1.0) -> TestFunction:
    """Bosse polynomiale (1 - |x - c|^2 / r^2)^3 sur la boule B(c, r), de classe C^2."""
    if not radius > 0.0:
        raise ParameterError("Le rayon de la bosse doit être positif")
    c = _center(dimension, center)

    def value(x: np.ndarray) -> np.ndarray:
        q = np.sum((x - c) ** 2, axis=1) / radius ** 2
        return np.where(q < 1.0, (1.0 - q) ** 3, 0.0)

    def gradient(x: np.ndarray) -> np.ndarray:
        q = np.sum((x - c) ** 2, axis=1) / radius ** 2
        factor = np.where(q < 1.0, -6.0 * (1.0 - q) ** 2 / radius ** 2, 0.0)
        return factor[:, None] * (x - c)

    return TestFunction(
        "bump", dimension, value, gradient, Support.shell(c, 0.0, radius), Smoothness.C2C,
        kinks=_radial_kinks(c, [radius]), radial_center=tuple(c),
        params={"center": tuple(c), "radius": radius},
    )


def triangle() -> TestFunction:
    """Fonction triangle max(0, 1 - |x|) sur [-1, 1] (dimension 1, C^1 par morceaux)."""

    def value(x: np.ndarray) -> np.ndarray:
        return np.maximum(0.0, 1.0 - np.abs(x[:, 0]))

    def gradient(x: np.ndarray) -> np.ndarray:
        t = x[:, 0]
        return np.where(np.abs(t) < 1.0, -np.sign(t), 0.0)[:, None]

    return TestFunction(
        "triangle", 1, value, gradient, Support.box([-1.0], [1.0]), Smoothness.PIECEWISE_C1,
        kinks=(-1.0, 0.0, 1.0), radial_center=(0.0,),
    )


def gaussian(dimension: int = 1, center=None, width: float = 0.5, cutoff: float = 1.0) -> TestFunction:
    """Gaussienne exp(-|x-c|^2 / (2 w^2)) multipliée par la coupure (1 - |x-c|^2/R^2)^3."""
    if not (width > 0.0 and cutoff > 0.0):
        raise ParameterError("Largeur et rayon de coupure doivent être positifs")
    c = _center(dimension, center)

    def value(x: np.ndarray) -> np.ndarray:
        r2 = np.sum((x - c) ** 2, axis=1)
        q = r2 / cutoff ** 2
        return np.where(q < 1.0, np.exp(-r2 / (2.0 * width ** 2)) * (1.0 - q) ** 3, 0.0)

    def gradient(x: np.ndarray) -> np.ndarray:
        r2 = np.sum((x - c) ** 2, axis=1)
        q = r2 / cutoff ** 2
        g = np.exp(-r2 / (2.0 * width ** 2))
        inside = q < 1.0
        # d/dx [g (1-q)^3] = g (x-c) [-(1-q)^3 / w^2 - 6 (1-q)^2 / R^2]
        factor = g * (-(1.0 - q) ** 3 / width ** 2 - 6.0 * (1.0 - q) ** 2 / cutoff ** 2)
        return np.where(inside, factor, 0.0)[:, None] * (x - c)

    return TestFunction(
        "gaussian", dimension, value, gradient, Support.shell(c, 0.0, cutoff), Smoothness.C2C,
        kinks=_radial_kinks(c, [cutoff]), radial_center=tuple(c),
        params={"center": tuple(c), "width": width, "cutoff": cutoff},
    )


def annulus_bump(dimension: int = 1, inner: float = 1.0, outer: float = 2.0) -> TestFunction:
    """
    Bosse (4 (|x| - r)(R - |x|) / (R - r)^2)^3 portée par la couronne r < |x| < R.

    Son support évite l'origine; elle vaut 1 sur la sphère médiane.
    """
    if not 0.0 < inner < outer:
        raise ParameterError("Bosse de couronne: il faut 0 < r < R")
    width2 = (outer - inner) ** 2

    def value(x: np.ndarray) -> np.ndarray:
        rho = np.linalg.norm(x, axis=1)
        t = 4.0 * (rho - inner) * (outer - rho) / width2
        return np.where((rho > inner) & (rho < outer), t ** 3, 0.0)

    def gradient(x: np.ndarray) -> np.ndarray:
        rho = np.linalg.norm(x, axis=1)
        inside = (rho > inner) & (rho < outer)
        t = 4.0 * (rho - inner) * (outer - rho) / width2
        dt = 4.0 * ((outer - rho) - (rho - inner)) / width2
        safe = np.where(rho > 0.0, rho, 1.0)
        factor = np.where(inside, 3.0 * t ** 2 * dt / safe, 0.0)
        return factor[:, None] * x

    origin = np.zeros(dimension)
    return TestFunction(
        "annulus_bump", dimension, value, gradient, Support.shell(origin, inner, outer), Smoothness.C2C,
        kinks=_radial_kinks(origin, [inner, outer]), radial_center=tuple(origin),
        params={"inner": inner, "outer": outer},
    )


def linear() -> TestFunction:
    """Fonction x -> x restreinte à [0, 1] (dimension 1)."""

    def value(x: np.ndarray) -> np.ndarray:
        t = x[:, 0]
        return np.where((t >= 0.0) & (t <= 1.0), t, 0.0)

    def gradient(x: np.ndarray) -> np.ndarray:
        t = x[:, 0]
        return np.where((t >= 0.0) & (t <= 1.0), 1.0, 0.0)[:, None]

    return TestFunction(
        "linear", 1, value, gradient, Support.box([0.0], [1.0]), Smoothness.PIECEWISE_C1, kinks=(0.0, 1.0),
    )


def ball_indicator(dimension: int = 1, center=None, radius: float = 1.0) -> TestFunction:
    """Indicatrice de la boule ouverte B(c, r) (aucun gradient)."""
    if not radius > 0.0:
        raise ParameterError("Le rayon doit être positif")
    c = _center(dimension, center)

    def value(x: np.ndarray) -> np.ndarray:
        return (np.linalg.norm(x - c, axis=1) < radius).astype(float)

    return TestFunction(
        "ball_indicator", dimension, value, None, Support.shell(c, 0.0, radius), Smoothness.INDICATOR,
        kinks=_radial_kinks(c, [radius]), radial_center=tuple(c),
        params={"center": tuple(c), "radius": radius},
    )


def _smoothstep(t: np.ndarray) -> np.ndarray:
    t = np.clip(t, 0.0, 1.0)
    return t ** 3 * (10.0 - 15.0 * t + 6.0 * t * t)


def _smoothstep_derivative(t: np.ndarray) -> np.ndarray:
    inside = (t > 0.0) & (t < 1.0)
    return np.where(inside, 30.0 * t * t * (1.0 - t) ** 2, 0.0)


def plateau(dimension: int = 1, level: float = 1.0, inner: float = 1.0, outer: float = 2.0) -> TestFunction:
    """
    Fonction nulle sur B(0, r), égale à level hors de B(0, R), raccordée par un
    polynôme de degré 5: f est C^1, son support évite l'origine et sa limite à
    l'infini vaut level.
    """
    if not 0.0 < inner < outer:
        raise ParameterError("Plateau: il faut 0 < r < R")
    width = outer - inner

    def value(x: np.ndarray) -> np.ndarray:
        rho = np.linalg.norm(x, axis=1)
        return level * _smoothstep((rho - inner) / width)

    def gradient(x: np.ndarray) -> np.ndarray:
        rho = np.linalg.norm(x, axis=1)
        safe = np.where(rho > 0.0, rho, 1.0)
        factor = level * _smoothstep_derivative((rho - inner) / width) / (width * safe)
        return factor[:, None] * x

    origin = np.zeros(dimension)
    return TestFunction(
        "plateau", dimension, value, gradient, Support.shell(origin, inner, math.inf), Smoothness.C1_LIMIT,
        kinks=_radial_kinks(origin, [inner, outer]), limit_at_infinity=float(level),
        radial_center=tuple(origin), params={"level": level, "inner": inner, "outer": outer},
    )


def scale_function(f: TestFunction, factor: float) -> TestFunction:
    """Fonction c f (mêmes support et régularité)."""
    c = float(factor)
    base_value = f.value
    base_gradient = f.gradient

    def value(x: np.ndarray) -> np.ndarray:
        return c * base_value(x)

    def gradient(x: np.ndarray) -> np.ndarray:
        return c * base_gradient(x)

    limit = None if f.limit_at_infinity is None else c * f.limit_at_infinity
    params = dict(f.params)
    params["scale"] = c * float(f.params.get("scale", 1.0))
    return TestFunction(
        f.name, f.dimension, value, gradient if base_gradient is not None else None, f.support, f.smoothness,
        kinks=f.kinks, limit_at_infinity=limit, radial_center=f.radial_center, params=params,
    )


def zero_function(dimension: int = 1) -> TestFunction:
    """Fonction identiquement nulle (bosse multipliée par 0)."""
    return scale_function(bump(dimension), 0.0)


# ----------------------------------------------------------------------
# Inversion
# ----------------------------------------------------------------------

def inversion_point(x) -> np.ndarray:
    """
    Inversion T(x) = x / |x|^2.

    Raises:
        SingularityError: x = 0

    Example:
        >>> inversion_point([3.0, 4.0])
        array([0.12, 0.16])
    """
    point = np.atleast_1d(np.asarray(x, dtype=float))
    norm2 = float(np.dot(point, point))
    if norm2 == 0.0:
        raise SingularityError("L'inversion n'est pas définie en 0")
    return point / norm2


def _invert_points(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    norm2 = np.sum(x * x, axis=1)
    zero = norm2 == 0.0
    safe = np.where(zero, 1.0, norm2)
    return x / safe[:, None], safe, zero


def invert_function(f: TestFunction) -> TestFunction:
    """
    Fonction Tf = f o T.

    Exige un support évitant l'origine ou une limite à l'infini (un support
    borné donne la limite 0). Le gradient est obtenu par dérivation composée
    avec la jacobienne exacte DT(x) = (I - 2 x x^T / |x|^2) / |x|^2.

    Raises:
        UnsupportedError: Support contenant l'origine sans donnée de limite
    """
    support = f.support
    if not support.excludes_origin and f.limit_value is None:
        raise UnsupportedError(
            f"Inversion de {f.name} impossible: support contenant l'origine sans limite à l'infini"
        )
    lo, hi = support.norm_range()
    origin_value = f.limit_value if f.limit_value is not None else 0.0
    base_value = f.value

    def value(x: np.ndarray) -> np.ndarray:
        y, _, zero = _invert_points(x)
        return np.where(zero, origin_value, base_value(y))

    gradient = None
    if f.gradient is not None:
        base_gradient = f.gradient

        def gradient(x: np.ndarray) -> np.ndarray:
            y, norm2, zero = _invert_points(x)
            g = base_gradient(y)
            projection = np.sum(x * g, axis=1) / norm2
            result = (g - 2.0 * x * projection[:, None]) / norm2[:, None]
            result[zero] = 0.0
            return result

    inner = 1.0 / hi if math.isfinite(hi) else 0.0
    outer = 1.0 / lo if lo > 0.0 else math.inf
    new_support = Support.shell(np.zeros(f.dimension), inner, outer)

    if support.excludes_origin:
        limit = None
    else:
        limit = evaluate(f, np.zeros(f.dimension))
    smoothness = f.smoothness
    if smoothness == Smoothness.C1_LIMIT and new_support.is_bounded:
        smoothness = Smoothness.C1C
    elif smoothness in (Smoothness.C2C, Smoothness.C1C) and not new_support.is_bounded:
        smoothness = Smoothness.C1_LIMIT

    kinks = tuple(sorted(1.0 / k for k in f.kinks if k != 0.0)) if f.dimension == 1 else ()
    radial = f.radial_center
    if radial is not None and any(v != 0.0 for v in radial):
        radial = None
    return TestFunction(
        f"T[{f.name}]", f.dimension, value, gradient, new_support, smoothness,
        kinks=kinks, limit_at_infinity=limit, radial_center=radial,
        params={"inverted": f.name, **f.params},
    )


# ----------------------------------------------------------------------
# Normes pondérées
# ----------------------------------------------------------------------

def _check_weight(domain: Domain, gamma: float) -> None:
    if domain.kind == DomainKind.FULL_SPACE and gamma != 0.0:
        raise ParameterError("Un poids non trivial exige un domaine avec un bord")


def _radial_boundary(domain: Domain, center: Tuple[float, ...]) -> Optional[Tuple[float, float, List[float]]]:
    """(rayon min, rayon max, rayons du bord) si le domaine est radial autour de center."""
    at_origin = all(v == 0.0 for v in center)
    if domain.kind == DomainKind.BALL and tuple(domain.center) == tuple(center):
        return 0.0, domain.radius, [domain.radius]
    if domain.kind == DomainKind.ANNULUS and tuple(domain.center) == tuple(center):
        return domain.inner_radius, domain.radius, [domain.inner_radius, domain.radius]
    if domain.kind == DomainKind.PUNCTURED_SPACE and at_origin:
        return 0.0, math.inf, [0.0]
    if domain.kind == DomainKind.FULL_SPACE and at_origin:
        return 0.0, math.inf, []
    return None


def _nearest(points: Sequence[float], x: float) -> Optional[float]:
    if not points:
        return None
    return min(points, key=lambda b: (abs(x - b), b))


def _integrate_1d(
    regular: Callable[[float], float],
    f: TestFunction,
    gamma: float,
    domain: Domain,
    tol: float,
    what: str,
) -> Tuple[float, float]:
    boundary = domain.boundary_points_1d()

    def weight_factor(m: float) -> Tuple[float, float]:
        b = _nearest(boundary, m)
        if b is None or gamma == 0.0:
            return 0.0, 0.0
        return b, -gamma

    breaks = list(f.kinks) + boundary + domain.switch_points_1d()
    total = 0.0
    error = 0.0
    for lo, hi in domain.components_1d():
        for a, b in f.support.intervals_1d():
            u, v = max(lo, a), min(hi, b)
            if u >= v:
                continue
            value, abserr = integrate_piecewise(
                regular, u, v, tol, breakpoints=breaks, factors=(weight_factor,), what=what,
            )
            total += value
            error += abserr
    return total, error


def _integrate_radial(
    profile: Callable[[float], float],
    f: TestFunction,
    gamma: float,
    radial: Tuple[float, float, List[float]],
    tol: float,
    what: str,
) -> Tuple[float, float]:
    d = f.dimension
    r_min, r_max, boundary = radial
    support = f.support
    if support.kind == SupportKind.SHELL:
        s_min, s_max = support.inner, support.outer
    else:
        s_min, s_max = 0.0, support.norm_range()[1]
    u, v = max(r_min, s_min), min(r_max, s_max)
    if u >= v:
        return 0.0, 0.0

    def jacobian(m: float) -> Tuple[float, float]:
        return 0.0, float(d - 1)

    def weight_factor(m: float) -> Tuple[float, float]:
        b = _nearest(boundary, m)
        if b is None or gamma == 0.0:
            return 0.0, 0.0
        return b, -gamma

    breaks = list(boundary)
    breaks += [0.5 * (a + b) for a, b in zip(boundary[:-1], boundary[1:])]
    if support.kind == SupportKind.SHELL:
        breaks += [support.inner, support.outer]
    breaks += list(f.kinks)
    value, abserr = integrate_piecewise(
        profile, u, v, tol, breakpoints=breaks, factors=(jacobian, weight_factor), what=what,
    )
    measure = sphere_measure(d).value
    return measure * value, measure * abserr


def _integrate_cartesian(
    integrand: Callable[[np.ndarray], np.ndarray],
    f: TestFunction,
    gamma: float,
    domain: Domain,
    tol: float,
    what: str,
) -> Tuple[float, float]:
    box = f.support.bounding_box()
    if box is None:
        raise UnsupportedError(f"{what}: support non borné hors du cas radial")
    lo, hi = box
    domain_box = domain.bounding_box()
    if domain_box is not None:
        lo = np.maximum(lo, domain_box[0])
        hi = np.minimum(hi, domain_box[1])
    if np.any(lo >= hi):
        return 0.0, 0.0
    d = f.dimension

    def pointwise(*coords: float) -> float:
        point = np.array(coords).reshape(1, d)
        if not domain.contains(point)[0]:
            return 0.0
        value = float(integrand(point)[0])
        if value == 0.0:
            return 0.0
        if gamma != 0.0:
            value *= float(domain.distance(point)[0]) ** (-gamma)
        return value

    opts = {"epsrel": tol, "epsabs": 1e-13, "limit": 100}
    value, abserr = integrate.nquad(pointwise, list(zip(lo, hi)), opts=opts)
    if not math.isfinite(value):
        raise DivergenceError(f"{what}: valeur non finie")
    return float(value), float(abserr)


def _weighted_integral(
    f: TestFunction,
    point_integrand: Callable[[np.ndarray], np.ndarray],
    gamma: float,
    domain: Domain,
    tol: float,
    what: str,
) -> Estimate:
    if f.dimension != domain.dimension:
        raise ParameterError("La fonction et le domaine n'ont pas la même dimension")
    _check_weight(domain, gamma)

    if f.dimension == 1:
        value, error = _integrate_1d(
            lambda x: float(point_integrand(np.array([[x]]))[0]), f, gamma, domain, tol, what,
        )
    else:
        radial = _radial_boundary(domain, f.radial_center) if f.radial_center is not None else None
        if radial is not None:
            e1 = np.zeros(f.dimension)
            e1[0] = 1.0
            center = np.array(f.radial_center)

            def profile(r: float) -> float:
                return float(point_integrand((center + r * e1).reshape(1, -1))[0])

            value, error = _integrate_radial(profile, f, gamma, radial, tol, what)
        else:
            logger.debug("%s: intégration cartésienne (nquad) en dimension %d", what, f.dimension)
            value, error = _integrate_cartesian(point_integrand, f, gamma, domain, tol, what)
    return Estimate(value, error, EstimateMethod.QUAD)


def weighted_lp_norm(f: TestFunction, p: float, gamma: float, domain: Domain, tol: float = 1e-10) -> Estimate:
    """
    Intégrale \\int_Omega |f|^p d_Omega^{-gamma} dx.

    Args:
        f: Fonction test
        p: Exposant (p >= 1)
        gamma: Exposant du poids
        domain: Domaine d'intégration
        tol: Tolérance relative

    Returns:
        Estimate (méthode quad)

    Raises:
        DivergenceError: Singularité non intégrable détectée
    """
    if not p >= 1.0:
        raise ParameterError(f"L'exposant p doit vérifier p >= 1 (reçu {p})")
    return _weighted_integral(
        f, lambda x: np.abs(f.value(x)) ** p, gamma, domain, tol, "norme L^p pondérée",
    )


def weighted_gradient_energy(
    f: TestFunction, p: float, gamma: float, domain: Domain, tol: float = 1e-10,
) -> Estimate:
    """
    Intégrale \\int_Omega |grad f|^p d_Omega^{-gamma} dx.

    Raises:
        UnsupportedError: f sans gradient (indicatrice)
        DivergenceError: Singularité non intégrable détectée
    """
    if not p >= 1.0:
        raise ParameterError(f"L'exposant p doit vérifier p >= 1 (reçu {p})")
    if f.gradient is None:
        raise UnsupportedError(f"{f.name}: aucun gradient disponible")
    return _weighted_integral(
        f, lambda x: np.linalg.norm(f.gradient(x), axis=1) ** p, gamma, domain, tol, "énergie de gradient",
    )


# ----------------------------------------------------------------------
# Sérialisation clé = valeur
# ----------------------------------------------------------------------

_BUILDERS: Dict[str, Tuple[Callable[..., TestFunction], Tuple[str, ...]]] = {
    "bump": (bump, ("dimension", "center", "radius")),
    "triangle": (triangle, ()),
    "gaussian": (gaussian, ("dimension", "center", "width", "cutoff")),
    "annulus_bump": (annulus_bump, ("dimension", "inner", "outer")),
    "linear": (linear, ()),
    "ball_indicator": (ball_indicator, ("dimension", "center", "radius")),
    "plateau": (plateau, ("dimension", "level", "inner", "outer")),
}

FUNCTION_KEYS = ("name", "dimension", "center", "radius", "width", "cutoff", "inner", "outer", "level", "scale", "invert")


def function_from_block(block: Mapping[str, str]) -> TestFunction:
    """
    Construit une fonction test à partir de son descripteur texte.

    Les clés reconnues sont name, les paramètres de la famille, scale
    (multiplication par une constante) et invert (true pour Tf).

    Raises:
        ParameterError: Famille inconnue, clé invalide ou valeur mal formée
    """
    name = block.get("name", "").strip()
    if name not in _BUILDERS:
        raise ParameterError(f"Fonction inconnue: {name!r} (choix: {', '.join(sorted(_BUILDERS))})")
    builder, allowed = _BUILDERS[name]
    kwargs: Dict[str, object] = {}
    for key, text in block.items():
        if key in ("name", "scale", "invert"):
            continue
        if key not in allowed:
            raise ParameterError(f"Clé '{key}' non reconnue pour la fonction {name}")
        try:
            if key == "dimension":
                kwargs[key] = int(text)
            elif key == "center":
                kwargs[key] = [float(v) for v in text.split(",") if v.strip()]
            else:
                kwargs[key] = float(text)
        except ValueError:
            raise ParameterError(f"Valeur invalide pour '{key}': {text!r}") from None
    f = builder(**kwargs)
    if "scale" in block:
        try:
            f = scale_function(f, float(block["scale"]))
        except ValueError:
            raise ParameterError(f"Valeur invalide pour 'scale': {block['scale']!r}") from None
    if block.get("invert", "false").strip().lower() in ("1", "true", "yes", "on"):
        f = invert_function(f)
    return f


def function_to_block(f: TestFunction) -> Dict[str, str]:
    """Descripteur texte d'une fonction prédéfinie (éventuellement mise à l'échelle)."""
    params = dict(f.params)
    inverted = params.pop("inverted", None)
    name = str(inverted) if inverted is not None else f.name
    if name not in _BUILDERS:
        raise ParameterError(f"Fonction {name!r} sans descripteur texte")
    block = {"name": name}
    if inverted is not None:
        block["invert"] = "true"
    if "dimension" in _BUILDERS[name][1]:
        block["dimension"] = str(f.dimension)
    for key, value in params.items():
        if key == "center":
            block[key] = ", ".join(repr(float(v)) for v in value)
        else:
            block[key] = repr(float(value))
    return block
