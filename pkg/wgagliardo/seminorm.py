"""
Semi-norme de Gagliardo pondérée

    [f]^p = \\int_Omega \\int_Omega |f(x) - f(y)|^p |x - y|^{-d-sp} d_Omega(x)^{-alpha} d_Omega(y)^{-beta} dy dx.

Moteurs disponibles:
- quadrature déterministe en dimension 1 (quadratures adaptatives emboîtées,
  singularités algébriques factorisées, queue lointaine par série exacte)
- quadrature déterministe en dimension 2 pour les poids triviaux sur R^2,
  R^2 \\ {0}, le demi-plan, un disque ou un rectangle contenant le support
  (coordonnées polaires autour de x, maillage géométrique gradué en r)
- Monte-Carlo stratifié en toute dimension (nombres aléatoires communs)
- borne inférieure de Whitney (somme des interactions cube-cube diagonales)
"""

import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .constants import sphere_measure
from .errors import DivergenceError, ParameterError, UnsupportedError
from .estimate import Estimate, EstimateMethod
from .funcspace import Smoothness, TestFunction
from .geometry import Domain, DomainKind, WhitneyCube, whitney_decompose
from .quadrature import (
    gauss_legendre,
    graded_unit_mesh,
    integrate_piecewise,
    mapped_gauss_legendre,
)
from .weights import AdmissibilityVerdict, admissible_parameters

logger = logging.getLogger(__name__)

__all__ = [
    "Engine",
    "Estimate",
    "SeminormParams",
    "ScanRow",
    "compute_seminorm",
    "continuity_scan",
    "indicator_pair_integral",
    "select_engine",
    "seminorm_mc",
    "seminorm_quadrature",
    "seminorm_whitney_lower",
]


class Engine(Enum):
    """Moteur de calcul de la semi-norme."""
    QUAD = "quad"
    MC = "mc"


@dataclass(frozen=True)
class SeminormParams:
    """
    Paramètres (s, p, alpha, beta) et domaine d'une semi-norme pondérée.

    Attributes:
        s: Ordre fractionnaire, 0 <= s < 1
        p: Exposant, p >= 1
        alpha: Exposant du poids en x
        beta: Exposant du poids en y
        domain: Domaine Omega
    """
    s: float
    p: float
    alpha: float
    beta: float
    domain: Domain

    def __post_init__(self):
        if not 0.0 <= self.s < 1.0:
            raise ParameterError(f"L'ordre s doit vérifier 0 <= s < 1 (reçu {self.s})")
        if not self.p >= 1.0:
            raise ParameterError(f"L'exposant p doit vérifier p >= 1 (reçu {self.p})")
        if self.domain.kind == DomainKind.FULL_SPACE and (self.alpha != 0.0 or self.beta != 0.0):
            raise ParameterError("Sur l'espace entier les poids doivent être triviaux (alpha = beta = 0)")

    @property
    def dimension(self) -> int:
        return self.domain.dimension

    @property
    def sigma(self) -> float:
        """Exposant s p du noyau (au-delà de la dimension)."""
        return self.s * self.p

    @property
    def kappa(self) -> float:
        """Exposant p (1 - s) de l'intégrande radiale près de la diagonale."""
        return self.p * (1.0 - self.s)

    @property
    def is_unweighted(self) -> bool:
        return self.alpha == 0.0 and self.beta == 0.0

    def swapped(self) -> "SeminormParams":
        return replace(self, alpha=self.beta, beta=self.alpha)

    def with_values(self, **changes) -> "SeminormParams":
        return replace(self, **changes)

    def verdict(self, f: TestFunction) -> AdmissibilityVerdict:
        return admissible_parameters(
            self.dimension, self.p, self.s, self.alpha, self.beta,
            support_excludes_origin=f.support.excludes_origin, domain_kind=self.domain.kind,
        )

    def to_record(self) -> Dict[str, object]:
        return {"s": self.s, "p": self.p, "alpha": self.alpha, "beta": self.beta}


def _check_function(f: TestFunction, params: SeminormParams) -> None:
    if f.dimension != params.dimension:
        raise ParameterError(
            f"Dimension de la fonction ({f.dimension}) différente de celle du domaine ({params.dimension})"
        )


def _require_admissible(f: TestFunction, params: SeminormParams, force: bool) -> AdmissibilityVerdict:
    verdict = params.verdict(f)
    if not verdict.is_known:
        if not force:
            raise ParameterError(
                f"Paramètres (s={params.s}, p={params.p}, alpha={params.alpha}, beta={params.beta}) "
                f"hors des régimes de finitude connus: {verdict.citation}"
            )
        logger.warning("Paramètres hors des régimes connus, calcul forcé")
    return verdict


def _nearest(points: Sequence[float], x: float) -> Optional[float]:
    if not points:
        return None
    return min(points, key=lambda b: (abs(x - b), b))


# ----------------------------------------------------------------------
# Dimension 1: quadratures emboîtées
# ----------------------------------------------------------------------

def _power_tail(x: float, start: float, sigma: float, gamma: float) -> float:
    """
    Queue exacte \\int_start^inf (y - x)^{-1-sigma} y^{-gamma} dy pour |x| < start.

    Développement binomial de (1 - x/y)^{-1-sigma} intégré terme à terme.
    """
    lam = sigma + gamma
    if lam <= 0.0:
        raise DivergenceError(
            f"Queue lointaine divergente: sigma + gamma = {lam:.4g} <= 0"
        )
    ratio = x / start
    coef = 1.0
    power = 1.0
    total = 0.0
    for k in range(500):
        term = coef * power / (lam + k)
        total += term
        if abs(term) <= 1e-17 * abs(total):
            break
        coef *= (1.0 + sigma + k) / (k + 1.0)
        power *= ratio
    return total * start ** (-lam)


class _Line:
    """Géométrie unidimensionnelle partagée par les intégrales d'une évaluation."""

    def __init__(self, domain: Domain, tail_start: float):
        self.boundary = domain.boundary_points_1d()
        self.switches = domain.switch_points_1d()
        self.tail_start = tail_start

    def weight_factor(self, gamma: float, shift: float = 0.0) -> Callable[[float], Tuple[float, float]]:
        """Facteur d_Omega(x + shift)^{-gamma} vu comme |x - c|^{-gamma}."""
        boundary = self.boundary

        def provider(m: float) -> Tuple[float, float]:
            if gamma == 0.0 or not boundary:
                return 0.0, 0.0
            return _nearest(boundary, m + shift) - shift, -gamma

        return provider

    def outside_integral(self, x: float, lo: float, hi: float, sigma: float, gamma: float, tol: float) -> float:
        """\\int_lo^hi |x - y|^{-1-sigma} d_Omega(y)^{-gamma} dy pour x hors de ]lo, hi[."""
        if gamma == 0.0:
            if x <= lo:
                near, far = lo - x, hi - x
            else:
                near, far = x - hi, x - lo
            if sigma == 0.0:
                if math.isinf(far):
                    raise DivergenceError("Noyau |x-y|^{-1} non intégrable à l'infini (s = 0 sans poids)")
                return math.log(far / near)
            return (near ** (-sigma) - far ** (-sigma)) / sigma

        total = 0.0
        a, b = lo, hi
        if math.isinf(hi):
            b = max(lo, self.tail_start)
            total += self._tail(x, sigma, gamma)
        if math.isinf(lo):
            a = min(hi, -self.tail_start)
            total += self._tail(-x, sigma, gamma)
        if a < b:
            kernel = lambda m: (x, -1.0 - sigma)
            value, _ = integrate_piecewise(
                lambda y: 1.0, a, b, tol,
                breakpoints=self.boundary + self.switches,
                factors=(kernel, self.weight_factor(gamma)),
                what="intégrale extérieure",
            )
            total += value
        return total

    def _tail(self, x: float, sigma: float, gamma: float) -> float:
        if self.boundary != [0.0]:
            raise UnsupportedError("Queue lointaine pondérée disponible seulement pour un bord réduit à {0}")
        return _power_tail(x, self.tail_start, sigma, gamma)


def _split_support(f: TestFunction, domain: Domain) -> Tuple[float, float, List[Tuple[float, float]], List[Tuple[float, float]]]:
    intervals = f.support.intervals_1d()
    s_lo = min(a for a, _ in intervals)
    s_hi = max(b for _, b in intervals)
    if not (math.isfinite(s_lo) and math.isfinite(s_hi)):
        raise UnsupportedError(f"{f.name}: support non borné, quadrature impossible")
    inside = []
    outside = []
    for lo, hi in domain.components_1d():
        u, v = max(lo, s_lo), min(hi, s_hi)
        if u < v:
            inside.append((u, v))
        if lo < s_lo:
            outside.append((lo, min(hi, s_lo)))
        if hi > s_hi:
            outside.append((max(lo, s_hi), hi))
    outside = [(a, b) for a, b in outside if a < b]
    return s_lo, s_hi, inside, outside


def _quadrature_1d(f: TestFunction, params: SeminormParams, tol: float) -> Estimate:
    domain = params.domain
    p, sigma, kappa = params.p, params.sigma, params.kappa
    alpha, beta = params.alpha, params.beta
    s_lo, s_hi, inside, outside = _split_support(f, domain)
    if not inside:
        return Estimate(0.0, 0.0, EstimateMethod.QUAD)

    boundary = domain.boundary_points_1d()
    tail_start = 4.0 * max(abs(s_lo), abs(s_hi), max((abs(b) for b in boundary), default=0.0), 0.25)
    line = _Line(domain, tail_start)
    special = sorted(set(list(f.kinks) + boundary + line.switches + [s_lo, s_hi]))
    inner_tol = max(0.1 * tol, 1e-13)
    length = s_hi - s_lo
    h_floor = 1e-9 * length
    edge = 1e-12 * length
    calls = [0]

    def difference_quotient(h: float) -> Callable[[float], float]:
        def regular(x: float) -> float:
            return (abs(f.scalar(x + h) - f.scalar(x)) / h) ** p
        return regular

    def phi(h: float, a_exp: float, b_exp: float) -> float:
        calls[0] += 1
        h = max(h, h_floor)
        breaks = special + [q - h for q in special]
        factors = (line.weight_factor(a_exp), line.weight_factor(b_exp, shift=h))
        total = 0.0
        for u1, v1 in inside:
            for u2, v2 in inside:
                u, v = max(u1, u2 - h), min(v1, v2 - h)
                if u < v:
                    value, _ = integrate_piecewise(
                        difference_quotient(h), u, v, inner_tol,
                        breakpoints=breaks, factors=factors, what="intégrale en x",
                    )
                    total += value
        return total

    def phi_sum(h: float) -> float:
        if alpha == beta:
            return 2.0 * phi(h, alpha, beta)
        return phi(h, alpha, beta) + phi(h, beta, alpha)

    in_hull = [q for q in special if s_lo <= q <= s_hi]
    lags = sorted({abs(a - b) for a in in_hull for b in in_hull if 0.0 < abs(a - b) < length})
    near_diagonal, near_error = integrate_piecewise(
        phi_sum, 0.0, length, tol,
        breakpoints=lags, factors=(lambda m: (0.0, kappa - 1.0),), what="intégrale en h",
    )
    logger.debug("Quadrature 1D: partie diagonale %.12g (%d évaluations)", near_diagonal, calls[0])

    touching = []
    if sigma > 0.0:
        touching = sorted({b for a, b in outside if b == s_lo} | {a for a, b in outside if a == s_hi})
    # Ordre d'annulation de |f|^p à chaque bord du support touché: p si f est
    # lipschitzienne et nulle au bord, 0 pour un saut
    vanishing = {
        end: (p if f.smoothness.has_gradient and abs(f.scalar(end)) <= 1e-12 else 0.0)
        for end in touching
    }

    def cross(a_exp: float, b_exp: float) -> Tuple[float, float]:
        def regular(x: float) -> float:
            fx = f.scalar(x)
            if fx == 0.0:
                return 0.0
            # QAWS évalue aux extrémités: le noyau extérieur y est singulier
            x = min(max(x, s_lo + edge), s_hi - edge)
            psi = sum(line.outside_integral(x, lo, hi, sigma, b_exp, inner_tol) for lo, hi in outside)
            value = abs(fx) ** p * psi
            for end in touching:
                value *= abs(x - end) ** (sigma - vanishing[end])
            return value

        factors = [line.weight_factor(a_exp)]
        factors += [(lambda m, c=end: (c, vanishing[c] - sigma)) for end in touching]
        total, error = 0.0, 0.0
        for u, v in inside:
            value, abserr = integrate_piecewise(
                regular, u, v, tol, breakpoints=special, factors=factors, what="terme croisé",
            )
            total += value
            error += abserr
        return total, error

    far, far_error = 0.0, 0.0
    if outside:
        far, far_error = cross(alpha, beta)
        if alpha == beta:
            far, far_error = 2.0 * far, 2.0 * far_error
        else:
            other, other_error = cross(beta, alpha)
            far += other
            far_error += other_error

    return Estimate(near_diagonal + far, near_error + far_error, EstimateMethod.QUAD, samples=calls[0])


# ----------------------------------------------------------------------
# Dimension 2: coordonnées polaires autour de x
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class _PolarRule:
    n_rho: int = 24
    n_phi: int = 48
    n_theta: int = 48
    levels: int = 20
    n_r: int = 6

    def coarser(self) -> "_PolarRule":
        return _PolarRule(
            max(4, 2 * self.n_rho // 3), max(8, 2 * self.n_phi // 3),
            max(8, 2 * self.n_theta // 3), self.levels, max(3, self.n_r - 2),
        )


def _directions_2d(n_theta: int) -> Tuple[np.ndarray, float]:
    theta = 2.0 * math.pi * (np.arange(n_theta) + 0.5) / n_theta
    return np.stack([np.cos(theta), np.sin(theta)], axis=1), 2.0 * math.pi / n_theta


def _polar_energy(
    f: TestFunction,
    points: np.ndarray,
    point_weights: np.ndarray,
    exit_radius: Callable[[np.ndarray, np.ndarray], np.ndarray],
    sigma: float,
    p: float,
    rule: _PolarRule,
    cross: bool,
    domain_exit: Optional[Callable[[np.ndarray, np.ndarray], np.ndarray]] = None,
    chunk: int = 64,
) -> Tuple[float, int]:
    """
    Somme pondérée sur x de \\int_theta [\\int_0^{r_exit} r^{-1-sigma} |f(x + r w) - f(x)|^p dr
    (+ 2 |f(x)|^p \\int_{r_exit}^{r_Omega} r^{-1-sigma} dr si cross)].

    r_Omega est la sortie du domaine convexe le long du rayon (infinie si
    domain_exit vaut None).

    La cellule [0, eps r_exit] est intégrée analytiquement à partir du gradient.
    """
    kappa = p - sigma
    omega, w_theta = _directions_2d(rule.n_theta)
    t_nodes, t_weights, eps = graded_unit_mesh(rule.levels, rule.n_r)
    total = 0.0
    evaluations = 0
    for start in range(0, points.shape[0], chunk):
        x = points[start:start + chunk]
        wx = point_weights[start:start + chunk]
        m = x.shape[0]
        fx = f.value(x)
        gx = f.gradient(x)
        r_exit = exit_radius(x, omega)                      # (m, n_theta)
        r = r_exit[:, :, None] * t_nodes[None, None, :]      # (m, n_theta, n_t)
        y = x[:, None, None, :] + r[..., None] * omega[None, :, None, :]
        fy = f.value(y.reshape(-1, 2)).reshape(r.shape)
        evaluations += fy.size
        diff = np.abs(fy - fx[:, None, None]) ** p
        inner = np.sum(diff * r ** (-1.0 - sigma) * t_weights[None, None, :], axis=2) * r_exit
        slope = np.abs(gx @ omega.T) ** p                    # (m, n_theta)
        inner += slope * (eps * r_exit) ** kappa / kappa
        if cross:
            inner += 2.0 * (np.abs(fx) ** p)[:, None] * _ray_tail(r_exit, x, omega, domain_exit, sigma)
        total += float(np.sum(wx * np.sum(inner, axis=1)) * w_theta)
    return total, evaluations


def _ray_tail(
    r_exit: np.ndarray,
    x: np.ndarray,
    omega: np.ndarray,
    domain_exit: Optional[Callable[[np.ndarray, np.ndarray], np.ndarray]],
    sigma: float,
) -> np.ndarray:
    """\\int_{r_exit}^{r_Omega} r^{-1-sigma} dr sous forme fermée."""
    if domain_exit is None:
        return r_exit ** (-sigma) / sigma
    r_domain = np.maximum(domain_exit(x, omega), r_exit)
    if sigma == 0.0:
        if not np.all(np.isfinite(r_domain)):
            raise DivergenceError("s = 0 sans poids: noyau |x - y|^{-2} non intégrable à l'infini")
        return np.log(r_domain / r_exit)
    return (r_exit ** (-sigma) - r_domain ** (-sigma)) / sigma


def _ball_exit(center: np.ndarray, radius: float) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    def exit_radius(x: np.ndarray, omega: np.ndarray) -> np.ndarray:
        rel = x - center
        b = rel @ omega.T
        c = np.sum(rel * rel, axis=1)[:, None] - radius ** 2
        return -b + np.sqrt(np.maximum(b * b - c, 0.0))
    return exit_radius


def _half_plane_exit(x: np.ndarray, omega: np.ndarray) -> np.ndarray:
    down = omega[:, 1][None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(down < 0.0, x[:, 1][:, None] / -down, np.inf)


def _domain_exit_2d(
    domain: Domain, center: np.ndarray, radius: float,
) -> Optional[Callable[[np.ndarray, np.ndarray], np.ndarray]]:
    """
    Sortie du domaine le long d'un rayon, pour un disque de support contenu dans Omega.

    Raises:
        UnsupportedError: Domaine non convexe ou disque de support débordant
    """
    kind = domain.kind
    slack = 1e-12 * max(1.0, radius)
    if kind in (DomainKind.FULL_SPACE, DomainKind.PUNCTURED_SPACE):
        return None
    if kind == DomainKind.HALF_SPACE:
        if center[1] - radius >= -slack:
            return _half_plane_exit
    elif kind == DomainKind.BALL:
        c = np.array(domain.center)
        if float(np.linalg.norm(center - c)) + radius <= domain.radius + slack:
            return _ball_exit(c, domain.radius)
    elif kind == DomainKind.BOX:
        lower, upper = np.array(domain.lower), np.array(domain.upper)
        if np.all(center - radius >= lower - slack) and np.all(center + radius <= upper + slack):
            return _square_exit(lower, upper)
    else:
        raise UnsupportedError(f"Quadrature 2D indisponible sur un domaine {kind.value}; utiliser le moteur mc")
    raise UnsupportedError("Quadrature 2D: le disque de support doit être contenu dans le domaine")


def _support_disc(f: TestFunction) -> Tuple[np.ndarray, float]:
    support = f.support
    if support.center and math.isfinite(support.outer):
        return np.array(support.center), support.outer
    lo, hi = support.bounding_box()
    return 0.5 * (lo + hi), 0.5 * float(np.linalg.norm(hi - lo))


def _quadrature_2d(f: TestFunction, params: SeminormParams, rule: _PolarRule) -> Estimate:
    if not params.is_unweighted:
        raise UnsupportedError("Quadrature 2D limitée aux poids triviaux; utiliser le moteur mc")
    if f.smoothness not in (Smoothness.C2C, Smoothness.C1C):
        raise UnsupportedError(f"{f.name}: la quadrature 2D exige une fonction C^1 à support compact")
    center, radius = _support_disc(f)
    domain_exit = _domain_exit_2d(params.domain, center, radius)
    if params.sigma == 0.0 and params.domain.kind not in (DomainKind.BALL, DomainKind.BOX):
        raise DivergenceError("s = 0 sans poids: la semi-norme est infinie sur un domaine non borné")

    def run(r: _PolarRule) -> Tuple[float, int]:
        rho, w_rho = mapped_gauss_legendre(0.0, radius, r.n_rho)
        phi = 2.0 * math.pi * np.arange(r.n_phi) / r.n_phi
        rr, pp = np.meshgrid(rho, phi, indexing="ij")
        points = center + np.stack([(rr * np.cos(pp)).ravel(), (rr * np.sin(pp)).ravel()], axis=1)
        weights = (np.outer(w_rho * rho, np.full(r.n_phi, 2.0 * math.pi / r.n_phi))).ravel()
        return _polar_energy(
            f, points, weights, _ball_exit(center, radius), params.sigma, params.p, r,
            cross=True, domain_exit=domain_exit,
        )

    fine, evaluations = run(rule)
    coarse, _ = run(rule.coarser())
    return Estimate(fine, abs(fine - coarse), EstimateMethod.QUAD, samples=evaluations)


# ----------------------------------------------------------------------
# Points d'entrée déterministes
# ----------------------------------------------------------------------

def seminorm_quadrature(
    f: TestFunction,
    params: SeminormParams,
    tol: float = 1e-8,
    force: bool = False,
) -> Estimate:
    """
    Semi-norme pondérée (puissance p) par quadrature déterministe.

    En dimension 1 l'intégrale est décomposée en une partie diagonale
    \\int_0^L h^{p(1-s)-1} Phi(h) dh (support x support) et deux termes croisés
    support x complémentaire, dont la queue lointaine est sommée exactement.
    En dimension 2 seuls les poids triviaux sont pris en charge, sur un
    domaine convexe (ou R^2 \\ {0}) contenant le disque de support de f.

    Args:
        f: Fonction test régulière (indicatrices refusées)
        params: Paramètres de la semi-norme
        tol: Tolérance relative visée
        force: Calculer même si aucun régime de finitude ne s'applique

    Returns:
        Estimate (méthode quad)

    Raises:
        UnsupportedError: Dimension > 2, fonction indicatrice, poids ou domaine non convexe en 2D
        DivergenceError: Configuration non intégrable
        ParameterError: Paramètres hors des régimes connus
    """
    _check_function(f, params)
    if f.smoothness == Smoothness.INDICATOR:
        raise UnsupportedError(f"{f.name}: fonction non régulière, utiliser le moteur mc")
    _require_admissible(f, params, force)
    if params.dimension == 1:
        estimate = _quadrature_1d(f, params, tol)
    elif params.dimension == 2:
        estimate = _quadrature_2d(f, params, _PolarRule())
    else:
        raise UnsupportedError("Pas de quadrature déterministe au-delà de la dimension 2")
    if not math.isfinite(estimate.value):
        raise DivergenceError("Quadrature non finie")
    return estimate


# ----------------------------------------------------------------------
# Monte-Carlo stratifié
# ----------------------------------------------------------------------

_MC_CHUNK = 1 << 16


def _unit_directions(rng: np.random.Generator, n: int, d: int) -> np.ndarray:
    if d == 1:
        return (2.0 * rng.integers(0, 2, size=n) - 1.0).reshape(n, 1)
    directions = rng.standard_normal((n, d))
    return directions / np.linalg.norm(directions, axis=1, keepdims=True)


def _weight(dist: np.ndarray, gamma: float) -> np.ndarray:
    if gamma == 0.0:
        return np.ones_like(dist)
    with np.errstate(divide="ignore", over="ignore"):
        return dist ** (-gamma)


@dataclass(frozen=True)
class _SamplingBox:
    lower: np.ndarray
    upper: np.ndarray
    r_near: float
    r_far: float

    @property
    def volume(self) -> float:
        return float(np.prod(self.upper - self.lower))

    def outside(self, y: np.ndarray) -> np.ndarray:
        return np.any((y < self.lower) | (y > self.upper), axis=1)


def _sampling_box(f: TestFunction, domain: Domain) -> _SamplingBox:
    box = f.support.bounding_box()
    if box is None:
        raise UnsupportedError(f"{f.name}: support non borné, échantillonnage impossible")
    lo, hi = box
    center = 0.5 * (lo + hi)
    extent = np.maximum(hi - lo, 1e-12)
    lower, upper = center - extent, center + extent
    domain_box = domain.bounding_box()
    if domain_box is not None:
        lower = np.maximum(lower, domain_box[0])
        upper = np.minimum(upper, domain_box[1])
        if np.any(lower >= upper):
            raise ParameterError("Le support de la fonction ne rencontre pas le domaine")
        r_far = float(np.linalg.norm(domain_box[1] - domain_box[0]))
    else:
        r_far = float(np.linalg.norm(upper - lower))
    r_near = 0.5 * float(np.linalg.norm(extent))
    return _SamplingBox(lower, upper, r_near, max(r_far, 2.0 * r_near))


def seminorm_mc(
    f: TestFunction,
    params: SeminormParams,
    n: int = 200_000,
    seed: int = 0,
    force: bool = False,
) -> Estimate:
    """
    Estimation Monte-Carlo stratifiée de la semi-norme pondérée.

    x est uniforme sur la boîte du support gonflée d'un facteur 2; y = x + r w
    avec w uniforme sur la sphère et r tiré dans trois strates:
    - proche: densité r^{kappa-1} sur ]0, r_near[ (kappa = p(1-s))
    - intermédiaire: uniforme sur ]r_near, r_far[
    - lointaine (domaine non borné): densité de Pareto r^{-1-lambda}
    La contribution des couples (x hors boîte, y dans la boîte) est obtenue par
    symétrisation, poids échangés. Chaque strate consomme son propre flux
    aléatoire issu de SeedSequence(seed): deux appels de même graine
    partagent leurs nombres aléatoires.

    Args:
        f: Fonction test
        params: Paramètres de la semi-norme
        n: Nombre total d'échantillons (>= 1000)
        seed: Graine
        force: Calculer même hors des régimes de finitude connus

    Returns:
        Estimate (erreur à 3 écarts-types)
    """
    _check_function(f, params)
    if n < 1000:
        raise ParameterError(f"Au moins 1000 échantillons sont nécessaires (reçu {n})")
    _require_admissible(f, params, force)

    domain = params.domain
    d = params.dimension
    p, sigma = params.p, params.sigma
    alpha, beta = params.alpha, params.beta
    box = _sampling_box(f, domain)
    measure = sphere_measure(d).value
    volume = box.volume

    if f.smoothness == Smoothness.INDICATOR:
        kappa_near = max(0.5 * (1.0 - 2.0 * sigma), 0.05)
    else:
        kappa_near = params.kappa
    has_tail = not domain.is_bounded
    lam = sigma + min(alpha, beta)
    if has_tail and lam <= 0.0:
        raise DivergenceError(f"Queue lointaine divergente: s p + min(alpha, beta) = {lam:.4g} <= 0")

    if has_tail:
        counts = (n // 2, n // 4, n - n // 2 - n // 4)
    else:
        counts = (n // 2, n - n // 2, 0)
    streams = np.random.SeedSequence(seed).spawn(3)

    def stratum_values(kind: int, rng: np.random.Generator, m: int) -> np.ndarray:
        x = rng.uniform(box.lower, box.upper, size=(m, d))
        u = rng.random(m)
        omega = _unit_directions(rng, m, d)
        if kind == 0:
            r = box.r_near * u ** (1.0 / kappa_near)
        elif kind == 1:
            r = box.r_near + (box.r_far - box.r_near) * u
        else:
            r = box.r_far * (1.0 - u) ** (-1.0 / lam)
        y = x + r[:, None] * omega
        fx = f.value(x)
        fy = f.value(y)
        dist_x = domain.distance(x)
        dist_y = domain.distance(y)
        mask = (domain.contains(x) & domain.contains(y)).astype(float)
        swap = box.outside(y).astype(float)
        direct_w = _weight(dist_x, alpha) * _weight(dist_y, beta)
        swapped = swap * np.abs(fx) ** p * _weight(dist_x, beta) * _weight(dist_y, alpha)

        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            if kind == 0 and f.smoothness != Smoothness.INDICATOR:
                # |f(x+rw) - f(x)|^p r^{-1-sigma} / q(r) = |Delta / r|^p r_near^kappa / kappa
                quotient = np.abs(fy - fx) / r
                tiny = r < 1e-6 * box.r_near
                if np.any(tiny):
                    slope = np.abs(np.sum(f.gradient(x[tiny]) * omega[tiny], axis=1))
                    quotient[tiny] = slope
                ratio = box.r_near ** kappa_near / kappa_near
                values = (quotient ** p * direct_w + swapped * r ** (-p)) * ratio
            else:
                kernel = r ** (-1.0 - sigma)
                if kind == 0:
                    inv_density = box.r_near ** kappa_near * r ** (1.0 - kappa_near) / kappa_near
                elif kind == 1:
                    inv_density = box.r_far - box.r_near
                else:
                    inv_density = r ** (1.0 + lam) / (lam * box.r_far ** lam)
                values = (np.abs(fy - fx) ** p * direct_w + swapped) * kernel * inv_density
        values = values * mask * measure * volume
        bad = ~np.isfinite(values)
        if np.any(bad):
            logger.warning("MC: %d échantillons non finis ignorés", int(np.sum(bad)))
            values[bad] = 0.0
        return values

    value = 0.0
    variance = 0.0
    for kind, (count, stream) in enumerate(zip(counts, streams)):
        if count == 0:
            continue
        rng = np.random.default_rng(stream)
        s1 = 0.0
        s2 = 0.0
        done = 0
        while done < count:
            m = min(_MC_CHUNK, count - done)
            values = stratum_values(kind, rng, m)
            s1 += float(np.sum(values))
            s2 += float(np.sum(values * values))
            done += m
        mean = s1 / count
        value += mean
        variance += max(s2 / count - mean * mean, 0.0) / max(count - 1, 1)
        logger.debug("MC strate %d: moyenne %.6g (%d échantillons)", kind, mean, count)

    return Estimate(value, 3.0 * math.sqrt(variance), EstimateMethod.MC, samples=n, seed=seed)


# ----------------------------------------------------------------------
# Borne inférieure de Whitney
# ----------------------------------------------------------------------

def _weight_lower_bound(cube: WhitneyCube, gamma: float) -> float:
    """Minorant de d_Omega^{-gamma} sur le cube: dist <= d_Omega <= dist + diam."""
    if gamma == 0.0:
        return 1.0
    if gamma > 0.0:
        return (cube.distance + cube.diameter) ** (-gamma)
    return cube.distance ** (-gamma)


def _self_energy_1d(f: TestFunction, cube: WhitneyCube, kappa: float, p: float, tol: float) -> Tuple[float, float]:
    a = float(cube.lower[0])
    side = cube.side
    kinks = [k for k in f.kinks if a < k < a + side]
    inner_tol = max(0.1 * tol, 1e-13)

    def phi(h: float) -> float:
        h = max(h, 1e-9 * side)

        def regular(x: float) -> float:
            return (abs(f.scalar(x + h) - f.scalar(x)) / h) ** p

        breaks = kinks + [k - h for k in kinks]
        value, _ = integrate_piecewise(regular, a, a + side - h, inner_tol, breakpoints=breaks, what="cube")
        return 2.0 * value

    lags = sorted({abs(k - a) for k in kinks} | {abs(a + side - k) for k in kinks})
    return integrate_piecewise(
        phi, 0.0, side, tol, breakpoints=lags, factors=(lambda m: (0.0, kappa - 1.0),), what="cube",
    )


def _square_exit(lower: np.ndarray, upper: np.ndarray) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    def exit_radius(x: np.ndarray, omega: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore"):
            bounds = []
            for axis in range(2):
                w = omega[:, axis][None, :]
                to_upper = (upper[axis] - x[:, axis])[:, None] / w
                to_lower = (lower[axis] - x[:, axis])[:, None] / w
                bounds.append(np.where(w > 0.0, to_upper, np.where(w < 0.0, to_lower, np.inf)))
        return np.minimum(bounds[0], bounds[1])
    return exit_radius


_WHITNEY_RULE = _PolarRule(n_rho=6, n_phi=6, n_theta=24, levels=14, n_r=5)


def _self_energy_2d(f: TestFunction, cube: WhitneyCube, sigma: float, p: float, rule: _PolarRule) -> float:
    nodes, weights = gauss_legendre(rule.n_rho)
    lower, upper = cube.lower, cube.upper
    half = 0.5 * cube.side
    xs = cube.center[0] + half * nodes
    ys = cube.center[1] + half * nodes
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    points = np.stack([gx.ravel(), gy.ravel()], axis=1)
    w = np.outer(half * weights, half * weights).ravel()
    value, _ = _polar_energy(f, points, w, _square_exit(lower, upper), sigma, p, rule, cross=False)
    return value


def seminorm_whitney_lower(
    f: TestFunction,
    params: SeminormParams,
    min_side: float = 2.0 ** -8,
    tol: float = 1e-8,
) -> Estimate:
    """
    Borne inférieure unilatérale sum_j \\int_{Q_j} \\int_{Q_j} sur les cubes de Whitney.

    Sur chaque cube les poids sont minorés grâce à dist(Q, bord) <= d_Omega(x)
    <= dist(Q, bord) + diam(Q). Les cubes tronqués ne sont pas comptés.

    Raises:
        UnsupportedError: Domaine non borné ou dimension > 2
    """
    _check_function(f, params)
    if f.smoothness == Smoothness.INDICATOR:
        raise UnsupportedError(f"{f.name}: fonction non régulière")
    if params.dimension > 2:
        raise UnsupportedError("Borne de Whitney disponible en dimension 1 et 2")
    cubes = whitney_decompose(params.domain, min_side)
    kept = [cube for cube in cubes if not cube.truncated]
    sigma, p, kappa = params.sigma, params.p, params.kappa

    total = 0.0
    error = 0.0
    coarse_total = 0.0
    for cube in kept:
        factor = _weight_lower_bound(cube, params.alpha) * _weight_lower_bound(cube, params.beta)
        if params.dimension == 1:
            value, abserr = _self_energy_1d(f, cube, kappa, p, tol)
            total += factor * value
            error += factor * abserr
        else:
            total += factor * _self_energy_2d(f, cube, sigma, p, _WHITNEY_RULE)
            coarse_total += factor * _self_energy_2d(f, cube, sigma, p, _WHITNEY_RULE.coarser())
    if params.dimension == 2:
        error = abs(total - coarse_total)
    return Estimate(
        total, error, EstimateMethod.WHITNEY_LOWER, samples=len(kept), one_sided=True,
        extra={"truncated": len(cubes) - len(kept)},
    )


# ----------------------------------------------------------------------
# Indicatrice d'un intervalle (dimension 1)
# ----------------------------------------------------------------------

def indicator_pair_integral(
    radius: float,
    alpha: float,
    beta: Optional[float] = None,
    s: float = 0.0,
    p: float = 1.0,
    center: float = 0.0,
    tol: float = 1e-10,
) -> Estimate:
    """
    Intégrale \\int_E \\int_{R \\ E} |x - y|^{-1-sp} |x|^{-alpha} |y|^{-beta} dy dx
    pour l'intervalle E = ]center - radius, center + radius[.

    Raises:
        DivergenceError: s p + beta <= 0 (queue divergente)
    """
    if not radius > 0.0:
        raise ParameterError("Le rayon doit être strictement positif")
    beta = alpha if beta is None else beta
    a, b = center - radius, center + radius
    sigma = s * p
    domain = Domain.punctured_space(1)
    line = _Line(domain, 4.0 * max(abs(a), abs(b), 0.25))
    outside = [(-math.inf, a), (b, math.inf)]
    edge = 1e-12 * radius
    inner_tol = max(0.1 * tol, 1e-13)

    def regular(x: float) -> float:
        x = min(max(x, a + edge), b - edge)
        return sum(line.outside_integral(x, lo, hi, sigma, beta, inner_tol) for lo, hi in outside)

    breaks = [0.5 * (a + b)]
    if a < 0.0 < b:
        breaks = [0.0, 0.5 * a, 0.5 * b]
    value, error = integrate_piecewise(
        regular, a, b, tol, breakpoints=breaks, factors=(line.weight_factor(alpha),), what="indicatrice",
    )
    return Estimate(value, error, EstimateMethod.QUAD)


# ----------------------------------------------------------------------
# Sélection du moteur et balayage
# ----------------------------------------------------------------------

def select_engine(f: TestFunction, params: SeminormParams) -> Engine:
    """Quadrature quand elle est disponible, Monte-Carlo sinon."""
    if f.smoothness == Smoothness.INDICATOR or not f.support.is_bounded:
        return Engine.MC
    if params.dimension == 1:
        return Engine.QUAD
    if (
        params.dimension == 2
        and params.is_unweighted
        and f.smoothness in (Smoothness.C2C, Smoothness.C1C)
        and params.s > 0.0
    ):
        center, radius = _support_disc(f)
        try:
            _domain_exit_2d(params.domain, center, radius)
        except UnsupportedError:
            return Engine.MC
        return Engine.QUAD
    return Engine.MC


def compute_seminorm(
    f: TestFunction,
    params: SeminormParams,
    engine: Optional[Engine] = None,
    tol: float = 1e-8,
    samples: int = 200_000,
    seed: int = 0,
    force: bool = False,
) -> Estimate:
    """Calcule la semi-norme avec le moteur demandé (choisi automatiquement si None)."""
    if engine is None:
        engine = select_engine(f, params)
    if engine == Engine.QUAD:
        return seminorm_quadrature(f, params, tol=tol, force=force)
    return seminorm_mc(f, params, n=samples, seed=seed, force=force)


@dataclass(frozen=True)
class ScanRow:
    """Ligne d'un balayage de continuité."""
    s: float
    alpha: float
    beta: float
    estimate: Estimate

    def to_record(self) -> Dict[str, object]:
        record = {"s": self.s, "alpha": self.alpha, "beta": self.beta}
        record.update(self.estimate.to_record())
        return record


def continuity_scan(
    f: TestFunction,
    domain: Domain,
    p: float,
    grid: Sequence[Tuple[float, float, float]],
    engine: Optional[Engine] = None,
    tol: float = 1e-8,
    samples: int = 200_000,
    seed: int = 0,
    force: bool = False,
    verbose: bool = False,
) -> List[ScanRow]:
    """
    Valeurs de la semi-norme sur une grille de triplets (s, alpha, beta).

    Tous les points partagent le même maillage (quadrature) ou les mêmes
    nombres aléatoires (Monte-Carlo, même graine), de sorte que les écarts
    reflètent la sensibilité aux paramètres. Un point répété renvoie la même
    estimation.
    """
    if not grid:
        raise ParameterError("La grille du balayage est vide")
    log = logger.info if verbose else logger.debug
    cache: Dict[Tuple[float, float, float], Estimate] = {}
    rows = []
    for k, (s, alpha, beta) in enumerate(grid):
        key = (float(s), float(alpha), float(beta))
        if key not in cache:
            params = SeminormParams(key[0], p, key[1], key[2], domain)
            cache[key] = compute_seminorm(f, params, engine, tol, samples, seed, force)
        log("Étape %d: s=%.4g alpha=%.4g beta=%.4g -> %s", k, key[0], key[1], key[2], cache[key])
        rows.append(ScanRow(key[0], key[1], key[2], cache[key]))
    return rows
