"""
Sondes asymptotiques.

Chaque sonde évalue la semi-norme pondérée le long d'un calendrier de
paramètres (s -> 1, s -> 0, alpha -> 0, alpha -> d), multiplie par la distance
au point limite, extrapole la suite vers 0 par le schéma de Neville et compare
au membre de droite attendu, toujours calculé par les modules constants et
funcspace.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .constants import bbm_constant, classical_ms_constant, hardy_constant, sphere_measure
from .errors import DivergenceError, ParameterError, UnsupportedError
from .estimate import Estimate
from .funcspace import (
    Smoothness,
    TestFunction,
    ball_indicator,
    invert_function,
    weighted_gradient_energy,
    weighted_lp_norm,
)
from .geometry import Domain
from .seminorm import Engine, SeminormParams, compute_seminorm, indicator_pair_integral

logger = logging.getLogger(__name__)

# Nombre maximal de points utilisés par l'extrapolation (degré <= 3)
MAX_EXTRAPOLATION_POINTS = 4

# Seuil du verdict de bornitude: max des valeurs <= facteur x première valeur
BOUNDEDNESS_FACTOR = 10.0


@dataclass
class LimitProbe:
    """
    Résultat d'une sonde asymptotique.

    Attributes:
        name: Nom de la sonde (bbm, corollary-rd, ms0, msd, ms-classical, ...)
        parameter: Paramètre qui varie ("s" ou "alpha")
        schedule: Valeurs successives du paramètre
        distances: Distances au point limite (abscisses de l'extrapolation)
        scaled_values: distance x semi-norme^p
        scaled_errors: distance x erreur de l'estimation
        estimates: Estimations brutes de la semi-norme
        extrapolated: Limite extrapolée
        extrapolation_error: Écart entre les deux dernières diagonales de Neville
        target: Membre de droite attendu
        relative_gap: |extrapolated - target| / |target| (|extrapolated| si target = 0)
        hardy_bounds: Minorants de Hardy le long du calendrier (ms0)
        hardy_ok: True si chaque minorant est respecté
        inversion_route: Sonde obtenue par inversion (msd)
        bounded: Verdict de bornitude (boundedness)
        details: Métadonnées (paramètres fixes, accord des routes, ...)
    """
    name: str
    parameter: str
    schedule: List[float]
    distances: List[float]
    scaled_values: List[float]
    scaled_errors: List[float]
    estimates: List[Estimate]
    extrapolated: float
    extrapolation_error: float
    target: float
    relative_gap: float
    hardy_bounds: Optional[List[float]] = None
    hardy_ok: Optional[bool] = None
    inversion_route: Optional["LimitProbe"] = None
    bounded: Optional[bool] = None
    details: Dict[str, object] = field(default_factory=dict)

    @property
    def total_error(self) -> float:
        """Erreur d'extrapolation augmentée de la pire erreur de moteur."""
        return self.extrapolation_error + max(self.scaled_errors, default=0.0)

    def rows(self) -> List[Dict[str, object]]:
        """Une ligne par point du calendrier."""
        rows = []
        for k, estimate in enumerate(self.estimates):
            row = {
                "index": k,
                self.parameter: self.schedule[k],
                "distance": self.distances[k],
                "value": estimate.value,
                "error": estimate.error,
                "scaled": self.scaled_values[k],
                "scaled_error": self.scaled_errors[k],
            }
            if self.hardy_bounds is not None:
                row["hardy_bound"] = self.hardy_bounds[k]
            rows.append(row)
        return rows

    def to_summary(self) -> Dict[str, object]:
        summary = {
            "probe": self.name,
            "parameter": self.parameter,
            "extrapolated": self.extrapolated,
            "extrapolation_error": self.extrapolation_error,
            "target": self.target,
            "relative_gap": self.relative_gap,
        }
        if self.hardy_ok is not None:
            summary["hardy_ok"] = self.hardy_ok
        if self.bounded is not None:
            summary["bounded"] = self.bounded
        if self.inversion_route is not None:
            summary["inversion_route"] = self.inversion_route.to_summary()
        summary.update(self.details)
        return summary

    def __str__(self) -> str:
        lines = []
        lines.append("=" * 60)
        lines.append(f"SONDE {self.name.upper()}")
        lines.append("=" * 60)
        for k, value in enumerate(self.scaled_values):
            lines.append(
                f"  {self.parameter} = {self.schedule[k]:<10.6g} valeur normalisée = {value:.8g}"
                f" ± {self.scaled_errors[k]:.2g}"
            )
        lines.append(f"Limite extrapolée: {self.extrapolated:.8g} ± {self.extrapolation_error:.2g}")
        lines.append(f"Cible: {self.target:.8g}")
        lines.append(f"Écart relatif: {self.relative_gap:.3g}")
        if self.hardy_ok is not None:
            lines.append(f"Minorant de Hardy respecté: {'oui' if self.hardy_ok else 'non'}")
        if self.bounded is not None:
            lines.append(f"Suite bornée: {'oui' if self.bounded else 'non'}")
        if self.inversion_route is not None:
            route = self.inversion_route
            lines.append(f"Route par inversion: {route.extrapolated:.8g} ± {route.total_error:.2g}")
        lines.append("=" * 60)
        return "\n".join(lines)


# ----------------------------------------------------------------------
# Calendriers et extrapolation
# ----------------------------------------------------------------------

def default_schedule(kind: str, dimension: int = 1, count: int = 5) -> List[float]:
    """
    Calendrier géométrique par défaut (pas 0.2 x 2^{-k}, k = 0..count-1).

    Args:
        kind: "bbm" (s -> 1), "ms0" ou "indicator" (alpha -> 0),
            "msd" (alpha -> d), "ms-classical" (s -> 0)
        dimension: Dimension (pour alpha -> d)
        count: Nombre de points

    Example:
        >>> default_schedule("bbm", count=3)
        [0.8, 0.9, 0.95]
    """
    steps = [0.2 * 2.0 ** (-k) for k in range(count)]
    if kind in ("bbm", "corollary-rd", "boundedness"):
        return [1.0 - h for h in steps]
    if kind in ("ms0", "ms-classical", "indicator"):
        return steps
    if kind == "msd":
        return [dimension - h for h in steps]
    raise ParameterError(f"Calendrier inconnu: {kind!r}")


def richardson_extrapolate(xs: Sequence[float], ys: Sequence[float]) -> Tuple[float, float]:
    """
    Extrapolation polynomiale en x = 0 par le schéma de Neville.

    Seuls les MAX_EXTRAPOLATION_POINTS points les plus proches de 0 sont
    utilisés. L'erreur est l'écart entre les deux dernières diagonales.

    Args:
        xs: Distances au point limite, strictement décroissantes en valeur absolue
        ys: Valeurs correspondantes

    Returns:
        Tuple (limite, erreur)

    Raises:
        ParameterError: Moins de 3 points, longueurs différentes ou xs non monotone
        DivergenceError: Valeur non finie

    Example:
        >>> richardson_extrapolate([0.4, 0.2, 0.1], [3.4, 3.2, 3.1])[0]
        3.0
    """
    if len(xs) != len(ys):
        raise ParameterError("xs et ys doivent avoir la même longueur")
    if len(xs) < 3:
        raise ParameterError(f"L'extrapolation exige au moins 3 points (reçu {len(xs)})")
    if any(abs(b) >= abs(a) for a, b in zip(xs[:-1], xs[1:])):
        raise ParameterError("Les distances doivent décroître strictement vers 0")
    if not all(math.isfinite(y) for y in ys):
        raise DivergenceError("Valeur non finie dans la suite à extrapoler")

    x = [float(v) for v in xs[-MAX_EXTRAPOLATION_POINTS:]]
    table = [float(v) for v in ys[-MAX_EXTRAPOLATION_POINTS:]]
    m = len(x)
    previous = table[-1]
    for j in range(1, m):
        previous = table[-1]
        for i in range(m - 1, j - 1, -1):
            table[i] = (x[i] * table[i - 1] - x[i - j] * table[i]) / (x[i] - x[i - j])
    return table[-1], abs(table[-1] - previous)


def _check_schedule(schedule: Sequence[float], limit_point: float) -> List[float]:
    if not schedule:
        raise ParameterError("Calendrier vide")
    distances = [abs(limit_point - v) for v in schedule]
    if any(dist <= 0.0 for dist in distances):
        raise ParameterError("Le calendrier ne doit pas atteindre le point limite")
    if any(b >= a for a, b in zip(distances[:-1], distances[1:])):
        raise ParameterError("Le calendrier doit être strictement monotone vers le point limite")
    return distances


def _assemble(
    name: str,
    parameter: str,
    schedule: Sequence[float],
    distances: Sequence[float],
    estimates: Sequence[Estimate],
    target: float,
    details: Dict[str, object],
) -> LimitProbe:
    scaled = [dist * e.value for dist, e in zip(distances, estimates)]
    scaled_errors = [dist * e.error for dist, e in zip(distances, estimates)]
    if len(scaled) >= 3:
        extrapolated, extrapolation_error = richardson_extrapolate(distances, scaled)
    else:
        extrapolated = scaled[-1]
        extrapolation_error = abs(scaled[-1] - scaled[0]) if len(scaled) > 1 else scaled_errors[-1]
    if target != 0.0:
        gap = abs(extrapolated - target) / abs(target)
    else:
        gap = abs(extrapolated)
    return LimitProbe(
        name, parameter, list(schedule), list(distances), scaled, scaled_errors, list(estimates),
        extrapolated, extrapolation_error, target, gap, details=details,
    )


class _Runner:
    """Évaluation séquentielle d'un calendrier (ordre du calendrier conservé)."""

    def __init__(self, engine: Optional[Engine], tol: float, samples: int, seed: int, force: bool, verbose: bool):
        self.engine = engine
        self.tol = tol
        self.samples = samples
        self.seed = seed
        self.force = force
        self.log = logger.info if verbose else logger.debug

    def run(self, f: TestFunction, params_list: Sequence[SeminormParams], name: str) -> List[Estimate]:
        estimates = []
        for k, params in enumerate(params_list):
            estimate = compute_seminorm(
                f, params, self.engine, tol=self.tol, samples=self.samples, seed=self.seed, force=self.force,
            )
            self.log(
                "Étape %d (%s): s=%.6g alpha=%.6g beta=%.6g -> %s",
                k, name, params.s, params.alpha, params.beta, estimate,
            )
            estimates.append(estimate)
        return estimates


def _require_smooth(f: TestFunction) -> None:
    if f.smoothness == Smoothness.INDICATOR or f.gradient is None:
        raise UnsupportedError(f"{f.name}: la sonde exige une fonction régulière")


# ----------------------------------------------------------------------
# Limite s -> 1
# ----------------------------------------------------------------------

def bbm_probe(
    f: TestFunction,
    domain: Domain,
    p: float,
    alpha: float = 0.0,
    beta: float = 0.0,
    schedule: Optional[Sequence[float]] = None,
    engine: Optional[Engine] = None,
    tol: float = 1e-8,
    samples: int = 200_000,
    seed: int = 0,
    force: bool = False,
    verbose: bool = False,
) -> LimitProbe:
    """
    Limite de (1 - s) [f]^p quand s -> 1.

    Cible: K_{d,p} \\int_Omega |grad f|^p d_Omega^{-(alpha+beta)}.

    Args:
        f: Fonction régulière
        domain: Domaine Omega
        p: Exposant
        alpha, beta: Exposants des poids
        schedule: Valeurs de s croissantes vers 1 (défaut: 1 - 0.2 x 2^{-k})
        engine: Moteur (choisi automatiquement si None)
        tol: Tolérance de la quadrature
        samples: Échantillons Monte-Carlo par point
        seed: Graine commune à tous les points
        force: Ignorer le contrôle d'admissibilité
        verbose: Journaliser chaque étape au niveau INFO

    Returns:
        LimitProbe
    """
    _require_smooth(f)
    schedule = list(schedule) if schedule is not None else default_schedule("bbm")
    distances = _check_schedule(schedule, 1.0)
    runner = _Runner(engine, tol, samples, seed, force, verbose)
    params_list = [SeminormParams(s, p, alpha, beta, domain) for s in schedule]
    estimates = runner.run(f, params_list, "bbm")
    energy = weighted_gradient_energy(f, p, alpha + beta, domain)
    target = bbm_constant(domain.dimension, p).value * energy.value
    details = {"p": p, "alpha": alpha, "beta": beta, "domain": str(domain)}
    return _assemble("bbm", "s", schedule, distances, estimates, target, details)


def corollary_rd_probe(
    f: TestFunction,
    p: float,
    alpha: float,
    beta: float,
    schedule: Optional[Sequence[float]] = None,
    engine: Optional[Engine] = None,
    tol: float = 1e-8,
    samples: int = 200_000,
    seed: int = 0,
    verbose: bool = False,
) -> LimitProbe:
    """
    Limite s -> 1 sur R^d \\ {0} avec les poids |x|^{-alpha} |y|^{-beta}.

    Raises:
        ParameterError: Hors de -p < alpha, beta < d et alpha + beta < d
    """
    d = f.dimension
    if not (-p < alpha < d and -p < beta < d and alpha + beta < d):
        raise ParameterError(
            f"Hypothèse violée: -p < alpha, beta < d et alpha + beta < d "
            f"(alpha={alpha}, beta={beta}, p={p}, d={d})"
        )
    probe = bbm_probe(
        f, Domain.punctured_space(d), p, alpha, beta, schedule, engine, tol, samples, seed,
        force=False, verbose=verbose,
    )
    probe.name = "corollary-rd"
    return probe


def boundedness_probe(
    f: TestFunction,
    domain: Domain,
    p: float,
    alpha: float,
    beta: float,
    schedule: Sequence[float] = (0.8, 0.9, 0.95, 0.99),
    engine: Optional[Engine] = None,
    tol: float = 1e-8,
    samples: int = 200_000,
    seed: int = 0,
    verbose: bool = False,
) -> LimitProbe:
    """
    (1 - s) [f]^p le long de s -> 1 avec verdict de bornitude.

    La suite est déclarée bornée si son maximum ne dépasse pas
    BOUNDEDNESS_FACTOR fois sa première valeur.
    """
    probe = bbm_probe(
        f, domain, p, alpha, beta, schedule, engine, tol, samples, seed, force=False, verbose=verbose,
    )
    probe.name = "boundedness"
    first = abs(probe.scaled_values[0])
    probe.bounded = max(abs(v) for v in probe.scaled_values) <= BOUNDEDNESS_FACTOR * max(first, 1e-300)
    return probe


# ----------------------------------------------------------------------
# Limites à s = 0
# ----------------------------------------------------------------------

def ms_alpha0_probe(
    f: TestFunction,
    p: float,
    schedule: Optional[Sequence[float]] = None,
    engine: Optional[Engine] = None,
    tol: float = 1e-8,
    samples: int = 200_000,
    seed: int = 0,
    verbose: bool = False,
) -> LimitProbe:
    """
    Limite de alpha [f]^p à s = 0, alpha = beta -> 0, sur R^d \\ {0}.

    Cible: 2 |S^{d-1}| \\int |f|^p. Chaque point est comparé au minorant de
    Hardy alpha C(d, p, alpha) \\int |f|^p |x|^{-2 alpha}.

    Raises:
        ParameterError: alpha_k hors de ]0, d/4] ou calendrier non décroissant
    """
    d = f.dimension
    schedule = list(schedule) if schedule is not None else default_schedule("ms0")
    if any(not 0.0 < a <= d / 4.0 for a in schedule):
        raise ParameterError(f"Le calendrier alpha doit rester dans ]0, d/4] (d={d})")
    distances = _check_schedule(schedule, 0.0)
    domain = Domain.punctured_space(d)
    runner = _Runner(engine, tol, samples, seed, False, verbose)
    params_list = [SeminormParams(0.0, p, a, a, domain) for a in schedule]
    estimates = runner.run(f, params_list, "ms0")

    norm = weighted_lp_norm(f, p, 0.0, domain)
    target = 2.0 * sphere_measure(d).value * norm.value
    probe = _assemble("ms0", "alpha", schedule, distances, estimates, target, {"p": p})

    bounds = []
    for a in schedule:
        weighted = weighted_lp_norm(f, p, 2.0 * a, domain)
        bounds.append(a * hardy_constant(d, p, a).value * weighted.value)
    probe.hardy_bounds = bounds
    probe.hardy_ok = all(
        bound <= value + error + 1e-10 * abs(value)
        for bound, value, error in zip(bounds, probe.scaled_values, probe.scaled_errors)
    )
    return probe


def ms_alphad_probe(
    f: TestFunction,
    p: float,
    schedule: Optional[Sequence[float]] = None,
    routes: Sequence[str] = ("direct", "inversion"),
    engine: Optional[Engine] = None,
    tol: float = 1e-8,
    samples: int = 200_000,
    seed: int = 0,
    verbose: bool = False,
) -> LimitProbe:
    """
    Limite de (d - alpha) [f]^p à s = 0, alpha = beta -> d, sur R^d \\ {0}.

    Cible: 2 |S^{d-1}| \\int |f|^p |x|^{-2d}. La route par inversion applique
    ms_alpha0_probe à Tf = f o T avec le calendrier d - alpha_k; la route
    directe exige un support borné.

    Raises:
        ParameterError: Support contenant l'origine sans limite à l'infini,
            ou route inconnue
    """
    d = f.dimension
    if not (f.support.excludes_origin or f.limit_at_infinity is not None):
        raise ParameterError(
            f"{f.name}: le support doit éviter l'origine ou f doit être constante près de l'infini"
        )
    unknown = set(routes) - {"direct", "inversion"}
    if unknown or not routes:
        raise ParameterError(f"Routes invalides: {sorted(unknown) or 'aucune'}")
    schedule = list(schedule) if schedule is not None else default_schedule("msd", d)
    distances = _check_schedule(schedule, float(d))
    domain = Domain.punctured_space(d)
    target = 2.0 * sphere_measure(d).value * weighted_lp_norm(f, p, 2.0 * d, domain).value

    inversion = None
    if "inversion" in routes:
        inverted = invert_function(f)
        inversion = ms_alpha0_probe(
            inverted, p, [d - a for a in schedule], engine, tol, samples, seed, verbose,
        )
        inversion.name = "msd-inversion"
        inversion.parameter = "alpha"
        inversion.schedule = list(schedule)
        inversion.target = target
        inversion.relative_gap = abs(inversion.extrapolated - target) / abs(target) if target else abs(inversion.extrapolated)

    direct_available = "direct" in routes and f.support.is_bounded
    if "direct" in routes and not direct_available:
        if "inversion" not in routes:
            raise UnsupportedError(f"{f.name}: route directe impossible pour un support non borné")
        logger.warning("%s: support non borné, seule la route par inversion est calculée", f.name)

    if not direct_available:
        inversion.name = "msd"
        inversion.details["route"] = "inversion"
        return inversion

    runner = _Runner(engine, tol, samples, seed, False, verbose)
    params_list = [SeminormParams(0.0, p, a, a, domain) for a in schedule]
    estimates = runner.run(f, params_list, "msd")
    probe = _assemble("msd", "alpha", schedule, distances, estimates, target, {"p": p, "route": "direct"})
    if inversion is not None:
        probe.inversion_route = inversion
        probe.details["routes_agree"] = (
            abs(probe.extrapolated - inversion.extrapolated) <= probe.total_error + inversion.total_error
        )
    return probe


def ms_classical_probe(
    f: TestFunction,
    p: float,
    schedule: Optional[Sequence[float]] = None,
    engine: Optional[Engine] = None,
    tol: float = 1e-8,
    samples: int = 200_000,
    seed: int = 0,
    verbose: bool = False,
) -> LimitProbe:
    """
    Limite de s [f]^p quand s -> 0 sans poids sur R^d.

    Cible: (2/p) |S^{d-1}| \\int |f|^p.
    """
    d = f.dimension
    schedule = list(schedule) if schedule is not None else default_schedule("ms-classical")
    distances = _check_schedule(schedule, 0.0)
    domain = Domain.full_space(d)
    runner = _Runner(engine, tol, samples, seed, False, verbose)
    params_list = [SeminormParams(s, p, 0.0, 0.0, domain) for s in schedule]
    estimates = runner.run(f, params_list, "ms-classical")
    target = classical_ms_constant(d, p).value * weighted_lp_norm(f, p, 0.0, domain).value
    return _assemble("ms-classical", "s", schedule, distances, estimates, target, {"p": p})


# ----------------------------------------------------------------------
# Identité d'inversion
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class InversionCheck:
    """
    Comparaison [f]_{alpha,beta} et [Tf]_{d-alpha-sp, d-beta-sp}.

    Attributes:
        lhs: Semi-norme de f
        rhs: Semi-norme de Tf aux exposants transformés
        residual: |lhs - rhs| / max(lhs, rhs) (0 si les deux sont nuls)
        within_error: True si |lhs - rhs| ne dépasse pas la somme des erreurs
    """
    lhs: Estimate
    rhs: Estimate
    residual: float
    within_error: bool

    def to_summary(self) -> Dict[str, object]:
        return {
            "lhs": self.lhs.value,
            "lhs_error": self.lhs.error,
            "rhs": self.rhs.value,
            "rhs_error": self.rhs.error,
            "residual": self.residual,
            "within_error": self.within_error,
        }

    def __str__(self) -> str:
        return (
            f"[f] = {self.lhs}\n[Tf] = {self.rhs}\n"
            f"Résidu relatif: {self.residual:.3g} ({'dans' if self.within_error else 'hors de'} l'erreur)"
        )


def inversion_identity_check(
    f: TestFunction,
    s: float,
    p: float,
    alpha: float,
    beta: float,
    engine: Optional[Engine] = None,
    tol: float = 1e-8,
    samples: int = 200_000,
    seed: int = 0,
) -> InversionCheck:
    """
    Vérifie [f]_{W^{s,p}_{alpha,beta}} = [Tf]_{W^{s,p}_{alpha',beta'}} avec
    alpha' = d - alpha - sp et beta' = d - beta - sp, sur R^d \\ {0}.

    Raises:
        ParameterError: Support contenant l'origine ou paramètres non admissibles
    """
    if not f.support.excludes_origin:
        raise ParameterError(f"{f.name}: le support doit éviter l'origine")
    d = f.dimension
    domain = Domain.punctured_space(d)
    sp = s * p
    lhs_params = SeminormParams(s, p, alpha, beta, domain)
    rhs_params = SeminormParams(s, p, d - alpha - sp, d - beta - sp, domain)
    lhs = compute_seminorm(f, lhs_params, engine, tol=tol, samples=samples, seed=seed)
    rhs = compute_seminorm(invert_function(f), rhs_params, engine, tol=tol, samples=samples, seed=seed)
    gap = abs(lhs.value - rhs.value)
    scale = max(abs(lhs.value), abs(rhs.value))
    residual = gap / scale if scale > 0.0 else 0.0
    within = gap <= lhs.error + rhs.error + 1e-12 * scale
    logger.debug("Inversion: lhs=%s rhs=%s résidu=%.3g", lhs, rhs, residual)
    return InversionCheck(lhs, rhs, residual, within)


# ----------------------------------------------------------------------
# Indicatrice
# ----------------------------------------------------------------------

def indicator_limit_probe(
    radius: float,
    dimension: int = 1,
    schedule: Optional[Sequence[float]] = None,
    samples: int = 200_000,
    seed: int = 0,
    tol: float = 1e-10,
    verbose: bool = False,
) -> LimitProbe:
    """
    Limite de alpha \\int_E \\int_{E^c} |x - y|^{-d} |x|^{-alpha} |y|^{-alpha}
    pour E = B(0, radius), alpha -> 0.

    Cible: |S^{d-1}| |E|. En dimension 1 l'intégrale est déterministe; en
    dimension 2 elle vaut la moitié de la semi-norme Monte-Carlo de 1_E.
    """
    if dimension not in (1, 2):
        raise UnsupportedError("Sonde indicatrice disponible en dimension 1 et 2")
    schedule = list(schedule) if schedule is not None else default_schedule("indicator")
    distances = _check_schedule(schedule, 0.0)
    log = logger.info if verbose else logger.debug
    indicator = ball_indicator(dimension, radius=radius)
    domain = Domain.punctured_space(dimension)

    estimates = []
    for k, a in enumerate(schedule):
        if dimension == 1:
            estimate = indicator_pair_integral(radius, a, tol=tol)
        else:
            params = SeminormParams(0.0, 1.0, a, a, domain)
            estimate = compute_seminorm(indicator, params, Engine.MC, samples=samples, seed=seed).scaled(0.5)
        log("Étape %d (indicator): alpha=%.6g -> %s", k, a, estimate)
        estimates.append(estimate)

    volume = weighted_lp_norm(indicator, 1.0, 0.0, domain).value
    target = sphere_measure(dimension).value * volume
    return _assemble("indicator", "alpha", schedule, distances, estimates, target, {"radius": radius})
