"""
Outils de quadrature partagés.

- Enveloppe de scipy.integrate.quad qui transforme les échecs de convergence
  en DivergenceError au lieu d'avertissements.
- Intégration par morceaux de fonctions portant des facteurs singuliers
  |x - c|^{puissance}: les facteurs situés aux extrémités d'un morceau sont
  confiés au poids algébrique de QUADPACK (QAWS), les autres restent dans la
  partie régulière.
- Noeuds de Gauss-Legendre et maillage géométrique gradué vers 0.
"""

import math
from functools import lru_cache
from typing import Callable, Iterable, List, Sequence, Tuple

import numpy as np
from scipy import integrate

from .errors import DivergenceError, UnsupportedError

# Fournisseur de facteur singulier: milieu du morceau -> (centre, puissance)
FactorProvider = Callable[[float], Tuple[float, float]]

_QUAD_LIMIT = 400


def _accept(value: float, abserr: float, tol: float, what: str) -> None:
    if not math.isfinite(value) or not math.isfinite(abserr):
        raise DivergenceError(f"{what}: valeur non finie")
    if abserr > max(1e3 * tol * abs(value), 1e-12):
        raise DivergenceError(
            f"{what}: raffinement divergent (valeur {value:.6g}, erreur {abserr:.3g})"
        )


def checked_quad(
    func: Callable[[float], float],
    a: float,
    b: float,
    tol: float,
    what: str = "quadrature",
    left_power: float = 0.0,
    right_power: float = 0.0,
) -> Tuple[float, float]:
    """
    Intègre func sur [a, b] avec contrôle de convergence.

    Si left_power ou right_power est non nul, l'intégrande effective est
    func(x) (x - a)^{left_power} (b - x)^{right_power} (a et b finis).

    Args:
        func: Partie régulière de l'intégrande
        a, b: Bornes (b peut être +inf, a peut être -inf)
        tol: Tolérance relative visée
        what: Libellé utilisé dans les messages d'erreur
        left_power, right_power: Exposants algébriques aux extrémités

    Returns:
        Tuple (valeur, erreur absolue estimée)

    Raises:
        DivergenceError: Exposant <= -1 ou raffinement non convergent
        UnsupportedError: Poids algébrique sur un intervalle infini
    """
    if left_power <= -1.0 or right_power <= -1.0:
        raise DivergenceError(
            f"{what}: singularité non intégrable (exposants {left_power:.4g}, {right_power:.4g})"
        )
    if b <= a:
        return 0.0, 0.0
    epsabs = 1e-15
    if left_power != 0.0 or right_power != 0.0:
        if not (math.isfinite(a) and math.isfinite(b)):
            raise UnsupportedError("Le poids algébrique exige des bornes finies")
        result = integrate.quad(
            func, a, b, weight="alg", wvar=(left_power, right_power),
            epsabs=epsabs, epsrel=tol, limit=_QUAD_LIMIT, full_output=1,
        )
    else:
        result = integrate.quad(
            func, a, b, epsabs=epsabs, epsrel=tol, limit=_QUAD_LIMIT, full_output=1,
        )
    value, abserr = float(result[0]), float(result[1])
    _accept(value, abserr, tol, what)
    return value, abserr


def integrate_piecewise(
    regular: Callable[[float], float],
    a: float,
    b: float,
    tol: float,
    breakpoints: Iterable[float] = (),
    factors: Sequence[FactorProvider] = (),
    what: str = "quadrature",
) -> Tuple[float, float]:
    """
    Intègre regular(x) * prod_k |x - c_k|^{q_k} sur [a, b].

    Chaque fournisseur de facteur renvoie, pour le milieu d'un morceau, le
    centre c_k et la puissance q_k valables sur tout ce morceau. Les points
    de rupture doivent donc séparer les zones où un fournisseur change de
    centre; les centres eux-mêmes sont ajoutés automatiquement.

    Returns:
        Tuple (valeur, erreur absolue estimée)
    """
    if b <= a:
        return 0.0, 0.0
    points = {a, b}
    for point in breakpoints:
        if a < point < b:
            points.add(point)
    # Ajoute les centres des facteurs rencontrés (itération jusqu'à stabilité)
    for _ in range(3):
        ordered = sorted(points)
        added = False
        for u, v in zip(ordered[:-1], ordered[1:]):
            m = _midpoint(u, v)
            for provider in factors:
                center, power = provider(m)
                if power != 0.0 and u < center < v and center not in points:
                    points.add(center)
                    added = True
        if not added:
            break

    ordered = sorted(points)
    total = 0.0
    error = 0.0
    for u, v in zip(ordered[:-1], ordered[1:]):
        value, abserr = _integrate_piece(regular, u, v, tol, factors, what)
        total += value
        error += abserr
    return total, error


def _midpoint(u: float, v: float) -> float:
    if math.isinf(u) and math.isinf(v):
        return 0.0
    if math.isinf(v):
        return u + 1.0
    if math.isinf(u):
        return v - 1.0
    return 0.5 * (u + v)


def _integrate_piece(
    regular: Callable[[float], float],
    u: float,
    v: float,
    tol: float,
    factors: Sequence[FactorProvider],
    what: str,
) -> Tuple[float, float]:
    m = _midpoint(u, v)
    left = 0.0
    right = 0.0
    inner: List[Tuple[float, float]] = []
    for provider in factors:
        center, power = provider(m)
        if power == 0.0:
            continue
        if math.isfinite(u) and center == u:
            left += power
        elif math.isfinite(v) and center == v:
            right += power
        else:
            inner.append((center, power))

    def reduced(x: float) -> float:
        value = regular(x)
        if value == 0.0:
            return 0.0
        for center, power in inner:
            value *= abs(x - center) ** power
        return value

    if math.isinf(u) or math.isinf(v):
        # Morceau non borné: on isole un segment fini portant la singularité
        if math.isfinite(u) and left != 0.0:
            cut = u + 1.0
            v1, e1 = checked_quad(reduced, u, cut, tol, what, left_power=left)
            v2, e2 = checked_quad(lambda x: reduced(x) * (x - u) ** left, cut, v, tol, what)
            return v1 + v2, e1 + e2
        if math.isfinite(v) and right != 0.0:
            cut = v - 1.0
            v1, e1 = checked_quad(reduced, cut, v, tol, what, right_power=right)
            v2, e2 = checked_quad(lambda x: reduced(x) * (v - x) ** right, u, cut, tol, what)
            return v1 + v2, e1 + e2
        return checked_quad(reduced, u, v, tol, what)
    return checked_quad(reduced, u, v, tol, what, left_power=left, right_power=right)


@lru_cache(maxsize=64)
def gauss_legendre(n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Noeuds et poids de Gauss-Legendre sur [-1, 1]."""
    nodes, weights = np.polynomial.legendre.leggauss(int(n))
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def mapped_gauss_legendre(a: float, b: float, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Noeuds et poids de Gauss-Legendre transportés sur [a, b]."""
    nodes, weights = gauss_legendre(n)
    half = 0.5 * (b - a)
    return a + half * (nodes + 1.0), half * weights


def graded_unit_mesh(levels: int, nodes_per_cell: int, ratio: float = 0.5) -> Tuple[np.ndarray, np.ndarray, float]:
    """
    Maillage géométrique de ]0, 1] gradué vers 0.

    Les cellules sont [ratio^{k+1}, ratio^k] pour k = 0..levels-1, chacune
    munie de nodes_per_cell points de Gauss-Legendre.

    Returns:
        Tuple (noeuds, poids, epsilon) où epsilon = ratio^levels est le bord
        de la cellule la plus proche de 0, laissée au traitement analytique.
    """
    nodes, weights = gauss_legendre(nodes_per_cell)
    all_nodes = []
    all_weights = []
    for k in range(levels):
        hi = ratio ** k
        lo = ratio ** (k + 1)
        half = 0.5 * (hi - lo)
        all_nodes.append(lo + half * (nodes + 1.0))
        all_weights.append(half * weights)
    return np.concatenate(all_nodes), np.concatenate(all_weights), ratio ** levels

