"""
Constantes des formules limites.

Ce module fournit, sous forme fermée et par quadrature:
- la mesure de la sphère unité |S^{d-1}|
- la constante K_{d,p} de la formule de Bourgain-Brezis-Mironescu
- la constante de Hardy pondérée C(d, p, alpha)
- la constante de la formule de Maz'ya-Shaposhnikova (2/p)|S^{d-1}|

Les formes fermées font foi; les quadratures servent de contrôle croisé.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import integrate, special

from .errors import DivergenceError, ParameterError


class ConstantMethod(Enum):
    """Méthode de calcul d'une constante."""
    CLOSED_FORM = "closed-form"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class ConstantValue:
    """
    Valeur d'une constante.

    Attributes:
        value: Valeur numérique
        method: Forme fermée ou quadrature
        error: Erreur absolue estimée (0 pour une forme fermée)
    """
    value: float
    method: ConstantMethod
    error: float = 0.0

    def __float__(self) -> float:
        return float(self.value)


def _check_dimension(d: int) -> int:
    if int(d) != d or d < 1:
        raise ParameterError(f"La dimension doit être un entier >= 1 (reçu {d})")
    return int(d)


def _check_exponent(p: float) -> float:
    if not p >= 1.0:
        raise ParameterError(f"L'exposant p doit vérifier p >= 1 (reçu {p})")
    return float(p)


def sphere_measure(d: int) -> ConstantValue:
    """
    Mesure de surface de la sphère unité S^{d-1} de R^d.

    Args:
        d: Dimension de l'espace ambiant

    Returns:
        2 pi^{d/2} / Gamma(d/2)

    Example:
        >>> sphere_measure(2).value
        6.283185307179586
    """
    d = _check_dimension(d)
    if d == 1:
        return ConstantValue(2.0, ConstantMethod.CLOSED_FORM)
    value = 2.0 * math.pi ** (d / 2.0) / special.gamma(d / 2.0)
    return ConstantValue(float(value), ConstantMethod.CLOSED_FORM)


def bbm_constant(d: int, p: float) -> ConstantValue:
    """
    Constante K_{d,p} = (2 pi^{(d-1)/2} / p) Gamma((p+1)/2) / Gamma((p+d)/2).

    Calculée via gammaln pour rester stable quand p est grand.

    Args:
        d: Dimension
        p: Exposant d'intégrabilité (p >= 1)

    Returns:
        Valeur fermée de K_{d,p}
    """
    d = _check_dimension(d)
    p = _check_exponent(p)
    log_ratio = special.gammaln((p + 1.0) / 2.0) - special.gammaln((p + d) / 2.0)
    value = 2.0 * math.pi ** ((d - 1) / 2.0) / p * math.exp(log_ratio)
    return ConstantValue(float(value), ConstantMethod.CLOSED_FORM)


def bbm_constant_quadrature(d: int, p: float, tol: float = 1e-13) -> ConstantValue:
    """
    Contrôle croisé de K_{d,p} par quadrature sur la sphère.

    K_{d,p} = (1/p) \\int_{S^{d-1}} |sigma_d|^p dsigma. Pour d >= 2 on
    utilise la coordonnée polaire phi mesurée depuis l'axe e_d:
    dsigma = |S^{d-2}| sin^{d-2}(phi) dphi.
    """
    d = _check_dimension(d)
    p = _check_exponent(p)
    if d == 1:
        # S^0 = {-1, +1}
        return ConstantValue(2.0 / p, ConstantMethod.QUADRATURE, 0.0)

    def integrand(phi: float) -> float:
        return abs(math.cos(phi)) ** p * math.sin(phi) ** (d - 2)

    total = 0.0
    error = 0.0
    for a, b in ((0.0, math.pi / 2.0), (math.pi / 2.0, math.pi)):
        value, abserr = integrate.quad(integrand, a, b, epsabs=tol, epsrel=tol, limit=200)
        total += value
        error += abserr
    lower_sphere = sphere_measure(d - 1).value
    return ConstantValue(lower_sphere * total / p, ConstantMethod.QUADRATURE, lower_sphere * error / p)


def _hardy_regular_part(r: float, exponent: float, p: float) -> float:
    """
    Partie régulière |1 - r^a|^p / (1 - r^2) avec a > 0.

    En r = 1 la singularité est levée: 1 - r^a ~ a (1 - r), 1 - r^2 = (1 - r)(1 + r).
    """
    if r <= 0.0:
        return 1.0
    one_minus_r = 1.0 - r
    if one_minus_r <= 0.0:
        return exponent / 2.0 if p == 1.0 else 0.0
    # -expm1(a log r) = 1 - r^a sans annulation catastrophique
    quotient = -math.expm1(exponent * math.log(r)) / one_minus_r
    return quotient ** p * one_minus_r ** (p - 1.0) / (1.0 + r)


def hardy_constant(d: int, p: float, alpha: float, tol: float = 1e-12) -> ConstantValue:
    """
    Constante de Hardy pondérée

        C(d, p, alpha) = 2 |S^{d-1}| \\int_0^1 r^{alpha-1} |1 - r^{(d-2 alpha)/p}|^p / (1 - r^2) dr.

    La singularité r^{alpha-1} en 0 est confiée au poids algébrique de QUADPACK;
    la singularité apparente en r = 1 est factorisée explicitement. Pour
    alpha > d/2 l'identité r^{alpha-1} |1 - r^{-a}|^p = r^{d-alpha-1} |1 - r^{a}|^p
    ramène au cas a > 0, d'où C(d, p, alpha) = C(d, p, d - alpha).

    Args:
        d: Dimension
        p: Exposant (p >= 1)
        alpha: Exposant du poids, 0 < alpha < d
        tol: Tolérance absolue et relative de la quadrature

    Returns:
        Valeur de la constante (exactement 0 quand d = 2 alpha)

    Raises:
        ParameterError: Si alpha n'est pas dans ]0, d[
    """
    d = _check_dimension(d)
    p = _check_exponent(p)
    if not 0.0 < alpha < d:
        raise ParameterError(f"La constante de Hardy exige 0 < alpha < d (alpha={alpha}, d={d})")

    exponent = (d - 2.0 * alpha) / p
    if exponent == 0.0:
        return ConstantValue(0.0, ConstantMethod.QUADRATURE, 0.0)

    power = alpha - 1.0 if exponent > 0.0 else d - alpha - 1.0
    a = abs(exponent)
    value, abserr, *rest = integrate.quad(
        _hardy_regular_part, 0.0, 1.0, args=(a, p),
        weight="alg", wvar=(power, 0.0),
        epsabs=tol, epsrel=tol, limit=400, full_output=1,
    )
    if not np.isfinite(value):
        raise DivergenceError(f"Quadrature de la constante de Hardy non finie (alpha={alpha})")
    factor = 2.0 * sphere_measure(d).value
    return ConstantValue(factor * value, ConstantMethod.QUADRATURE, factor * abserr)


def classical_ms_constant(d: int, p: float) -> ConstantValue:
    """
    Constante de Maz'ya-Shaposhnikova (2/p) |S^{d-1}|.
    """
    d = _check_dimension(d)
    p = _check_exponent(p)
    return ConstantValue(2.0 / p * sphere_measure(d).value, ConstantMethod.CLOSED_FORM)
