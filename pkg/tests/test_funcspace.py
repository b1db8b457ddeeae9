"""Tests pour les fonctions test, l'inversion et les normes pondérées."""

import math

import numpy as np
import pytest

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from wgagliardo import (
    Domain,
    ParameterError,
    SingularityError,
    Smoothness,
    UnsupportedError,
    annulus_bump,
    ball_indicator,
    bump,
    evaluate,
    function_from_block,
    function_to_block,
    inversion_point,
    invert_function,
    linear,
    plateau,
    scale_function,
    triangle,
    weighted_gradient_energy,
    weighted_lp_norm,
    zero_function,
)


class TestFunctions:
    """Tests pour les familles prédéfinies."""

    def test_bump_values(self):
        """La bosse vaut 1 au centre et s'annule hors de la boule."""
        f = bump(2)
        assert evaluate(f, [0.0, 0.0]) == pytest.approx(1.0)
        assert evaluate(f, [0.5, 0.0]) == pytest.approx(0.75 ** 3)
        assert evaluate(f, [1.0, 1.0]) == 0.0
        assert f.smoothness == Smoothness.C2C

    def test_annulus_bump(self):
        """La bosse de couronne vaut 1 sur la sphère médiane et évite l'origine."""
        f = annulus_bump(1)
        assert evaluate(f, [1.5]) == pytest.approx(1.0)
        assert evaluate(f, [-1.5]) == pytest.approx(1.0)
        assert evaluate(f, [0.0]) == 0.0
        assert f.support.excludes_origin
        assert f.kinks == (-2.0, -1.0, 1.0, 2.0)

    def test_triangle_and_linear(self):
        """Triangle et fonction linéaire sur leurs supports."""
        assert triangle().scalar(0.25) == pytest.approx(0.75)
        assert linear().scalar(0.3) == pytest.approx(0.3)
        assert linear().scalar(1.5) == 0.0

    def test_piecewise_tags(self):
        """Triangle et fonction linéaire ont des points anguleux: C^1 par morceaux."""
        assert triangle().smoothness == Smoothness.PIECEWISE_C1
        assert linear().smoothness == Smoothness.PIECEWISE_C1
        assert linear().smoothness.has_gradient
        assert linear().kinks == (0.0, 1.0)

    def test_gradient_of_bump(self):
        """Le gradient analytique coïncide avec une différence centrée."""
        f = bump(1)
        h = 1e-6
        numeric = (f.scalar(0.4 + h) - f.scalar(0.4 - h)) / (2.0 * h)
        assert f.derivative(0.4) == pytest.approx(numeric, rel=1e-6)

    def test_plateau_limit(self):
        """Le plateau tend vers son niveau à l'infini."""
        f = plateau(2, level=3.0)
        assert f.limit_value == 3.0
        assert evaluate(f, [5.0, 0.0]) == pytest.approx(3.0)
        assert evaluate(f, [0.5, 0.0]) == 0.0

    def test_scale_and_zero(self):
        """c f multiplie les valeurs; la fonction nulle s'annule partout."""
        f = scale_function(bump(1), -2.0)
        assert f.scalar(0.0) == pytest.approx(-2.0)
        zero = zero_function(2)
        assert np.all(zero(np.random.default_rng(0).uniform(-1.0, 1.0, (10, 2))) == 0.0)

    def test_dimension_mismatch(self):
        """evaluate vérifie la dimension du point."""
        with pytest.raises(ParameterError):
            evaluate(bump(2), [0.0])

    def test_indicator_has_no_gradient(self):
        """L'indicatrice n'a pas de gradient."""
        f = ball_indicator(2)
        assert f.gradient is None
        assert not f.smoothness.has_gradient


class TestInversion:
    """Tests pour l'inversion T(x) = x / |x|^2."""

    def test_involution(self):
        """T(T(x)) = x et |T(x)| = 1/|x|."""
        x = np.array([0.3, -1.2])
        y = inversion_point(x)
        assert np.linalg.norm(y) == pytest.approx(1.0 / np.linalg.norm(x))
        assert np.allclose(inversion_point(y), x, atol=1e-12)

    def test_metric_identity(self):
        """|Tx - Ty| = |x - y| / (|x| |y|)."""
        rng = np.random.default_rng(7)
        for _ in range(20):
            x, y = rng.normal(size=3), rng.normal(size=3)
            left = np.linalg.norm(inversion_point(x) - inversion_point(y))
            right = np.linalg.norm(x - y) / (np.linalg.norm(x) * np.linalg.norm(y))
            assert left == pytest.approx(right, rel=1e-10)

    def test_origin_is_singular(self):
        """T n'est pas défini en 0."""
        with pytest.raises(SingularityError):
            inversion_point([0.0, 0.0])

    def test_inverted_annulus_bump(self):
        """Tf(x) = f(x / |x|^2) et le support est inversé."""
        f = annulus_bump(1)
        g = invert_function(f)
        assert g.scalar(1.0 / 1.5) == pytest.approx(1.0)
        assert g.support.inner == pytest.approx(0.5)
        assert g.support.outer == pytest.approx(1.0)
        assert g.kinks == (-1.0, -0.5, 0.5, 1.0)

    def test_inverted_bump_has_limit(self):
        """Une bosse contenant 0 donne une limite f(0) à l'infini."""
        g = invert_function(bump(1))
        assert g.limit_value == pytest.approx(1.0)
        assert g.scalar(100.0) == pytest.approx((1.0 - 1e-4) ** 3)

    def test_inverted_gradient(self):
        """Gradient de Tf par dérivation composée."""
        g = invert_function(annulus_bump(1))
        h = 1e-7
        numeric = (g.scalar(0.7 + h) - g.scalar(0.7 - h)) / (2.0 * h)
        assert g.derivative(0.7) == pytest.approx(numeric, rel=1e-5)


class TestWeightedNorms:
    """Tests pour les normes L^p et énergies de gradient pondérées."""

    def test_linear_lp(self):
        """\\int_0^1 x^2 dx = 1/3."""
        value = weighted_lp_norm(linear(), 2.0, 0.0, Domain.interval(0.0, 1.0)).value
        assert value == pytest.approx(1.0 / 3.0, rel=1e-10)

    def test_bump_lp(self):
        """\\int (1 - x^2)^6 dx = sqrt(pi) Gamma(7) / Gamma(7.5)."""
        value = weighted_lp_norm(bump(1), 2.0, 0.0, Domain.full_space(1)).value
        expected = math.sqrt(math.pi) * math.gamma(7.0) / math.gamma(7.5)
        assert value == pytest.approx(expected, rel=1e-10)

    def test_weighted_linear(self):
        """\\int_0^1 x |x|^{-1/2} dx = 2/3 sur l'espace épointé."""
        value = weighted_lp_norm(linear(), 1.0, 0.5, Domain.punctured_space(1)).value
        assert value == pytest.approx(2.0 / 3.0, rel=1e-10)

    def test_indicator_measure(self):
        """|B(0, 1)| = pi en dimension 2 (intégration radiale)."""
        value = weighted_lp_norm(ball_indicator(2), 1.0, 0.0, Domain.full_space(2)).value
        assert value == pytest.approx(math.pi, rel=1e-8)

    def test_gradient_energy_linear(self):
        """\\int_0^1 |f'|^2 = 1."""
        value = weighted_gradient_energy(linear(), 2.0, 0.0, Domain.interval(0.0, 1.0)).value
        assert value == pytest.approx(1.0, rel=1e-10)

    def test_full_space_rejects_weight(self):
        """Un poids non trivial exige un bord."""
        with pytest.raises(ParameterError):
            weighted_lp_norm(bump(1), 2.0, 0.5, Domain.full_space(1))

    def test_indicator_gradient(self):
        """Pas d'énergie de gradient pour une indicatrice."""
        with pytest.raises(UnsupportedError):
            weighted_gradient_energy(ball_indicator(1), 2.0, 0.0, Domain.full_space(1))


class TestBlocks:
    """Tests pour les descripteurs texte des fonctions."""

    def test_round_trip(self):
        """Le descripteur d'une bosse mise à l'échelle reconstruit la même fonction."""
        f = scale_function(bump(2, center=[0.5, 0.5], radius=0.4), 3.0)
        g = function_from_block(function_to_block(f))
        points = np.array([[0.5, 0.5], [0.6, 0.4], [1.0, 1.0]])
        assert np.allclose(f(points), g(points))

    def test_inverted_block(self):
        """invert = true construit Tf."""
        g = function_from_block({"name": "annulus_bump", "dimension": "1", "invert": "true"})
        assert g.scalar(1.0 / 1.5) == pytest.approx(1.0)

    def test_unknown_function(self):
        """Une famille inconnue est refusée."""
        with pytest.raises(ParameterError):
            function_from_block({"name": "sinc"})

    def test_unknown_parameter(self):
        """Un paramètre étranger à la famille est refusé."""
        with pytest.raises(ParameterError):
            function_from_block({"name": "triangle", "radius": "2"})
