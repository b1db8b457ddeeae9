"""Tests pour les moteurs de la semi-norme pondérée."""

import math

import pytest
from scipy import integrate

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from wgagliardo import (
    DivergenceError,
    Domain,
    Engine,
    EstimateMethod,
    ParameterError,
    SeminormParams,
    UnsupportedError,
    annulus_bump,
    ball_indicator,
    bump,
    compute_seminorm,
    continuity_scan,
    gaussian,
    indicator_pair_integral,
    linear,
    scale_function,
    select_engine,
    seminorm_mc,
    seminorm_quadrature,
    seminorm_whitney_lower,
    zero_function,
)


def linear_closed_form(s: float) -> float:
    """[x]^2 sur ]0, 1[ pour p = 2: 2 / ((2 - 2s)(3 - 2s))."""
    return 2.0 / ((2.0 - 2.0 * s) * (3.0 - 2.0 * s))


class TestSeminormParams:
    """Tests pour la validation des paramètres."""

    def test_order_range(self):
        """s doit être dans [0, 1[."""
        domain = Domain.interval(0.0, 1.0)
        with pytest.raises(ParameterError):
            SeminormParams(1.0, 2.0, 0.0, 0.0, domain)
        with pytest.raises(ParameterError):
            SeminormParams(-0.1, 2.0, 0.0, 0.0, domain)

    def test_exponent_range(self):
        """p doit être >= 1."""
        with pytest.raises(ParameterError):
            SeminormParams(0.5, 0.5, 0.0, 0.0, Domain.interval(0.0, 1.0))

    def test_full_space_requires_trivial_weights(self):
        """Sur R^d les poids sont triviaux."""
        with pytest.raises(ParameterError):
            SeminormParams(0.5, 2.0, 0.2, 0.0, Domain.full_space(1))

    def test_derived_exponents(self):
        """sigma = s p et kappa = p (1 - s)."""
        params = SeminormParams(0.25, 2.0, 0.3, 0.1, Domain.punctured_space(1))
        assert params.sigma == pytest.approx(0.5)
        assert params.kappa == pytest.approx(1.5)
        assert params.swapped().alpha == 0.1
        assert not params.is_unweighted


class TestQuadrature1D:
    """Tests pour la quadrature déterministe en dimension 1."""

    @pytest.mark.parametrize("s", [0.5, 0.75, 0.9])
    def test_linear_closed_form(self, s):
        """f(x) = x sur ]0, 1[: valeur fermée à 1e-6 près."""
        params = SeminormParams(s, 2.0, 0.0, 0.0, Domain.interval(0.0, 1.0))
        estimate = seminorm_quadrature(linear(), params)
        assert estimate.method == EstimateMethod.QUAD
        assert estimate.value == pytest.approx(linear_closed_form(s), rel=1e-6)

    def test_weight_symmetry(self):
        """Échanger alpha et beta ne change pas la valeur."""
        params = SeminormParams(0.5, 2.0, 0.3, 0.1, Domain.punctured_space(1))
        direct = seminorm_quadrature(bump(1), params).value
        swapped = seminorm_quadrature(bump(1), params.swapped()).value
        assert direct == pytest.approx(swapped, rel=1e-12)

    def test_homogeneity(self):
        """[c f]^p = |c|^p [f]^p."""
        params = SeminormParams(0.5, 2.0, 0.2, 0.2, Domain.punctured_space(1))
        base = seminorm_quadrature(bump(1), params).value
        scaled = seminorm_quadrature(scale_function(bump(1), -3.0), params).value
        assert scaled == pytest.approx(9.0 * base, rel=1e-9)

    def test_zero_function(self):
        """La semi-norme de 0 est nulle."""
        params = SeminormParams(0.5, 2.0, 0.0, 0.0, Domain.full_space(1))
        assert seminorm_quadrature(zero_function(1), params).value == 0.0

    @pytest.mark.parametrize("alpha, beta", [
        (0.1, 0.1),
        (0.2, 0.1),
        (0.3, 0.0),
        (-0.2, -0.1),
        (0.25, 0.25),
    ])
    def test_holder_comparison(self, alpha, beta):
        """alpha beta >= 0: [f]_{alpha, beta} <= [f]_{alpha + beta, 0}."""
        domain = Domain.punctured_space(1)
        mixed = seminorm_quadrature(bump(1), SeminormParams(0.5, 2.0, alpha, beta, domain)).value
        merged = seminorm_quadrature(bump(1), SeminormParams(0.5, 2.0, alpha + beta, 0.0, domain)).value
        assert mixed <= merged * (1.0 + 1e-8)

    def test_unknown_regime_is_refused(self):
        """alpha = 1.5 en dimension 1: aucun régime de finitude connu."""
        params = SeminormParams(0.5, 2.0, 1.5, 0.0, Domain.punctured_space(1))
        with pytest.raises(ParameterError):
            seminorm_quadrature(bump(1), params)

    def test_forced_divergence(self):
        """s = 0 sans poids sur R: le noyau |x - y|^{-1} diverge à l'infini."""
        params = SeminormParams(0.0, 2.0, 0.0, 0.0, Domain.full_space(1))
        with pytest.raises(ParameterError):
            seminorm_quadrature(bump(1), params)
        with pytest.raises(DivergenceError):
            seminorm_quadrature(bump(1), params, force=True)

    def test_indicator_is_unsupported(self):
        """Les indicatrices relèvent du moteur Monte-Carlo."""
        params = SeminormParams(0.5, 1.0, 0.0, 0.0, Domain.full_space(1))
        with pytest.raises(UnsupportedError):
            seminorm_quadrature(ball_indicator(1), params)

    def test_dimension_three_is_unsupported(self):
        """Pas de quadrature déterministe en dimension 3."""
        params = SeminormParams(0.5, 2.0, 0.0, 0.0, Domain.full_space(3))
        with pytest.raises(UnsupportedError):
            seminorm_quadrature(bump(3), params)

    @pytest.mark.parametrize("s", [0.5, 0.6, 0.9])
    def test_bump_inside_interval_high_order(self, s):
        """s p >= 1: la bosse s'annule au bord de son support, la valeur reste finie."""
        params = SeminormParams(s, 2.0, 0.0, 0.0, Domain.interval(-2.0, 2.0))
        estimate = seminorm_quadrature(bump(1), params)
        assert math.isfinite(estimate.value)
        assert estimate.value > 0.0

    def test_complement_contribution_high_order(self):
        """[f]_R - [f]_{]-2, 2[} = 2 \\int f^2 ((2 - x)^{-sigma} + (2 + x)^{-sigma}) / sigma."""
        s, p = 0.75, 2.0
        sigma = s * p
        f = bump(1)
        full = seminorm_quadrature(f, SeminormParams(s, p, 0.0, 0.0, Domain.full_space(1))).value
        inner = seminorm_quadrature(f, SeminormParams(s, p, 0.0, 0.0, Domain.interval(-2.0, 2.0))).value
        expected, _ = integrate.quad(
            lambda x: 2.0 * f.scalar(x) ** 2 * ((2.0 - x) ** (-sigma) + (2.0 + x) ** (-sigma)) / sigma,
            -1.0, 1.0, epsabs=1e-14, epsrel=1e-12,
        )
        assert full - inner == pytest.approx(expected, rel=1e-5)

    def test_jump_at_support_end_diverges(self):
        """s p >= 1 et saut de f au bord de son support: terme croisé infini."""
        params = SeminormParams(0.75, 2.0, 0.0, 0.0, Domain.interval(-1.0, 2.0))
        with pytest.raises(DivergenceError):
            seminorm_quadrature(linear(), params)

    @pytest.mark.parametrize("shift", [0.37, -2.5])
    def test_translation_invariance(self, shift):
        """Sur R sans poids, translater f ne change pas la semi-norme."""
        params = SeminormParams(0.5, 2.0, 0.0, 0.0, Domain.full_space(1))
        base = seminorm_quadrature(bump(1), params).value
        moved = seminorm_quadrature(bump(1, center=[shift]), params).value
        assert moved == pytest.approx(base, rel=1e-6)

    def test_dimension_mismatch(self):
        """La fonction et le domaine doivent avoir la même dimension."""
        params = SeminormParams(0.5, 2.0, 0.0, 0.0, Domain.full_space(2))
        with pytest.raises(ParameterError):
            seminorm_quadrature(bump(1), params)


class TestQuadrature2D:
    """Tests pour la quadrature polaire en dimension 2."""

    def test_weights_are_unsupported(self):
        """Seuls les poids triviaux sont pris en charge en dimension 2."""
        params = SeminormParams(0.5, 2.0, 0.2, 0.2, Domain.punctured_space(2))
        with pytest.raises(UnsupportedError):
            seminorm_quadrature(bump(2), params)

    def test_matches_monte_carlo(self):
        """Quadrature polaire et Monte-Carlo concordent."""
        params = SeminormParams(0.5, 2.0, 0.0, 0.0, Domain.full_space(2))
        quad = seminorm_quadrature(bump(2), params)
        mc = seminorm_mc(bump(2), params, n=400_000, seed=1)
        assert abs(mc.value - quad.value) <= mc.error + 0.02 * quad.value

    def test_non_convex_domain_is_unsupported(self):
        """La couronne n'est pas convexe: pas de quadrature polaire."""
        params = SeminormParams(0.5, 2.0, 0.0, 0.0, Domain.annulus([0.0, 0.0], 0.5, 1.5))
        with pytest.raises(UnsupportedError):
            seminorm_quadrature(bump(2, center=[1.0, 0.0], radius=0.3), params)

    def test_support_must_fit_domain(self):
        """Le disque de support doit être contenu dans le carré."""
        params = SeminormParams(0.5, 2.0, 0.0, 0.0, Domain.unit_cube(2))
        with pytest.raises(UnsupportedError):
            seminorm_quadrature(bump(2, center=[0.5, 0.5], radius=0.6), params)

    def test_monotone_in_domain(self):
        """B(0, 1) inclus dans B(0, 2) inclus dans R^2: la semi-norme croît."""
        f = bump(2)
        small = seminorm_quadrature(f, SeminormParams(0.5, 2.0, 0.0, 0.0, Domain.ball([0.0, 0.0], 1.0))).value
        large = seminorm_quadrature(f, SeminormParams(0.5, 2.0, 0.0, 0.0, Domain.ball([0.0, 0.0], 2.0))).value
        full = seminorm_quadrature(f, SeminormParams(0.5, 2.0, 0.0, 0.0, Domain.full_space(2))).value
        assert 0.0 < small < large < full

    def test_half_plane_below_full_space(self):
        """Demi-plan: valeur positive, inférieure à celle de R^2."""
        f = bump(2, center=[0.0, 1.5], radius=1.0)
        half = seminorm_quadrature(f, SeminormParams(0.5, 2.0, 0.0, 0.0, Domain.half_space(2))).value
        full = seminorm_quadrature(f, SeminormParams(0.5, 2.0, 0.0, 0.0, Domain.full_space(2))).value
        assert 0.0 < half < full

    def test_order_zero_on_ball(self):
        """s = 0 sur un domaine borné: le noyau |x - y|^{-2} reste intégrable."""
        params = SeminormParams(0.0, 2.0, 0.0, 0.0, Domain.ball([0.0, 0.0], 2.0))
        estimate = seminorm_quadrature(bump(2), params)
        assert math.isfinite(estimate.value)
        assert estimate.value > 0.0

    def test_square_matches_monte_carlo(self):
        """Carré unité: quadrature polaire et Monte-Carlo concordent."""
        params = SeminormParams(0.5, 2.0, 0.0, 0.0, Domain.unit_cube(2))
        f = bump(2, center=[0.5, 0.5], radius=0.4)
        quad = seminorm_quadrature(f, params)
        mc = seminorm_mc(f, params, n=400_000, seed=3)
        assert abs(mc.value - quad.value) <= mc.error + 0.03 * quad.value


class TestMonteCarlo:
    """Tests pour l'estimateur Monte-Carlo stratifié."""

    def test_matches_quadrature_1d(self):
        """Monte-Carlo et quadrature concordent en dimension 1."""
        params = SeminormParams(0.5, 2.0, 0.0, 0.0, Domain.full_space(1))
        quad = seminorm_quadrature(gaussian(1), params)
        mc = seminorm_mc(gaussian(1), params, n=200_000, seed=4)
        assert mc.method == EstimateMethod.MC
        assert mc.seed == 4
        assert abs(mc.value - quad.value) <= mc.error + 0.01 * quad.value

    def test_scaling_with_common_seed(self):
        """Même graine: [2 f] = 4 [f] à l'arrondi près."""
        params = SeminormParams(0.5, 2.0, 0.2, 0.1, Domain.punctured_space(1))
        base = seminorm_mc(annulus_bump(1), params, n=20_000, seed=11)
        scaled = seminorm_mc(scale_function(annulus_bump(1), 2.0), params, n=20_000, seed=11)
        assert scaled.value == pytest.approx(4.0 * base.value, rel=1e-12)

    def test_reproducible(self):
        """Deux appels de même graine donnent la même estimation."""
        params = SeminormParams(0.5, 2.0, 0.0, 0.0, Domain.unit_cube(2))
        f = bump(2, center=[0.5, 0.5], radius=0.4)
        first = seminorm_mc(f, params, n=5_000, seed=2)
        second = seminorm_mc(f, params, n=5_000, seed=2)
        assert first == second

    def test_too_few_samples(self):
        """Au moins 1000 échantillons."""
        params = SeminormParams(0.5, 2.0, 0.0, 0.0, Domain.full_space(1))
        with pytest.raises(ParameterError):
            seminorm_mc(bump(1), params, n=999)


class TestWhitneyLower:
    """Tests pour la borne inférieure de Whitney."""

    def test_linear_exact_sum(self):
        """f(x) = x sur ]0, 1[, s = 1/2, p = 2: chaque cube contribue l(Q)^2."""
        params = SeminormParams(0.5, 2.0, 0.0, 0.0, Domain.interval(0.0, 1.0))
        lower = seminorm_whitney_lower(linear(), params, min_side=2.0 ** -10)
        assert lower.one_sided
        assert lower.method == EstimateMethod.WHITNEY_LOWER
        assert lower.samples == 18
        assert lower.extra["truncated"] == 2
        assert lower.value == pytest.approx(1.0 / 6.0 - (8.0 / 3.0) * 4.0 ** -11, rel=1e-8)

    def test_below_quadrature(self):
        """La borne reste sous la valeur complète, poids compris."""
        params = SeminormParams(0.5, 2.0, 0.2, 0.2, Domain.interval(0.0, 1.0))
        lower = seminorm_whitney_lower(linear(), params, min_side=2.0 ** -8)
        full = seminorm_quadrature(linear(), params)
        assert 0.0 < lower.value <= full.value

    def test_sandwich_on_square(self):
        """Carré unité: borne de Whitney <= estimation Monte-Carlo."""
        params = SeminormParams(0.5, 2.0, 0.0, 0.0, Domain.unit_cube(2))
        f = bump(2, center=[0.5, 0.5], radius=0.4)
        lower = seminorm_whitney_lower(f, params, min_side=2.0 ** -4)
        mc = seminorm_mc(f, params, n=200_000, seed=0)
        assert 0.0 < lower.value <= mc.value + mc.error

    def test_unbounded_domain(self):
        """Un domaine non borné n'a pas de décomposition de Whitney."""
        params = SeminormParams(0.5, 2.0, 0.0, 0.0, Domain.punctured_space(1))
        with pytest.raises(UnsupportedError):
            seminorm_whitney_lower(bump(1), params)

    def test_indicator_is_unsupported(self):
        """Pas de borne de Whitney pour une indicatrice."""
        params = SeminormParams(0.5, 1.0, 0.0, 0.0, Domain.interval(-2.0, 2.0))
        with pytest.raises(UnsupportedError):
            seminorm_whitney_lower(ball_indicator(1), params)


class TestIndicatorPairIntegral:
    """Tests pour l'intégrale de l'indicatrice d'un intervalle."""

    def test_unweighted_closed_form(self):
        """E = ]-1, 1[, s = 1/2, p = 1: J = 8 sqrt(2)."""
        estimate = indicator_pair_integral(1.0, 0.0, s=0.5, p=1.0)
        assert estimate.value == pytest.approx(8.0 * math.sqrt(2.0), rel=1e-7)

    def test_small_alpha(self):
        """alpha J tend vers |S^0| |E| = 4 quand alpha -> 0."""
        value = 0.01 * indicator_pair_integral(1.0, 0.01).value
        assert value == pytest.approx(4.0, rel=0.05)

    def test_invalid_radius(self):
        """Le rayon doit être positif."""
        with pytest.raises(ParameterError):
            indicator_pair_integral(0.0, 0.1)


class TestEngineSelection:
    """Tests pour le choix automatique du moteur et le balayage."""

    def test_select_engine(self):
        """Quadrature si disponible, Monte-Carlo sinon."""
        assert select_engine(linear(), SeminormParams(0.5, 2.0, 0.0, 0.0, Domain.interval(0.0, 1.0))) == Engine.QUAD
        assert select_engine(ball_indicator(1), SeminormParams(0.5, 1.0, 0.0, 0.0, Domain.full_space(1))) == Engine.MC
        assert select_engine(bump(2), SeminormParams(0.5, 2.0, 0.0, 0.0, Domain.full_space(2))) == Engine.QUAD
        square = SeminormParams(0.5, 2.0, 0.0, 0.0, Domain.unit_cube(2))
        assert select_engine(bump(2, center=[0.5, 0.5], radius=0.4), square) == Engine.QUAD
        assert select_engine(bump(2, center=[0.5, 0.5], radius=0.6), square) == Engine.MC
        weighted = SeminormParams(0.5, 2.0, 0.2, 0.2, Domain.unit_cube(2))
        assert select_engine(bump(2, center=[0.5, 0.5], radius=0.4), weighted) == Engine.MC

    def test_compute_seminorm_dispatch(self):
        """compute_seminorm suit le moteur demandé."""
        params = SeminormParams(0.5, 2.0, 0.0, 0.0, Domain.interval(0.0, 1.0))
        assert compute_seminorm(linear(), params).method == EstimateMethod.QUAD
        mc = compute_seminorm(linear(), params, Engine.MC, samples=2_000, seed=5)
        assert mc.method == EstimateMethod.MC

    def test_continuity_scan(self):
        """Valeurs fermées et module de continuité en s."""
        grid = [(0.5, 0.0, 0.0), (0.51, 0.0, 0.0), (0.52, 0.0, 0.0), (0.5, 0.0, 0.0)]
        rows = continuity_scan(linear(), Domain.interval(0.0, 1.0), 2.0, grid)
        assert len(rows) == 4
        for row in rows:
            assert row.estimate.value == pytest.approx(linear_closed_form(row.s), rel=1e-6)
        for a, b in zip(rows[:2], rows[1:3]):
            assert abs(b.estimate.value - a.estimate.value) <= 3.5 * abs(b.s - a.s) + 1e-6
        assert rows[3].estimate is rows[0].estimate
        assert rows[0].to_record()["s"] == 0.5

    def test_empty_scan(self):
        """Une grille vide est refusée."""
        with pytest.raises(ParameterError):
            continuity_scan(linear(), Domain.interval(0.0, 1.0), 2.0, [])
