"""Tests pour les sondes asymptotiques et l'extrapolation."""

import math

import pytest

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from wgagliardo import (
    DivergenceError,
    Domain,
    Engine,
    ParameterError,
    UnsupportedError,
    annulus_bump,
    ball_indicator,
    bbm_probe,
    boundedness_probe,
    bump,
    corollary_rd_probe,
    default_schedule,
    indicator_limit_probe,
    inversion_identity_check,
    linear,
    ms_alpha0_probe,
    ms_alphad_probe,
    ms_classical_probe,
    richardson_extrapolate,
    scale_function,
    triangle,
    zero_function,
)


class TestSchedules:
    """Tests pour les calendriers par défaut."""

    def test_bbm(self):
        """s_k = 1 - 0.2 x 2^{-k}."""
        assert default_schedule("bbm") == pytest.approx([0.8, 0.9, 0.95, 0.975, 0.9875])

    def test_alpha_schedules(self):
        """alpha_k = 0.2 x 2^{-k} vers 0, d - 0.2 x 2^{-k} vers d."""
        assert default_schedule("ms0", count=3) == pytest.approx([0.2, 0.1, 0.05])
        assert default_schedule("msd", dimension=2, count=2) == pytest.approx([1.8, 1.9])

    def test_unknown_kind(self):
        """Un calendrier inconnu est refusé."""
        with pytest.raises(ParameterError):
            default_schedule("warp")


class TestRichardson:
    """Tests pour l'extrapolation de Neville."""

    def test_constant(self):
        """Une suite constante est sa propre limite, sans erreur."""
        limit, error = richardson_extrapolate([0.4, 0.2, 0.1], [2.5, 2.5, 2.5])
        assert limit == pytest.approx(2.5)
        assert error == pytest.approx(0.0, abs=1e-14)

    def test_linear(self):
        """Données affines: limite exacte."""
        limit, _ = richardson_extrapolate([0.4, 0.2, 0.1], [3.4, 3.2, 3.1])
        assert limit == pytest.approx(3.0, abs=1e-12)

    def test_rational_sequence(self):
        """1/(3 - 2s) aux points s = 0.9, 0.95, 0.975: limite 1 à 1e-3 près."""
        schedule = [0.9, 0.95, 0.975]
        xs = [1.0 - s for s in schedule]
        ys = [1.0 / (3.0 - 2.0 * s) for s in schedule]
        limit, error = richardson_extrapolate(xs, ys)
        assert limit == pytest.approx(1.0, abs=1e-3)
        assert error > 0.0

    def test_uses_last_four_points(self):
        """Seuls les quatre points les plus proches de 0 comptent."""
        xs = [0.8, 0.4, 0.2, 0.1, 0.05]
        ys = [100.0] + [1.0 + x ** 3 for x in xs[1:]]
        limit, _ = richardson_extrapolate(xs, ys)
        assert limit == pytest.approx(1.0, abs=1e-12)

    def test_invalid_inputs(self):
        """Moins de 3 points, longueurs différentes, ordre incorrect, valeur infinie."""
        with pytest.raises(ParameterError):
            richardson_extrapolate([0.2, 0.1], [1.0, 1.0])
        with pytest.raises(ParameterError):
            richardson_extrapolate([0.3, 0.2, 0.1], [1.0, 1.0])
        with pytest.raises(ParameterError):
            richardson_extrapolate([0.1, 0.2, 0.3], [1.0, 1.0, 1.0])
        with pytest.raises(DivergenceError):
            richardson_extrapolate([0.3, 0.2, 0.1], [1.0, math.inf, 1.0])


class TestBBMProbe:
    """Tests pour la limite s -> 1."""

    def test_linear_interval(self):
        """f(x) = x sur ]0, 1[, p = 2: (1 - s) [f]^2 -> K_{1,2} = 1."""
        probe = bbm_probe(linear(), Domain.interval(0.0, 1.0), 2.0)
        assert probe.target == pytest.approx(1.0, rel=1e-10)
        assert probe.relative_gap <= 1e-3
        assert len(probe.rows()) == 5
        assert probe.to_summary()["probe"] == "bbm"
        assert "SONDE BBM" in str(probe)

    def test_zero_function(self):
        """La fonction nulle donne une suite nulle et une cible nulle."""
        probe = bbm_probe(zero_function(1), Domain.interval(-2.0, 2.0), 2.0, schedule=[0.8, 0.9, 0.95])
        assert probe.target == 0.0
        assert probe.extrapolated == 0.0
        assert probe.relative_gap == 0.0

    def test_indicator_refused(self):
        """La limite s -> 1 exige une fonction régulière."""
        with pytest.raises(UnsupportedError):
            bbm_probe(ball_indicator(1), Domain.full_space(1), 1.0)

    def test_schedule_must_approach_one(self):
        """Un calendrier qui s'éloigne de 1 est refusé."""
        with pytest.raises(ParameterError):
            bbm_probe(linear(), Domain.interval(0.0, 1.0), 2.0, schedule=[0.9, 0.8, 0.7])

    def test_corollary_weighted_bump(self):
        """Bosse sur R \\ {0}, alpha = beta = 0.25, p = 2: écart <= 2 %."""
        probe = corollary_rd_probe(bump(1), 2.0, 0.25, 0.25)
        assert probe.name == "corollary-rd"
        assert probe.relative_gap <= 0.02

    def test_corollary_hypotheses(self):
        """alpha + beta >= d viole les hypothèses."""
        with pytest.raises(ParameterError):
            corollary_rd_probe(bump(1), 2.0, 0.6, 0.5)
        with pytest.raises(ParameterError):
            corollary_rd_probe(bump(1), 2.0, -2.5, 0.0)

    def test_boundedness(self):
        """Poids dans A_1 sur ]0, 1[: la suite (1 - s) [f]^p reste bornée."""
        probe = boundedness_probe(linear(), Domain.interval(0.0, 1.0), 2.0, 0.25, 0.25)
        assert probe.bounded is True
        assert probe.to_summary()["bounded"] is True


class TestMazyaShaposhnikova:
    """Tests pour les limites à s = 0."""

    def test_alpha0_triangle(self):
        """Triangle, p = 1: alpha [f]^1 -> 2 |S^0| \\int |f| = 4, minorant de Hardy respecté."""
        probe = ms_alpha0_probe(triangle(), 1.0, schedule=[0.1, 0.05, 0.025])
        assert probe.target == pytest.approx(4.0, rel=1e-9)
        assert probe.relative_gap <= 0.02
        assert probe.hardy_ok is True
        assert len(probe.hardy_bounds) == 3
        assert all("hardy_bound" in row for row in probe.rows())

    def test_alpha0_range(self):
        """alpha_k doit rester dans ]0, d/4]."""
        with pytest.raises(ParameterError):
            ms_alpha0_probe(triangle(), 1.0, schedule=[0.3, 0.2, 0.1])

    def test_alphad_routes_agree(self):
        """Bosse de couronne en dimension 1: routes directe et par inversion concordent."""
        probe = ms_alphad_probe(annulus_bump(1), 2.0, schedule=[0.9, 0.95, 0.975])
        assert probe.details["route"] == "direct"
        assert probe.inversion_route is not None
        assert probe.details["routes_agree"] is True
        assert probe.relative_gap <= 0.03
        assert probe.inversion_route.relative_gap <= 0.03

    def test_alphad_inversion_only(self):
        """Route unique par inversion."""
        probe = ms_alphad_probe(annulus_bump(1), 2.0, schedule=[0.9, 0.95, 0.975], routes=("inversion",))
        assert probe.name == "msd"
        assert probe.details["route"] == "inversion"
        assert probe.schedule == [0.9, 0.95, 0.975]

    def test_alphad_support_through_origin(self):
        """Support contenant l'origine sans limite à l'infini."""
        with pytest.raises(ParameterError):
            ms_alphad_probe(bump(1), 2.0)

    def test_alphad_unknown_route(self):
        """Route inconnue."""
        with pytest.raises(ParameterError):
            ms_alphad_probe(annulus_bump(1), 2.0, routes=("shortcut",))

    def test_classical_triangle(self):
        """Triangle, p = 1: s [f]^1 -> (2/p) |S^0| \\int |f| = 4."""
        probe = ms_classical_probe(triangle(), 1.0)
        assert probe.target == pytest.approx(4.0, rel=1e-9)
        assert probe.relative_gap <= 0.02

    def test_classical_bump_2d_monte_carlo(self):
        """Bosse en dimension 2 par Monte-Carlo: écart <= 3 %."""
        probe = ms_classical_probe(
            bump(2), 2.0, schedule=[0.2, 0.1, 0.05], engine=Engine.MC, samples=1_000_000, seed=0,
        )
        assert probe.relative_gap <= 0.03


class TestInversionIdentity:
    """Tests pour l'identité d'inversion."""

    def test_annulus_bump(self):
        """s = 1/2, p = 2, (alpha, beta) = (0.2, 0.1): les deux membres coïncident."""
        check = inversion_identity_check(annulus_bump(1), 0.5, 2.0, 0.2, 0.1)
        assert check.lhs.value > 0.0
        assert check.residual <= 1e-5
        assert check.to_summary()["residual"] == check.residual

    def test_order_zero(self):
        """s = 0: exposants alpha' = d - alpha."""
        check = inversion_identity_check(annulus_bump(1), 0.0, 2.0, 0.5, 0.5)
        assert check.residual <= 1e-5

    def test_zero_function(self):
        """f = 0: résidu nul."""
        f = scale_function(annulus_bump(1), 0.0)
        check = inversion_identity_check(f, 0.5, 2.0, 0.2, 0.1)
        assert check.residual == 0.0
        assert check.within_error

    def test_support_through_origin(self):
        """Le support doit éviter l'origine."""
        with pytest.raises(ParameterError):
            inversion_identity_check(bump(1), 0.5, 2.0, 0.2, 0.1)


class TestIndicatorProbe:
    """Tests pour la limite alpha -> 0 de l'indicatrice."""

    def test_interval(self):
        """E = ]-1, 1[: alpha \\int_E \\int_{E^c} -> |S^0| |E| = 4."""
        probe = indicator_limit_probe(1.0)
        assert probe.target == pytest.approx(4.0, rel=1e-9)
        assert probe.relative_gap <= 0.02

    def test_disc_target(self):
        """E = B(0, 1) du plan: cible |S^1| |E| = 2 pi^2."""
        probe = indicator_limit_probe(1.0, dimension=2, schedule=[0.2, 0.1, 0.05], samples=20_000)
        assert probe.target == pytest.approx(2.0 * math.pi ** 2, rel=1e-6)
        assert len(probe.estimates) == 3

    def test_dimension_three(self):
        """Pas de sonde indicatrice en dimension 3."""
        with pytest.raises(UnsupportedError):
            indicator_limit_probe(1.0, dimension=3)
