"""Tests pour les poids puissance, les classes A_p et l'admissibilité."""

import pytest

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from wgagliardo import (
    AdmissibilityRegime,
    Cube,
    Domain,
    DomainKind,
    ParameterError,
    PowerWeight,
    admissible_parameters,
    ap_boundary_sequence,
    ap_closed_form,
    ap_constant_empirical,
    default_cube_sample,
    embedding_conditions,
    holder_comparison_applies,
)


class TestApClosedForm:
    """Tests pour le critère fermé d'appartenance à A_p."""

    def test_interval_p2(self):
        """Pour p = 2 et un bord de codimension 1: -1 < gamma < 1."""
        assert ap_closed_form(0.5, 2.0, 1.0)
        assert ap_closed_form(-0.9, 2.0, 1.0)
        assert not ap_closed_form(1.0, 2.0, 1.0)
        assert not ap_closed_form(-1.0, 2.0, 1.0)

    def test_a1(self):
        """Pour p = 1: 0 <= gamma < codim."""
        assert ap_closed_form(0.0, 1.0, 1.0)
        assert not ap_closed_form(-0.1, 1.0, 1.0)
        assert ap_closed_form(1.5, 1.0, 2.0)

    def test_a1_included_in_ap(self):
        """A_1 est contenu dans chaque A_p."""
        gammas = [-0.5, 0.0, 0.25, 0.5, 0.99, 1.2]
        for gamma in gammas:
            if ap_closed_form(gamma, 1.0, 1.0):
                for p in (1.5, 2.0, 3.0):
                    assert ap_closed_form(gamma, p, 1.0)

    def test_invalid_arguments(self):
        """p < 1 ou codimension non positive."""
        with pytest.raises(ParameterError):
            ap_closed_form(0.5, 0.5, 1.0)
        with pytest.raises(ParameterError):
            ap_closed_form(0.5, 2.0, 0.0)


class TestApEmpirical:
    """Tests pour la fonctionnelle A_p empirique."""

    def test_trivial_weight(self):
        """Le poids constant a une fonctionnelle égale à 1 sur chaque cube."""
        domain = Domain.unit_cube(2)
        sample = default_cube_sample(domain, count=12, seed=3)
        estimate = ap_constant_empirical(PowerWeight(0.0, domain), 2.0, sample)
        assert estimate.values
        assert estimate.value == pytest.approx(1.0, rel=1e-10)

    def test_outside_cubes_are_skipped(self):
        """Un cube hors du domaine est compté puis ignoré."""
        domain = Domain.interval(0.0, 1.0)
        sample = [Cube((0.5,), 0.25), Cube((5.0,), 0.5)]
        estimate = ap_constant_empirical(PowerWeight(0.5, domain), 2.0, sample)
        assert estimate.skipped == 1
        assert len(estimate.values) == 1

    def test_requires_p_above_one(self):
        """La fonctionnelle empirique exige p > 1."""
        domain = Domain.interval(0.0, 1.0)
        with pytest.raises(ParameterError):
            ap_constant_empirical(PowerWeight(0.5, domain), 1.0, [Cube((0.5,), 0.25)])

    def test_boundary_sequence_grows_outside_ap(self):
        """gamma = 1.5 hors de A_2: la suite des cubes ancrés au bord croît."""
        weight = PowerWeight(1.5, Domain.interval(0.0, 1.0))
        sequence = ap_boundary_sequence(weight, 2.0, generations=5)
        assert all(b > a for a, b in zip(sequence[:-1], sequence[1:]))

    def test_boundary_sequence_bounded_inside_ap(self):
        """gamma = 0.5 dans A_2: la suite reste bornée."""
        weight = PowerWeight(0.5, Domain.interval(0.0, 1.0))
        sequence = ap_boundary_sequence(weight, 2.0, generations=5)
        assert max(sequence) < 1.2 * min(sequence)

    def test_dual_weight(self):
        """Le poids dual a l'exposant -gamma/(p-1)."""
        weight = PowerWeight(0.5, Domain.interval(0.0, 1.0))
        assert weight.dual(3.0).gamma == pytest.approx(-0.25)


class TestAdmissibility:
    """Tests pour la classification des paramètres."""

    def test_dv_range(self):
        """-sp < alpha, beta < d et alpha + beta < d."""
        verdict = admissible_parameters(1, 2.0, 0.5, 0.2, 0.2)
        assert verdict.regime == AdmissibilityRegime.DV_RANGE
        assert verdict.finite is True

    def test_unknown_outside_ranges(self):
        """alpha = 1.5 en dimension 1 sans autre hypothèse."""
        verdict = admissible_parameters(1, 2.0, 0.5, 1.5, 0.0)
        assert verdict.regime == AdmissibilityRegime.UNKNOWN
        assert verdict.finite is None
        assert not verdict.is_known

    def test_inversion_range(self):
        """Support évitant 0: la somme peut dépasser d."""
        verdict = admissible_parameters(1, 2.0, 0.25, 0.6, 0.6, support_excludes_origin=True)
        assert verdict.regime == AdmissibilityRegime.INVERSION_RANGE

    def test_s_zero_inversion_precedence(self):
        """s = 0 et support évitant 0: le régime d'inversion prime."""
        verdict = admissible_parameters(2, 1.0, 0.0, 0.8, 0.8, support_excludes_origin=True)
        assert verdict.regime == AdmissibilityRegime.INVERSION_RANGE
        verdict = admissible_parameters(2, 1.0, 0.0, 0.8, 0.8)
        assert verdict.regime == AdmissibilityRegime.DV_RANGE

    def test_bounded_uniform_range(self):
        """Intervalle borné: alpha, beta < 1 et alpha + beta < 1 + p (1 - s)."""
        verdict = admissible_parameters(1, 2.0, 0.5, 0.9, 0.9, domain_kind=DomainKind.INTERVAL)
        assert verdict.regime == AdmissibilityRegime.BOUNDED_UNIFORM_RANGE
        verdict = admissible_parameters(1, 2.0, 0.5, 0.9, 0.9, domain_kind=DomainKind.PUNCTURED_SPACE)
        assert verdict.regime == AdmissibilityRegime.UNKNOWN

    def test_half_space_in_lipschitz_regime(self):
        """Le demi-espace, non borné, relève du régime borné uniforme (support compact)."""
        verdict = admissible_parameters(1, 2.0, 0.5, 0.9, 0.9, domain_kind=DomainKind.HALF_SPACE)
        assert verdict.regime == AdmissibilityRegime.BOUNDED_UNIFORM_RANGE
        verdict = admissible_parameters(1, 2.0, 0.5, 0.9, 0.9, domain_kind=DomainKind.FULL_SPACE)
        assert verdict.regime == AdmissibilityRegime.UNKNOWN
        # s = 0 sans poids: la queue lointaine du demi-espace diverge
        verdict = admissible_parameters(1, 2.0, 0.0, 0.0, 0.0, domain_kind=DomainKind.HALF_SPACE)
        assert verdict.regime == AdmissibilityRegime.UNKNOWN
        verdict = admissible_parameters(1, 2.0, 0.0, 0.0, 0.0, domain_kind=DomainKind.INTERVAL)
        assert verdict.regime == AdmissibilityRegime.BOUNDED_UNIFORM_RANGE

    @pytest.mark.parametrize("kind", [None, DomainKind.INTERVAL, DomainKind.HALF_SPACE, DomainKind.PUNCTURED_SPACE])
    @pytest.mark.parametrize("excludes_origin", [False, True])
    def test_monotone_when_exponents_shrink(self, kind, excludes_origin):
        """Rapprocher alpha et beta de 0 ne fait jamais perdre la finitude."""
        exponents = [-1.2, -0.6, -0.2, 0.3, 0.7, 0.95, 1.3, 1.8]
        for d in (1, 2):
            for p in (1.0, 2.0):
                for s in (0.0, 0.25, 0.5, 0.75):
                    for alpha in exponents:
                        for beta in exponents:
                            verdict = admissible_parameters(d, p, s, alpha, beta, excludes_origin, kind)
                            if not verdict.is_known:
                                continue
                            for t in (0.75, 0.5, 0.25):
                                shrunk = admissible_parameters(d, p, s, t * alpha, t * beta, excludes_origin, kind)
                                assert shrunk.is_known, (d, p, s, alpha, beta, t)

    def test_invalid_order(self):
        """s = 1 est hors du domaine de définition."""
        with pytest.raises(ParameterError):
            admissible_parameters(1, 2.0, 1.0, 0.0, 0.0)


class TestEmbeddingConditions:
    """Tests pour les hypothèses de plongement."""

    def test_positive_exponents(self):
        """alpha = beta = 0.3 sur un bord de codimension 1."""
        conditions = embedding_conditions(0.3, 0.3, 2.0, 1.0)
        assert conditions.cond1 and conditions.cond2 and conditions.ap_sum

    def test_sum_leaves_a1(self):
        """alpha + beta = 1.2 >= codim: cond2 échoue, cond1 tient."""
        conditions = embedding_conditions(0.6, 0.6, 2.0, 1.0)
        assert conditions.cond1
        assert not conditions.cond2
        assert not conditions.ap_sum

    def test_holder_hypothesis(self):
        """La comparaison de Hölder exige alpha beta >= 0."""
        assert holder_comparison_applies(0.2, 0.1)
        assert holder_comparison_applies(-0.2, -0.1)
        assert holder_comparison_applies(0.3, 0.0)
        assert not holder_comparison_applies(0.2, -0.1)
