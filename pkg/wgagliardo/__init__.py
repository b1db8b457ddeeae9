"""
wgagliardo - Laboratoire numérique pour les semi-normes de Gagliardo pondérées.

Ce package calcule les semi-normes fractionnaires pondérées par des
puissances de la distance au bord

    [f]^p = \\int\\int |f(x) - f(y)|^p / |x - y|^{d+sp} d(x)^{-alpha} d(y)^{-beta} dx dy

et vérifie numériquement leurs comportements limites (s -> 1, s -> 0,
alpha -> 0, alpha -> d).

Caractéristiques:
- Quadratures déterministes (dimension 1 et 2) et Monte-Carlo stratifié
- Constantes fermées (K_{d,p}, |S^{d-1}|, constante de Hardy pondérée)
- Géométrie des domaines: Whitney, A_p, codimension d'Assouad, Minkowski
- Sondes asymptotiques avec extrapolation de Richardson

Exemple d'utilisation:
    >>> from wgagliardo import Domain, SeminormParams, linear, seminorm_quadrature
    >>>
    >>> params = SeminormParams(s=0.5, p=2.0, alpha=0.0, beta=0.0, domain=Domain.interval(0.0, 1.0))
    >>> estimate = seminorm_quadrature(linear(), params)
    >>> print(estimate)
"""

__version__ = "1.0.0"
__author__ = "vleonel-junior"

# Imports principaux
from .errors import (
    WGagliardoError,
    ParameterError,
    SingularityError,
    UnsupportedError,
    DivergenceError,
    ConfigError,
)
from .estimate import Estimate, EstimateMethod
from .constants import (
    ConstantMethod,
    ConstantValue,
    sphere_measure,
    bbm_constant,
    bbm_constant_quadrature,
    hardy_constant,
    classical_ms_constant,
)
from .geometry import (
    Domain,
    DomainKind,
    WhitneyCube,
    distance_to_boundary,
    whitney_decompose,
    aikawa_ratio,
    aikawa_closed_form,
    lower_assouad_codim,
    minkowski_upper_dim,
    domain_from_block,
    domain_to_block,
)
from .weights import (
    PowerWeight,
    Cube,
    ApEstimate,
    AdmissibilityRegime,
    AdmissibilityVerdict,
    EmbeddingConditions,
    ap_closed_form,
    ap_constant_empirical,
    ap_boundary_sequence,
    default_cube_sample,
    admissible_parameters,
    embedding_conditions,
    holder_comparison_applies,
)
from .funcspace import (
    Smoothness,
    Support,
    TestFunction,
    evaluate,
    bump,
    triangle,
    gaussian,
    annulus_bump,
    linear,
    ball_indicator,
    plateau,
    scale_function,
    zero_function,
    inversion_point,
    invert_function,
    weighted_lp_norm,
    weighted_gradient_energy,
    function_from_block,
    function_to_block,
)
from .seminorm import (
    Engine,
    SeminormParams,
    ScanRow,
    compute_seminorm,
    select_engine,
    seminorm_quadrature,
    seminorm_mc,
    seminorm_whitney_lower,
    indicator_pair_integral,
    continuity_scan,
)
from .asymptotics import (
    LimitProbe,
    InversionCheck,
    default_schedule,
    richardson_extrapolate,
    bbm_probe,
    corollary_rd_probe,
    boundedness_probe,
    ms_alpha0_probe,
    ms_alphad_probe,
    ms_classical_probe,
    inversion_identity_check,
    indicator_limit_probe,
)
from .config import Command, RunConfig, parse_config
from .display import display_table, display_estimate, display_probe, to_csv, to_json

# Liste des exports publics
__all__ = [
    # Erreurs
    "WGagliardoError",
    "ParameterError",
    "SingularityError",
    "UnsupportedError",
    "DivergenceError",
    "ConfigError",

    # Classes principales
    "Estimate",
    "EstimateMethod",
    "Domain",
    "DomainKind",
    "WhitneyCube",
    "PowerWeight",
    "Cube",
    "ApEstimate",
    "AdmissibilityRegime",
    "AdmissibilityVerdict",
    "EmbeddingConditions",
    "Smoothness",
    "Support",
    "TestFunction",
    "Engine",
    "SeminormParams",
    "ScanRow",
    "LimitProbe",
    "InversionCheck",
    "Command",
    "RunConfig",

    # Constantes
    "ConstantMethod",
    "ConstantValue",
    "sphere_measure",
    "bbm_constant",
    "bbm_constant_quadrature",
    "hardy_constant",
    "classical_ms_constant",

    # Géométrie et poids
    "distance_to_boundary",
    "whitney_decompose",
    "aikawa_ratio",
    "aikawa_closed_form",
    "lower_assouad_codim",
    "minkowski_upper_dim",
    "ap_closed_form",
    "ap_constant_empirical",
    "ap_boundary_sequence",
    "default_cube_sample",
    "admissible_parameters",
    "embedding_conditions",
    "holder_comparison_applies",

    # Fonctions tests
    "evaluate",
    "bump",
    "triangle",
    "gaussian",
    "annulus_bump",
    "linear",
    "ball_indicator",
    "plateau",
    "scale_function",
    "zero_function",
    "inversion_point",
    "invert_function",
    "weighted_lp_norm",
    "weighted_gradient_energy",

    # Semi-normes
    "compute_seminorm",
    "select_engine",
    "seminorm_quadrature",
    "seminorm_mc",
    "seminorm_whitney_lower",
    "indicator_pair_integral",
    "continuity_scan",

    # Sondes asymptotiques
    "default_schedule",
    "richardson_extrapolate",
    "bbm_probe",
    "corollary_rd_probe",
    "boundedness_probe",
    "ms_alpha0_probe",
    "ms_alphad_probe",
    "ms_classical_probe",
    "inversion_identity_check",
    "indicator_limit_probe",

    # Configuration et affichage
    "parse_config",
    "domain_from_block",
    "domain_to_block",
    "function_from_block",
    "function_to_block",
    "display_table",
    "display_estimate",
    "display_probe",
    "to_csv",
    "to_json",
]
