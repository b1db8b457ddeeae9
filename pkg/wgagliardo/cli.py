"""
Ligne de commande du laboratoire.

Usage:
    wgagliardo [commande] --config fichier.ini [--seed N] [--out chemin]
               [--format csv|json] [--engine quad|mc] [--tol X] [--samples N]

Codes de sortie: 0 succès, 2 configuration ou paramètres invalides,
3 divergence numérique.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from . import __version__
from .asymptotics import (
    bbm_probe,
    indicator_limit_probe,
    inversion_identity_check,
    ms_alpha0_probe,
    ms_alphad_probe,
    ms_classical_probe,
)
from .config import ENGINES, FORMATS, Command, RunConfig, parse_config
from .constants import (
    bbm_constant,
    bbm_constant_quadrature,
    classical_ms_constant,
    hardy_constant,
    sphere_measure,
)
from .display import display_estimate, display_probe, display_table, rows_headers, to_csv, to_json
from .errors import DivergenceError, ParameterError, UnsupportedError, WGagliardoError
from .geometry import lower_assouad_codim, minkowski_upper_dim
from .seminorm import (
    Engine,
    SeminormParams,
    compute_seminorm,
    continuity_scan,
    seminorm_whitney_lower,
)
from .weights import (
    PowerWeight,
    ap_boundary_sequence,
    ap_closed_form,
    ap_constant_empirical,
    default_cube_sample,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_DIVERGENCE = 3

# Résultat d'une commande: (résumé JSON, lignes du tableau, texte lisible)
Outcome = Tuple[Dict[str, object], List[Dict[str, object]], str]


def _engine(config: RunConfig) -> Optional[Engine]:
    return Engine(config.engine) if config.engine is not None else None


def _params(config: RunConfig, domain) -> SeminormParams:
    return SeminormParams(config.s, config.p, config.alpha, config.beta, domain)


def _probe_outcome(probe) -> Outcome:
    return probe.to_summary(), probe.rows(), display_probe(probe)


def _run_constants(config: RunConfig) -> Outcome:
    with_hardy = "alpha" in config.explicit
    rows = []
    for d in config.dimensions:
        for p in config.exponents:
            row = {
                "d": d,
                "p": p,
                "K": bbm_constant(d, p).value,
                "K_quadrature": bbm_constant_quadrature(d, p).value,
                "sphere": sphere_measure(d).value,
                "ms": classical_ms_constant(d, p).value,
            }
            if with_hardy:
                row["hardy"] = hardy_constant(d, p, config.alpha).value
            rows.append(row)
    return {"rows": len(rows)}, rows, display_table(rows_headers(rows), rows, title="Constantes")


def _run_seminorm(config: RunConfig) -> Outcome:
    f = config.build_function()
    params = _params(config, config.build_domain())
    estimate = compute_seminorm(
        f, params, _engine(config), tol=config.tol, samples=config.samples, seed=config.seed, force=config.force,
    )
    verdict = params.verdict(f)
    summary = {"estimate": estimate.to_record(), "verdict": verdict.to_record()}
    row = dict(params.to_record())
    row.update(estimate.to_record())
    return summary, [row], display_estimate("Semi-norme pondérée", estimate) + f"\nRégime: {verdict}"


def _run_bbm(config: RunConfig) -> Outcome:
    probe = bbm_probe(
        config.build_function(), config.build_domain(), config.p, config.alpha, config.beta,
        config.schedule, _engine(config), config.tol, config.samples, config.seed, config.force,
    )
    return _probe_outcome(probe)


def _run_ms0(config: RunConfig) -> Outcome:
    probe = ms_alpha0_probe(
        config.build_function(), config.p, config.schedule, _engine(config), config.tol, config.samples, config.seed,
    )
    return _probe_outcome(probe)


def _run_msd(config: RunConfig) -> Outcome:
    probe = ms_alphad_probe(
        config.build_function(), config.p, config.schedule, config.routes, _engine(config),
        config.tol, config.samples, config.seed,
    )
    return _probe_outcome(probe)


def _run_ms_classical(config: RunConfig) -> Outcome:
    probe = ms_classical_probe(
        config.build_function(), config.p, config.schedule, _engine(config), config.tol, config.samples, config.seed,
    )
    return _probe_outcome(probe)


def _run_inversion(config: RunConfig) -> Outcome:
    check = inversion_identity_check(
        config.build_function(), config.s, config.p, config.alpha, config.beta,
        _engine(config), config.tol, config.samples, config.seed,
    )
    summary = check.to_summary()
    return summary, [summary], str(check)


def _run_indicator(config: RunConfig) -> Outcome:
    dimension = config.build_domain().dimension if config.domain is not None else 1
    probe = indicator_limit_probe(config.radius, dimension, config.schedule, config.samples, config.seed)
    return _probe_outcome(probe)


def _run_whitney(config: RunConfig) -> Outcome:
    params = _params(config, config.build_domain())
    estimate = seminorm_whitney_lower(config.build_function(), params, config.min_side, config.tol)
    summary = {"estimate": estimate.to_record(), "cubes": estimate.samples, "truncated": estimate.extra["truncated"]}
    row = dict(params.to_record())
    row.update(estimate.to_record())
    return summary, [row], display_estimate("Borne inférieure de Whitney", estimate)


def _run_ap_check(config: RunConfig) -> Outcome:
    domain = config.build_domain()
    codim = config.codim if config.codim is not None else domain.codimension
    weight = PowerWeight(config.gamma, domain)
    member = ap_closed_form(config.gamma, config.p, codim)
    summary: Dict[str, object] = {"gamma": config.gamma, "p": config.p, "codim": codim, "member": member}
    rows = []
    if config.empirical:
        sample = default_cube_sample(domain, seed=config.seed)
        empirical = ap_constant_empirical(weight, config.p, sample)
        sequence = ap_boundary_sequence(weight, config.p)
        summary.update({"empirical": empirical.value, "median": empirical.median, "skipped": empirical.skipped})
        rows = [{"generation": g, "functional": value} for g, value in enumerate(sequence)]
    text = f"d^(-{config.gamma:g}) dans A_{config.p:g}: {'oui' if member else 'non'} (codim {codim:g})"
    if rows:
        text += "\n" + display_table(["generation", "functional"], rows, title="Cubes ancrés au bord")
    return summary, rows, text


def _run_codim(config: RunConfig) -> Outcome:
    domain = config.build_domain()
    codim = lower_assouad_codim(domain, config.rho_grid, seed=config.seed)
    dim_m = minkowski_upper_dim(domain, config.scales)
    summary = {"lower_assouad_codim": codim, "minkowski_upper_dim": dim_m}
    text = f"Codimension d'Assouad inférieure: {codim:.4g}\nDimension de Minkowski supérieure: {dim_m:.4g}"
    return summary, [summary], text


def _run_continuity(config: RunConfig) -> Outcome:
    rows = continuity_scan(
        config.build_function(), config.build_domain(), config.p, config.grid, _engine(config),
        config.tol, config.samples, config.seed, config.force,
    )
    records = [row.to_record() for row in rows]
    values = [row.estimate.value for row in rows]
    summary = {"points": len(rows), "spread": max(values) - min(values)}
    return summary, records, display_table(rows_headers(records), records, title="Balayage de continuité")


_HANDLERS: Dict[Command, Callable[[RunConfig], Outcome]] = {
    Command.CONSTANTS: _run_constants,
    Command.SEMINORM: _run_seminorm,
    Command.BBM: _run_bbm,
    Command.MS0: _run_ms0,
    Command.MSD: _run_msd,
    Command.MS_CLASSICAL: _run_ms_classical,
    Command.INVERSION_CHECK: _run_inversion,
    Command.INDICATOR: _run_indicator,
    Command.WHITNEY: _run_whitney,
    Command.AP_CHECK: _run_ap_check,
    Command.CODIM: _run_codim,
    Command.CONTINUITY: _run_continuity,
}


def render(config: RunConfig, summary: Dict[str, object], rows: List[Dict[str, object]]) -> str:
    """Sortie machine (CSV ou JSON) avec la configuration résolue et son empreinte."""
    resolved = config.resolved()
    digest = config.config_hash()
    if config.format == "csv":
        return to_csv(rows_headers(rows), rows, resolved, digest)
    payload = {"command": config.command.value, "summary": summary, "rows": rows}
    return to_json(payload, resolved, digest)


def run(config: RunConfig, stream=None) -> int:
    """
    Exécute une configuration.

    Args:
        config: Configuration validée
        stream: Flux de sortie (sys.stdout par défaut)

    Returns:
        Code de sortie (0, 2 ou 3)
    """
    stream = stream if stream is not None else sys.stdout
    try:
        summary, rows, text = _HANDLERS[config.command](config)
    except (ParameterError, UnsupportedError) as exc:
        logger.error("Paramètres invalides: %s", exc)
        return EXIT_INVALID
    except DivergenceError as exc:
        logger.error("Divergence numérique: %s", exc)
        return EXIT_DIVERGENCE

    output = render(config, summary, rows)
    if config.out:
        Path(config.out).write_text(output, encoding="utf-8")
        stream.write(text + "\n")
        logger.info("Résultats écrits dans %s", config.out)
    else:
        stream.write(output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wgagliardo",
        description="Semi-normes de Gagliardo pondérées: moteurs numériques et vérification des limites",
    )
    parser.add_argument("command", nargs="?", choices=[c.value for c in Command],
                        help="Commande (remplace [run] command)")
    parser.add_argument("--config", type=Path, help="Fichier de configuration")
    parser.add_argument("--seed", type=int, help="Graine aléatoire")
    parser.add_argument("--out", help="Fichier de sortie")
    parser.add_argument("--format", choices=FORMATS, help="Format de sortie")
    parser.add_argument("--engine", choices=ENGINES, help="Moteur de la semi-norme")
    parser.add_argument("--tol", type=float, help="Tolérance de quadrature")
    parser.add_argument("--samples", type=int, help="Échantillons Monte-Carlo")
    parser.add_argument("--verbose", action="store_true", help="Journalisation INFO")
    parser.add_argument("--debug", action="store_true", help="Journalisation DEBUG")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Point d'entrée de la ligne de commande."""
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.debug else logging.INFO if args.verbose else logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    try:
        if args.config is not None:
            text = args.config.read_text(encoding="utf-8")
        elif args.command is not None:
            text = ""
        else:
            logger.error("Aucune commande ni configuration fournie")
            return EXIT_INVALID
        config = parse_config(text, command=args.command)
        if args.samples is not None and args.samples < 1000:
            raise ParameterError("--samples: au moins 1000 échantillons")
        if args.tol is not None and not args.tol > 0.0:
            raise ParameterError("--tol: tolérance strictement positive attendue")
        config = config.with_overrides(
            seed=args.seed, out=args.out, format=args.format, engine=args.engine,
            tol=args.tol, samples=args.samples,
        )
    except OSError as exc:
        logger.error("Lecture de la configuration impossible: %s", exc)
        return EXIT_INVALID
    except WGagliardoError as exc:
        logger.error("Configuration invalide: %s", exc)
        return EXIT_INVALID

    return run(config)


if __name__ == "__main__":
    sys.exit(main())
