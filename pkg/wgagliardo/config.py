"""
Configuration des exécutions.

Le format est un fichier texte UTF-8 en blocs [run], [domain], [function] et
[parameters] contenant des lignes clé = valeur. Les décimaux utilisent le
point. Chaque erreur est rapportée avec son numéro de ligne.

Exemple:
    [run]
    command = bbm

    [domain]
    kind = interval
    lower = 0
    upper = 1

    [function]
    name = linear

    [parameters]
    p = 2
"""

import configparser
import hashlib
import json
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from .asymptotics import default_schedule
from .errors import ConfigError, ParameterError, UnsupportedError
from .funcspace import FUNCTION_KEYS, TestFunction, function_from_block
from .geometry import DOMAIN_KEYS, Domain, domain_from_block
from .weights import AdmissibilityRegime, CITATIONS, admissible_parameters


class Command(Enum):
    """Commandes disponibles (une par résultat vérifié)."""
    SEMINORM = "seminorm"
    BBM = "bbm"
    MS0 = "ms0"
    MSD = "msd"
    MS_CLASSICAL = "ms-classical"
    INVERSION_CHECK = "inversion-check"
    INDICATOR = "indicator"
    CONSTANTS = "constants"
    WHITNEY = "whitney"
    AP_CHECK = "ap-check"
    CODIM = "codim"
    CONTINUITY = "continuity"


PARAMETER_KEYS = (
    "s", "p", "alpha", "beta", "schedule", "regime", "gamma", "codim", "grid", "min_side",
    "rho_grid", "scales", "dimensions", "exponents", "radius", "routes", "empirical",
)

RUN_KEYS = ("command", "engine", "tol", "samples", "seed", "format", "out", "force")

BLOCK_KEYS: Dict[str, Tuple[str, ...]] = {
    "run": RUN_KEYS,
    "domain": DOMAIN_KEYS,
    "function": FUNCTION_KEYS,
    "parameters": PARAMETER_KEYS,
}

# Blocs requis par commande
_NEEDS_DOMAIN = {
    Command.SEMINORM, Command.BBM, Command.WHITNEY, Command.AP_CHECK, Command.CODIM, Command.CONTINUITY,
}
_NEEDS_FUNCTION = {
    Command.SEMINORM, Command.BBM, Command.MS0, Command.MSD, Command.MS_CLASSICAL,
    Command.INVERSION_CHECK, Command.WHITNEY, Command.CONTINUITY,
}
_SCHEDULE_KIND = {
    Command.BBM: "bbm",
    Command.MS0: "ms0",
    Command.MSD: "msd",
    Command.MS_CLASSICAL: "ms-classical",
    Command.INDICATOR: "indicator",
}

ENGINES = ("quad", "mc")
FORMATS = ("csv", "json")


@dataclass
class RunConfig:
    """
    Configuration résolue d'une exécution (valeurs par défaut remplies).

    Attributes:
        command: Commande
        domain: Bloc [domain] brut (None si absent)
        function: Bloc [function] brut (None si absent)
        s, p, alpha, beta: Paramètres de la semi-norme
        schedule: Calendrier de la sonde (rempli par défaut pour les sondes)
        regime: Régime d'admissibilité exigé, le cas échéant
        gamma: Exposant de poids (ap-check)
        codim: Codimension du bord (défaut: celle du domaine)
        grid: Triplets (s, alpha, beta) du balayage de continuité
        min_side: Côté minimal des cubes de Whitney
        rho_grid: Grille des exposants d'Aikawa (codim)
        scales: Échelles du comptage de boîtes (codim)
        dimensions, exponents: Grille de la commande constants
        radius: Rayon de l'ensemble E (indicator)
        routes: Routes de la sonde msd
        empirical: Calculer aussi la fonctionnelle A_p empirique
        engine: "quad", "mc" ou None (choix automatique)
        tol: Tolérance de quadrature
        samples: Échantillons Monte-Carlo
        seed: Graine
        format: "csv" ou "json"
        out: Chemin de sortie (sortie standard si None)
        force: Calculer hors des régimes de finitude connus
        explicit: Clés de [parameters] données explicitement
    """
    command: Command
    domain: Optional[Dict[str, str]] = None
    function: Optional[Dict[str, str]] = None
    s: float = 0.5
    p: float = 2.0
    alpha: float = 0.0
    beta: float = 0.0
    schedule: Optional[List[float]] = None
    regime: Optional[str] = None
    gamma: float = 0.0
    codim: Optional[float] = None
    grid: List[Tuple[float, float, float]] = field(default_factory=list)
    min_side: float = 2.0 ** -8
    rho_grid: List[float] = field(default_factory=lambda: [0.25, 0.5, 0.75, 1.0])
    scales: List[float] = field(default_factory=lambda: [0.1, 0.05, 0.025, 0.0125])
    dimensions: List[int] = field(default_factory=lambda: [1, 2, 3])
    exponents: List[float] = field(default_factory=lambda: [1.0, 2.0])
    radius: float = 1.0
    routes: List[str] = field(default_factory=lambda: ["direct", "inversion"])
    empirical: bool = False
    engine: Optional[str] = None
    tol: float = 1e-8
    samples: int = 200_000
    seed: int = 0
    format: str = "json"
    out: Optional[str] = None
    force: bool = False
    explicit: Tuple[str, ...] = ()

    def build_domain(self) -> Domain:
        if self.domain is None:
            raise ParameterError(f"La commande {self.command.value} exige un bloc [domain]")
        return domain_from_block(self.domain)

    def build_function(self) -> TestFunction:
        if self.function is None:
            raise ParameterError(f"La commande {self.command.value} exige un bloc [function]")
        return function_from_block(self.function)

    @property
    def dimension(self) -> int:
        if self.domain is not None:
            return self.build_domain().dimension
        if self.function is not None:
            return self.build_function().dimension
        return 1

    def with_overrides(self, **changes) -> "RunConfig":
        """Copie avec les valeurs de la ligne de commande (None = inchangé)."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})

    def resolved(self) -> Dict[str, object]:
        """Configuration complète sérialisable en JSON (sans le chemin de sortie)."""
        return {
            "command": self.command.value,
            "domain": dict(sorted(self.domain.items())) if self.domain is not None else None,
            "function": dict(sorted(self.function.items())) if self.function is not None else None,
            "parameters": {
                "s": self.s,
                "p": self.p,
                "alpha": self.alpha,
                "beta": self.beta,
                "schedule": self.schedule,
                "regime": self.regime,
                "gamma": self.gamma,
                "codim": self.codim,
                "grid": [list(row) for row in self.grid],
                "min_side": self.min_side,
                "rho_grid": self.rho_grid,
                "scales": self.scales,
                "dimensions": self.dimensions,
                "exponents": self.exponents,
                "radius": self.radius,
                "routes": self.routes,
                "empirical": self.empirical,
            },
            "engine": self.engine,
            "tol": self.tol,
            "samples": self.samples,
            "seed": self.seed,
            "format": self.format,
            "force": self.force,
        }

    def config_hash(self) -> str:
        """Empreinte SHA-256 du JSON canonique de resolved()."""
        canonical = json.dumps(self.resolved(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


# ----------------------------------------------------------------------
# Analyse
# ----------------------------------------------------------------------

def _key_lines(text: str) -> Dict[Tuple[str, str], int]:
    """Numéro de ligne de chaque (bloc, clé)."""
    lines: Dict[Tuple[str, str], int] = {}
    section = ""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "#;":
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            lines.setdefault((section, ""), lineno)
            continue
        for sep in ("=", ":"):
            if sep in line:
                key = line.split(sep, 1)[0].strip().lower()
                lines.setdefault((section, key), lineno)
                break
    return lines


class _Block:
    """Accès typé aux valeurs d'un bloc avec localisation des erreurs."""

    def __init__(self, name: str, values: Dict[str, str], lines: Dict[Tuple[str, str], int]):
        self.name = name
        self.values = values
        self.lines = lines

    def lineno(self, key: str) -> Optional[int]:
        return self.lines.get((self.name, key))

    def error(self, key: str, message: str) -> ConfigError:
        return ConfigError(f"[{self.name}] {key}: {message}", self.lineno(key), key)

    def has(self, key: str) -> bool:
        return key in self.values

    def number(self, key: str, default: float) -> float:
        if key not in self.values:
            return default
        try:
            value = float(self.values[key])
        except ValueError:
            raise self.error(key, f"décimal invalide {self.values[key]!r}") from None
        if not math.isfinite(value):
            raise self.error(key, "valeur non finie")
        return value

    def integer(self, key: str, default: int) -> int:
        if key not in self.values:
            return default
        try:
            return int(self.values[key])
        except ValueError:
            raise self.error(key, f"entier invalide {self.values[key]!r}") from None

    def boolean(self, key: str, default: bool) -> bool:
        if key not in self.values:
            return default
        text = self.values[key].strip().lower()
        states = configparser.ConfigParser.BOOLEAN_STATES
        if text not in states:
            raise self.error(key, f"booléen invalide {self.values[key]!r}")
        return states[text]

    def numbers(self, key: str, default: Optional[List[float]]) -> Optional[List[float]]:
        if key not in self.values:
            return default
        try:
            values = [float(part) for part in self.values[key].replace(";", ",").split(",") if part.strip()]
        except ValueError:
            raise self.error(key, f"liste de décimaux invalide {self.values[key]!r}") from None
        if not values:
            raise self.error(key, "liste vide")
        return values

    def choice(self, key: str, choices: Sequence[str], default: Optional[str]) -> Optional[str]:
        if key not in self.values:
            return default
        value = self.values[key].strip()
        if value not in choices:
            raise self.error(key, f"valeur {value!r} hors de {', '.join(choices)}")
        return value


def _parse_grid(block: _Block) -> List[Tuple[float, float, float]]:
    if not block.has("grid"):
        return []
    rows = []
    for chunk in block.values["grid"].split(";"):
        if not chunk.strip():
            continue
        try:
            values = [float(part) for part in chunk.replace(",", " ").split()]
        except ValueError:
            raise block.error("grid", f"triplet invalide {chunk.strip()!r}") from None
        if len(values) != 3:
            raise block.error("grid", f"triplet (s, alpha, beta) attendu, reçu {chunk.strip()!r}")
        rows.append((values[0], values[1], values[2]))
    if not rows:
        raise block.error("grid", "grille vide")
    return rows


def parse_config(text: str, command: Optional[str] = None) -> RunConfig:
    """
    Analyse un texte de configuration.

    Args:
        text: Contenu du fichier
        command: Commande imposée (remplace [run] command)

    Returns:
        RunConfig validée, valeurs par défaut remplies

    Raises:
        ConfigError: Texte mal formé, bloc ou clé inconnu, doublon, commande
            inconnue, valeur hors domaine (avec numéro de ligne)
    """
    parser = configparser.ConfigParser(strict=True, interpolation=None)
    try:
        parser.read_string(text)
    except configparser.DuplicateOptionError as exc:
        raise ConfigError(f"clé dupliquée '{exc.option}' dans [{exc.section}]", exc.lineno, exc.option) from None
    except configparser.DuplicateSectionError as exc:
        raise ConfigError(f"bloc dupliqué [{exc.section}]", exc.lineno) from None
    except configparser.MissingSectionHeaderError as exc:
        raise ConfigError("ligne hors de tout bloc [..]", exc.lineno) from None
    except configparser.ParsingError as exc:
        lineno = exc.errors[0][0] if exc.errors else None
        raise ConfigError("ligne mal formée", lineno) from None

    lines = _key_lines(text)
    blocks: Dict[str, _Block] = {}
    for section in parser.sections():
        if section not in BLOCK_KEYS:
            raise ConfigError(f"bloc inconnu [{section}]", lines.get((section, "")))
        values = dict(parser.items(section))
        block = _Block(section, values, lines)
        for key in values:
            if key not in BLOCK_KEYS[section]:
                raise block.error(key, "clé inconnue")
        blocks[section] = block

    run = blocks.get("run", _Block("run", {}, lines))
    if command is None and not run.has("command"):
        raise ConfigError("[run] command manquant", lines.get(("run", "")), "command")
    try:
        command = Command(command if command is not None else run.values["command"].strip())
    except ValueError:
        choices = ", ".join(c.value for c in Command)
        raise run.error("command", f"commande inconnue (choix: {choices})") from None

    params = blocks.get("parameters", _Block("parameters", {}, lines))
    config = RunConfig(
        command=command,
        domain=dict(blocks["domain"].values) if "domain" in blocks else None,
        function=dict(blocks["function"].values) if "function" in blocks else None,
        s=params.number("s", 0.5),
        p=params.number("p", 2.0),
        alpha=params.number("alpha", 0.0),
        beta=params.number("beta", params.number("alpha", 0.0)),
        schedule=params.numbers("schedule", None),
        regime=params.choice("regime", [r.value for r in AdmissibilityRegime if r != AdmissibilityRegime.UNKNOWN], None),
        gamma=params.number("gamma", 0.0),
        codim=params.number("codim", None),
        grid=_parse_grid(params),
        min_side=params.number("min_side", 2.0 ** -8),
        rho_grid=params.numbers("rho_grid", [0.25, 0.5, 0.75, 1.0]),
        scales=params.numbers("scales", [0.1, 0.05, 0.025, 0.0125]),
        dimensions=[int(v) for v in params.numbers("dimensions", [1.0, 2.0, 3.0])],
        exponents=params.numbers("exponents", [1.0, 2.0]),
        radius=params.number("radius", 1.0),
        routes=[r.strip() for r in params.values.get("routes", "direct, inversion").split(",") if r.strip()],
        empirical=params.boolean("empirical", False),
        engine=run.choice("engine", ENGINES, None),
        tol=run.number("tol", 1e-8),
        samples=run.integer("samples", 200_000),
        seed=run.integer("seed", 0),
        format=run.choice("format", FORMATS, "json"),
        out=run.values.get("out"),
        force=run.boolean("force", False),
        explicit=tuple(sorted(params.values)),
    )
    _validate(config, run, params, blocks)
    return config


def _validate(config: RunConfig, run: _Block, params: _Block, blocks: Dict[str, _Block]) -> None:
    command = config.command
    if command in _NEEDS_DOMAIN and "domain" not in blocks:
        raise ConfigError(f"la commande {command.value} exige un bloc [domain]", run.lineno("command"), "command")
    if command in _NEEDS_FUNCTION and "function" not in blocks:
        raise ConfigError(f"la commande {command.value} exige un bloc [function]", run.lineno("command"), "command")
    if not 0.0 <= config.s < 1.0:
        raise params.error("s", f"0 <= s < 1 attendu (reçu {config.s})")
    if not config.p >= 1.0:
        raise params.error("p", f"p >= 1 attendu (reçu {config.p})")
    if not config.tol > 0.0:
        raise run.error("tol", "tolérance strictement positive attendue")
    if config.samples < 1000:
        raise run.error("samples", "au moins 1000 échantillons")
    if not config.min_side > 0.0:
        raise params.error("min_side", "côté strictement positif attendu")
    if not config.radius > 0.0:
        raise params.error("radius", "rayon strictement positif attendu")
    unknown_routes = set(config.routes) - {"direct", "inversion"}
    if unknown_routes or not config.routes:
        raise params.error("routes", f"routes valides: direct, inversion (reçu {', '.join(config.routes)})")
    if command == Command.CONTINUITY and not config.grid:
        raise ConfigError("la commande continuity exige parameters.grid", run.lineno("command"), "grid")

    domain = _build(blocks, "domain", config.build_domain)
    function = _build(blocks, "function", config.build_function)
    if domain is not None and function is not None and domain.dimension != function.dimension:
        raise ConfigError(
            f"dimensions incompatibles: domaine {domain.dimension}, fonction {function.dimension}",
            blocks["function"].lineno(""),
        )

    if config.schedule is None and command in _SCHEDULE_KIND:
        config.schedule = default_schedule(_SCHEDULE_KIND[command], config.dimension)

    if config.regime is not None:
        d = config.dimension
        excludes = function.support.excludes_origin if function is not None else False
        verdict = admissible_parameters(
            d, config.p, config.s, config.alpha, config.beta,
            support_excludes_origin=excludes, domain_kind=domain.kind if domain is not None else None,
        )
        if verdict.regime.value != config.regime:
            requested = CITATIONS[AdmissibilityRegime(config.regime)]
            raise params.error(
                "regime",
                f"(s={config.s}, p={config.p}, alpha={config.alpha}, beta={config.beta}, d={d}) "
                f"hors du régime {config.regime} ({requested}); verdict: {verdict}",
            )


def _build(blocks: Dict[str, _Block], section: str, builder):
    if section not in blocks:
        return None
    try:
        return builder()
    except (ParameterError, UnsupportedError) as exc:
        raise ConfigError(f"[{section}] {exc}", blocks[section].lineno("")) from None
