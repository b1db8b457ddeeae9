"""
Module d'affichage des résultats.

Ce module fournit:
- des tableaux à colonnes fixes encadrés de bannières pour la console
- les sorties machine CSV et JSON, qui embarquent la configuration résolue
  et son empreinte
"""

import csv
import io
import json
from typing import Any, Dict, List, Mapping, Optional, Sequence

from .estimate import Estimate


def format_cell(value: Any, width: int = 14) -> str:
    """
    Formate une cellule du tableau.

    Args:
        value: Valeur à formater (les flottants en notation compacte)
        width: Largeur de la cellule

    Returns:
        Chaîne centrée
    """
    if isinstance(value, bool) or value is None:
        text = str(value)
    elif isinstance(value, float):
        text = f"{value:.8g}"
    else:
        text = str(value)
    return text.center(width)


def display_table(
    headers: Sequence[str],
    rows: Sequence[Mapping[str, Any]],
    title: str = "",
    cell_width: int = 14,
) -> str:
    """
    Tableau à colonnes fixes.

    Args:
        headers: Clés des colonnes (dans l'ordre)
        rows: Lignes (dictionnaires)
        title: Titre affiché entre deux bannières
        cell_width: Largeur de chaque colonne

    Returns:
        Chaîne représentant le tableau formaté
    """
    total_width = cell_width * len(headers) + len(headers) + 1
    lines = []
    if title:
        lines.append("")
        lines.append("=" * total_width)
        lines.append(title.center(total_width))
        lines.append("=" * total_width)
    separator = "+" + "+".join("-" * cell_width for _ in headers) + "+"
    lines.append(separator)
    lines.append("|" + "|".join(format_cell(h, cell_width) for h in headers) + "|")
    lines.append(separator)
    for row in rows:
        lines.append("|" + "|".join(format_cell(row.get(h, ""), cell_width) for h in headers) + "|")
    lines.append(separator)
    return "\n".join(lines)


def display_estimate(label: str, estimate: Estimate) -> str:
    """Bannière courte pour une estimation isolée."""
    lines = [
        "=" * 60,
        label.upper(),
        "=" * 60,
        f"Valeur: {estimate.value:.12g}",
        f"Erreur: {estimate.error:.3g}",
        f"Méthode: {estimate.method.value}",
    ]
    if estimate.samples:
        lines.append(f"Échantillons / évaluations: {estimate.samples}")
    if estimate.seed is not None:
        lines.append(f"Graine: {estimate.seed}")
    if estimate.one_sided:
        lines.append("Borne inférieure unilatérale")
    lines.append("=" * 60)
    return "\n".join(lines)


def display_probe(probe) -> str:
    """Résumé d'une sonde suivi du tableau de ses points."""
    rows = probe.rows()
    headers = list(rows[0].keys()) if rows else []
    return str(probe) + "\n" + display_table(headers, rows, title="Calendrier")


def to_csv(
    headers: Sequence[str],
    rows: Sequence[Mapping[str, Any]],
    config: Optional[Mapping[str, Any]] = None,
    config_hash: Optional[str] = None,
) -> str:
    """
    Bloc CSV précédé de lignes de commentaire # config_hash: et # config:.
    """
    buffer = io.StringIO()
    if config_hash is not None:
        buffer.write(f"# config_hash: {config_hash}\n")
    if config is not None:
        buffer.write(f"# config: {json.dumps(config, sort_keys=True)}\n")
    writer = csv.DictWriter(buffer, fieldnames=list(headers), lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _csv_value(row.get(key)) for key in headers})
    return buffer.getvalue()


def _csv_value(value: Any) -> Any:
    if isinstance(value, float):
        return repr(value)
    return "" if value is None else value


def to_json(
    payload: Mapping[str, Any],
    config: Optional[Mapping[str, Any]] = None,
    config_hash: Optional[str] = None,
) -> str:
    """Document JSON à clés triées (mêmes entrées, mêmes octets)."""
    document: Dict[str, Any] = dict(payload)
    if config is not None:
        document["config"] = dict(config)
    if config_hash is not None:
        document["config_hash"] = config_hash
    return json.dumps(document, sort_keys=True, indent=2, allow_nan=True) + "\n"


def rows_headers(rows: List[Mapping[str, Any]]) -> List[str]:
    """Union ordonnée des clés de plusieurs lignes."""
    headers: List[str] = []
    for row in rows:
        for key in row:
            if key not in headers:
                headers.append(key)
    return headers
