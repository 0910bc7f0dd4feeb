#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
============================================================
report.py — a6-arc90
------------------------------------------------------------
Description :
    Rapports de run (JSON stable), rendus texte / CSV et bundle HTML (Jinja2).

Rôle :
    - RunReport : command, params, results, timing, version.
      La section results est déterministe (clés triées, listes ordonnées) :
      deux runs identiques donnent des octets identiques.
    - Rendus texte par commande (orbit, check, scan, delta, export-mds).
    - Exports CSV (tables par commande, matrice MDS).
    - generate_report_bundle : report.json + table CSV + report.html.

Notes :
    - Rendu HTML via Jinja2 si disponible et template présent,
      sinon HTML minimal autonome (fallback).
============================================================
"""

from __future__ import annotations

# ============================================================
# 📦 Imports
# ============================================================
import csv
import io
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO

try:
    from jinja2 import Environment, FileSystemLoader, select_autoescape
except Exception:  # pragma: no cover (dépend de l'environnement)
    Environment = None  # type: ignore[assignment]
    FileSystemLoader = None  # type: ignore[assignment]
    select_autoescape = None  # type: ignore[assignment]

from a6_arc90.orbit import MdsExport

# ============================================================
# 🔎 Public exports
# ============================================================
__all__ = [
    "ReportError",
    "RunReport",
    "ReportPaths",
    "table_rows",
    "render_text",
    "render_csv",
    "write_mds_csv",
    "generate_report_bundle",
]


# ============================================================
# 🧾 Logging (local, autonome)
# ============================================================
def get_logger(name: str) -> logging.Logger:
    logger = logging.getLogger(name)
    if not logger.handlers:
        handler = logging.StreamHandler()
        fmt = logging.Formatter(
            fmt="%(asctime)s [%(levelname)s] [%(name)s] %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        )
        handler.setFormatter(fmt)
        logger.addHandler(handler)
    if logger.level == logging.NOTSET:
        logger.setLevel(logging.INFO)
    return logger


log = get_logger(__name__)


# ============================================================
# ⚠️ Exceptions spécifiques au module
# ============================================================
class ReportError(Exception):
    """Erreur spécifique au reporting (I/O, template, données)."""


# ============================================================
# 🧩 Modèles de sortie
# ============================================================
@dataclass(frozen=True)
class RunReport:
    """Schéma stable : command, params, results, timing, version."""
    command: str
    params: Dict[str, Any]
    results: Dict[str, Any]
    timing: Dict[str, float] = field(default_factory=dict)
    version: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "params": self.params,
            "results": self.results,
            "timing": self.timing,
            "version": self.version,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)

    def results_json(self) -> str:
        """Section results seule, sérialisation canonique (comparaisons octet à octet)."""
        return json.dumps(self.results, indent=2, sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunReport":
        missing = [k for k in ("command", "params", "results") if k not in data]
        if missing:
            raise ReportError(f"RunReport missing keys: {missing}")
        return cls(
            command=str(data["command"]),
            params=dict(data["params"]),
            results=dict(data["results"]),
            timing=dict(data.get("timing") or {}),
            version=str(data.get("version", "")),
        )

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class ReportPaths:
    """
    Chemins de sortie générés par generate_report_bundle().
    """
    out_dir: Path
    report_json: Path
    report_html: Path
    table_csv: Path


# ============================================================
# 🔧 Tables par commande
# ============================================================
def table_rows(report: RunReport) -> List[List[str]]:
    """En-tête + lignes de la table principale d'un rapport."""
    res = report.results
    if report.command == "orbit":
        rows = [["orbit_index", "x", "y", "z"]]
        for pt in res.get("points", []):
            rows.append([str(pt["orbit_index"]), *pt["coords"]])
        return rows
    if report.command == "check":
        rows = [["m", "lines"]]
        for m, c in res.get("spectrum", {}).get("counts", {}).items():
            rows.append([m, str(c)])
        return rows
    if report.command == "scan":
        rows = [["p", "r", "q", "plane_q", "is_arc", "type", "complete", "verdict"]]
        for row in res.get("rows", []):
            comp = row.get("completeness")
            rows.append([
                str(row["p"]), str(row["r"]), str(row["q_base"]), str(row["plane_q"]),
                str(row["arc"]["is_arc"]), row["spectrum"]["type"],
                "" if comp is None else str(comp["complete"]), row["verdict"],
            ])
        return rows
    if report.command == "delta":
        rows = [["prime", "status"]]
        for p, st in res.get("status", {}).items():
            rows.append([p, st])
        return rows
    if report.command == "export-mds":
        return [["n", "k", "d", "path"], [str(res["n"]), str(res["k"]), str(res["d"]), str(res["path"])]]
    raise ReportError(f"Unknown command {report.command!r}")


def _write_csv(path: Path, header: Sequence[str], rows: Sequence[Sequence[str]]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(list(header))
        for r in rows:
            writer.writerow(list(r))


def render_csv(report: RunReport, stream: Optional[TextIO] = None) -> str:
    buf = stream or io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in table_rows(report):
        writer.writerow(row)
    return buf.getvalue() if isinstance(buf, io.StringIO) else ""


def write_mds_csv(export: MdsExport, path: Path) -> Path:
    """3 lignes × n colonnes : éléments codés (entiers pour r = 1, "a+b*w" pour r = 2)."""
    header = [f"c{i}" for i in range(export.n)]
    _write_csv(path, header, export.formatted_rows())
    return path


# ============================================================
# 🔧 Rendu texte
# ============================================================
def _spectrum_lines(spectrum: Dict[str, Any]) -> List[str]:
    lines = ["    m    lines"]
    for m, c in spectrum.get("counts", {}).items():
        lines.append(f"  {int(m):>3} {c:>8}")
    return lines


def _check_lines(res: Dict[str, Any]) -> List[str]:
    out = [
        f"q = {res['q_base']} (p={res['p']}, r={res['r']}), plane PG(2,{res['plane_q']})",
        f"verdict: {res['verdict']}",
        f"spectrum type {res['spectrum']['type']}:",
        *_spectrum_lines(res["spectrum"]),
    ]
    comp = res.get("completeness")
    if comp is None:
        out.append(f"completeness: undecided ({res.get('completeness_note') or 'plane too large'})")
    elif comp["complete"]:
        out.append(f"completeness: complete (m={comp['m']}, {comp['method']})")
    else:
        out.append(f"completeness: incomplete (m={comp['m']}, {comp['method']}), "
                   f"witness ({', '.join(comp['witness'])})")
    if res.get("arc", {}).get("collinear_triples"):
        out.append(f"collinear triples: {res['arc']['collinear_triples']}")
    if res.get("catalogue_mismatch"):
        out.append(f"CATALOGUE MISMATCH: {res['catalogue_mismatch']}")
    return out


def render_text(report: RunReport) -> str:
    res = report.results
    cmd = report.command
    if cmd == "orbit":
        lines = [
            f"Orbit of P1 under Gamma: {len(res['points'])} points in PG(2,{res['plane_q']})",
            f"field: {res['field']}",
            f"P1 = ({', '.join(res['basepoint'])})",
            "  idx  coordinates",
        ]
        for pt in res["points"]:
            lines.append(f"  {pt['orbit_index']:>3}  ({', '.join(pt['coords'])})")
        return "\n".join(lines) + "\n"
    if cmd == "check":
        lines = _check_lines(res)
        group = res.get("group")
        if group:
            lines.append(f"group: order {group['order']}, element orders {group['order_histogram']}")
        val = res.get("validation")
        if val is not None:
            lines.append(f"certification: {'ok' if val['ok'] else 'FAILED ' + ','.join(e['code'] for e in val['errors'])}")
        return "\n".join(lines) + "\n"
    if cmd == "scan":
        lines = [f"{'p':>5} {'r':>2} {'q':>7} {'plane_q':>9}  verdict"]
        for row in res.get("rows", []):
            lines.append(f"{row['p']:>5} {row['r']:>2} {row['q_base']:>7} {row['plane_q']:>9}  {row['verdict']}")
        lines.append(f"non-arcs: {res.get('non_arcs', [])}")
        return "\n".join(lines) + "\n"
    if cmd == "delta":
        lines = [
            f"pairs: {res['pairs']}",
            f"delta: {res['delta']}",
            f"confirmed: {res['confirmed']}",
            f"spurious: {res['spurious']}",
            f"out-of-hypothesis: {res['out_of_hypothesis']}",
            f"content primes: {res['content_primes']}",
        ]
        return "\n".join(lines) + "\n"
    if cmd == "export-mds":
        return f"[{res['n']},{res['k']},{res['d']}] MDS code over {res['field']} written to {res['path']}\n"
    raise ReportError(f"Unknown command {cmd!r}")


# ============================================================
# 🔧 HTML rendering
# ============================================================
def _render_fallback_html(context: Dict[str, Any], reason: str) -> str:
    """
    Fallback HTML minimal (sans Jinja2), pour garantir un artefact ouvrable localement.
    """
    title = str(context.get("title", "a6-arc90 report"))
    text = (
        str(context.get("text", ""))
        .replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
    )
    return f"""<!doctype html>
<html lang="en">
<head>
  <meta charset="utf-8"/>
  <title>{title}</title>
  <style>
    body {{ font-family: Arial, sans-serif; margin: 24px; }}
    .badge {{ display: inline-block; padding: 4px 10px; border-radius: 6px; background: #b00020; color: #fff; }}
    pre {{ background: #f2f2f2; padding: 12px; }}
  </style>
</head>
<body>
  <h1>{title}</h1>
  <p class="badge">fallback</p>
  <pre>{text}</pre>
  <p>Reason: <code>{reason}</code></p>
</body>
</html>
"""


def _render_html(templates_dir: Path, template_name: str, context: Dict[str, Any]) -> str:
    """
    Render HTML via Jinja2 if available and template exists.
    Fallback to a minimal standalone HTML otherwise.
    """
    if Environment is None or FileSystemLoader is None or select_autoescape is None:
        reason = "Jinja2 not available"
        log.warning("%s -> using fallback HTML", reason)
        return _render_fallback_html(context, reason=reason)

    tpl_path = templates_dir / template_name
    if not tpl_path.is_file():
        reason = f"template not found: {tpl_path}"
        log.warning("%s -> using fallback HTML", reason)
        return _render_fallback_html(context, reason=reason)

    try:
        env = Environment(
            loader=FileSystemLoader(str(templates_dir)),
            autoescape=select_autoescape(["html", "xml"]),
        )
        return env.get_template(template_name).render(**context)
    except Exception as e:
        reason = f"Jinja2 render failed: {e}"
        log.warning("%s -> using fallback HTML", reason)
        return _render_fallback_html(context, reason=reason)


# ============================================================
# 🔧 Fonction principale
# ============================================================
def generate_report_bundle(
    report: RunReport,
    *,
    out_dir: str | Path = "data/outputs",
    templates_dir: str | Path = "templates/a6arc",
    template_name: str = "report.html",
) -> ReportPaths:
    """
    Écrit report.json, la table CSV de la commande et report.html.

    Returns:
        ReportPaths: chemins des fichiers générés.
    """
    try:
        out_path = Path(out_dir)
        out_path.mkdir(parents=True, exist_ok=True)
        stem = report.command.replace("-", "_")

        json_path = out_path / f"{stem}_report.json"
        json_path.write_text(report.to_json() + "\n", encoding="utf-8")

        rows = table_rows(report)
        csv_path = out_path / f"{stem}_table.csv"
        _write_csv(csv_path, rows[0], rows[1:])

        context: Dict[str, Any] = {
            "title": f"a6-arc90 — {report.command}",
            "report": report.to_dict(),
            "header": rows[0],
            "rows": rows[1:],
            "text": render_text(report),
        }
        html_path = out_path / f"{stem}_report.html"
        html_path.write_text(_render_html(Path(templates_dir), template_name, context), encoding="utf-8")

        log.info("Report bundle generated: %s, %s, %s", json_path.name, csv_path.name, html_path.name)
        return ReportPaths(out_dir=out_path, report_json=json_path, report_html=html_path, table_csv=csv_path)
    except Exception as e:
        log.exception("Report generation failed")
        raise ReportError(str(e)) from e
