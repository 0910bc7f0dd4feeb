#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
============================================================
a6_arc90.main
------------------------------------------------------------
a6-arc90 — the A6-invariant 90-point orbit in PG(2,q)

Purpose:
    CLI entry point that:
      - Builds the 90-point orbit of Γ ≅ A6 for q = p^r (orbit)
      - Checks the arc property, the full line spectrum and completeness (check)
      - Scans every prime up to a bound with its minimal valid degree (scan)
      - Re-derives the exceptional prime set δ by resultant elimination (delta)
      - Exports the 3×90 generator matrix of the MDS code of an arc (export-mds)

Outputs:
    - stdout : text table, JSON RunReport or CSV (--format)
    - --bundle : report JSON + table CSV + HTML page in --out-dir

Exit policy:
    - 0 : computation completed (a "not an arc" verdict is a success)
    - 2 : invalid field parameters (q ≢ 1, 19 mod 30, p composite, r ∉ {1,2})
    - 3 : corrupted pair cache (line number reported)
    - 1 : anything else (including export-mds on a non-arc)
============================================================
"""

from __future__ import annotations

# ============================================================
# 📦 Imports
# ============================================================
import argparse
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

from sympy import primerange
from tqdm import tqdm

from a6_arc90 import __version__
from a6_arc90.config import Settings, load_settings
from a6_arc90.field import CompositeP, FieldError, InvalidQ, UnsupportedDegree, minimal_valid_degree
from a6_arc90.orbit import (
    OrbitError,
    brute_force_extensions,
    check_orbit,
    construct_orbit,
    export_mds,
    line_spectrum_full_scan,
)
from a6_arc90.plane import PlaneTooLarge, plane_size
from a6_arc90.report import RunReport, generate_report_bundle, render_csv, render_text, write_mds_csv
from a6_arc90.symcalc import CacheCorrupt, PairCache, compute_delta, reference_symbolic_orbit
from a6_arc90.validators import raise_if_invalid, validate_orbit_result

# ============================================================
# 🔎 Public exports
# ============================================================
__all__ = [
    "ModuleError",
    "ProcessResult",
    "process",
    "main",
]

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID_Q = 2
EXIT_CACHE = 3

# verify_extension point par point : réservé aux petits plans
ORACLE_BRUTE_FORCE_LIMIT = 20_000


# ============================================================
# 🧾 Logging (local, autonome)
# ============================================================
def get_logger(name: str) -> logging.Logger:
    """
    Crée un logger simple et stable (stderr), sans dépendance externe.
    """
    logger = logging.getLogger(name)
    if not logger.handlers:
        handler = logging.StreamHandler()
        fmt = logging.Formatter(
            fmt="%(asctime)s [%(levelname)s] [%(name)s] %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        )
        handler.setFormatter(fmt)
        logger.addHandler(handler)

    # N’impose pas INFO si l’app a déjà configuré logging
    if logger.level == logging.NOTSET:
        logger.setLevel(logging.INFO)

    return logger


log = get_logger(__name__)


def _set_package_level(level: int) -> None:
    for name, logger in list(logging.root.manager.loggerDict.items()):
        if name.startswith("a6_arc90") and isinstance(logger, logging.Logger):
            logger.setLevel(level)


# ============================================================
# ⚠️ Exceptions spécifiques au module
# ============================================================
class ModuleError(Exception):
    """Erreur spécifique au module (erreur métier ou technique encapsulée)."""


# ============================================================
# 🧩 Modèle de données
# ============================================================
@dataclass
class ProcessResult:
    """
    Structure de sortie standardisée pour le run CLI.
    """
    ok: bool
    payload: Dict[str, Any]
    message: Optional[str] = None

    @property
    def report(self) -> RunReport:
        return self.payload["report"]


def _exit_code(exc: BaseException) -> int:
    cause = exc.__cause__ or exc
    if isinstance(cause, (InvalidQ, CompositeP, UnsupportedDegree)):
        return EXIT_INVALID_Q
    if isinstance(cause, CacheCorrupt):
        return EXIT_CACHE
    return EXIT_FAILURE


# ============================================================
# 🔧 Commandes
# ============================================================
def _resolve_degree(p: int, r: Any) -> int:
    """'auto' → plus petit r valide ; sinon l'entier donné."""
    if r in (None, "auto"):
        return minimal_valid_degree(p) or 1
    return int(r)


def _finish(command: str, params: Dict[str, Any], results: Dict[str, Any], start: float) -> RunReport:
    return RunReport(
        command=command,
        params={"command": command, **params},
        results=results,
        timing={"total_s": round(time.perf_counter() - start, 3)},
        version=__version__,
    )


def cmd_orbit(p: int, r: int, settings: Settings) -> RunReport:
    start = time.perf_counter()
    orb = construct_orbit(p, r)
    return _finish("orbit", {"p": p, "r": r}, orb.to_dict(), start)


def cmd_check(p: int, r: int, settings: Settings) -> RunReport:
    """Verdict arc, spectre complet, complétude ; certification bloquante."""
    start = time.perf_counter()
    orb = construct_orbit(p, r)
    chk = check_orbit(orb, budget=settings.plane_budget)
    validation = validate_orbit_result(orb, chk)
    results = chk.to_dict()
    results["group"] = orb.group.to_dict()
    results["stabilizer"] = [g.format() for g in orb.stabilizer]
    results["validation"] = validation.to_dict()

    if settings.oracle:
        oracle: Dict[str, Any] = {}
        try:
            oracle["full_scan_match"] = line_spectrum_full_scan(orb, settings.plane_budget).counts == chk.spectrum.counts
        except PlaneTooLarge as e:
            oracle["full_scan_match"] = None
            oracle["full_scan_note"] = str(e)
        if chk.completeness is not None and plane_size(orb.plane_q) <= min(settings.plane_budget, ORACLE_BRUTE_FORCE_LIMIT):
            extensions = brute_force_extensions(orb, chk.spectrum.max_secancy, settings.plane_budget)
            oracle["brute_force_match"] = (not extensions) == chk.completeness.complete
        else:
            oracle["brute_force_match"] = None
        results["oracle"] = oracle
        log.info("Oracle cross-checks: %s", oracle)

    raise_if_invalid(validation)
    return _finish("check", {"p": p, "r": r, "oracle": settings.oracle}, results, start)


def _scan_one(p: int, budget: int) -> Dict[str, Any]:
    r = minimal_valid_degree(p)
    chk = check_orbit(construct_orbit(p, r), budget=budget)
    return chk.to_dict()


def cmd_scan(p_max: int, settings: Settings) -> RunReport:
    start = time.perf_counter()
    primes = [p for p in primerange(7, p_max + 1) if minimal_valid_degree(p) is not None]
    log.info("Scanning %d primes up to %d (jobs=%d)", len(primes), p_max, settings.jobs)
    if settings.jobs > 1 and len(primes) > 1:
        with ProcessPoolExecutor(max_workers=settings.jobs) as pool:
            rows = list(tqdm(pool.map(_scan_one, primes, [settings.plane_budget] * len(primes)),
                             total=len(primes), desc="scan", disable=not settings.progress))
    else:
        rows = [_scan_one(p, settings.plane_budget) for p in tqdm(primes, desc="scan", disable=not settings.progress)]
    rows.sort(key=lambda row: row["p"])
    results = {
        "p_max": p_max,
        "rows": rows,
        "non_arcs": [row["q_base"] for row in rows if not row["arc"]["is_arc"]],
        "non_arcs_r1": [row["p"] for row in rows if row["r"] == 1 and not row["arc"]["is_arc"]],
        "mismatches": [row["q_base"] for row in rows if row["catalogue_mismatch"]],
    }
    return _finish("scan", {"p_max": p_max}, results, start)


def cmd_delta(cache_path: Optional[Path], settings: Settings, confirm: bool = True) -> RunReport:
    start = time.perf_counter()
    cache = PairCache.load(cache_path) if cache_path is not None else None
    sympoints = None
    if cache is None or not cache.is_complete():
        sympoints = reference_symbolic_orbit(settings.reference_p)
    report = compute_delta(sympoints, cache=cache, jobs=settings.jobs, confirm=confirm, progress=settings.progress)
    results = report.to_dict()
    results["status"] = {str(p): st.value for p, st in sorted(report.status.items())}
    params = {"cache": None if cache_path is None else str(cache_path), "confirm": confirm}
    return _finish("delta", params, results, start)


def cmd_export_mds(p: int, r: int, path: Path, settings: Settings) -> RunReport:
    start = time.perf_counter()
    orb = construct_orbit(p, r)
    export = export_mds(orb)
    write_mds_csv(export, path)
    log.info("MDS generator matrix written: %s", path)
    results = {
        **export.to_dict(),
        "q_base": orb.q_base,
        "plane_q": orb.plane_q,
        "path": str(path),
    }
    return _finish("export-mds", {"p": p, "r": r}, results, start)


# ============================================================
# 🔧 Fonction principale
# ============================================================
def process(data: Dict[str, Any]) -> ProcessResult:
    """
    Orchestrates one CLI command and returns its RunReport in payload["report"].

    Domain errors (field parameters, cache, non-arc export) are wrapped in
    ModuleError with the original exception as __cause__ (exit-code mapping).
    """
    try:
        if not isinstance(data, dict):
            raise ModuleError("Invalid input: 'data' must be a dict.")

        command = str(data.get("command", ""))
        settings = load_settings(
            output_dir=data.get("out_dir"),
            jobs=data.get("jobs"),
            oracle=True if data.get("oracle") else None,
            progress=True if data.get("progress") else None,
        )
        if data.get("verbose"):
            _set_package_level(logging.DEBUG)

        log.info("Démarrage a6-arc90 — %s", command)

        if command in ("orbit", "check", "export-mds"):
            p = int(data["p"])
            r = _resolve_degree(p, data.get("r", 1))
            if command == "orbit":
                report = cmd_orbit(p, r, settings)
            elif command == "check":
                report = cmd_check(p, r, settings)
            else:
                path = Path(str(data.get("path") or settings.output_dir / f"mds_{p}_{r}.csv"))
                report = cmd_export_mds(p, r, path, settings)
        elif command == "scan":
            report = cmd_scan(int(data["p_max"]), settings)
        elif command == "delta":
            cache = data.get("cache")
            report = cmd_delta(Path(str(cache)) if cache else None, settings, confirm=bool(data.get("confirm", True)))
        else:
            raise ModuleError(f"Unknown command {command!r}")

        payload: Dict[str, Any] = {"report": report}
        if data.get("bundle"):
            bundle = generate_report_bundle(report, out_dir=settings.output_dir,
                                            templates_dir=data.get("templates_dir", "templates/a6arc"))
            payload["bundle"] = bundle
        return ProcessResult(ok=True, payload=payload, message="OK")

    except ModuleError:
        raise
    except (FieldError, OrbitError, CacheCorrupt) as e:
        log.error("%s: %s", type(e).__name__, e)
        raise ModuleError(str(e)) from e
    except Exception as e:
        log.exception("Erreur inattendue dans process()")
        raise ModuleError(str(e)) from e


# ============================================================
# ▶️ Main (CLI)
# ============================================================
def _add_common(sub: argparse.ArgumentParser, *, with_field: bool = True) -> None:
    if with_field:
        sub.add_argument("-p", type=int, required=True, help="Characteristic p (prime >= 7).")
        sub.add_argument(
            "-r",
            default="1",
            choices=["1", "2", "auto"],
            help="Extension degree, q = p^r (default: 1; 'auto' = minimal valid degree).",
        )
    sub.add_argument("--format", choices=["text", "json", "csv"], default="text", help="stdout format (default: text).")
    sub.add_argument("--out-dir", default=None, help="Bundle directory (default: A6ARC_OUTPUT_DIR or data/outputs).")
    sub.add_argument("--bundle", action="store_true", help="Also write report JSON + CSV + HTML in --out-dir.")
    sub.add_argument("--jobs", type=int, default=None, help="Worker processes (default: A6ARC_JOBS or 1).")
    sub.add_argument("--progress", action="store_true", help="Show progress bars.")
    sub.add_argument("--verbose", action="store_true", help="Enable DEBUG logs.")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="a6-arc90",
        description=(
            "a6-arc90 — exact computations on the A6-invariant 90-point orbit in PG(2,q).\n\n"
            "Valid q = p^r satisfy q ≡ 1 or 19 (mod 30), p >= 7 prime, r in {1, 2}."
        ),
        epilog=(
            "Notes:\n"
            "- Reports go to stdout, logs to stderr.\n"
            "- Exit codes: 0 ok, 2 invalid q, 3 corrupted pair cache, 1 other errors.\n"
            "- Environment: A6ARC_OUTPUT_DIR, A6ARC_JOBS, A6ARC_PLANE_BUDGET, A6ARC_ORACLE,\n"
            "  A6ARC_PROGRESS, A6ARC_REFERENCE_P."
        ),
        formatter_class=argparse.RawTextHelpFormatter,
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("orbit", help="Print the 90 orbit points.")
    _add_common(sub)

    sub = subs.add_parser("check", help="Arc verdict, line spectrum, completeness.")
    _add_common(sub)
    sub.add_argument("--oracle", action="store_true", help="Cross-check with brute-force scans (small planes).")

    sub = subs.add_parser("scan", help="Check every prime 7 <= p <= --p-max at its minimal valid degree.")
    _add_common(sub, with_field=False)
    sub.add_argument("--p-max", type=int, required=True, help="Largest prime to scan.")

    sub = subs.add_parser("delta", help="Exceptional prime set by resultant elimination.")
    _add_common(sub, with_field=False)
    sub.add_argument("--cache", default=None, help="Pair cache file (read, then appended).")
    sub.add_argument("--no-confirm", action="store_true", help="Skip numeric confirmation of the primes.")

    sub = subs.add_parser("export-mds", help="Write the 3x90 MDS generator matrix (CSV).")
    _add_common(sub)
    sub.add_argument("--out", default=None, help="CSV path (default: <out-dir>/mds_<p>_<r>.csv).")

    return parser


def _emit(report: RunReport, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(report.to_json() + "\n")
    elif fmt == "csv":
        render_csv(report, sys.stdout)
    else:
        sys.stdout.write(render_text(report))


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    data: Dict[str, Any] = {
        "command": args.command,
        "out_dir": args.out_dir,
        "bundle": args.bundle,
        "jobs": args.jobs,
        "progress": args.progress,
        "verbose": args.verbose,
    }
    if args.command in ("orbit", "check", "export-mds"):
        data.update({"p": args.p, "r": args.r})
    if args.command == "check":
        data["oracle"] = args.oracle
    if args.command == "scan":
        data["p_max"] = args.p_max
    if args.command == "delta":
        data.update({"cache": args.cache, "confirm": not args.no_confirm})
    if args.command == "export-mds":
        data["path"] = args.out

    try:
        out = process(data)
    except ModuleError as e:
        code = _exit_code(e)
        sys.stderr.write(f"error: {e}\n")
        return code

    _emit(out.report, args.format)
    log.info("Résultat : ok=%s, message=%s", out.ok, out.message)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
