#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
============================================================
test_main.py — a6-arc90
------------------------------------------------------------
Description :
    Tests d'intégration légers pour a6_arc90.main :
      - process() renvoie un RunReport par commande
      - main(argv) : formats de sortie et codes de retour
      - exécution module -m (CLI-like) dans tmp_path

Objectifs :
    - Codes de sortie : 0 ok, 2 q invalide, 3 cache corrompu, 1 autres
    - Sorties déterministes (results identiques d'un run à l'autre)

Usage :
    pytest -q tests/test_main.py
============================================================
"""

from __future__ import annotations

# ============================================================
# 📦 Imports
# ============================================================
import csv
import json
import subprocess
import sys
from pathlib import Path
from typing import List

import pytest

from a6_arc90.main import ModuleError, main, process


# ============================================================
# 🔧 Fixtures
# ============================================================
@pytest.fixture
def repo_root() -> Path:
    return Path(__file__).resolve().parents[1]


def _run_cli(args: List[str], cwd: Path) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "a6_arc90.main", *args],
        cwd=str(cwd),
        capture_output=True,
        text=True,
    )


# ============================================================
# 🧪 Tests — process()
# ============================================================
def test_process_orbit_returns_run_report() -> None:
    out = process({"command": "orbit", "p": 61, "r": 1})
    assert out.ok is True
    assert out.message == "OK"
    report = out.report
    assert report.command == "orbit"
    assert report.params == {"command": "orbit", "p": 61, "r": 1}
    assert len(report.results["points"]) == 90
    assert report.results["basepoint"] == ["1", "34", "34"]
    assert "total_s" in report.timing
    assert report.version


def test_process_check_is_deterministic() -> None:
    first = process({"command": "check", "p": 7, "r": 2}).report
    second = process({"command": "check", "p": 7, "r": 2}).report
    assert first.results_json() == second.results_json()
    assert first.results["verdict"] == "set of type (0,1,2,4), complete"
    assert first.results["validation"]["ok"] is True
    assert first.results["group"]["order"] == 360


def test_process_check_with_oracle() -> None:
    res = process({"command": "check", "p": 7, "r": 2, "oracle": True}).report.results
    assert res["oracle"]["full_scan_match"] is True
    assert res["oracle"]["brute_force_match"] is True


def test_process_bundle(tmp_path: Path, repo_root: Path) -> None:
    out = process({
        "command": "check",
        "p": 61,
        "r": 1,
        "bundle": True,
        "out_dir": str(tmp_path),
        "templates_dir": str(repo_root / "templates" / "a6arc"),
    })
    bundle = out.payload["bundle"]
    assert bundle.report_html.exists()
    assert bundle.table_csv.exists()
    assert "(0,1,2,4,6)" in bundle.report_html.read_text(encoding="utf-8")


def test_process_wraps_domain_errors() -> None:
    with pytest.raises(ModuleError):
        process({"command": "orbit", "p": 7, "r": 1})
    with pytest.raises(ModuleError):
        process({"command": "frobnicate"})
    with pytest.raises(ModuleError):
        process("not a dict")  # type: ignore[arg-type]


# ============================================================
# 🧪 Tests — main(argv)
# ============================================================
def test_main_json_output(capsys: pytest.CaptureFixture) -> None:
    assert main(["check", "-p", "7", "-r", "auto", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["params"]["r"] == 2
    assert data["results"]["spectrum"]["counts"]["4"] == 540


def test_main_csv_output(capsys: pytest.CaptureFixture) -> None:
    assert main(["orbit", "-p", "61", "--format", "csv"]) == 0
    rows = list(csv.reader(capsys.readouterr().out.splitlines()))
    assert rows[0] == ["orbit_index", "x", "y", "z"]
    assert len(rows) == 91


@pytest.mark.parametrize("argv", [["orbit", "-p", "7"], ["check", "-p", "91"], ["orbit", "-p", "5"]])
def test_main_invalid_q_exit_code(argv: List[str], capsys: pytest.CaptureFixture) -> None:
    assert main(argv) == 2
    assert "error:" in capsys.readouterr().err


def test_main_export_mds(tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
    target = tmp_path / "mds.csv"
    assert main(["export-mds", "-p", "349", "--out", str(target)]) == 0
    assert target.exists()
    assert "[90,3,88]" in capsys.readouterr().out


def test_main_export_mds_on_non_arc_fails(tmp_path: Path) -> None:
    assert main(["export-mds", "-p", "61", "--out", str(tmp_path / "x.csv")]) == 1
    assert not (tmp_path / "x.csv").exists()


def test_main_corrupt_cache_exit_code(tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
    cache = tmp_path / "pairs.txt"
    cache.write_text("1 2 9 3 -\ngarbage\n", encoding="utf-8")
    assert main(["delta", "--cache", str(cache)]) == 3
    assert "line 2" in capsys.readouterr().err


# ============================================================
# 🧪 Tests — CLI-like (-m)
# ============================================================
def test_cli_module_execution(tmp_path: Path, repo_root: Path) -> None:
    proc = _run_cli(["check", "-p", "61", "--bundle", "--out-dir", str(tmp_path)], repo_root)
    assert proc.returncode == 0, proc.stderr
    assert "verdict: set of type (0,1,2,4,6)" in proc.stdout
    assert (tmp_path / "check_report.json").exists()
    assert (tmp_path / "check_report.html").exists()


def test_cli_module_invalid_q(repo_root: Path) -> None:
    proc = _run_cli(["orbit", "-p", "7"], repo_root)
    assert proc.returncode == 2
    assert "mod 30" in proc.stderr


def test_cli_unsupported_degree(repo_root: Path) -> None:
    proc = _run_cli(["orbit", "-p", "31", "-r", "3"], repo_root)
    assert proc.returncode == 2


def test_scan_below_seven_is_empty(capsys: pytest.CaptureFixture) -> None:
    report = process({"command": "scan", "p_max": 6}).report
    assert report.results["rows"] == []
    assert report.results["non_arcs"] == []
    assert main(["scan", "--p-max", "6", "--format", "csv"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 1
