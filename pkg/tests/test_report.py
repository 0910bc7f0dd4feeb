#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
============================================================
test_report.py — a6-arc90
------------------------------------------------------------
Description :
    Tests unitaires pour a6_arc90.report :
      - RunReport (JSON canonique, relecture)
      - tables CSV et rendu texte par commande
      - bundle JSON + CSV + HTML (template Jinja2 ou fallback)
      - export CSV de la matrice MDS

Usage :
    pytest -q tests/test_report.py
============================================================
"""

from __future__ import annotations

# ============================================================
# 📦 Imports
# ============================================================
import csv
import json
from pathlib import Path
from typing import List

import pytest

from a6_arc90.orbit import check_orbit, construct_orbit, export_mds
from a6_arc90.report import (
    ReportError,
    RunReport,
    generate_report_bundle,
    render_csv,
    render_text,
    table_rows,
    write_mds_csv,
)


# ============================================================
# 🔧 Fixtures / helpers
# ============================================================
@pytest.fixture
def repo_root() -> Path:
    return Path(__file__).resolve().parents[1]


@pytest.fixture(scope="module")
def check_report() -> RunReport:
    orb = construct_orbit(7, 2)
    return RunReport(
        command="check",
        params={"command": "check", "p": 7, "r": 2},
        results=check_orbit(orb).to_dict(),
        timing={"total_s": 0.5},
        version="0.1.0",
    )


@pytest.fixture
def delta_report() -> RunReport:
    return RunReport(
        command="delta",
        params={"command": "delta"},
        results={
            "pairs": 3916,
            "delta": [2, 3, 7],
            "confirmed": [7],
            "spurious": [],
            "out_of_hypothesis": [2, 3],
            "content_primes": [2],
            "status": {"2": "out-of-hypothesis", "3": "out-of-hypothesis", "7": "confirmed"},
        },
    )


def _read_csv(path: Path) -> List[List[str]]:
    with path.open("r", encoding="utf-8", newline="") as f:
        return list(csv.reader(f))


# ============================================================
# 🧪 Tests — RunReport
# ============================================================
def test_run_report_json_round_trip(check_report: RunReport) -> None:
    text = check_report.to_json()
    assert json.loads(text)["command"] == "check"
    assert RunReport.from_json(text) == check_report
    assert check_report.results_json() == json.dumps(check_report.results, indent=2, sort_keys=True, ensure_ascii=False)


def test_run_report_from_dict_requires_keys() -> None:
    with pytest.raises(ReportError):
        RunReport.from_dict({"command": "check"})


# ============================================================
# 🧪 Tests — tables / texte
# ============================================================
def test_check_table_and_text(check_report: RunReport) -> None:
    rows = table_rows(check_report)
    assert rows[0] == ["m", "lines"]
    assert ["4", "540"] in rows
    text = render_text(check_report)
    assert "verdict: set of type (0,1,2,4), complete" in text
    assert "PG(2,49)" in text


def test_delta_csv(delta_report: RunReport) -> None:
    out = render_csv(delta_report)
    assert out.splitlines()[0] == "prime,status"
    assert "7,confirmed" in out
    assert "confirmed: [7]" in render_text(delta_report)


def test_unknown_command_is_rejected() -> None:
    report = RunReport(command="nope", params={}, results={})
    with pytest.raises(ReportError):
        table_rows(report)
    with pytest.raises(ReportError):
        render_text(report)


# ============================================================
# 🧪 Tests — bundle
# ============================================================
def test_bundle_with_template(tmp_path: Path, repo_root: Path, check_report: RunReport) -> None:
    paths = generate_report_bundle(
        check_report,
        out_dir=tmp_path,
        templates_dir=repo_root / "templates" / "a6arc",
    )
    assert paths.report_json.name == "check_report.json"
    assert RunReport.from_json(paths.report_json.read_text(encoding="utf-8")) == check_report
    assert _read_csv(paths.table_csv)[0] == ["m", "lines"]

    html = paths.report_html.read_text(encoding="utf-8", errors="replace")
    assert "a6-arc90" in html
    assert "v0.1.0" in html
    assert "fallback" not in html
    assert "540" in html


def test_bundle_falls_back_without_template(tmp_path: Path, delta_report: RunReport) -> None:
    paths = generate_report_bundle(delta_report, out_dir=tmp_path, templates_dir=tmp_path / "missing")
    html = paths.report_html.read_text(encoding="utf-8")
    assert "fallback" in html
    assert "template not found" in html
    assert paths.table_csv.name == "delta_table.csv"


# ============================================================
# 🧪 Tests — export MDS
# ============================================================
def test_write_mds_csv(tmp_path: Path) -> None:
    export = export_mds(construct_orbit(349))
    path = write_mds_csv(export, tmp_path / "mds.csv")
    rows = _read_csv(path)
    assert len(rows) == 4
    assert rows[0][:2] == ["c0", "c1"]
    assert all(len(r) == 90 for r in rows)
    assert rows[1][0] == "1"
