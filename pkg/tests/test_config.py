#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
============================================================
test_config.py — a6-arc90
------------------------------------------------------------
Description :
    Tests unitaires pour a6_arc90.config :
      - valeurs par défaut
      - lecture des variables A6ARC_*
      - priorité des flags CLI (override)

Usage :
    pytest -q tests/test_config.py
============================================================
"""

from __future__ import annotations

# ============================================================
# 📦 Imports
# ============================================================
from pathlib import Path

import pytest

from a6_arc90.config import DEFAULT_PLANE_BUDGET, ConfigError, Settings, load_settings

ENV_VARS = (
    "A6ARC_OUTPUT_DIR",
    "A6ARC_JOBS",
    "A6ARC_PLANE_BUDGET",
    "A6ARC_ORACLE",
    "A6ARC_PROGRESS",
    "A6ARC_REFERENCE_P",
)


# ============================================================
# 🔧 Fixtures
# ============================================================
@pytest.fixture(autouse=True)
def clean_env(monkeypatch: pytest.MonkeyPatch) -> None:
    for name in ENV_VARS:
        monkeypatch.delenv(name, raising=False)


# ============================================================
# 🧪 Tests
# ============================================================
def test_defaults() -> None:
    s = Settings.from_env()
    assert s.output_dir == Path("data/outputs")
    assert s.jobs == 1
    assert s.plane_budget == DEFAULT_PLANE_BUDGET
    assert s.oracle is False
    assert s.reference_p == 61


def test_environment_is_read(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
    monkeypatch.setenv("A6ARC_OUTPUT_DIR", str(tmp_path))
    monkeypatch.setenv("A6ARC_JOBS", "4")
    monkeypatch.setenv("A6ARC_PLANE_BUDGET", "1_000")
    monkeypatch.setenv("A6ARC_ORACLE", "yes")
    s = Settings.from_env()
    assert s.output_dir == tmp_path
    assert s.jobs == 4
    assert s.plane_budget == 1000
    assert s.oracle is True
    assert s.progress is False


@pytest.mark.parametrize("name, value", [("A6ARC_JOBS", "many"), ("A6ARC_JOBS", "0"), ("A6ARC_REFERENCE_P", "5")])
def test_invalid_environment_values(monkeypatch: pytest.MonkeyPatch, name: str, value: str) -> None:
    monkeypatch.setenv(name, value)
    with pytest.raises(ConfigError):
        Settings.from_env()


def test_cli_overrides_win(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("A6ARC_JOBS", "4")
    s = load_settings(jobs=2, output_dir="out", oracle=None)
    assert s.jobs == 2
    assert s.output_dir == Path("out")
    assert s.oracle is False
    assert s.to_dict()["output_dir"] == "out"
