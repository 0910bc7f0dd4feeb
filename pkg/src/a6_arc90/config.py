#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
============================================================
a6_arc90.config
------------------------------------------------------------
Description :
    Réglages d'exécution lus depuis l'environnement.

Variables :
    - A6ARC_OUTPUT_DIR   : dossier du bundle de rapport (défaut data/outputs)
    - A6ARC_JOBS         : nombre de workers pour les paires δ (défaut 1)
    - A6ARC_PLANE_BUDGET : q²+q+1 maximal pour les balayages exhaustifs
    - A6ARC_ORACLE       : active les contrôles par force brute
    - A6ARC_PROGRESS     : barres de progression tqdm
    - A6ARC_REFERENCE_P  : premier du corps de référence des mots (défaut 61)

Notes :
    - Les flags CLI priment sur l'environnement (voir main.py).
============================================================
"""

from __future__ import annotations

# ============================================================
# 📦 Imports
# ============================================================
import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Dict, Optional

# ============================================================
# 🔎 Public exports
# ============================================================
__all__ = [
    "ConfigError",
    "DEFAULT_PLANE_BUDGET",
    "DEFAULT_REFERENCE_P",
    "Settings",
    "load_settings",
]

DEFAULT_PLANE_BUDGET = 2_000_000
DEFAULT_REFERENCE_P = 61


# ============================================================
# ⚠️ Exceptions
# ============================================================
class ConfigError(Exception):
    """Valeur d'environnement invalide."""


# ============================================================
# 🔧 Helpers
# ============================================================
def _truthy(value: str | None) -> bool:
    v = (value or "").strip().lower()
    return v in {"1", "true", "yes", "y", "on"}


def _int_env(name: str, default: int, minimum: int = 1) -> int:
    raw = (os.getenv(name) or "").strip()
    if not raw:
        return default
    try:
        value = int(raw.replace("_", ""))
    except ValueError:
        raise ConfigError(f"{name}={raw!r} is not an integer") from None
    if value < minimum:
        raise ConfigError(f"{name}={value} must be >= {minimum}")
    return value


# ============================================================
# 🧩 Settings
# ============================================================
@dataclass(frozen=True)
class Settings:
    output_dir: Path = Path("data/outputs")
    jobs: int = 1
    plane_budget: int = DEFAULT_PLANE_BUDGET
    oracle: bool = False
    progress: bool = False
    reference_p: int = DEFAULT_REFERENCE_P

    @classmethod
    def from_env(cls) -> "Settings":
        return cls(
            output_dir=Path(os.getenv("A6ARC_OUTPUT_DIR") or "data/outputs"),
            jobs=_int_env("A6ARC_JOBS", 1),
            plane_budget=_int_env("A6ARC_PLANE_BUDGET", DEFAULT_PLANE_BUDGET),
            oracle=_truthy(os.getenv("A6ARC_ORACLE", "0")),
            progress=_truthy(os.getenv("A6ARC_PROGRESS", "0")),
            reference_p=_int_env("A6ARC_REFERENCE_P", DEFAULT_REFERENCE_P, minimum=7),
        )

    def override(self, **values: Optional[Any]) -> "Settings":
        """Copie avec les valeurs non nulles (flags CLI) appliquées."""
        changes = {k: v for k, v in values.items() if v is not None}
        if "output_dir" in changes:
            changes["output_dir"] = Path(changes["output_dir"])
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "output_dir": str(self.output_dir),
            "jobs": self.jobs,
            "plane_budget": self.plane_budget,
            "oracle": self.oracle,
            "progress": self.progress,
            "reference_p": self.reference_p,
        }


def load_settings(**overrides: Optional[Any]) -> Settings:
    return Settings.from_env().override(**overrides)
