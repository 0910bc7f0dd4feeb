#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
============================================================
test_validators.py — a6-arc90
------------------------------------------------------------
Description :
    Tests unitaires pour a6_arc90.validators :
      - validate_orbit_result() : erreurs bloquantes + warnings
      - raise_if_invalid()      : exception CertificationError

Objectifs :
    - Orbites correctes certifiées (arc et non-arc)
    - Orbites altérées rejetées avec des codes d'erreur lisibles

Usage :
    pytest -q tests/test_validators.py
============================================================
"""

from __future__ import annotations

# ============================================================
# 📦 Imports
# ============================================================
from dataclasses import replace

import pytest

from a6_arc90.orbit import check_orbit, construct_orbit
from a6_arc90.validators import CertificationError, raise_if_invalid, validate_orbit_result


# ============================================================
# 🔧 Fixtures
# ============================================================
@pytest.fixture(scope="module")
def orb61():
    return construct_orbit(61)


# ============================================================
# 🧪 Tests
# ============================================================
def test_reference_orbit_is_certified(orb61) -> None:
    report = validate_orbit_result(orb61, check_orbit(orb61))
    assert report.ok is True
    assert report.errors == []
    assert report.orbit_size == 90
    assert report.stabilizer_order == 4
    assert report.group_order == 360
    assert report.to_dict()["order_histogram"] == {"1": 1, "2": 45, "3": 80, "4": 90, "5": 144}
    raise_if_invalid(report)


def test_undecided_completeness_is_a_warning() -> None:
    orb = construct_orbit(349)
    report = validate_orbit_result(orb, check_orbit(orb, budget=1000))
    assert report.ok is True
    assert {w.code for w in report.warnings} == {"COMPLETENESS_UNDECIDED"}


def test_truncated_orbit_is_rejected(orb61) -> None:
    broken = replace(orb61, points=orb61.points[:89], _cache={})
    report = validate_orbit_result(broken)
    assert report.ok is False
    codes = {e.code for e in report.errors}
    assert "ORBIT_SIZE" in codes
    assert "GAMMA_INVARIANCE" in codes


def test_wrong_basepoint_is_rejected(orb61) -> None:
    rotated = orb61.points[1:] + orb61.points[:1]
    broken = replace(orb61, points=rotated, _cache={})
    report = validate_orbit_result(broken)
    assert "BASEPOINT" in {e.code for e in report.errors}

    with pytest.raises(CertificationError) as exc:
        raise_if_invalid(report)
    assert "BASEPOINT" in str(exc.value)


def test_wrong_stabilizer_is_rejected(orb61) -> None:
    broken = replace(orb61, stabilizer=orb61.stabilizer[:2], _cache={})
    report = validate_orbit_result(broken)
    assert {e.code for e in report.errors} == {"STABILIZER"}
