#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
============================================================
test_acceptance.py — a6-arc90
------------------------------------------------------------
Description :
    Recette complète (marqueur slow, exclue par défaut) :
      - scan de tous les premiers 7 ≤ p ≤ 450 au degré minimal
      - non-arcs exactement aux cas catalogués
      - arcs complets pour q ∈ {349, 409, 529, 601, 661}
      - δ par élimination sur les 3916 paires, avec cache
      - cohérence δ / scan numérique sur un échantillon de premiers

Usage :
    pytest -q -m slow tests/test_acceptance.py
============================================================
"""

from __future__ import annotations

# ============================================================
# 📦 Imports
# ============================================================
import random

import pytest
from sympy import primerange

from a6_arc90.field import minimal_valid_degree, validate_q
from a6_arc90.main import process
from a6_arc90.orbit import (
    COMPLETE_ARC_Q,
    EXCEPTIONAL_SPECTRA,
    arc_check,
    completeness_check,
    construct_orbit,
    line_spectrum,
)
from a6_arc90.plane import collinear
from a6_arc90.symcalc import (
    EXPECTED_CONFIRMED,
    PAIR_TOTAL,
    PairCache,
    SymElem,
    compute_delta,
    eliminate,
    reference_symbolic_orbit,
)

pytestmark = pytest.mark.slow

NON_ARC_Q = {49, 121, 169, 289, 19, 61, 109, 181, 229, 241, 421}


# ============================================================
# 🔧 Fixtures
# ============================================================
@pytest.fixture(scope="module")
def scan_rows():
    return process({"command": "scan", "p_max": 450}).report.results


@pytest.fixture(scope="module")
def delta_report(tmp_path_factory):
    cache = PairCache.load(tmp_path_factory.mktemp("delta") / "pairs.txt")
    return compute_delta(reference_symbolic_orbit(61), cache=cache, jobs=2), cache


# ============================================================
# 🧪 Tests — scan numérique
# ============================================================
def test_scan_non_arcs_are_the_catalogued_cases(scan_rows) -> None:
    assert set(scan_rows["non_arcs"]) == NON_ARC_Q
    assert scan_rows["mismatches"] == []
    assert sorted(scan_rows["non_arcs_r1"]) == [19, 61, 109, 181, 229, 241, 421]


def test_scan_covers_every_prime(scan_rows) -> None:
    expected = [p for p in primerange(7, 451)]
    assert [row["p"] for row in scan_rows["rows"]] == expected
    for row in scan_rows["rows"]:
        assert row["r"] == minimal_valid_degree(row["p"])
        assert validate_q(row["p"], row["r"])


def test_scan_spectra_match_the_catalogue(scan_rows) -> None:
    for row in scan_rows["rows"]:
        case = EXCEPTIONAL_SPECTRA.get((row["p"], row["r"]))
        if case is None:
            assert row["spectrum"]["type"] == "(0,1,2)"
        else:
            assert {int(m): c for m, c in row["spectrum"]["counts"].items()} == case.counts


@pytest.mark.parametrize("p, r", [(349, 1), (409, 1), (23, 2), (601, 1), (661, 1)])
def test_complete_arcs(p: int, r: int) -> None:
    orb = construct_orbit(p, r)
    assert orb.q_base in COMPLETE_ARC_Q
    assert arc_check(orb).is_arc
    assert completeness_check(orb).complete is True


@pytest.mark.parametrize("p", [379, 691])
def test_incomplete_arcs_have_a_verified_witness(p: int) -> None:
    orb = construct_orbit(p)
    assert arc_check(orb).is_arc
    verdict = completeness_check(orb)
    assert verdict.complete is False
    assert verdict.witness is not None
    assert verdict.witness not in set(orb.points)


# ============================================================
# 🧪 Tests — élimination δ
# ============================================================
def test_delta_confirmed_set(delta_report) -> None:
    report, _ = delta_report
    assert len(report.pairs) == PAIR_TOTAL
    assert set(report.confirmed) == EXPECTED_CONFIRMED
    assert report.spurious == ()
    assert set(report.out_of_hypothesis) <= {2, 3, 5}


def test_delta_from_cache_is_identical(delta_report) -> None:
    report, cache = delta_report
    reloaded = PairCache.load(cache.path)
    assert reloaded.is_complete()
    again = compute_delta(None, cache=reloaded)
    assert again.pairs == report.pairs
    assert again.confirmed == report.confirmed


def test_delta_agrees_with_numeric_arc_checks(delta_report) -> None:
    report, _ = delta_report
    sample = [p for p in primerange(7, 450) if p not in report.delta][:40]
    for p in sample:
        orb = construct_orbit(p, minimal_valid_degree(p))
        assert arc_check(orb).is_arc, f"p={p} is outside δ but the orbit is not an arc"
        assert line_spectrum(orb).max_secancy == 2


def test_every_confirmed_prime_divides_some_pair(delta_report) -> None:
    report, _ = delta_report
    for p in EXPECTED_CONFIRMED:
        assert any(p in rec.primes for rec in report.pairs), p


def test_pairs_outside_their_primes_are_never_collinear(delta_report) -> None:
    report, _ = delta_report
    rng = random.Random(90)
    primes = [p for p in primerange(7, 700) if minimal_valid_degree(p) is not None]
    orbits = {}
    checked = 0
    while checked < 200:
        rec = rng.choice(report.pairs)
        p = rng.choice(primes)
        if p in rec.primes:
            continue
        if p not in orbits:
            orbits[p] = construct_orbit(p, minimal_valid_degree(p))
        pts = orbits[p].points
        assert not collinear(pts[0], pts[rec.i], pts[rec.j]), (p, rec.i, rec.j)
        checked += 1


# ============================================================
# 🧪 Tests — formes closes / Sylvester
# ============================================================
def test_closed_forms_agree_with_sylvester_on_random_elements() -> None:
    rng = random.Random(2024)
    for _ in range(1000):
        x = SymElem(tuple(rng.randint(-50, 50) for _ in range(8)))
        if x.is_zero():
            continue
        assert eliminate(x) == eliminate(x, method="sylvester")
