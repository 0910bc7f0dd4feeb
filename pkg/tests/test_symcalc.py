#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
============================================================
test_symcalc.py — a6-arc90
------------------------------------------------------------
Description :
    Tests unitaires pour a6_arc90.symcalc :
      - anneau R = ℤ[t,s,z]/(t²+t+1, s²−3, z²−5) et norme
      - résultants : formes closes vs Sylvester vs sympy
      - élimination indépendante de l'ordre des variables
      - orbite symbolique rejouée sur plusieurs corps
      - paires δ_{i,j}, cache append-only, confirmation numérique

Objectifs :
    - sympy comme oracle des résultants
    - Cache robuste (CacheCorrupt avec numéro de ligne)

Usage :
    pytest -q tests/test_symcalc.py
============================================================
"""

from __future__ import annotations

# ============================================================
# 📦 Imports
# ============================================================
import random
from itertools import permutations
from pathlib import Path

import pytest
import sympy

from a6_arc90.orbit import arc_check, construct_orbit
from a6_arc90.symcalc import (
    PAIR_TOTAL,
    BadIndex,
    CacheCorrupt,
    IntPoly,
    PairCache,
    PairRecord,
    PrimeStatus,
    S,
    SymcalcError,
    SymElem,
    T,
    WordReplayMismatch,
    Z,
    ZeroResultant,
    collinearity_det,
    compute_delta,
    compute_pair,
    confirm_prime,
    eliminate,
    factor_primes,
    reference_symbolic_orbit,
    res_s_closed,
    res_t_closed,
    res_z_closed,
    resultant,
    symbolic_orbit,
)


# ============================================================
# 🔧 Fixtures
# ============================================================
@pytest.fixture(scope="module")
def sympoints():
    return reference_symbolic_orbit(61)


@pytest.fixture
def sample() -> SymElem:
    return 1 + 2 * T - S + 3 * Z + T * S * Z


def _complete_cache(path: Path, marked: dict) -> PairCache:
    cache = PairCache(path)
    records = []
    for i in range(1, 90):
        for j in range(i + 1, 90):
            primes = marked.get((i, j), ())
            records.append(PairRecord(i, j, 1 if not primes else primes[0], primes))
    cache.add(records)
    return cache


# ============================================================
# 🧪 Tests — anneau R
# ============================================================
def test_ring_relations() -> None:
    assert T * T * T == SymElem.const(1)
    assert T * T + T + 1 == SymElem.const(0)
    assert S * S == SymElem.const(3)
    assert Z * Z == SymElem.const(5)


def test_ring_is_commutative_and_associative(sample) -> None:
    other = 2 - T * Z + 5 * S
    assert sample * other == other * sample
    assert (sample * other) * T == sample * (other * T)


def test_norms_of_generators() -> None:
    assert SymElem.const(2).norm() == 2 ** 8
    assert S.norm() == 81
    assert T.norm() == 1
    assert Z.norm() == 625


def test_specialize_is_a_ring_homomorphism(sample) -> None:
    from a6_arc90.field import make_field, special_elems

    sp = special_elems(make_field(61))
    ctx, t, s, z = sp.ctx, sp.t.value, sp.s.value, sp.z.value
    other = 2 - T * Z + 5 * S
    lhs = (sample * other).specialize(ctx, t, s, z)
    rhs = ctx.mul(sample.specialize(ctx, t, s, z), other.specialize(ctx, t, s, z))
    assert lhs == rhs


# ============================================================
# 🧪 Tests — résultants / élimination
# ============================================================
def test_closed_forms_match_sylvester() -> None:
    A = IntPoly.from_sym(1 + 2 * S - Z)
    B = IntPoly.from_sym(3 - S * Z)
    t, s, z = IntPoly.var("t"), IntPoly.var("s"), IntPoly.var("z")
    assert res_t_closed(A, B) == resultant(IntPoly.relation("t"), A + B * t, "t")

    C = IntPoly.from_sym(2 + T - Z)
    D = IntPoly.from_sym(1 + T * Z)
    assert res_s_closed(C, D) == resultant(IntPoly.relation("s"), C + D * s, "s")

    E = IntPoly.from_sym(4 - T + S)
    F = IntPoly.from_sym(T * S - 1)
    assert res_z_closed(E, F) == resultant(IntPoly.relation("z"), E + F * z, "z")


def test_resultant_matches_sympy() -> None:
    t = sympy.Symbol("t")
    f = IntPoly.relation("t")
    g = IntPoly.from_sym(1 + 2 * T + S) * IntPoly.var("t") + IntPoly.from_sym(Z - 3)
    ours = resultant(f, g, "t").to_sympy()
    theirs = sympy.resultant(f.to_sympy(), g.to_sympy(), t)
    assert sympy.expand(ours - theirs) == 0


def test_eliminate_s_is_81() -> None:
    assert eliminate(S) == 81


def test_eliminate_equals_norm(sample) -> None:
    assert eliminate(sample) == sample.norm()
    assert eliminate(sample, method="sylvester") == sample.norm()


def test_closed_forms_agree_with_sylvester_on_random_elements() -> None:
    rng = random.Random(7)
    for _ in range(50):
        x = SymElem(tuple(rng.randint(-9, 9) for _ in range(8)))
        assert eliminate(x) == eliminate(x, method="sylvester") == x.norm()


def test_eliminate_does_not_depend_on_the_order(sample) -> None:
    values = {eliminate(sample, order=order) for order in permutations(("t", "s", "z"))}
    assert len(values) == 1


def test_eliminate_rejects_bad_arguments(sample) -> None:
    with pytest.raises(SymcalcError):
        eliminate(sample, order=("t", "s"))
    with pytest.raises(SymcalcError):
        eliminate(sample, method="groebner")


def test_factor_primes() -> None:
    assert factor_primes(4005) == frozenset({3, 5, 89})
    assert factor_primes(-12) == frozenset({2, 3})
    assert factor_primes(1) == frozenset()
    assert factor_primes(1000003 * 1000033) == frozenset({1000003, 1000033})
    with pytest.raises(ZeroResultant):
        factor_primes(0)


# ============================================================
# 🧪 Tests — orbite symbolique
# ============================================================
def test_reference_orbit_is_exported() -> None:
    import a6_arc90.symcalc as symcalc

    assert "reference_symbolic_orbit" in symcalc.__all__
    assert all(hasattr(symcalc, name) for name in symcalc.__all__)


def test_symbolic_orbit_replays_on_other_fields(sympoints) -> None:
    assert len(sympoints) == 90
    words = [pt.word for pt in sympoints]
    for p, r in ((349, 1), (7, 2), (31, 1)):
        ref = construct_orbit(p, r)
        assert len(symbolic_orbit(words, reference=ref)) == 90


def test_word_replay_mismatch_is_detected(sympoints) -> None:
    ref = construct_orbit(61)
    words = [pt.word for pt in sympoints]
    words[1], words[2] = words[2], words[1]
    with pytest.raises(WordReplayMismatch):
        symbolic_orbit(words, reference=ref)


def test_collinearity_det_indices(sympoints) -> None:
    assert collinearity_det(5, 5, sympoints).is_zero()
    with pytest.raises(BadIndex):
        collinearity_det(0, 3, sympoints)
    with pytest.raises(BadIndex):
        collinearity_det(3, 90, sympoints)
    with pytest.raises(BadIndex):
        compute_pair(4, 4, sympoints)


def test_collinear_triples_mod_61_show_up_in_pair_primes(sympoints) -> None:
    triples = [tr for tr in arc_check(construct_orbit(61)).collinear_triples if tr[0] == 0]
    assert triples
    for _, i, j in triples[:5]:
        rec = compute_pair(i, j, sympoints)
        assert 61 in rec.primes
        assert rec.resultant != 0
        assert set(rec.content_primes) <= set(rec.primes)


# ============================================================
# 🧪 Tests — cache / δ
# ============================================================
def test_pair_record_line_round_trip() -> None:
    rec = PairRecord(3, 17, -123456, (2, 3, 61), (2,))
    assert PairRecord.from_line(rec.to_line(), 1) == rec
    bare = PairRecord(1, 2, 7, (7,))
    assert bare.to_line().endswith(" 7 -")


@pytest.mark.parametrize(
    "line",
    [
        "3 17 12",
        "0 17 12 2,3 -",
        "3 17 0 - -",
        "3 17 12 3,2 -",
        "3 17 12 2 5",
        "a 17 12 - -",
    ],
)
def test_pair_record_rejects_corrupt_lines(line: str) -> None:
    with pytest.raises(CacheCorrupt) as exc:
        PairRecord.from_line(line, 7)
    assert exc.value.line_no == 7


def test_pair_cache_append_and_reload(tmp_path: Path) -> None:
    path = tmp_path / "pairs.txt"
    cache = PairCache.load(path)
    assert len(cache) == 0
    cache.add([PairRecord(1, 2, 9, (3,)), PairRecord(1, 3, 10, (2, 5), (2,))])
    cache.add([PairRecord(1, 2, 9, (3,))])  # déjà présent : ignoré

    reloaded = PairCache.load(path)
    assert len(reloaded) == 2
    assert (1, 3) in reloaded
    assert reloaded.get(1, 3).content_primes == (2,)
    assert path.read_text(encoding="utf-8").startswith(PairCache.HEADER)


def test_pair_cache_reports_the_corrupt_line(tmp_path: Path) -> None:
    path = tmp_path / "pairs.txt"
    path.write_text(PairCache.HEADER + "\n1 2 9 3 -\nnot a record\n", encoding="utf-8")
    with pytest.raises(CacheCorrupt) as exc:
        PairCache.load(path)
    assert exc.value.line_no == 3


def test_compute_delta_from_complete_cache(tmp_path: Path) -> None:
    cache = _complete_cache(tmp_path / "pairs.txt", {(1, 2): (2,), (4, 9): (7,), (5, 6): (31,)})
    assert cache.is_complete()
    report = compute_delta(None, cache=cache, confirm=True)
    assert len(report.pairs) == PAIR_TOTAL
    assert report.delta == (2, 7, 31)
    assert report.confirmed == (7,)
    assert report.spurious == (31,)
    assert report.out_of_hypothesis == (2,)
    assert report.pair(4, 9).primes == (7,)


def test_compute_delta_needs_symbolic_points_when_cache_is_partial(tmp_path: Path) -> None:
    cache = PairCache(tmp_path / "pairs.txt")
    cache.add([PairRecord(1, 2, 9, (3,))])
    with pytest.raises(SymcalcError):
        compute_delta(None, cache=cache, confirm=False)


def test_confirm_prime() -> None:
    assert confirm_prime(5) is PrimeStatus.OUT_OF_HYPOTHESIS
    assert confirm_prime(61) is PrimeStatus.CONFIRMED
    assert confirm_prime(31) is PrimeStatus.SPURIOUS
