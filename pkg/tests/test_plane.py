#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
============================================================
test_plane.py — a6-arc90
------------------------------------------------------------
Description :
    Tests unitaires pour a6_arc90.plane :
      - normalisation des points / droites
      - incidence, alignement, droite par deux points
      - projectivités Mat3 (produit canonique, inverse, ordre)
      - énumération du plan et incidence vectorisée

Usage :
    pytest -q tests/test_plane.py
============================================================
"""

from __future__ import annotations

# ============================================================
# 📦 Imports
# ============================================================
import numpy as np
import pytest

from a6_arc90.field import FieldElem, MixedFields, make_field
from a6_arc90.plane import (
    EqualPoints,
    Mat3,
    PlaneError,
    PlaneTooLarge,
    ProjLine,
    ProjPoint,
    SingularMatrix,
    all_lines,
    all_points,
    apply,
    collinear,
    incident,
    line_through,
    lines_through_point_indices,
    plane_size,
    point_from_index,
    points_on_line_indices,
)


# ============================================================
# 🔧 Fixtures
# ============================================================
@pytest.fixture
def gf7():
    return make_field(7)


@pytest.fixture
def gf49():
    return make_field(7, 2)


# ============================================================
# 🧪 Tests — points / droites
# ============================================================
def test_point_normalisation(gf7) -> None:
    P = ProjPoint.from_coords(gf7, [2, 4, 6])
    assert P.coords == (1, 2, 3)
    Q = ProjPoint.from_coords(gf7, [0, 3, 5])
    assert Q.coords == (0, 1, 4)


def test_negative_integers_are_read_in_base_field(gf49) -> None:
    P = ProjPoint.from_coords(gf49, [1, -2, -2])
    assert P.coords == (1, 5, 5)


def test_zero_vector_is_rejected(gf7) -> None:
    with pytest.raises(PlaneError):
        ProjPoint.from_coords(gf7, [0, 0, 0])


def test_from_codes_validates_range(gf49) -> None:
    P = ProjPoint.from_codes(gf49, [7, 0, 0])  # w·(1, 0, 0)
    assert P.coords == (1, 0, 0)
    with pytest.raises(PlaneError):
        ProjPoint.from_codes(gf49, [49, 0, 0])


def test_line_through_and_incidence(gf7) -> None:
    P = ProjPoint.from_coords(gf7, [1, 0, 0])
    Q = ProjPoint.from_coords(gf7, [0, 1, 0])
    R = ProjPoint.from_coords(gf7, [1, 1, 0])
    L = line_through(P, Q)
    assert L.coords == (0, 0, 1)
    assert incident(L, P) and incident(L, Q) and incident(L, R)
    assert collinear(P, Q, R)
    assert not collinear(P, Q, ProjPoint.from_coords(gf7, [0, 0, 1]))


def test_line_through_equal_points_raises(gf7) -> None:
    P = ProjPoint.from_coords(gf7, [1, 2, 3])
    with pytest.raises(EqualPoints):
        line_through(P, ProjPoint.from_coords(gf7, [2, 4, 6]))


def test_mixed_contexts_are_rejected(gf7, gf49) -> None:
    P = ProjPoint.from_coords(gf7, [1, 0, 0])
    Q = ProjPoint.from_coords(gf49, [0, 1, 0])
    with pytest.raises(MixedFields):
        line_through(P, Q)
    with pytest.raises(MixedFields):
        ProjPoint.from_coords(gf7, [FieldElem(gf49, 1), 0, 0])


# ============================================================
# 🧪 Tests — projectivités
# ============================================================
def test_matmul_returns_canonical_product(gf7) -> None:
    M = Mat3.from_rows(gf7, [[2, 0, 0], [0, 2, 0], [0, 0, 2]])
    assert (M @ M) == Mat3.identity(gf7)
    assert M.product(M).entries[0] == 4


def test_inverse_and_apply(gf49) -> None:
    M = Mat3.from_rows(gf49, [[1, 2, 0], [0, 1, 3], [1, 0, 2]])
    assert not M.is_singular()
    assert (M @ M.inverse()) == Mat3.identity(gf49)
    P = ProjPoint.from_coords(gf49, [1, 1, 1])
    assert apply(M.inverse(), apply(M, P)) == P


def test_singular_matrix_rejected(gf7) -> None:
    S = Mat3.from_rows(gf7, [[1, 2, 3], [2, 4, 6], [0, 0, 1]])
    with pytest.raises(SingularMatrix):
        apply(S, ProjPoint.from_coords(gf7, [1, 0, 0]))
    with pytest.raises(SingularMatrix):
        S.inverse()


def test_projective_order_of_cyclic_shift(gf7) -> None:
    U = Mat3.from_rows(gf7, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    assert U.order() == 3
    assert Mat3.identity(gf7).order() == 1


# ============================================================
# 🧪 Tests — énumération / incidence vectorisée
# ============================================================
def test_enumeration_covers_the_plane(gf7) -> None:
    pts = list(all_points(gf7))
    assert len(pts) == plane_size(7) == 57
    assert len(set(pts)) == 57
    assert [P.encode() for P in pts] == list(range(57))
    assert point_from_index(gf7, 10) == pts[10]
    assert len(list(all_lines(gf7))) == 57


def test_enumeration_budget(gf49) -> None:
    with pytest.raises(PlaneTooLarge):
        all_points(gf49, budget=100)


def test_vectorised_incidence_matches_brute_force(gf49) -> None:
    pts = list(all_points(gf49))
    lines = [
        ProjLine.from_coords(gf49, c)
        for c in ([1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 2, 3], [3, 0, 1], [2, 5, 0])
    ]
    lines.append(ProjLine.from_codes(gf49, [1, 9, 20]))
    for L in lines:
        idx = points_on_line_indices(L)
        expected = sorted(P.encode() for P in pts if incident(L, P))
        assert len(idx) == 49 + 1
        assert sorted(int(i) for i in idx) == expected


def test_lines_through_point_by_duality(gf7) -> None:
    P = ProjPoint.from_coords(gf7, [1, 3, 5])
    idx = lines_through_point_indices(P)
    assert len(np.unique(idx)) == 8
    for i in idx:
        assert incident(ProjLine(gf7, point_from_index(gf7, int(i)).coords), P)
