#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
============================================================
a6_arc90.plane
------------------------------------------------------------
Description :
    Primitives du plan projectif PG(2,q).

Rôle :
    - ProjPoint / ProjLine : triplets homogènes normalisés
      (première coordonnée non nulle = 1).
    - Mat3 : projectivités 3×3, forme canonique modulo scalaires.
    - Incidence, colinéarité, droite par deux points, action matricielle.
    - Énumération du plan et helpers numpy (indices des points d'une droite,
      des droites par un point) pour les balayages exhaustifs.

Ordre d'énumération (points comme droites) :
    (1, y, z) → y·q + z ; puis (0, 1, z) → q² + z ; puis (0, 0, 1) → q² + q.
============================================================
"""

from __future__ import annotations

# ============================================================
# 📦 Imports
# ============================================================
from dataclasses import dataclass
from typing import Any, Dict, Iterator, Optional, Sequence, Tuple

import numpy as np

from a6_arc90.field import FieldCtx, FieldElem, MixedFields

# ============================================================
# 🔎 Public exports
# ============================================================
__all__ = [
    "PlaneError",
    "EqualPoints",
    "SingularMatrix",
    "PlaneTooLarge",
    "ProjPoint",
    "ProjLine",
    "Mat3",
    "plane_size",
    "collinear",
    "line_through",
    "incident",
    "apply",
    "all_points",
    "all_lines",
    "point_index",
    "point_from_index",
    "points_on_line_indices",
    "lines_through_point_indices",
]

Triple = Tuple[int, int, int]


# ============================================================
# ⚠️ Exceptions
# ============================================================
class PlaneError(Exception):
    """Erreur du module plane."""


class EqualPoints(PlaneError):
    """line_through appelé avec deux points égaux."""


class SingularMatrix(PlaneError):
    """Matrice de déterminant nul utilisée comme projectivité."""


class PlaneTooLarge(PlaneError):
    """q² + q + 1 dépasse le budget d'itération."""


# ============================================================
# 🔧 Helpers (codes entiers)
# ============================================================
def plane_size(q: int) -> int:
    return q * q + q + 1


def _normalize(ctx: FieldCtx, coords: Sequence[int]) -> Triple:
    for i, c in enumerate(coords):
        if c:
            if c == 1:
                return (coords[0], coords[1], coords[2])
            k = ctx.inv(c)
            return (ctx.mul(coords[0], k), ctx.mul(coords[1], k), ctx.mul(coords[2], k))
    raise PlaneError("The zero vector is not a projective point")


def _dot(ctx: FieldCtx, u: Sequence[int], v: Sequence[int]) -> int:
    return ctx.add(ctx.add(ctx.mul(u[0], v[0]), ctx.mul(u[1], v[1])), ctx.mul(u[2], v[2]))


def _cross(ctx: FieldCtx, u: Sequence[int], v: Sequence[int]) -> Triple:
    m, s = ctx.mul, ctx.sub
    return (
        s(m(u[1], v[2]), m(u[2], v[1])),
        s(m(u[2], v[0]), m(u[0], v[2])),
        s(m(u[0], v[1]), m(u[1], v[0])),
    )


def _det3(ctx: FieldCtx, a: Sequence[int], b: Sequence[int], c: Sequence[int]) -> int:
    return _dot(ctx, a, _cross(ctx, b, c))


def _codes(ctx: FieldCtx, values: Sequence[Any]) -> Triple:
    out = []
    for v in values:
        if isinstance(v, FieldElem):
            if v.ctx != ctx:
                raise MixedFields(f"{v.ctx.describe()} vs {ctx.describe()}")
            out.append(v.value)
        else:
            out.append(ctx.from_int(int(v)))
    if len(out) != 3:
        raise PlaneError(f"Expected 3 homogeneous coordinates, got {len(out)}")
    return (out[0], out[1], out[2])


def _encode(q: int, coords: Triple) -> int:
    x, y, z = coords
    if x:
        return y * q + z
    if y:
        return q * q + z
    return q * q + q


def _decode(q: int, idx: int) -> Triple:
    if idx < q * q:
        y, z = divmod(idx, q)
        return (1, y, z)
    if idx < q * q + q:
        return (0, 1, idx - q * q)
    return (0, 0, 1)


# ============================================================
# 🧩 Points / droites
# ============================================================
@dataclass(frozen=True)
class _Triple:
    ctx: FieldCtx
    coords: Triple

    @classmethod
    def from_coords(cls, ctx: FieldCtx, coords: Sequence[Any]) -> "_Triple":
        """Normalise un triplet homogène (FieldElem, ou entiers lus dans GF(p))."""
        return cls(ctx, _normalize(ctx, _codes(ctx, coords)))

    @classmethod
    def from_codes(cls, ctx: FieldCtx, codes: Sequence[int]) -> "_Triple":
        """Normalise un triplet de codes d'éléments (c0 + c1·p)."""
        if len(codes) != 3 or any(not 0 <= c < ctx.q for c in codes):
            raise PlaneError(f"Invalid element codes {tuple(codes)} for {ctx.describe()}")
        return cls(ctx, _normalize(ctx, tuple(codes)))

    def elems(self) -> Tuple[FieldElem, FieldElem, FieldElem]:
        c = self.coords
        return (FieldElem(self.ctx, c[0]), FieldElem(self.ctx, c[1]), FieldElem(self.ctx, c[2]))

    def encode(self) -> int:
        """Rang dans l'ordre d'énumération du plan."""
        return _encode(self.ctx.q, self.coords)

    def format(self) -> str:
        return "(" + ", ".join(self.ctx.format(c) for c in self.coords) + ")"

    def to_dict(self) -> Dict[str, Any]:
        return {"coords": [self.ctx.format(c) for c in self.coords], "index": self.encode()}

    def __str__(self) -> str:
        return self.format()


class ProjPoint(_Triple):
    """Point de PG(2,q), première coordonnée non nulle égale à 1."""


class ProjLine(_Triple):
    """Droite de PG(2,q) en coordonnées duales ; incidence = produit scalaire nul."""


def _same_ctx(*items: _Triple) -> FieldCtx:
    ctx = items[0].ctx
    for it in items[1:]:
        if it.ctx != ctx:
            raise MixedFields(f"{ctx.describe()} vs {it.ctx.describe()}")
    return ctx


# ============================================================
# 🧩 Projectivités
# ============================================================
@dataclass(frozen=True)
class Mat3:
    """
    Matrice 3×3 (codes, ordre ligne par ligne).

    `@` renvoie le produit déjà ramené à la forme canonique
    (première entrée non nulle = 1), les projectivités étant des matrices
    modulo scalaires.
    """
    ctx: FieldCtx
    entries: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != 9:
            raise PlaneError(f"Mat3 needs 9 entries, got {len(self.entries)}")

    @classmethod
    def identity(cls, ctx: FieldCtx) -> "Mat3":
        return cls(ctx, (1, 0, 0, 0, 1, 0, 0, 0, 1))

    @classmethod
    def from_rows(cls, ctx: FieldCtx, rows: Sequence[Sequence[Any]]) -> "Mat3":
        flat: list = []
        for row in rows:
            flat.extend(_codes(ctx, row))
        return cls(ctx, tuple(flat))

    def row(self, i: int) -> Triple:
        e = self.entries
        return (e[3 * i], e[3 * i + 1], e[3 * i + 2])

    def rows(self) -> Tuple[Triple, Triple, Triple]:
        return (self.row(0), self.row(1), self.row(2))

    def det(self) -> int:
        return _det3(self.ctx, self.row(0), self.row(1), self.row(2))

    def is_singular(self) -> bool:
        return self.det() == 0

    def canonical(self) -> "Mat3":
        ctx = self.ctx
        for c in self.entries:
            if c:
                if c == 1:
                    return self
                k = ctx.inv(c)
                return Mat3(ctx, tuple(ctx.mul(e, k) for e in self.entries))
        raise SingularMatrix("Zero matrix has no canonical projective form")

    def product(self, other: "Mat3") -> "Mat3":
        """Produit matriciel brut (sans normalisation)."""
        if other.ctx != self.ctx:
            raise MixedFields(f"{self.ctx.describe()} vs {other.ctx.describe()}")
        ctx = self.ctx
        a, b = self.entries, other.entries
        out = []
        for i in range(3):
            for j in range(3):
                acc = 0
                for k in range(3):
                    acc = ctx.add(acc, ctx.mul(a[3 * i + k], b[3 * k + j]))
                out.append(acc)
        return Mat3(ctx, tuple(out))

    def __matmul__(self, other: "Mat3") -> "Mat3":
        return self.product(other).canonical()

    def scaled(self, c: int) -> "Mat3":
        return Mat3(self.ctx, tuple(self.ctx.mul(e, c) for e in self.entries))

    def adjugate(self) -> "Mat3":
        """Adjointe ; proportionnelle à l'inverse, donc inverse projectif."""
        r0, r1, r2 = self.rows()
        c0 = _cross(self.ctx, r1, r2)
        c1 = _cross(self.ctx, r2, r0)
        c2 = _cross(self.ctx, r0, r1)
        # colonnes de l'adjointe = produits vectoriels des lignes
        return Mat3(self.ctx, (c0[0], c1[0], c2[0], c0[1], c1[1], c2[1], c0[2], c1[2], c2[2]))

    def inverse(self) -> "Mat3":
        if self.is_singular():
            raise SingularMatrix("Singular matrix has no inverse")
        return self.adjugate().canonical()

    def is_scalar(self) -> bool:
        e = self.entries
        return e[0] == e[4] == e[8] and not any(e[i] for i in (1, 2, 3, 5, 6, 7))

    def order(self, cap: int = 1000) -> int:
        """Ordre projectif (plus petit k ≥ 1 avec M^k scalaire)."""
        acc = self.canonical()
        for k in range(1, cap + 1):
            if acc.is_scalar():
                return k
            acc = acc @ self
        raise PlaneError(f"Projective order exceeds {cap}")

    def format(self) -> str:
        return "[" + "; ".join(" ".join(self.ctx.format(c) for c in r) for r in self.rows()) + "]"


# ============================================================
# ✅ Opérations
# ============================================================
def collinear(P: ProjPoint, Q: ProjPoint, R: ProjPoint) -> bool:
    ctx = _same_ctx(P, Q, R)
    return _det3(ctx, P.coords, Q.coords, R.coords) == 0


def line_through(P: ProjPoint, Q: ProjPoint) -> ProjLine:
    ctx = _same_ctx(P, Q)
    if P.coords == Q.coords:
        raise EqualPoints(f"line_through needs two distinct points, got {P.format()} twice")
    return ProjLine(ctx, _normalize(ctx, _cross(ctx, P.coords, Q.coords)))


def incident(L: ProjLine, P: ProjPoint) -> bool:
    ctx = _same_ctx(L, P)
    return _dot(ctx, L.coords, P.coords) == 0


def apply(M: Mat3, P: ProjPoint) -> ProjPoint:
    if M.ctx != P.ctx:
        raise MixedFields(f"{M.ctx.describe()} vs {P.ctx.describe()}")
    if M.is_singular():
        raise SingularMatrix(f"det = 0 for {M.format()}")
    ctx = M.ctx
    image = tuple(_dot(ctx, M.row(i), P.coords) for i in range(3))
    return ProjPoint(ctx, _normalize(ctx, image))


def _check_budget(ctx: FieldCtx, budget: Optional[int]) -> int:
    n = plane_size(ctx.q)
    if budget is not None and n > budget:
        raise PlaneTooLarge(f"PG(2,{ctx.q}) has {n} points/lines, budget is {budget}")
    return n


def all_points(ctx: FieldCtx, budget: Optional[int] = None) -> Iterator[ProjPoint]:
    n = _check_budget(ctx, budget)
    q = ctx.q
    return (ProjPoint(ctx, _decode(q, i)) for i in range(n))


def all_lines(ctx: FieldCtx, budget: Optional[int] = None) -> Iterator[ProjLine]:
    n = _check_budget(ctx, budget)
    q = ctx.q
    return (ProjLine(ctx, _decode(q, i)) for i in range(n))


def point_index(P: _Triple) -> int:
    return P.encode()


def point_from_index(ctx: FieldCtx, idx: int) -> ProjPoint:
    if not 0 <= idx < plane_size(ctx.q):
        raise PlaneError(f"Index {idx} out of range for PG(2,{ctx.q})")
    return ProjPoint(ctx, _decode(ctx.q, idx))


# ============================================================
# 🔢 Incidence vectorisée (numpy)
# ============================================================
def _incident_indices(ctx: FieldCtx, coeffs: Triple) -> np.ndarray:
    """
    Indices (ordre d'énumération) des q + 1 triplets X avec a·X0 + b·X1 + c·X2 = 0.

    Sert aux deux dualités : points d'une droite, droites par un point.
    """
    q = ctx.q
    a, b, c = coeffs
    ys = np.arange(q, dtype=np.int64)
    if c:
        # (1, y, z) : z = α + β·y ; plus (0, 1, −b/c)
        c_inv = ctx.inv(c)
        alpha = ctx.neg(ctx.mul(a, c_inv))
        beta = ctx.neg(ctx.mul(b, c_inv))
        zs = ctx.vadd(ctx.vscale(ys, beta), alpha)
        tail = np.array([q * q + ctx.neg(ctx.mul(b, c_inv))], dtype=np.int64)
        return np.concatenate([ys * q + zs, tail])
    if b:
        # c = 0 : y = −a/b fixé, z libre ; plus (0, 0, 1)
        y0 = ctx.neg(ctx.mul(a, ctx.inv(b)))
        return np.concatenate([y0 * q + ys, np.array([q * q + q], dtype=np.int64)])
    # b = c = 0 : droite x0 = 0
    return np.concatenate([q * q + ys, np.array([q * q + q], dtype=np.int64)])


def points_on_line_indices(L: ProjLine) -> np.ndarray:
    return _incident_indices(L.ctx, L.coords)


def lines_through_point_indices(P: ProjPoint) -> np.ndarray:
    return _incident_indices(P.ctx, P.coords)
