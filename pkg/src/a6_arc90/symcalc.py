#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
============================================================
a6_arc90.symcalc
------------------------------------------------------------
Description :
    Calcul symbolique dans R = ℤ[t,s,z]/(t²+t+1, s²−3, z²−5) et élimination
    par résultants de Sylvester.

Rôle :
    - SymElem : élément de R (8 coefficients entiers sur t^a s^b z^c).
    - IntPoly : polynôme entier creux en t, s, z (vue récursive par variable).
    - symbolic_orbit : rejoue les mots BFS de Γ sur P1 = (2, s−1, s−1).
    - collinearity_det / eliminate / factor_primes : δ_{i,j} par paire.
    - compute_delta : les 3916 paires (pool de processus optionnel), puis
      confirmation numérique de chaque premier p ≥ 7 de δ.
    - PairCache : cache texte ligne par ligne, rechargeable à l'identique.

Notes :
    - Aucune normalisation projective dans R ; le contenu entier de D_{i,j}
      est retiré avant élimination et ses premiers sont rapportés à part.
    - L'entier final de la tour t → s → z est la norme absolue de D_{i,j} :
      il ne dépend pas de l'ordre d'élimination.
============================================================
"""

from __future__ import annotations

# ============================================================
# 📦 Imports
# ============================================================
import logging
import threading
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache, reduce
from math import gcd, prod
from pathlib import Path
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import sympy
from sympy import factorint, isprime, primerange
from tqdm import tqdm

from a6_arc90.field import FieldCtx, SpecialElems, minimal_valid_degree
from a6_arc90.group import GENERATOR_NAMES
from a6_arc90.orbit import ORBIT_SIZE, OrbitResult, arc_check, construct_orbit
from a6_arc90.plane import ProjPoint

# ============================================================
# 🔎 Public exports
# ============================================================
__all__ = [
    "SymcalcError",
    "WordReplayMismatch",
    "BadIndex",
    "ZeroResultant",
    "CacheCorrupt",
    "SymElem",
    "IntPoly",
    "SymPoint",
    "PairRecord",
    "PrimeStatus",
    "DeltaReport",
    "PairCache",
    "PAIR_TOTAL",
    "EXPECTED_CONFIRMED",
    "symbolic_generators",
    "symbolic_orbit",
    "specialize_point",
    "collinearity_det",
    "sylvester_matrix",
    "resultant",
    "res_t_closed",
    "res_s_closed",
    "res_z_closed",
    "eliminate",
    "factor_primes",
    "compute_pair",
    "confirm_prime",
    "compute_delta",
    "reference_symbolic_orbit",
]

VARIABLES: Tuple[str, ...] = ("t", "s", "z")
TRIAL_DIVISION_BOUND = 10 ** 6
PAIR_TOTAL = (ORBIT_SIZE - 1) * (ORBIT_SIZE - 2) // 2
EXPECTED_CONFIRMED = frozenset({7, 11, 13, 17, 19, 61, 109, 181, 229, 241, 421})


# ============================================================
# 🧾 Logging (local, autonome)
# ============================================================
def get_logger(name: str) -> logging.Logger:
    logger = logging.getLogger(name)
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(
            logging.Formatter(
                fmt="%(asctime)s [%(levelname)s] [%(name)s] %(message)s",
                datefmt="%Y-%m-%d %H:%M:%S",
            )
        )
        logger.addHandler(handler)
    if logger.level == logging.NOTSET:
        logger.setLevel(logging.INFO)
    return logger


log = get_logger(__name__)


# ============================================================
# ⚠️ Exceptions
# ============================================================
class SymcalcError(Exception):
    """Erreur du module symcalc."""


class WordReplayMismatch(SymcalcError):
    """Un point symbolique spécialisé ne coïncide pas avec l'orbite numérique."""


class BadIndex(SymcalcError):
    """Indice de paire hors de 1 ≤ i ≤ j ≤ 89."""


class ZeroResultant(SymcalcError):
    """Résultant nul : triplet symboliquement colinéaire."""


class CacheCorrupt(SymcalcError):
    """Ligne illisible dans le cache de paires."""

    def __init__(self, line_no: int, reason: str) -> None:
        super().__init__(f"pair cache line {line_no}: {reason}")
        self.line_no = line_no


# ============================================================
# 🧮 SymElem : R = ℤ[t,s,z]/(t²+t+1, s²−3, z²−5)
# ============================================================
def _split(i: int) -> Tuple[int, int, int]:
    return i & 1, (i >> 1) & 1, (i >> 2) & 1


def _build_mul_table() -> Tuple[Tuple[Tuple[Tuple[int, int], ...], ...], ...]:
    table = []
    for i in range(8):
        a1, b1, c1 = _split(i)
        row = []
        for j in range(8):
            a2, b2, c2 = _split(j)
            scale = (3 if b1 and b2 else 1) * (5 if c1 and c2 else 1)
            base = 2 * (b1 ^ b2) + 4 * (c1 ^ c2)
            if a1 + a2 < 2:
                row.append(((base + a1 + a2, scale),))
            else:
                # t² = −1 − t
                row.append(((base, -scale), (base + 1, -scale)))
        table.append(tuple(row))
    return tuple(table)


_MUL_TABLE = _build_mul_table()

SymLike = Union["SymElem", int]


@dataclass(frozen=True)
class SymElem:
    """Coefficients sur la base t^a s^b z^c, indice a + 2b + 4c."""
    coeffs: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != 8:
            raise SymcalcError(f"SymElem needs 8 coefficients, got {len(self.coeffs)}")

    @classmethod
    def const(cls, k: int) -> "SymElem":
        return cls((int(k), 0, 0, 0, 0, 0, 0, 0))

    @classmethod
    def monomial(cls, a: int, b: int, c: int, k: int = 1) -> "SymElem":
        out = [0] * 8
        out[a + 2 * b + 4 * c] = k
        return cls(tuple(out))

    @staticmethod
    def _coerce(x: SymLike) -> "SymElem":
        if isinstance(x, SymElem):
            return x
        if isinstance(x, int):
            return SymElem.const(x)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: SymLike) -> "SymElem":
        o = self._coerce(other)
        return SymElem(tuple(x + y for x, y in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "SymElem":
        return SymElem(tuple(-x for x in self.coeffs))

    def __sub__(self, other: SymLike) -> "SymElem":
        return self + (-self._coerce(other))

    def __rsub__(self, other: SymLike) -> "SymElem":
        return self._coerce(other) - self

    def __mul__(self, other: SymLike) -> "SymElem":
        o = self._coerce(other)
        out = [0] * 8
        for i, x in enumerate(self.coeffs):
            if not x:
                continue
            row = _MUL_TABLE[i]
            for j, y in enumerate(o.coeffs):
                if not y:
                    continue
                xy = x * y
                for k, c in row[j]:
                    out[k] += c * xy
        return SymElem(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "SymElem":
        if e < 0:
            raise SymcalcError("Negative powers are not defined in R")
        result, base = SymElem.const(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def content(self) -> int:
        """pgcd des coefficients (0 pour l'élément nul)."""
        return reduce(gcd, self.coeffs, 0)

    def divexact(self, k: int) -> "SymElem":
        if k == 0 or any(c % k for c in self.coeffs):
            raise SymcalcError(f"{k} does not divide every coefficient")
        return SymElem(tuple(c // k for c in self.coeffs))

    # Automorphismes de Galois
    def conj_t(self) -> "SymElem":
        """t ↦ t² : A + B·t ↦ (A − B) − B·t pour chaque (b, c)."""
        out = list(self.coeffs)
        for base in (0, 2, 4, 6):
            a, b = self.coeffs[base], self.coeffs[base + 1]
            out[base], out[base + 1] = a - b, -b
        return SymElem(tuple(out))

    def conj_s(self) -> "SymElem":
        return SymElem(tuple(-c if _split(i)[1] else c for i, c in enumerate(self.coeffs)))

    def conj_z(self) -> "SymElem":
        return SymElem(tuple(-c if _split(i)[2] else c for i, c in enumerate(self.coeffs)))

    def norm(self) -> int:
        """Produit des 8 conjugués (un entier)."""
        acc = SymElem.const(1)
        for ct in (False, True):
            for cs in (False, True):
                for cz in (False, True):
                    x = self
                    if ct:
                        x = x.conj_t()
                    if cs:
                        x = x.conj_s()
                    if cz:
                        x = x.conj_z()
                    acc = acc * x
        if any(acc.coeffs[1:]):  # pragma: no cover
            raise SymcalcError("Norm is not rational")
        return acc.coeffs[0]

    def specialize(self, ctx: FieldCtx, t: int, s: int, z: int) -> int:
        """Évaluation en (t, s, z) ∈ ctx (codes) ; homomorphisme R → ctx."""
        powers_t, powers_s, powers_z = (1, t), (1, s), (1, z)
        acc = 0
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            a, b, cc = _split(i)
            mono = ctx.mul(ctx.mul(powers_t[a], powers_s[b]), powers_z[cc])
            acc = ctx.add(acc, ctx.mul(ctx.from_int(c), mono))
        return acc

    def __str__(self) -> str:
        return str(IntPoly.from_sym(self))


T = SymElem.monomial(1, 0, 0)
S = SymElem.monomial(0, 1, 0)
Z = SymElem.monomial(0, 0, 1)


# ============================================================
# 🧮 IntPoly : polynômes entiers creux en t, s, z
# ============================================================
Exponents = Tuple[int, int, int]
PolyLike = Union["IntPoly", int]

_RELATIONS: Dict[str, Dict[int, int]] = {
    "t": {0: 1, 1: 1, 2: 1},
    "s": {0: -3, 2: 1},
    "z": {0: -5, 2: 1},
}


def _var_pos(var: str) -> int:
    try:
        return VARIABLES.index(var)
    except ValueError:
        raise SymcalcError(f"Unknown variable {var!r}") from None


@dataclass(frozen=True)
class IntPoly:
    """Termes triés ((a, b, c), coefficient) pour t^a s^b z^c, sans coefficient nul."""
    terms: Tuple[Tuple[Exponents, int], ...] = ()

    @classmethod
    def from_terms(cls, terms: Dict[Exponents, int]) -> "IntPoly":
        return cls(tuple(sorted((e, c) for e, c in terms.items() if c)))

    @classmethod
    def const(cls, k: int) -> "IntPoly":
        return cls.from_terms({(0, 0, 0): k})

    @classmethod
    def var(cls, name: str) -> "IntPoly":
        e = [0, 0, 0]
        e[_var_pos(name)] = 1
        return cls.from_terms({tuple(e): 1})  # type: ignore[dict-item]

    @classmethod
    def relation(cls, name: str) -> "IntPoly":
        """t² + t + 1, s² − 3 ou z² − 5."""
        pos = _var_pos(name)
        terms = {}
        for k, c in _RELATIONS[name].items():
            e = [0, 0, 0]
            e[pos] = k
            terms[tuple(e)] = c
        return cls.from_terms(terms)  # type: ignore[arg-type]

    @classmethod
    def from_sym(cls, x: SymElem) -> "IntPoly":
        return cls.from_terms({_split(i): c for i, c in enumerate(x.coeffs)})

    @staticmethod
    def _coerce(x: PolyLike) -> "IntPoly":
        if isinstance(x, IntPoly):
            return x
        if isinstance(x, int):
            return IntPoly.const(x)
        return NotImplemented  # type: ignore[return-value]

    def as_dict(self) -> Dict[Exponents, int]:
        return dict(self.terms)

    # ----------------------------
    # Arithmétique
    # ----------------------------
    def __add__(self, other: PolyLike) -> "IntPoly":
        acc = self.as_dict()
        for e, c in self._coerce(other).terms:
            acc[e] = acc.get(e, 0) + c
        return IntPoly.from_terms(acc)

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: PolyLike) -> "IntPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: PolyLike) -> "IntPoly":
        return self._coerce(other) - self

    def __mul__(self, other: PolyLike) -> "IntPoly":
        o = self._coerce(other)
        acc: Dict[Exponents, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in o.terms:
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                acc[e] = acc.get(e, 0) + c1 * c2
        return IntPoly.from_terms(acc)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPoly":
        result = IntPoly.const(1)
        for _ in range(e):
            result = result * self
        return result

    # ----------------------------
    # Structure
    # ----------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(e == (0, 0, 0) for e, _ in self.terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise SymcalcError(f"{self} is not constant")
        return self.terms[0][1] if self.terms else 0

    def degree(self, var: str) -> int:
        pos = _var_pos(var)
        return max((e[pos] for e, _ in self.terms), default=-1)

    def coeffs_in(self, var: str) -> List["IntPoly"]:
        """Coefficients (degré croissant) vus comme polynômes dans les autres variables."""
        pos = _var_pos(var)
        buckets: Dict[int, Dict[Exponents, int]] = {}
        for e, c in self.terms:
            rest = list(e)
            k = rest[pos]
            rest[pos] = 0
            buckets.setdefault(k, {})[tuple(rest)] = c  # type: ignore[index]
        deg = max(buckets, default=0)
        return [IntPoly.from_terms(buckets.get(k, {})) for k in range(deg + 1)]

    @classmethod
    def from_coeffs(cls, var: str, coeffs: Sequence["IntPoly"]) -> "IntPoly":
        x = cls.var(var)
        acc = cls()
        for k, c in enumerate(coeffs):
            acc = acc + c * (x ** k)
        return acc

    def content(self) -> int:
        return reduce(gcd, (c for _, c in self.terms), 0)

    def reduce(self) -> "IntPoly":
        """Réduction modulo t² + t + 1, s² − 3, z² − 5."""
        return IntPoly.from_sym(self.to_sym())

    def to_sym(self) -> SymElem:
        acc = SymElem.const(0)
        t_cycle = (SymElem.const(1), T, -T - 1)
        for (a, b, c), k in self.terms:
            mono = t_cycle[a % 3] * (3 ** (b // 2)) * (5 ** (c // 2))
            if b % 2:
                mono = mono * S
            if c % 2:
                mono = mono * Z
            acc = acc + mono * k
        return acc

    def to_sympy(self) -> Any:
        t, s, z = sympy.symbols("t s z")
        return sum((c * t ** e[0] * s ** e[1] * z ** e[2] for e, c in self.terms), sympy.Integer(0))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "*".join(f"{v}^{k}" if k > 1 else v for v, k in zip(VARIABLES, e) if k)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts).replace("+ -", "- ")


# ============================================================
# 🧮 Résultants
# ============================================================
def sylvester_matrix(f: IntPoly, g: IntPoly, var: str) -> List[List[IntPoly]]:
    """Matrice de Sylvester, lignes de f en premier (det = Res_var(f, g))."""
    fc = list(reversed(f.coeffs_in(var)))
    gc = list(reversed(g.coeffs_in(var)))
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n
    zero = IntPoly()
    rows = []
    for i in range(n):
        rows.append([zero] * i + fc + [zero] * (size - i - m - 1))
    for i in range(m):
        rows.append([zero] * i + gc + [zero] * (size - i - n - 1))
    return rows


def _det(matrix: List[List[IntPoly]]) -> IntPoly:
    """Développement par cofacteurs sur la première ligne (entrées nulles ignorées)."""
    size = len(matrix)
    if size == 0:
        return IntPoly.const(1)
    if size == 1:
        return matrix[0][0]
    acc = IntPoly()
    for col, entry in enumerate(matrix[0]):
        if entry.is_zero():
            continue
        minor = [row[:col] + row[col + 1:] for row in matrix[1:]]
        term = entry * _det(minor)
        acc = acc + term if col % 2 == 0 else acc - term
    return acc


def resultant(f: IntPoly, g: IntPoly, var: str) -> IntPoly:
    if f.is_zero() or g.is_zero():
        return IntPoly()
    return _det(sylvester_matrix(f, g, var))


def res_t_closed(A: PolyLike, B: PolyLike) -> PolyLike:
    """Res_t(t² + t + 1, A + B·t)."""
    return A * A - A * B + B * B


def res_s_closed(C: PolyLike, D: PolyLike) -> PolyLike:
    """Res_s(s² − 3, C + D·s)."""
    return C * C - 3 * D * D


def res_z_closed(E: PolyLike, F: PolyLike) -> PolyLike:
    """Res_z(z² − 5, E + F·z)."""
    return E * E - 5 * F * F


_CLOSED = {"t": res_t_closed, "s": res_s_closed, "z": res_z_closed}


def eliminate(
    D: Union[SymElem, IntPoly],
    *,
    order: Sequence[str] = VARIABLES,
    method: str = "closed",
) -> int:
    """
    Res_z(z²−5, Res_s(s²−3, Res_t(t²+t+1, D))) pour l'ordre par défaut.

    method="closed" utilise les formes closes (D linéaire après réduction) ;
    method="sylvester" passe par le déterminant de Sylvester générique.
    """
    if sorted(order) != sorted(VARIABLES):
        raise SymcalcError(f"Elimination order must be a permutation of {VARIABLES}, got {tuple(order)}")
    if method not in ("closed", "sylvester"):
        raise SymcalcError(f"Unknown elimination method {method!r}")
    poly = IntPoly.from_sym(D) if isinstance(D, SymElem) else D
    for var in order:
        poly = poly.reduce()
        if method == "closed":
            cs = poly.coeffs_in(var)
            A = cs[0]
            B = cs[1] if len(cs) > 1 else IntPoly()
            poly = _CLOSED[var](A, B)
        else:
            poly = resultant(IntPoly.relation(var), poly, var)
    poly = poly.reduce()
    return poly.constant_value()


# ============================================================
# 🔢 Facteurs premiers
# ============================================================
@lru_cache(maxsize=1)
def _small_primes() -> Tuple[int, ...]:
    return tuple(primerange(2, TRIAL_DIVISION_BOUND))


@lru_cache(maxsize=65536)
def factor_primes(n: int) -> FrozenSet[int]:
    """
    Ensemble des diviseurs premiers de n (multiplicités ignorées).

    Division par les premiers < 10⁶, puis sympy (isprime / factorint) sur le
    cofacteur ; la factorisation est vérifiée par multiplication.
    """
    if n == 0:
        raise ZeroResultant("factor_primes(0): the resultant vanishes")
    n = abs(n)
    primes: Dict[int, int] = {}
    rest = n
    for p in _small_primes():
        if rest == 1:
            break
        if p * p > rest:
            primes[rest] = primes.get(rest, 0) + 1
            rest = 1
            break
        while rest % p == 0:
            primes[p] = primes.get(p, 0) + 1
            rest //= p
    if rest > 1:
        if isprime(rest):
            primes[rest] = primes.get(rest, 0) + 1
        else:
            for f, k in factorint(rest).items():
                primes[int(f)] = primes.get(int(f), 0) + int(k)
    if prod(p ** k for p, k in primes.items()) != n:
        raise SymcalcError(f"Factorization check failed for {n}")
    return frozenset(primes)


# ============================================================
# 🧩 Orbite symbolique
# ============================================================
@dataclass(frozen=True)
class SymPoint:
    index: int
    word: Tuple[str, ...]
    coords: Tuple[SymElem, SymElem, SymElem]


SYM_BASEPOINT: Tuple[SymElem, SymElem, SymElem] = (SymElem.const(2), S - 1, S - 1)


def symbolic_generators() -> Dict[str, Tuple[Tuple[SymElem, ...], ...]]:
    """U, Omega, V, W à coefficients dans R (Δz = (2t + 1)·z)."""
    one, zero = SymElem.const(1), SymElem.const(0)
    t2 = T * T
    dz = (T - t2) * Z
    two_neg, four = SymElem.const(-2), SymElem.const(4)
    return {
        "U": ((zero, zero, one), (one, zero, zero), (zero, one, zero)),
        "Omega": ((one, zero, zero), (zero, T, zero), (zero, zero, t2)),
        "V": ((two_neg, 1 + dz, 1 + dz), (1 - dz, four, two_neg), (1 - dz, two_neg, four)),
        "W": ((one, one, one), (one, T, t2), (one, t2, T)),
    }


def _apply_sym(M: Tuple[Tuple[SymElem, ...], ...], v: Sequence[SymElem]) -> Tuple[SymElem, SymElem, SymElem]:
    return tuple(row[0] * v[0] + row[1] * v[1] + row[2] * v[2] for row in M)  # type: ignore[return-value]


def specialize_point(point: SymPoint, sp: SpecialElems) -> ProjPoint:
    ctx = sp.ctx
    t, s, z = sp.t.value, sp.s.value, sp.z.value
    return ProjPoint.from_codes(ctx, tuple(c.specialize(ctx, t, s, z) for c in point.coords))


def symbolic_orbit(
    words: Sequence[Tuple[str, ...]],
    *,
    reference: Optional[OrbitResult] = None,
) -> Tuple[SymPoint, ...]:
    """
    Images symboliques de P1 = (2, s−1, s−1) par chaque mot
    (le dernier générateur du mot agit en premier).

    Si reference est fourni, chaque point spécialisé doit égaler
    projectivement reference.points[i].
    """
    gens = symbolic_generators()
    points = []
    for i, word in enumerate(words):
        v = SYM_BASEPOINT
        for name in reversed(word):
            if name not in GENERATOR_NAMES:
                raise SymcalcError(f"Unknown generator {name!r} in word {word}")
            v = _apply_sym(gens[name], v)
        points.append(SymPoint(index=i, word=tuple(word), coords=v))

    if reference is not None:
        if len(reference.points) != len(points):
            raise WordReplayMismatch(f"{len(points)} words vs {len(reference.points)} reference points")
        for pt in points:
            got = specialize_point(pt, reference.special)
            if got != reference.points[pt.index]:
                raise WordReplayMismatch(
                    f"point {pt.index} (word {'.'.join(pt.word) or 'id'}): "
                    f"{got.format()} != {reference.points[pt.index].format()} over {reference.ctx.describe()}"
                )
        log.info("Symbolic orbit replayed and checked over %s (%d points)",
                 reference.ctx.describe(), len(points))
    return tuple(points)


def reference_symbolic_orbit(reference_p: int = 61) -> Tuple[SymPoint, ...]:
    ref = construct_orbit(reference_p, minimal_valid_degree(reference_p) or 1)
    return symbolic_orbit(ref.words, reference=ref)


def _det_sym(a: Sequence[SymElem], b: Sequence[SymElem], c: Sequence[SymElem]) -> SymElem:
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def collinearity_det(i: int, j: int, sympoints: Sequence[SymPoint]) -> SymElem:
    """D_{i,j} = det(P1, Q_i, Q_j) dans R (i = j donne l'élément nul)."""
    last = len(sympoints) - 1
    if not (1 <= i <= j <= last):
        raise BadIndex(f"need 1 <= i <= j <= {last}, got i={i}, j={j}")
    return _det_sym(sympoints[0].coords, sympoints[i].coords, sympoints[j].coords)


# ============================================================
# 🧩 Paires / δ
# ============================================================
def _fmt_primes(primes: Iterable[int]) -> str:
    ps = sorted(primes)
    return ",".join(str(p) for p in ps) if ps else "-"


def _parse_primes(field_: str, line_no: int) -> Tuple[int, ...]:
    if field_ == "-":
        return ()
    try:
        values = tuple(int(x) for x in field_.split(","))
    except ValueError:
        raise CacheCorrupt(line_no, f"bad prime list {field_!r}") from None
    if any(v < 2 for v in values) or list(values) != sorted(set(values)):
        raise CacheCorrupt(line_no, f"prime list {field_!r} is not a sorted set of primes")
    return values


@dataclass(frozen=True)
class PairRecord:
    i: int
    j: int
    resultant: int
    primes: Tuple[int, ...]
    content_primes: Tuple[int, ...] = ()

    def to_line(self) -> str:
        return f"{self.i} {self.j} {self.resultant} {_fmt_primes(self.primes)} {_fmt_primes(self.content_primes)}"

    @classmethod
    def from_line(cls, line: str, line_no: int) -> "PairRecord":
        parts = line.split()
        if len(parts) != 5:
            raise CacheCorrupt(line_no, f"expected 5 fields, got {len(parts)}")
        try:
            i, j, res = int(parts[0]), int(parts[1]), int(parts[2])
        except ValueError:
            raise CacheCorrupt(line_no, "non-integer index or resultant") from None
        if not 1 <= i < j <= ORBIT_SIZE - 1:
            raise CacheCorrupt(line_no, f"pair ({i}, {j}) out of range")
        if res == 0:
            raise CacheCorrupt(line_no, "zero resultant")
        primes = _parse_primes(parts[3], line_no)
        content = _parse_primes(parts[4], line_no)
        if not set(content) <= set(primes):
            raise CacheCorrupt(line_no, "content primes are not a subset of the pair primes")
        return cls(i, j, res, primes, content)


class PrimeStatus(str, Enum):
    CONFIRMED = "confirmed"
    SPURIOUS = "spurious"
    OUT_OF_HYPOTHESIS = "out-of-hypothesis"


@dataclass(frozen=True)
class DeltaReport:
    pairs: Tuple[PairRecord, ...]
    status: Dict[int, PrimeStatus]

    @property
    def delta(self) -> Tuple[int, ...]:
        return tuple(sorted({p for rec in self.pairs for p in rec.primes}))

    def _with(self, status: PrimeStatus) -> Tuple[int, ...]:
        return tuple(sorted(p for p, st in self.status.items() if st is status))

    @property
    def confirmed(self) -> Tuple[int, ...]:
        return self._with(PrimeStatus.CONFIRMED)

    @property
    def spurious(self) -> Tuple[int, ...]:
        return self._with(PrimeStatus.SPURIOUS)

    @property
    def out_of_hypothesis(self) -> Tuple[int, ...]:
        return self._with(PrimeStatus.OUT_OF_HYPOTHESIS)

    def pair(self, i: int, j: int) -> PairRecord:
        for rec in self.pairs:
            if (rec.i, rec.j) == (i, j):
                return rec
        raise BadIndex(f"no record for pair ({i}, {j})")

    def to_dict(self) -> Dict[str, Any]:
        content = sorted({p for rec in self.pairs for p in rec.content_primes})
        return {
            "pairs": len(self.pairs),
            "delta": list(self.delta),
            "confirmed": list(self.confirmed),
            "spurious": list(self.spurious),
            "out_of_hypothesis": list(self.out_of_hypothesis),
            "content_primes": content,
        }


class PairCache:
    """Cache append-only des PairRecord (une ligne par paire)."""

    HEADER = "# a6-arc90 pair cache: i j resultant primes content-primes"

    def __init__(self, path: Union[str, Path]) -> None:
        self.path = Path(path)
        self._records: Dict[Tuple[int, int], PairRecord] = {}
        self._lock = threading.Lock()

    @classmethod
    def load(cls, path: Union[str, Path]) -> "PairCache":
        cache = cls(path)
        if cache.path.exists():
            with cache.path.open("r", encoding="utf-8") as f:
                for line_no, raw in enumerate(f, start=1):
                    line = raw.strip()
                    if not line or line.startswith("#"):
                        continue
                    rec = PairRecord.from_line(line, line_no)
                    cache._records[(rec.i, rec.j)] = rec
            log.info("Pair cache loaded: %s (%d records)", cache.path, len(cache._records))
        return cache

    def __len__(self) -> int:
        return len(self._records)

    def __contains__(self, key: object) -> bool:
        return key in self._records

    def get(self, i: int, j: int) -> Optional[PairRecord]:
        return self._records.get((i, j))

    def records(self) -> Tuple[PairRecord, ...]:
        return tuple(self._records[k] for k in sorted(self._records))

    def is_complete(self, total: int = PAIR_TOTAL) -> bool:
        return len(self._records) >= total

    def add(self, records: Iterable[PairRecord]) -> None:
        new = [rec for rec in records if (rec.i, rec.j) not in self._records]
        if not new:
            return
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            fresh = not self.path.exists()
            with self.path.open("a", encoding="utf-8") as f:
                if fresh:
                    f.write(self.HEADER + "\n")
                for rec in sorted(new, key=lambda r: (r.i, r.j)):
                    f.write(rec.to_line() + "\n")
                    self._records[(rec.i, rec.j)] = rec


def _pair_from_det(i: int, j: int, D: SymElem) -> PairRecord:
    if D.is_zero():
        raise ZeroResultant(f"D_{{{i},{j}}} is identically zero")
    g = D.content()
    res = eliminate(D.divexact(g))
    content_primes = factor_primes(g)
    primes = factor_primes(res) | content_primes
    return PairRecord(i, j, res, tuple(sorted(primes)), tuple(sorted(content_primes)))


def compute_pair(i: int, j: int, sympoints: Sequence[SymPoint]) -> PairRecord:
    """δ_{i,j} : premiers du contenu ∪ premiers du résultant de la partie primitive."""
    if i == j:
        raise BadIndex(f"pair needs i < j, got i = j = {i}")
    return _pair_from_det(i, j, collinearity_det(i, j, sympoints))


def _pair_job(args: Tuple[int, int, Tuple[SymElem, ...], Tuple[SymElem, ...], Tuple[SymElem, ...]]) -> PairRecord:
    i, j, p1, qi, qj = args
    return _pair_from_det(i, j, _det_sym(p1, qi, qj))


def confirm_prime(p: int) -> PrimeStatus:
    """Confirmation numérique : construct_orbit + arc_check au plus petit q valide."""
    if p < 7:
        return PrimeStatus.OUT_OF_HYPOTHESIS
    r = minimal_valid_degree(p)
    if r is None:  # pragma: no cover - p² ≡ 1 ou 19 (mod 30) pour tout p ≥ 7
        return PrimeStatus.SPURIOUS
    verdict = arc_check(construct_orbit(p, r))
    return PrimeStatus.SPURIOUS if verdict.is_arc else PrimeStatus.CONFIRMED


def _iter_pairs(n_points: int = ORBIT_SIZE) -> Iterator[Tuple[int, int]]:
    for i in range(1, n_points):
        for j in range(i + 1, n_points):
            yield i, j


def compute_delta(
    sympoints: Optional[Sequence[SymPoint]],
    *,
    cache: Optional[PairCache] = None,
    jobs: int = 1,
    confirm: bool = True,
    progress: bool = False,
) -> DeltaReport:
    """
    Élimination sur les 3916 paires puis étiquetage des premiers de δ.

    Les paires déjà présentes dans le cache ne sont pas recalculées ;
    sympoints peut être None si le cache est complet.
    """
    records: Dict[Tuple[int, int], PairRecord] = {}
    if cache is not None:
        records.update({(rec.i, rec.j): rec for rec in cache.records()})
    todo = [pair for pair in _iter_pairs() if pair not in records]

    if todo:
        if sympoints is None:
            raise SymcalcError(f"{len(todo)} pairs missing from the cache and no symbolic orbit given")
        log.info("Eliminating %d pairs (cached: %d, jobs=%d)", len(todo), len(records), jobs)
        p1 = sympoints[0].coords
        args = [(i, j, p1, sympoints[i].coords, sympoints[j].coords) for i, j in todo]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                fresh = list(tqdm(pool.map(_pair_job, args, chunksize=32), total=len(args),
                                  desc="pairs", disable=not progress))
        else:
            fresh = [_pair_job(a) for a in tqdm(args, desc="pairs", disable=not progress)]
        for rec in fresh:
            records[(rec.i, rec.j)] = rec
        if cache is not None:
            cache.add(fresh)
    else:
        log.info("All %d pairs served from cache", len(records))

    pairs = tuple(records[k] for k in sorted(records))
    delta = sorted({p for rec in pairs for p in rec.primes})
    status: Dict[int, PrimeStatus] = {}
    if confirm:
        for p in tqdm(delta, desc="confirm", disable=not progress):
            status[p] = confirm_prime(p)
    report = DeltaReport(pairs=pairs, status=status)
    log.info("δ = %s ; confirmed = %s ; spurious = %s", report.delta, report.confirmed, report.spurious)
    return report
