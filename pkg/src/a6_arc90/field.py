#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
============================================================
a6_arc90.field
------------------------------------------------------------
Description :
    Arithmétique exacte dans GF(p^r), r ∈ {1, 2}.

Rôle :
    - FieldCtx : contexte immuable (p, r, modulus) ; les éléments sont
      manipulés en interne comme des codes entiers c0 + c1·p
      (vecteur de coefficients dans la base 1, w avec w² = n).
    - FieldElem : valeur publique (ctx + code) avec opérateurs.
    - Racines carrées canoniques, racine cubique primitive de l'unité,
      éléments spéciaux t, z, s, Δ de la construction.
    - Opérations vectorisées (numpy) pour les balayages du plan.

Conventions :
    - GF(p²) = GF(p)[w]/(w² − n), n plus petit non-résidu quadratique mod p.
    - Le plongement GF(p) → GF(p²) est l'identité sur les codes.
    - "Canonique" = plus petit code entier parmi les deux candidats.

Notes :
    - q est toujours donné comme (p, r), jamais comme entier nu.
============================================================
"""

from __future__ import annotations

# ============================================================
# 📦 Imports
# ============================================================
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, Iterator, Optional, Tuple, Union

import numpy as np
from sympy import isprime
from sympy.ntheory.residue_ntheory import legendre_symbol, sqrt_mod

# ============================================================
# 🔎 Public exports
# ============================================================
__all__ = [
    "FieldError",
    "CompositeP",
    "UnsupportedDegree",
    "NoCubeRoot",
    "InvalidQ",
    "MixedFields",
    "FieldCtx",
    "FieldElem",
    "SpecialElems",
    "make_field",
    "validate_q",
    "invalid_q_reason",
    "minimal_valid_degree",
    "sqrt",
    "primitive_cube_root",
    "special_elems",
]

VALID_RESIDUES_MOD_30 = (1, 19)
MIN_CHARACTERISTIC = 7


# ============================================================
# ⚠️ Exceptions
# ============================================================
class FieldError(Exception):
    """Erreur du module field (paramètres ou arithmétique)."""


class CompositeP(FieldError):
    """p n'est pas premier."""


class UnsupportedDegree(FieldError):
    """Degré d'extension hors de {1, 2}."""


class NoCubeRoot(FieldError):
    """3 ne divise pas q − 1 : pas de racine cubique primitive de l'unité."""


class InvalidQ(FieldError):
    """q ne vérifie pas q ≡ 1 ou 19 (mod 30), ou p < 7."""


class MixedFields(FieldError):
    """Opération entre éléments de contextes différents."""


# ============================================================
# 🧩 Contexte de corps
# ============================================================
@dataclass(frozen=True)
class FieldCtx:
    """
    Contexte GF(p^r).

    - r = 1 : corps premier, nonresidue = 0 (contexte "identité").
    - r = 2 : GF(p)[w]/(w² − nonresidue).

    Deux contextes de mêmes (p, r, nonresidue) sont égaux et interchangeables.
    """
    p: int
    r: int = 1
    nonresidue: int = 0
    q: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", self.p ** self.r)

    # ----------------------------
    # Description
    # ----------------------------
    @property
    def modulus(self) -> Tuple[int, ...]:
        """Coefficients (ordre croissant) du polynôme unitaire définissant l'extension."""
        if self.r == 1:
            return (0, 1)
        return ((-self.nonresidue) % self.p, 0, 1)

    def describe(self) -> str:
        if self.r == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^2) = GF({self.p})[w]/(w^2 - {self.nonresidue})"

    # ----------------------------
    # Codes <-> coefficients
    # ----------------------------
    def elem(self, coeffs: Any) -> int:
        """Code entier depuis un vecteur de coefficients (ou un entier de GF(p))."""
        if isinstance(coeffs, int):
            return coeffs % self.p
        cs = tuple(int(c) % self.p for c in coeffs)
        if len(cs) > self.r or any(cs[self.r:]):
            raise FieldError(f"Coefficient vector {tuple(coeffs)} too long for {self.describe()}")
        code = 0
        for c in reversed(cs):
            code = code * self.p + c
        return code

    def coeffs(self, a: int) -> Tuple[int, ...]:
        if self.r == 1:
            return (a,)
        hi, lo = divmod(a, self.p)
        return (lo, hi)

    def from_int(self, k: int) -> int:
        return k % self.p

    def format(self, a: int) -> str:
        """Entier pour r = 1, "a+b*w" pour r = 2."""
        if self.r == 1:
            return str(a)
        lo, hi = self.coeffs(a)
        return f"{lo}+{hi}*w"

    def is_base(self, a: int) -> bool:
        return a < self.p

    def elements(self) -> Iterator[int]:
        return iter(range(self.q))

    # ----------------------------
    # Arithmétique scalaire
    # ----------------------------
    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.r == 1:
            return (a + b) % p
        a1, a0 = divmod(a, p)
        b1, b0 = divmod(b, p)
        return (a0 + b0) % p + ((a1 + b1) % p) * p

    def neg(self, a: int) -> int:
        p = self.p
        if self.r == 1:
            return (-a) % p
        a1, a0 = divmod(a, p)
        return (-a0) % p + ((-a1) % p) * p

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        p = self.p
        if self.r == 1:
            return (a * b) % p
        a1, a0 = divmod(a, p)
        b1, b0 = divmod(b, p)
        c0 = (a0 * b0 + self.nonresidue * a1 * b1) % p
        c1 = (a0 * b1 + a1 * b0) % p
        return c0 + c1 * p

    def norm(self, a: int) -> int:
        """Norme GF(p²) → GF(p) (identité pour r = 1)."""
        if self.r == 1:
            return a
        a1, a0 = divmod(a, self.p)
        return (a0 * a0 - self.nonresidue * a1 * a1) % self.p

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self.describe()}")
        p = self.p
        if self.r == 1:
            return pow(a, -1, p)
        a1, a0 = divmod(a, p)
        n_inv = pow(self.norm(a), -1, p)
        return (a0 * n_inv) % p + ((-a1 * n_inv) % p) * p

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.r == 1:
            return pow(a, e, self.p)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def frobenius(self, a: int) -> int:
        """x ↦ x^p ; w^p = −w pour w² = n non-résidu."""
        if self.r == 1:
            return a
        a1, a0 = divmod(a, self.p)
        return a0 + ((-a1) % self.p) * self.p

    # ----------------------------
    # Carrés
    # ----------------------------
    def is_square(self, a: int) -> bool:
        if a == 0:
            return True
        # x^((p²−1)/2) = N(x)^((p−1)/2)
        return legendre_symbol(self.norm(a), self.p) == 1

    def sqrt(self, a: int) -> Optional[int]:
        """Racine carrée canonique (plus petit code), None si a n'est pas un carré."""
        if a == 0:
            return 0
        if not self.is_square(a):
            return None
        if self.r == 1:
            root = _sqrt_prime(a, self.p)
        else:
            root = self._sqrt_quadratic(a)
        if root is None or self.mul(root, root) != a:
            raise FieldError(f"Square root computation failed for {self.format(a)} in {self.describe()}")
        return min(root, self.neg(root))

    def _sqrt_quadratic(self, a: int) -> Optional[int]:
        p, n = self.p, self.nonresidue
        a1, a0 = divmod(a, p)
        if a1 == 0:
            base_root = _sqrt_prime(a0, p)
            if base_root is not None:
                return base_root
            # a0 non-résidu : (c·w)² = c²·n
            c = _sqrt_prime((a0 * pow(n, -1, p)) % p, p)
            return None if c is None else c * p
        s_norm = _sqrt_prime(self.norm(a), p)
        if s_norm is None:
            return None
        half = pow(2, -1, p)
        for sign in (s_norm, (-s_norm) % p):
            x0 = _sqrt_prime(((a0 + sign) * half) % p, p)
            if x0:
                x1 = (a1 * pow(2 * x0, -1, p)) % p
                return x0 + x1 * p
        return None

    # ----------------------------
    # Opérations vectorisées (numpy int64)
    # ----------------------------
    def vadd(self, a: np.ndarray, b: Union[np.ndarray, int]) -> np.ndarray:
        p = self.p
        if self.r == 1:
            return (a + b) % p
        a1, a0 = np.divmod(a, p)
        b1, b0 = np.divmod(b, p)
        return (a0 + b0) % p + ((a1 + b1) % p) * p

    def vneg(self, a: np.ndarray) -> np.ndarray:
        p = self.p
        if self.r == 1:
            return (-a) % p
        a1, a0 = np.divmod(a, p)
        return (-a0) % p + ((-a1) % p) * p

    def vscale(self, a: np.ndarray, c: int) -> np.ndarray:
        """Produit terme à terme d'un tableau de codes par un scalaire c."""
        p = self.p
        if self.r == 1:
            return (a * c) % p
        c1, c0 = divmod(c, p)
        a1, a0 = np.divmod(a, p)
        r0 = (a0 * c0 + self.nonresidue * ((a1 * c1) % p)) % p
        r1 = (a0 * c1 + a1 * c0) % p
        return r0 + r1 * p


def _sqrt_prime(a: int, p: int) -> Optional[int]:
    """Plus petite racine carrée de a modulo p (sympy), None si non-résidu."""
    a %= p
    if a == 0:
        return 0
    roots = sqrt_mod(a, p, all_roots=True)
    if not roots:
        return None
    return int(min(roots))


# ============================================================
# 🧱 Élément public
# ============================================================
@dataclass(frozen=True)
class FieldElem:
    """Élément de GF(p^r) : contexte + code canonique."""
    ctx: FieldCtx
    value: int

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.ctx.q:
            raise FieldError(f"Code {self.value} out of range for {self.ctx.describe()}")

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return self.ctx.coeffs(self.value)

    def _other(self, other: Any) -> int:
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise MixedFields(f"{self.ctx.describe()} vs {other.ctx.describe()}")
            return other.value
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented  # type: ignore[return-value]

    def _wrap(self, code: int) -> "FieldElem":
        return FieldElem(self.ctx, code)

    def __add__(self, other: Any) -> "FieldElem":
        return self._wrap(self.ctx.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other: Any) -> "FieldElem":
        return self._wrap(self.ctx.sub(self.value, self._other(other)))

    def __rsub__(self, other: Any) -> "FieldElem":
        return self._wrap(self.ctx.sub(self._other(other), self.value))

    def __mul__(self, other: Any) -> "FieldElem":
        return self._wrap(self.ctx.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "FieldElem":
        return self._wrap(self.ctx.div(self.value, self._other(other)))

    def __neg__(self) -> "FieldElem":
        return self._wrap(self.ctx.neg(self.value))

    def __pow__(self, e: int) -> "FieldElem":
        return self._wrap(self.ctx.pow(self.value, e))

    def inverse(self) -> "FieldElem":
        return self._wrap(self.ctx.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self) -> str:
        return self.ctx.format(self.value)


# ============================================================
# ✅ Construction / validation
# ============================================================
def _least_nonresidue(p: int) -> int:
    for n in range(2, p):
        if legendre_symbol(n, p) == -1:
            return n
    raise FieldError(f"No quadratic non-residue modulo {p}")  # pragma: no cover


@lru_cache(maxsize=None)
def make_field(p: int, r: int = 1) -> FieldCtx:
    """
    Construit GF(p^r).

    Raises:
        CompositeP: p non premier.
        UnsupportedDegree: r ∉ {1, 2}.
        InvalidQ: p premier mais p < 7.
    """
    if r not in (1, 2):
        raise UnsupportedDegree(f"Extension degree r={r} not supported (allowed: 1, 2)")
    if not isprime(p):
        raise CompositeP(f"p={p} is not prime")
    if p < MIN_CHARACTERISTIC:
        raise InvalidQ(f"p={p} is outside the hypothesis p >= {MIN_CHARACTERISTIC}")
    if r == 1:
        return FieldCtx(p=p, r=1)
    return FieldCtx(p=p, r=2, nonresidue=_least_nonresidue(p))


def invalid_q_reason(p: int, r: int) -> Optional[str]:
    """Message nommant la congruence violée, None si q est valide."""
    q = p ** r
    if q % 30 in VALID_RESIDUES_MOD_30:
        return None
    label = f"{p}^{r}" if r > 1 else str(p)
    return f"q = {label} = {q} ≡ {q % 30} (mod 30); need q ≡ 1 or 19 (mod 30)"


def validate_q(p: int, r: int = 1) -> bool:
    """
    True ssi q = p^r ≡ 1 ou 19 (mod 30).

    Post-condition vérifiée : le résultat coïncide avec
    (3 | q − 1) ET (5 est un carré dans GF(q)).
    """
    q = p ** r
    result = q % 30 in VALID_RESIDUES_MOD_30
    ctx = make_field(p, r)
    cross = (q - 1) % 3 == 0 and ctx.is_square(ctx.from_int(5))
    if result != cross:
        raise FieldError(f"validate_q cross-check failed for q={q}: congruence={result}, algebraic={cross}")
    return result


def minimal_valid_degree(p: int) -> Optional[int]:
    """Plus petit r ∈ {1, 2} tel que p^r ≡ 1 ou 19 (mod 30), None sinon."""
    for r in (1, 2):
        if (p ** r) % 30 in VALID_RESIDUES_MOD_30:
            return r
    return None


def sqrt(ctx: FieldCtx, a: FieldElem) -> Optional[FieldElem]:
    """Racine carrée canonique de a, None si a n'est pas un carré."""
    if a.ctx != ctx:
        raise MixedFields(f"{a.ctx.describe()} vs {ctx.describe()}")
    root = ctx.sqrt(a.value)
    return None if root is None else FieldElem(ctx, root)


def primitive_cube_root(ctx: FieldCtx) -> FieldElem:
    """t canonique avec t² + t + 1 = 0, t ≠ 1."""
    if (ctx.q - 1) % 3 != 0:
        raise NoCubeRoot(f"3 does not divide q - 1 = {ctx.q - 1}")
    d = ctx.sqrt(ctx.neg(3))
    if d is None:  # pragma: no cover - exclu par 3 | q − 1
        raise NoCubeRoot(f"-3 is not a square in {ctx.describe()}")
    half = ctx.inv(2)
    minus_one = ctx.neg(1)
    candidates = (ctx.mul(ctx.add(minus_one, d), half), ctx.mul(ctx.sub(minus_one, d), half))
    t = min(candidates)
    if ctx.add(ctx.add(ctx.mul(t, t), t), 1) != 0 or t == 1:
        raise FieldError(f"Cube root check failed in {ctx.describe()}")
    return FieldElem(ctx, t)


# ============================================================
# 🧩 Éléments spéciaux t, z, s, Δ
# ============================================================
@dataclass(frozen=True)
class SpecialElems:
    """
    Constantes de la construction.

    - base : GF(q) de départ.
    - ctx : corps contenant s (base, ou GF(q²) si 3 n'est pas un carré).
    - t, z, s, delta : éléments de ctx (t, z appartiennent à la base).
    """
    base: FieldCtx
    ctx: FieldCtx
    t: FieldElem
    z: FieldElem
    s: FieldElem
    delta: FieldElem
    s_in_extension: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "base": self.base.describe(),
            "home": self.ctx.describe(),
            "t": str(self.t),
            "z": str(self.z),
            "s": str(self.s),
            "delta": str(self.delta),
            "s_in_extension": self.s_in_extension,
        }


def special_elems(
    ctx: FieldCtx,
    *,
    swap_t: bool = False,
    negate_z: bool = False,
    negate_s: bool = False,
) -> SpecialElems:
    """
    Assemble t, z, s, Δ = t − t².

    Les options swap_t (t ↔ t²), negate_z, negate_s sélectionnent les autres
    choix de racines ; la construction projective n'en dépend pas.
    """
    reason = invalid_q_reason(ctx.p, ctx.r)
    if reason is not None:
        raise InvalidQ(reason)

    t = primitive_cube_root(ctx).value
    if swap_t:
        t = ctx.mul(t, t)
    z = ctx.sqrt(ctx.from_int(5))
    if z is None:  # pragma: no cover - exclu par validate_q
        raise InvalidQ(f"5 is not a square in {ctx.describe()}")
    if negate_z:
        z = ctx.neg(z)

    home = ctx
    s = ctx.sqrt(ctx.from_int(3))
    if s is None:
        if ctx.r != 1:  # pragma: no cover - tout élément de GF(p) est un carré dans GF(p²)
            raise FieldError(f"3 is not a square in {ctx.describe()}")
        home = make_field(ctx.p, 2)
        s = home.sqrt(home.from_int(3))
        if s is None:  # pragma: no cover
            raise FieldError(f"3 is not a square in {home.describe()}")
    if negate_s:
        s = home.neg(s)

    delta = home.sub(t, home.mul(t, t))
    sp = SpecialElems(
        base=ctx,
        ctx=home,
        t=FieldElem(home, t),
        z=FieldElem(home, z),
        s=FieldElem(home, s),
        delta=FieldElem(home, delta),
        s_in_extension=home is not ctx,
    )
    if (sp.t ** 3).value != 1 or sp.t.value == 1 or (sp.z * sp.z).value != home.from_int(5) \
            or (sp.s * sp.s).value != home.from_int(3):
        raise FieldError(f"Special element equations failed over {home.describe()}")
    return sp
