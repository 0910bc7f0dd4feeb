#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
============================================================
a6_arc90.orbit
------------------------------------------------------------
Description :
    Orbite 𝒪 de 90 points de Γ dans PG(2,q) ou PG(2,q²).

Rôle :
    - construct_orbit : t, z, s → générateurs → Γ → orbite de P1.
    - line_spectrum : spectre complet des droites par la route des sécantes
      (4005 droites par paires de points, tangentes par comptage, droites
      extérieures par soustraction), avec les trois identités de somme.
    - arc_check / completeness_check / verify_extension / export_mds.
    - line_spectrum_full_scan / brute_force_extensions : oracles exhaustifs
      (marquage dual numpy) pour les petits plans.

Notes :
    - Tous les calculs se font dans le plan où vit 𝒪 (ctx de SpecialElems).
    - L'indice 0 de l'orbite est toujours P1.
============================================================
"""

from __future__ import annotations

# ============================================================
# 📦 Imports
# ============================================================
import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from a6_arc90.config import DEFAULT_PLANE_BUDGET
from a6_arc90.field import FieldCtx, InvalidQ, SpecialElems, invalid_q_reason, make_field, special_elems
from a6_arc90.group import (
    GAMMA_ORDER,
    GeneratorSet,
    ProjectivityGroup,
    build_generators,
    generate,
    orbit_transversal,
    point_stabilizer,
)
from a6_arc90.plane import (
    Mat3,
    PlaneTooLarge,
    ProjLine,
    ProjPoint,
    all_points,
    apply,
    line_through,
    lines_through_point_indices,
    plane_size,
    point_from_index,
    points_on_line_indices,
)

# ============================================================
# 🔎 Public exports
# ============================================================
__all__ = [
    "OrbitError",
    "InternalInconsistency",
    "NotAnArc",
    "ORBIT_SIZE",
    "STABILIZER_ORDER",
    "EXCEPTIONAL_SPECTRA",
    "COMPLETE_ARC_Q",
    "ExceptionalCase",
    "OrbitResult",
    "LineSpectrum",
    "ArcVerdict",
    "CompletenessVerdict",
    "MdsExport",
    "OrbitCheck",
    "fixed_points_of_W",
    "construct_orbit",
    "secant_lines",
    "line_spectrum",
    "line_spectrum_full_scan",
    "arc_check",
    "completeness_check",
    "verify_extension",
    "brute_force_extensions",
    "export_mds",
    "check_orbit",
]

ORBIT_SIZE = 90
STABILIZER_ORDER = 4
PAIR_COUNT = comb(ORBIT_SIZE, 2)
WITNESS_CHUNK = 512
MAX_WITNESS_CANDIDATES = 500_000


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
class OrbitError(Exception):
    """Erreur du module orbit."""


class InternalInconsistency(OrbitError):
    """Post-condition certifiée violée (taille d'orbite, stabilisateur, identités)."""


class NotAnArc(OrbitError):
    """Export MDS demandé pour une orbite qui n'est pas un arc."""


# ============================================================
# 📚 Catalogue des cas exceptionnels
# ============================================================
@dataclass(frozen=True)
class ExceptionalCase:
    counts: Dict[int, int]
    complete: Optional[bool] = None

    @property
    def max_secancy(self) -> int:
        return max(self.counts)


EXCEPTIONAL_SPECTRA: Dict[Tuple[int, int], ExceptionalCase] = {
    (7, 2): ExceptionalCase({0: 336, 1: 810, 2: 765, 4: 540}, complete=True),
    (11, 2): ExceptionalCase({0: 7248, 1: 4320, 2: 3105, 5: 90}, complete=False),
    (13, 2): ExceptionalCase({0: 16896, 1: 8730, 2: 2925, 4: 180}, complete=False),
    (17, 2): ExceptionalCase({0: 61356, 1: 19170, 2: 2925, 3: 360}, complete=False),
    (19, 1): ExceptionalCase({0: 101676, 1: 25650, 2: 3285, 5: 72}, complete=False),
    (61, 1): ExceptionalCase({0: 1068, 1: 450, 2: 2025, 4: 180, 6: 60}),
    (109, 1): ExceptionalCase({0: 5736, 1: 2970, 2: 2925, 3: 360}),
    (181, 1): ExceptionalCase({0: 20208, 1: 9450, 2: 2925, 3: 360}),
    (229, 1): ExceptionalCase({0: 35436, 1: 14130, 2: 2925, 4: 180}),
    (241, 1): ExceptionalCase({0: 40008, 1: 15210, 2: 2925, 4: 180}),
    (421, 1): ExceptionalCase({0: 143328, 1: 31050, 2: 2925, 3: 360}),
}

# q (base) pour lesquels 𝒪 est un 90-arc complet
COMPLETE_ARC_Q = frozenset({349, 409, 529, 601, 661})


# ============================================================
# 🧩 Modèles
# ============================================================
@dataclass(frozen=True)
class OrbitResult:
    """
    Orbite construite pour q = p^r.

    points[i] est atteint par group.elements[transversal[i]] ; words[i] est le
    mot correspondant, indépendant du corps.
    """
    p: int
    r: int
    special: SpecialElems
    generators: GeneratorSet
    group: ProjectivityGroup
    points: Tuple[ProjPoint, ...]
    transversal: Tuple[int, ...]
    stabilizer: Tuple[Mat3, ...]
    _cache: Dict[str, Any] = field(default_factory=dict, compare=False, repr=False)

    @property
    def ctx(self) -> FieldCtx:
        return self.special.ctx

    @property
    def q_base(self) -> int:
        return self.special.base.q

    @property
    def plane_q(self) -> int:
        return self.ctx.q

    @property
    def basepoint(self) -> ProjPoint:
        return self.points[0]

    @property
    def words(self) -> Tuple[Tuple[str, ...], ...]:
        return tuple(self.group.words[i] for i in self.transversal)

    def index_map(self) -> Dict[ProjPoint, int]:
        return self._cached("index", lambda: {P: i for i, P in enumerate(self.points)})

    def encodings(self) -> np.ndarray:
        return self._cached("enc", lambda: np.array([P.encode() for P in self.points], dtype=np.int64))

    def _cached(self, key: str, build: Callable[[], Any]) -> Any:
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def to_dict(self) -> Dict[str, Any]:
        ordered = sorted(range(len(self.points)), key=lambda i: self.points[i].encode())
        return {
            "p": self.p,
            "r": self.r,
            "q_base": self.q_base,
            "plane_q": self.plane_q,
            "field": self.ctx.describe(),
            "special": self.special.to_dict(),
            "basepoint": self.basepoint.to_dict()["coords"],
            "points": [
                {"orbit_index": i, "coords": self.points[i].to_dict()["coords"]}
                for i in ordered
            ],
        }


@dataclass(frozen=True)
class LineSpectrum:
    """Nombre de droites de PG(2, plane_q) coupant 𝒪 en exactement m points."""
    counts: Dict[int, int]
    plane_q: int
    n_points: int = ORBIT_SIZE

    @property
    def max_secancy(self) -> int:
        return max(m for m, c in self.counts.items() if c)

    @property
    def type_string(self) -> str:
        return "(" + ",".join(str(m) for m in sorted(self.counts) if self.counts[m]) + ")"

    def identity_defects(self) -> List[str]:
        """Identités violées (liste vide si les trois sommes sont exactes)."""
        q, k = self.plane_q, self.n_points
        defects = []
        total = sum(self.counts.values())
        if total != plane_size(q):
            defects.append(f"sum count = {total} != q^2+q+1 = {plane_size(q)}")
        incidences = sum(m * c for m, c in self.counts.items())
        if incidences != k * (q + 1):
            defects.append(f"sum m*count = {incidences} != {k}*(q+1) = {k * (q + 1)}")
        pairs = sum(comb(m, 2) * c for m, c in self.counts.items())
        if pairs != comb(k, 2):
            defects.append(f"sum C(m,2)*count = {pairs} != C({k},2) = {comb(k, 2)}")
        return defects

    def check(self) -> "LineSpectrum":
        defects = self.identity_defects()
        if defects:
            raise InternalInconsistency("; ".join(defects))
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            "plane_q": self.plane_q,
            "type": self.type_string,
            "max_secancy": self.max_secancy,
            "counts": {str(m): c for m, c in sorted(self.counts.items())},
        }


@dataclass(frozen=True)
class ArcVerdict:
    is_arc: bool
    collinear_triples: Tuple[Tuple[int, int, int], ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {"is_arc": self.is_arc, "collinear_triples": len(self.collinear_triples)}


@dataclass(frozen=True)
class CompletenessVerdict:
    m: int
    complete: bool
    method: str
    witness: Optional[ProjPoint] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "m": self.m,
            "complete": self.complete,
            "method": self.method,
            "witness": None if self.witness is None else self.witness.to_dict()["coords"],
        }


@dataclass(frozen=True)
class MdsExport:
    """Matrice génératrice 3×n (codes) et paramètres [n, k, d]."""
    ctx: FieldCtx
    matrix: Tuple[Tuple[int, ...], ...]
    n: int
    k: int
    d: int

    @property
    def parameters(self) -> Tuple[int, int, int]:
        return (self.n, self.k, self.d)

    def formatted_rows(self) -> List[List[str]]:
        return [[self.ctx.format(c) for c in row] for row in self.matrix]

    def to_dict(self) -> Dict[str, Any]:
        return {"field": self.ctx.describe(), "n": self.n, "k": self.k, "d": self.d}


# ============================================================
# ✅ Construction
# ============================================================
def fixed_points_of_W(sp: SpecialElems, ctx: Optional[FieldCtx] = None) -> Tuple[ProjPoint, ProjPoint, ProjPoint]:
    """
    Points propres de 𝐖 : P1 = (1, (s−1)/2, (s−1)/2), P2 = (1, −(s+1)/2, −(s+1)/2),
    P3 = (0, 1, −1), après contrôle du polynôme caractéristique
    (λ² − 3)(λ − (1 + 2t)).
    """
    ctx = ctx or sp.ctx
    if ctx != sp.ctx:
        raise InvalidQ(f"s lives in {sp.ctx.describe()}, got {ctx.describe()}")
    W = build_generators(ctx, sp).W
    t, s = sp.t.value, sp.s.value
    half = ctx.inv(2)

    # λ³ − c1 λ² + c2 λ − c3 : c1 = 1 + 2t, c2 = −3, c3 = det 𝐖 = −3(1 + 2t)
    e = W.entries
    minor = lambda i, j: ctx.sub(ctx.mul(e[4 * i], e[4 * j]), ctx.mul(e[3 * i + j], e[3 * j + i]))  # noqa: E731
    c1 = ctx.add(ctx.add(e[0], e[4]), e[8])
    c2 = ctx.add(ctx.add(minor(0, 1), minor(0, 2)), minor(1, 2))
    c3 = W.det()
    one_2t = ctx.add(1, ctx.mul(2, t))
    if (c1, c2, c3) != (one_2t, ctx.neg(3), ctx.neg(ctx.mul(3, one_2t))):
        raise InternalInconsistency(f"Characteristic polynomial of W mismatch over {ctx.describe()}")

    a = ctx.mul(ctx.sub(s, 1), half)
    b = ctx.neg(ctx.mul(ctx.add(s, 1), half))
    P1 = ProjPoint.from_codes(ctx, (1, a, a))
    P2 = ProjPoint.from_codes(ctx, (1, b, b))
    P3 = ProjPoint.from_codes(ctx, (0, 1, ctx.neg(1)))
    for name, P in (("P1", P1), ("P2", P2), ("P3", P3)):
        if apply(W, P) != P:
            raise InternalInconsistency(f"{name} is not fixed by W over {ctx.describe()}")
    return P1, P2, P3


@lru_cache(maxsize=32)
def construct_orbit(
    p: int,
    r: int = 1,
    *,
    swap_t: bool = False,
    negate_z: bool = False,
    negate_s: bool = False,
) -> OrbitResult:
    """
    Orbite de P1 sous Γ pour q = p^r (remontée dans GF(q²) si 3 n'est pas un carré).

    Raises:
        InvalidQ / CompositeP / UnsupportedDegree: paramètres de corps.
        InternalInconsistency: |𝒪| ≠ 90 ou |Stab(P1)| ≠ 4.
    """
    base = make_field(p, r)
    reason = invalid_q_reason(p, r)
    if reason is not None:
        raise InvalidQ(reason)

    sp = special_elems(base, swap_t=swap_t, negate_z=negate_z, negate_s=negate_s)
    gens = build_generators(sp.ctx, sp)
    group = generate(gens)
    P1, _, _ = fixed_points_of_W(sp)

    transversal = orbit_transversal(group, P1)
    stabilizer = point_stabilizer(group, P1)
    if len(transversal) != ORBIT_SIZE or len(stabilizer) != STABILIZER_ORDER:
        raise InternalInconsistency(
            f"q={base.q}: orbit size {len(transversal)} (expected {ORBIT_SIZE}), "
            f"stabilizer order {len(stabilizer)} (expected {STABILIZER_ORDER})"
        )
    if len(transversal) * len(stabilizer) != GAMMA_ORDER:  # pragma: no cover
        raise InternalInconsistency("orbit-stabilizer relation violated")

    log.info("Orbit built: q=%d, plane_q=%d, |O|=%d, |Stab(P1)|=%d",
             base.q, sp.ctx.q, len(transversal), len(stabilizer))
    return OrbitResult(
        p=p,
        r=r,
        special=sp,
        generators=gens,
        group=group,
        points=tuple(P for P, _ in transversal),
        transversal=tuple(i for _, i in transversal),
        stabilizer=stabilizer,
    )


# ============================================================
# 📈 Spectre des droites
# ============================================================
def secant_lines(orb: OrbitResult) -> Dict[ProjLine, Tuple[int, ...]]:
    """Droites coupant 𝒪 en au moins 2 points → indices triés des points de 𝒪."""
    def build() -> Dict[ProjLine, Tuple[int, ...]]:
        lines: Dict[ProjLine, set] = {}
        pts = orb.points
        for i, j in combinations(range(len(pts)), 2):
            L = line_through(pts[i], pts[j])
            members = lines.get(L)
            if members is None:
                lines[L] = {i, j}
            else:
                members.update((i, j))
        return {L: tuple(sorted(v)) for L, v in lines.items()}

    return orb._cached("secants", build)


def line_spectrum(orb: OrbitResult) -> LineSpectrum:
    def build() -> LineSpectrum:
        q = orb.plane_q
        secants = secant_lines(orb)
        counts: Counter = Counter(len(v) for v in secants.values())
        through = [0] * len(orb.points)
        for members in secants.values():
            for i in members:
                through[i] += 1
        tangents = sum(q + 1 - d for d in through)
        if tangents:
            counts[1] = tangents
        external = plane_size(q) - sum(counts.values())
        if external:
            counts[0] = external
        spectrum = LineSpectrum(dict(sorted(counts.items())), q, len(orb.points)).check()
        log.info("Spectrum q=%d (plane %d): type %s, counts=%s",
                 orb.q_base, q, spectrum.type_string, spectrum.counts)
        return spectrum

    return orb._cached("spectrum", build)


def line_spectrum_full_scan(orb: OrbitResult, budget: int = DEFAULT_PLANE_BUDGET) -> LineSpectrum:
    """Oracle : compte, pour chaque droite du plan, les points de 𝒪 incidents."""
    n = plane_size(orb.plane_q)
    if n > budget:
        raise PlaneTooLarge(f"Full scan of PG(2,{orb.plane_q}) needs {n} lines, budget is {budget}")
    hits = np.zeros(n, dtype=np.int32)
    for P in orb.points:
        hits[lines_through_point_indices(P)] += 1
    hist = np.bincount(hits)
    counts = {m: int(c) for m, c in enumerate(hist) if c}
    return LineSpectrum(counts, orb.plane_q, len(orb.points)).check()


# ============================================================
# ✅ Arc / complétude
# ============================================================
def arc_check(orb: OrbitResult) -> ArcVerdict:
    triples: List[Tuple[int, int, int]] = []
    for members in secant_lines(orb).values():
        if len(members) >= 3:
            triples.extend(combinations(members, 3))
    triples.sort()
    verdict = ArcVerdict(is_arc=not triples, collinear_triples=tuple(triples))
    if verdict.is_arc != (line_spectrum(orb).max_secancy <= 2):  # pragma: no cover
        raise InternalInconsistency("Arc verdict disagrees with the line spectrum")
    return verdict


def verify_extension(orb: OrbitResult, Q: ProjPoint, m: int) -> bool:
    """True ssi Q ∉ 𝒪 et toute droite coupe 𝒪 ∪ {Q} en au plus m points."""
    if Q in orb.index_map():
        return False
    per_line = Counter(line_through(Q, P) for P in orb.points)
    return max(per_line.values()) <= m - 1


def _zero_dots(ctx: FieldCtx, lines: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """
    Matrice booléenne (droites × points) de l'incidence, par produits matriciels.

    lines : (k, 3) codes ; pts : (3, c) codes.
    """
    p = ctx.p
    if ctx.r == 1:
        return (lines @ pts) % p == 0
    a1, a0 = np.divmod(lines, p)
    b1, b0 = np.divmod(pts, p)
    c0 = (a0 @ b0 + ctx.nonresidue * (a1 @ b1)) % p
    c1 = (a0 @ b1 + a1 @ b0) % p
    return (c0 == 0) & (c1 == 0)


def _witness_search(
    orb: OrbitResult,
    blocking: Sequence[ProjLine],
    max_candidates: int,
) -> Optional[ProjPoint]:
    ctx, q = orb.ctx, orb.plane_q
    coeffs = np.array([L.coords for L in blocking], dtype=np.int64).reshape(-1, 3)
    orbit_enc = orb.encodings()
    limit = min(max_candidates, q * q)
    for start in range(0, limit, WITNESS_CHUNK):
        idx = np.arange(start, min(start + WITNESS_CHUNK, limit), dtype=np.int64)
        pts = np.vstack([np.ones_like(idx), idx // q, idx % q])
        if coeffs.shape[0]:
            blocked = _zero_dots(ctx, coeffs, pts).any(axis=0)
        else:
            blocked = np.zeros(idx.shape[0], dtype=bool)
        free = idx[~blocked & ~np.isin(idx, orbit_enc)]
        if free.size:
            return point_from_index(ctx, int(free[0]))
    return None


def completeness_check(
    orb: OrbitResult,
    m: Optional[int] = None,
    *,
    budget: int = DEFAULT_PLANE_BUDGET,
    max_candidates: int = MAX_WITNESS_CANDIDATES,
) -> CompletenessVerdict:
    """
    (90, m)-complétude : Q ∉ 𝒪 prolonge 𝒪 ssi Q n'est sur aucune droite portant
    au moins m points de 𝒪 (cohérent avec verify_extension pour tout m ≥ 2).

    Plan ≤ budget : marquage complet (numpy). Au-delà : recherche d'un témoin
    dans l'ordre d'énumération ; PlaneTooLarge si aucun n'est trouvé.
    """
    if m is None:
        m = line_spectrum(orb).max_secancy
    if m < 2:
        raise OrbitError(f"completeness needs m >= 2, got m={m}")
    q = orb.plane_q
    n = plane_size(q)
    blocking = [L for L, members in secant_lines(orb).items() if len(members) >= m]

    if n <= budget:
        covered = np.zeros(n, dtype=bool)
        for L in blocking:
            covered[points_on_line_indices(L)] = True
        covered[orb.encodings()] = True
        free = np.flatnonzero(~covered)
        witness = point_from_index(orb.ctx, int(free[0])) if free.size else None
        method = "full-marking"
    else:
        witness = _witness_search(orb, blocking, max_candidates)
        method = "witness-search"
        if witness is None:
            raise PlaneTooLarge(
                f"No extension point among the first {max_candidates} candidates of PG(2,{q}); "
                f"full marking needs {n} points, budget is {budget}"
            )

    if witness is not None and not verify_extension(orb, witness, m):
        raise InternalInconsistency(f"Witness {witness.format()} fails the extension check")
    verdict = CompletenessVerdict(m=m, complete=witness is None, method=method, witness=witness)
    log.info("Completeness q=%d (m=%d, %s): %s", orb.q_base, m, method,
             "complete" if verdict.complete else f"incomplete, witness {witness}")
    return verdict


def brute_force_extensions(orb: OrbitResult, m: int, budget: int = DEFAULT_PLANE_BUDGET) -> List[ProjPoint]:
    """Oracle : tous les points du plan qui prolongent 𝒪 (verify_extension sur chaque point)."""
    return [Q for Q in all_points(orb.ctx, budget) if verify_extension(orb, Q, m)]


# ============================================================
# ✅ Export MDS
# ============================================================
def export_mds(orb: OrbitResult) -> MdsExport:
    verdict = arc_check(orb)
    if not verdict.is_arc:
        raise NotAnArc(
            f"q={orb.q_base}: orbit has {len(verdict.collinear_triples)} collinear triples "
            f"(type {line_spectrum(orb).type_string})"
        )
    n = len(orb.points)
    matrix = tuple(tuple(P.coords[k] for P in orb.points) for k in range(3))
    d = n - line_spectrum(orb).max_secancy
    return MdsExport(ctx=orb.ctx, matrix=matrix, n=n, k=3, d=d)


# ============================================================
# 🧾 Bilan complet (commande check)
# ============================================================
@dataclass(frozen=True)
class OrbitCheck:
    orbit: OrbitResult
    arc: ArcVerdict
    spectrum: LineSpectrum
    completeness: Optional[CompletenessVerdict]
    completeness_note: Optional[str] = None

    @property
    def verdict(self) -> str:
        if self.arc.is_arc:
            head = f"{len(self.orbit.points)}-arc"
        else:
            head = f"set of type {self.spectrum.type_string}"
        if self.completeness is None:
            return f"{head}, completeness undecided"
        return f"{head}, {'complete' if self.completeness.complete else 'incomplete'}"

    def catalogue_mismatch(self) -> Optional[str]:
        case = EXCEPTIONAL_SPECTRA.get((self.orbit.p, self.orbit.r))
        if case is None:
            if any(key[0] == self.orbit.p for key in EXCEPTIONAL_SPECTRA):
                # même p, degré non minimal : spectre non catalogué
                return None
            if not self.arc.is_arc:
                return f"q={self.orbit.q_base} is not a catalogued exception but is not an arc"
            if self.completeness is not None and self.orbit.q_base in COMPLETE_ARC_Q \
                    and not self.completeness.complete:
                return f"q={self.orbit.q_base} should be a complete arc"
            return None
        if self.spectrum.counts != case.counts:
            return f"spectrum {self.spectrum.counts} != catalogue {case.counts}"
        if case.complete is not None and self.completeness is not None \
                and self.completeness.complete != case.complete:
            return f"completeness {self.completeness.complete} != catalogue {case.complete}"
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.orbit.p,
            "r": self.orbit.r,
            "q_base": self.orbit.q_base,
            "plane_q": self.orbit.plane_q,
            "verdict": self.verdict,
            "arc": self.arc.to_dict(),
            "spectrum": self.spectrum.to_dict(),
            "completeness": None if self.completeness is None else self.completeness.to_dict(),
            "completeness_note": self.completeness_note,
            "catalogue_mismatch": self.catalogue_mismatch(),
        }


def check_orbit(orb: OrbitResult, *, budget: int = DEFAULT_PLANE_BUDGET) -> OrbitCheck:
    """arc_check + line_spectrum + completeness_check (undecided si le plan est trop grand)."""
    spectrum = line_spectrum(orb)
    arc = arc_check(orb)
    note = None
    try:
        completeness: Optional[CompletenessVerdict] = completeness_check(orb, spectrum.max_secancy, budget=budget)
    except PlaneTooLarge as e:
        log.warning("Completeness undecided for q=%d: %s", orb.q_base, e)
        completeness, note = None, str(e)
    return OrbitCheck(orbit=orb, arc=arc, spectrum=spectrum, completeness=completeness, completeness_note=note)
