#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
============================================================
a6_arc90.validators
------------------------------------------------------------
Description :
    Certification d'une orbite construite (et de son bilan check).

Rôle :
    - Vérifier les invariants sur lesquels reposent les verdicts :
        * |𝒪| = 90, points distincts, indice 0 = P1
        * Stab(P1) = ⟨W̄⟩ d'ordre 4, |Γ| = 360, histogramme des ordres d'A6
        * 𝒪 est Γ-invariante, V̄ échange P1 et P2, V̄ et W̄ fixent P3
        * identités de somme du spectre, borne des arcs (q + 2 ≥ 90)
        * accord avec le catalogue des cas exceptionnels
    - Produire un rapport structuré (erreurs / warnings / stats)
    - Fournir une exception dédiée pour rejeter une certification en échec

Notes :
    - Ne lève pas d'exception : voir raise_if_invalid.
============================================================
"""

from __future__ import annotations

# ============================================================
# 📦 Imports
# ============================================================
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from a6_arc90.group import A6_ORDER_HISTOGRAM, GAMMA_ORDER
from a6_arc90.orbit import (
    ORBIT_SIZE,
    STABILIZER_ORDER,
    OrbitCheck,
    OrbitResult,
    fixed_points_of_W,
    line_spectrum,
)
from a6_arc90.plane import Mat3, apply

# ============================================================
# 🔎 Public exports
# ============================================================
__all__ = [
    "CertificationError",
    "ValidationIssue",
    "ValidationReport",
    "validate_orbit_result",
    "raise_if_invalid",
]


# ============================================================
# ⚠️ Exceptions / Issues
# ============================================================
class CertificationError(Exception):
    """Certification d'orbite en échec (bloquant)."""


@dataclass(frozen=True)
class ValidationIssue:
    """Une anomalie de certification (erreur ou warning)."""
    code: str
    message: str
    context: Dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {"code": self.code, "message": self.message, "context": dict(self.context)}


# ============================================================
# 🧾 Rapport de certification
# ============================================================
@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    errors: List[ValidationIssue] = field(default_factory=list)
    warnings: List[ValidationIssue] = field(default_factory=list)

    q_base: int = 0
    plane_q: int = 0
    orbit_size: int = 0
    stabilizer_order: int = 0
    group_order: int = 0
    order_histogram: Dict[int, int] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ok": self.ok,
            "errors": [e.to_dict() for e in self.errors],
            "warnings": [w.to_dict() for w in self.warnings],
            "q_base": self.q_base,
            "plane_q": self.plane_q,
            "orbit_size": self.orbit_size,
            "stabilizer_order": self.stabilizer_order,
            "group_order": self.group_order,
            "order_histogram": {str(k): v for k, v in sorted(self.order_histogram.items())},
        }


# ============================================================
# 🔧 Internals (helpers privés)
# ============================================================
def _powers(M: Mat3, n: int) -> List[Mat3]:
    acc = Mat3.identity(M.ctx)
    out = []
    for _ in range(n):
        out.append(acc)
        acc = M @ acc
    return out


# ============================================================
# ✅ Validation principale
# ============================================================
def validate_orbit_result(orb: OrbitResult, check: Optional[OrbitCheck] = None) -> ValidationReport:
    """
    Certifie une orbite. Ne lève pas d'exception : retourne un ValidationReport.

    Erreurs : tout invariant structurel violé, identité de spectre fausse,
    désaccord avec le catalogue.
    Warnings : complétude non décidée.
    """
    errors: List[ValidationIssue] = []
    warnings: List[ValidationIssue] = []
    q = str(orb.q_base)

    points = orb.points
    if len(points) != ORBIT_SIZE or len(set(points)) != len(points):
        errors.append(ValidationIssue(
            code="ORBIT_SIZE",
            message=f"Orbit must contain {ORBIT_SIZE} distinct points.",
            context={"q": q, "size": str(len(points)), "distinct": str(len(set(points)))},
        ))

    P1, P2, P3 = fixed_points_of_W(orb.special)
    if not points or points[0] != P1:
        errors.append(ValidationIssue(
            code="BASEPOINT",
            message="Orbit index 0 must be the eigenvector point P1 of W.",
            context={"q": q, "expected": P1.format()},
        ))

    gens = orb.generators
    w_powers = set(_powers(gens.W, STABILIZER_ORDER))
    if len(orb.stabilizer) != STABILIZER_ORDER or set(orb.stabilizer) != w_powers:
        errors.append(ValidationIssue(
            code="STABILIZER",
            message="Stabilizer of P1 must be the cyclic group of order 4 generated by W.",
            context={"q": q, "order": str(len(orb.stabilizer))},
        ))

    histogram = orb.group.order_histogram()
    if orb.group.order != GAMMA_ORDER or histogram != A6_ORDER_HISTOGRAM:
        errors.append(ValidationIssue(
            code="GROUP_ORDER",
            message="Γ must have order 360 with the element-order histogram of A6.",
            context={"q": q, "order": str(orb.group.order), "histogram": str(histogram)},
        ))

    index = orb.index_map()
    escaped = [
        (name, i) for name, g in gens.items() for i, P in enumerate(points) if apply(g, P) not in index
    ]
    if escaped:
        errors.append(ValidationIssue(
            code="GAMMA_INVARIANCE",
            message="Generator images must stay inside the orbit.",
            context={"q": q, "count": str(len(escaped)),
                     "preview": "; ".join(f"{n}(P{i})" for n, i in escaped[:10])},
        ))

    if apply(gens.V, P1) != P2:
        errors.append(ValidationIssue(
            code="V_SWAP",
            message="V must interchange P1 and P2.",
            context={"q": q},
        ))
    if apply(gens.V, P3) != P3 or apply(gens.W, P3) != P3:
        errors.append(ValidationIssue(
            code="P3_FIXED",
            message="V and W must fix P3 = (0, 1, -1).",
            context={"q": q},
        ))

    spectrum = check.spectrum if check is not None else line_spectrum(orb)
    defects = spectrum.identity_defects()
    if defects:
        errors.append(ValidationIssue(
            code="SPECTRUM_IDENTITIES",
            message="Line spectrum violates the counting identities.",
            context={"q": q, "defects": "; ".join(defects)},
        ))

    if check is not None:
        if check.arc.is_arc and orb.plane_q + 2 < ORBIT_SIZE:
            errors.append(ValidationIssue(
                code="ARC_BOUND",
                message="An arc in PG(2,q) has at most q + 2 points.",
                context={"q": q, "plane_q": str(orb.plane_q)},
            ))
        mismatch = check.catalogue_mismatch()
        if mismatch:
            errors.append(ValidationIssue(
                code="CATALOGUE_MISMATCH",
                message="Result disagrees with the exceptional-case catalogue.",
                context={"q": q, "detail": mismatch},
            ))
        if check.completeness is None:
            warnings.append(ValidationIssue(
                code="COMPLETENESS_UNDECIDED",
                message="Completeness could not be decided within the plane budget.",
                context={"q": q, "detail": check.completeness_note or ""},
            ))

    return ValidationReport(
        ok=not errors,
        errors=errors,
        warnings=warnings,
        q_base=orb.q_base,
        plane_q=orb.plane_q,
        orbit_size=len(points),
        stabilizer_order=len(orb.stabilizer),
        group_order=orb.group.order,
        order_histogram=histogram,
    )


def raise_if_invalid(report: ValidationReport) -> None:
    """
    Lève CertificationError si report.ok == False.
    Message synthétique, mais exploitable (liste codes).
    """
    if report.ok:
        return
    codes = sorted({e.code for e in report.errors})
    raise CertificationError(f"Orbit certification failed (q={report.q_base}): {', '.join(codes)}")
