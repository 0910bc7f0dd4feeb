#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
============================================================
a6-arc90 — the A6-invariant 90-point orbit in PG(2,q)
------------------------------------------------------------
Public package exports for stable imports.

This module defines the public API of a6_arc90:
- Finite fields GF(p^r) and the special elements t, z, s
- Projective plane primitives (points, lines, 3×3 matrices)
- The projectivity group Γ ≅ A6 and its 90-point orbit
- Arc / spectrum / completeness checks and the MDS export
- Symbolic elimination of the exceptional primes δ
============================================================
"""

from __future__ import annotations

__version__ = "0.1.0"

# ============================================================
# 📦 Imports — fields & plane
# ============================================================
from a6_arc90.field import (
    FieldCtx,
    FieldElem,
    SpecialElems,
    make_field,
    minimal_valid_degree,
    special_elems,
    validate_q,
)
from a6_arc90.plane import Mat3, ProjLine, ProjPoint, apply, collinear, line_through

# ============================================================
# 🔗 Imports — group & orbit
# ============================================================
from a6_arc90.group import GeneratorSet, ProjectivityGroup, build_generators, generate
from a6_arc90.orbit import (
    LineSpectrum,
    OrbitCheck,
    OrbitResult,
    arc_check,
    check_orbit,
    completeness_check,
    construct_orbit,
    export_mds,
    line_spectrum,
)

# ============================================================
# 🧮 Imports — symbolic elimination
# ============================================================
from a6_arc90.symcalc import DeltaReport, PairCache, compute_delta, eliminate, factor_primes

# ============================================================
# 🔎 Public API
# ============================================================
__all__ = [
    "__version__",
    # field / plane
    "FieldCtx",
    "FieldElem",
    "SpecialElems",
    "make_field",
    "minimal_valid_degree",
    "special_elems",
    "validate_q",
    "Mat3",
    "ProjLine",
    "ProjPoint",
    "apply",
    "collinear",
    "line_through",
    # group / orbit
    "GeneratorSet",
    "ProjectivityGroup",
    "build_generators",
    "generate",
    "LineSpectrum",
    "OrbitCheck",
    "OrbitResult",
    "arc_check",
    "check_orbit",
    "completeness_check",
    "construct_orbit",
    "export_mds",
    "line_spectrum",
    # symcalc
    "DeltaReport",
    "PairCache",
    "compute_delta",
    "eliminate",
    "factor_primes",
]
