#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
============================================================
a6_arc90.group
------------------------------------------------------------
Description :
    Génération du groupe de projectivités Γ = ⟨Ū, Ω̄, V̄, W̄⟩ ≅ A6 (ordre 360).

Rôle :
    - build_generators : les quatre matrices U, Ω, V, W à partir de t, z, Δ.
    - generate : fermeture BFS (file FIFO, générateurs dans l'ordre
      U, Omega, V, W), dédoublonnage par forme canonique, un mot par élément.
    - point_stabilizer / orbit / orbit_transversal.

Conventions :
    - Le mot (g1, g2, ..., gk) désigne le produit M_g1 · M_g2 · ... · M_gk ;
      le générateur le plus à droite agit en premier sur un point.
============================================================
"""

from __future__ import annotations

# ============================================================
# 📦 Imports
# ============================================================
import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Tuple

from a6_arc90.field import FieldCtx, InvalidQ, SpecialElems, invalid_q_reason
from a6_arc90.plane import Mat3, ProjPoint, apply

# ============================================================
# 🔎 Public exports
# ============================================================
__all__ = [
    "GroupError",
    "ClosureOverflow",
    "GENERATOR_NAMES",
    "GAMMA_ORDER",
    "A6_ORDER_HISTOGRAM",
    "WORD_CAP",
    "GeneratorSet",
    "ProjectivityGroup",
    "build_generators",
    "generate",
    "point_stabilizer",
    "orbit",
    "orbit_transversal",
    "element_by_word",
]

GENERATOR_NAMES: Tuple[str, ...] = ("U", "Omega", "V", "W")
GAMMA_ORDER = 360
A6_ORDER_HISTOGRAM: Dict[int, int] = {1: 1, 2: 45, 3: 80, 4: 90, 5: 144}
WORD_CAP = 25

Word = Tuple[str, ...]


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
class GroupError(Exception):
    """Erreur de génération du groupe."""


class ClosureOverflow(GroupError):
    """La fermeture dépasse 360 éléments ou la borne de longueur des mots."""


# ============================================================
# 🧩 Modèles
# ============================================================
@dataclass(frozen=True)
class GeneratorSet:
    U: Mat3
    Omega: Mat3
    V: Mat3
    W: Mat3

    @property
    def ctx(self) -> FieldCtx:
        return self.U.ctx

    def by_name(self, name: str) -> Mat3:
        if name not in GENERATOR_NAMES:
            raise GroupError(f"Unknown generator {name!r}")
        return getattr(self, name)

    def items(self) -> Tuple[Tuple[str, Mat3], ...]:
        return tuple((name, getattr(self, name)) for name in GENERATOR_NAMES)

    def to_dict(self) -> Dict[str, str]:
        return {name: m.format() for name, m in self.items()}


@dataclass(frozen=True)
class ProjectivityGroup:
    """
    Groupe fini de projectivités, éléments en forme canonique dans l'ordre BFS.

    words[i] est le premier mot ayant atteint elements[i].
    """
    ctx: FieldCtx
    elements: Tuple[Mat3, ...]
    words: Tuple[Word, ...]
    _index: Dict[Mat3, int] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not self._index:
            self._index.update({g: i for i, g in enumerate(self.elements)})

    @classmethod
    def trivial(cls, ctx: FieldCtx) -> "ProjectivityGroup":
        return cls(ctx, (Mat3.identity(ctx),), ((),))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Mat3]:
        return iter(self.elements)

    def __contains__(self, g: object) -> bool:
        return isinstance(g, Mat3) and g.canonical() in self._index

    def index_of(self, g: Mat3) -> int:
        try:
            return self._index[g.canonical()]
        except KeyError:
            raise GroupError(f"{g.format()} is not an element of the group") from None

    def word_of(self, g: Mat3) -> Word:
        return self.words[self.index_of(g)]

    def order_histogram(self) -> Dict[int, int]:
        counts = Counter(g.order() for g in self.elements)
        return dict(sorted(counts.items()))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "order": self.order,
            "order_histogram": {str(k): v for k, v in self.order_histogram().items()},
            "max_word_length": max((len(w) for w in self.words), default=0),
        }


# ============================================================
# ✅ Générateurs
# ============================================================
def build_generators(ctx: FieldCtx, sp: SpecialElems) -> GeneratorSet:
    """Les quatre matrices U, Ω, V, W sur le corps qui contient s."""
    reason = invalid_q_reason(sp.base.p, sp.base.r)
    if reason is not None:
        raise InvalidQ(reason)
    if ctx != sp.ctx:
        raise InvalidQ(f"Generators must live in {sp.ctx.describe()}, got {ctx.describe()}")

    t = sp.t.value
    t2 = ctx.mul(t, t)
    dz = ctx.mul(sp.delta.value, sp.z.value)
    one_plus = ctx.add(1, dz)
    one_minus = ctx.sub(1, dz)
    two_neg = ctx.neg(2)
    four = ctx.from_int(4)

    gens = GeneratorSet(
        U=Mat3(ctx, (0, 0, 1, 1, 0, 0, 0, 1, 0)),
        Omega=Mat3(ctx, (1, 0, 0, 0, t, 0, 0, 0, t2)),
        V=Mat3(ctx, (two_neg, one_plus, one_plus, one_minus, four, two_neg, one_minus, two_neg, four)),
        W=Mat3(ctx, (1, 1, 1, 1, t, t2, 1, t2, t)),
    )
    for name, m in gens.items():
        if m.is_singular():
            raise GroupError(f"Generator {name} is singular over {ctx.describe()}")
    return gens


# ============================================================
# ✅ Fermeture BFS
# ============================================================
def generate(
    gens: GeneratorSet,
    *,
    expected_order: int = GAMMA_ORDER,
    word_cap: int = WORD_CAP,
) -> ProjectivityGroup:
    """
    Fermeture de ⟨gens⟩ par multiplication à gauche, en largeur d'abord.

    Raises:
        ClosureOverflow: plus de expected_order éléments, ou mot plus long que word_cap.
        GroupError: fermeture terminée avec un ordre différent de expected_order.
    """
    ctx = gens.ctx
    identity = Mat3.identity(ctx)
    elements: List[Mat3] = [identity]
    words: List[Word] = [()]
    index: Dict[Mat3, int] = {identity: 0}
    frontier = deque([0])
    named = gens.items()

    while frontier:
        i = frontier.popleft()
        current = elements[i]
        for name, g in named:
            h = g @ current
            if h in index:
                continue
            word = (name,) + words[i]
            if len(word) > word_cap:
                raise ClosureOverflow(f"Word length {len(word)} exceeds cap {word_cap} over {ctx.describe()}")
            index[h] = len(elements)
            elements.append(h)
            words.append(word)
            if len(elements) > expected_order:
                raise ClosureOverflow(f"Closure exceeds {expected_order} elements over {ctx.describe()}")
            frontier.append(index[h])

    if len(elements) != expected_order:
        raise GroupError(f"Closure has order {len(elements)}, expected {expected_order}")

    log.info("Γ generated over %s: order=%d, max word length=%d",
             ctx.describe(), len(elements), max(len(w) for w in words))
    return ProjectivityGroup(ctx, tuple(elements), tuple(words), index)


# ============================================================
# ✅ Stabilisateurs / orbites
# ============================================================
def point_stabilizer(G: ProjectivityGroup, P: ProjPoint) -> Tuple[Mat3, ...]:
    return tuple(g for g in G.elements if apply(g, P) == P)


def orbit_transversal(G: ProjectivityGroup, P: ProjPoint) -> Tuple[Tuple[ProjPoint, int], ...]:
    """
    Orbite de P avec, pour chaque point, l'indice du premier élément de G
    (ordre BFS) qui l'atteint. L'ordre des points est l'ordre de découverte.
    """
    seen: Dict[ProjPoint, int] = {}
    for i, g in enumerate(G.elements):
        image = apply(g, P)
        if image not in seen:
            seen[image] = i
    return tuple(seen.items())


def orbit(G: ProjectivityGroup, P: ProjPoint) -> Tuple[ProjPoint, ...]:
    return tuple(pt for pt, _ in orbit_transversal(G, P))


def element_by_word(gens: GeneratorSet, word: Word, ctx: Optional[FieldCtx] = None) -> Mat3:
    """Produit des générateurs d'un mot (forme canonique)."""
    acc = Mat3.identity(ctx or gens.ctx)
    for name in reversed(word):
        acc = gens.by_name(name) @ acc
    return acc
