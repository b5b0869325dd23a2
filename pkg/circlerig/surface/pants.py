"""Pairs of pants and pants decompositions described by boundary words."""

import logging
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from circlerig.shared_libraries.errors import InvalidDecomposition
from circlerig.surface import words
from circlerig.surface.words import SurfacePresentation, Word

_logger = logging.getLogger(__name__)

Slot = tuple[int, int]


class Pants(BaseModel):
    """Boundary triple (a, d, (da)^-1) of a pair of pants."""
    model_config = ConfigDict(frozen=True)

    a: Word
    d: Word
    third: Word = Field(description="The boundary (da)^-1.")
    label: str = ""

    @model_validator(mode="after")
    def _closes_up(self):
        if self.a.is_empty or self.d.is_empty:
            raise InvalidDecomposition("pants boundaries must be nontrivial")
        if not words.multiply(self.third, self.d, self.a).is_empty:
            raise InvalidDecomposition(f"{self.third} * {self.d} * {self.a} is not trivial")
        return self

    @property
    def boundary(self) -> tuple[Word, Word, Word]:
        return (self.a, self.d, self.third)


def pants(a: Word, d: Word, label: str = "") -> Pants:
    return Pants(a=a, d=d, third=words.invert(words.multiply(d, a)), label=label)


class Gluing(BaseModel):
    """Two boundary slots (pants index, boundary index) glued along one curve.

    relation is how the words compare: "inverse" (w2 = w1^-1), "conjugate-inverse"
    (w2 conjugate to w1^-1) or "relator" (w1 w2 conjugate to the relator or its inverse).
    """
    model_config = ConfigDict(frozen=True)

    first: Slot
    second: Slot
    relation: Literal["inverse", "conjugate-inverse", "relator"] = "inverse"


class PantsDecomposition(BaseModel):
    """Pants with gluing data, for a closed surface or a subsurface."""
    model_config = ConfigDict(frozen=True)

    pants: tuple[Pants, ...]
    gluings: tuple[Gluing, ...] = ()
    genus: Optional[int] = Field(default=None, description="Genus of the ambient closed surface.")

    @model_validator(mode="after")
    def _check_gluings(self):
        used: set[Slot] = set()
        for gluing in self.gluings:
            for slot in (gluing.first, gluing.second):
                if slot in used:
                    raise InvalidDecomposition(f"boundary {slot} glued twice")
                used.add(slot)
            w1, w2 = self._word(gluing.first), self._word(gluing.second)
            if not _glues(w1, w2, gluing.relation, self.genus):
                raise InvalidDecomposition(f"{w1} and {w2} do not glue as {gluing.relation}")
        return self

    def _word(self, slot: Slot) -> Word:
        i, j = slot
        if not (0 <= i < len(self.pants) and 0 <= j < 3):
            raise InvalidDecomposition(f"no boundary slot {slot}")
        return self.pants[i].boundary[j]

    def free_boundary(self) -> list[Word]:
        """Boundary words not glued to anything."""
        glued = {s for g in self.gluings for s in (g.first, g.second)}
        return [p.boundary[j] for i, p in enumerate(self.pants) for j in range(3) if (i, j) not in glued]


def _glues(w1: Word, w2: Word, relation: str, genus: Optional[int]) -> bool:
    if relation == "inverse":
        return w2 == words.invert(w1)
    if relation == "conjugate-inverse":
        return words.are_conjugate(w2, words.invert(w1))
    if genus is None:
        return False
    rel = words.relator(SurfacePresentation(genus=genus))
    product = words.multiply(w1, w2)
    return words.are_conjugate(product, rel) or words.are_conjugate(product, words.invert(rel))


def standard_pants_decomposition(pres: SurfacePresentation) -> PantsDecomposition:
    """The decomposition cut along the a_i, the c_i = [a_i, b_i] and E_i = c_1 ... c_i.

    Handle i gives the pants (b_i^-1 a_i b_i, a_i^-1, c_i); for 2 <= i <= g-1 the
    pants (E_{i-1}^-1, c_i^-1, E_i) joins handle i to the handles before it.
    """
    g = pres.genus
    commutators = [pres.handle_commutator(i) for i in range(1, g + 1)]
    handles = [
        pants(words.conjugate(pres.a(i), pres.b(i)), words.invert(pres.a(i)), label=f"handle {i}")
        for i in range(1, g + 1)
    ]
    middles = []
    partial = commutators[0]
    for i in range(2, g):
        middles.append(pants(words.invert(partial), words.invert(commutators[i - 1]), label=f"join {i}"))
        partial = words.multiply(partial, commutators[i - 1])
    all_pants = handles + middles

    gluings = [Gluing(first=(i, 0), second=(i, 1), relation="conjugate-inverse") for i in range(g)]
    if g == 2:
        gluings.append(Gluing(first=(0, 2), second=(1, 2), relation="relator"))
    else:
        # middle pants m (0-based) sits at index g + m and joins handle m + 2
        gluings.append(Gluing(first=(0, 2), second=(g, 0)))
        for m in range(g - 2):
            gluings.append(Gluing(first=(m + 1, 2), second=(g + m, 1)))
            if m + 1 < g - 2:
                gluings.append(Gluing(first=(g + m, 2), second=(g + m + 1, 0)))
        gluings.append(Gluing(first=(g + g - 3, 2), second=(g - 1, 2), relation="relator"))
    decomposition = PantsDecomposition(pants=tuple(all_pants), gluings=tuple(gluings), genus=g)
    _logger.debug("standard decomposition of genus %d: %d pants", g, len(all_pants))
    return decomposition
