"""Relative Euler numbers of pants and subsurfaces, and Fuchsian-torus detection."""

import logging
from typing import Optional, Sequence

from circlerig.homeo import lifts
from circlerig.representation.representation import Representation, evaluate_word_lift
from circlerig.rotnum.enclosure import rot_bound_sum, translation_number
from circlerig.shared_libraries import config
from circlerig.shared_libraries.errors import InternalInvariantError, NotApplicable
from circlerig.shared_libraries.types import RotBound
from circlerig.surface import words
from circlerig.surface.fixtures import FourHoledSphere
from circlerig.surface.pants import Pants, PantsDecomposition
from circlerig.surface.words import Word

_logger = logging.getLogger(__name__)


def pants_euler(
    rep: Representation,
    p: Pants,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> RotBound:
    """rot(a~) + rot(d~) - rot(d~ a~) for the boundary words a, d of the pants.

    The value does not depend on the lifts chosen; it lies in [-1, 1].
    """
    tol = config.default_tol() if tol is None else tol
    a = evaluate_word_lift(rep, p.a)
    d = evaluate_word_lift(rep, p.d)
    bounds = [
        translation_number(a, tol, max_iter),
        translation_number(d, tol, max_iter),
        translation_number(lifts.compose(d, a), tol, max_iter),
    ]
    total = rot_bound_sum(bounds, [1, 1, -1])
    if total.lo > 1 + tol or total.hi < -1 - tol:
        raise InternalInvariantError(f"pants Euler number {total.describe()} outside [-1, 1]")
    _logger.debug("pants %s: eu_P in %s", p.label or str(p.a), total.describe())
    return total


def subsurface_euler(
    rep: Representation,
    decomposition: PantsDecomposition,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> RotBound:
    """Sum of the pants Euler numbers over the decomposition."""
    bounds = [pants_euler(rep, p, tol, max_iter) for p in decomposition.pants]
    return rot_bound_sum(bounds, [1] * len(bounds))


def four_holed_identity(
    rep: Representation,
    sphere: FourHoledSphere,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> RotBound:
    """rot(a~) + rot(b~) + rot(c~) + rot(d~) with d~ = (c~ b~ a~)^-1.

    Equals the subsurface Euler number for every pants decomposition of the sphere.
    """
    a, b, c = (evaluate_word_lift(rep, w) for w in (sphere.a, sphere.b, sphere.c))
    d = lifts.invert(lifts.compose_all([c, b, a]))
    bounds = [translation_number(f, tol, max_iter) for f in (a, b, c, d)]
    return rot_bound_sum(bounds, [1, 1, 1, 1])


def commutator_translation(
    rep: Representation,
    u: Word,
    v: Word,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> RotBound:
    """Translation number of the lifted commutator [u, v]; independent of lifts."""
    return translation_number(evaluate_word_lift(rep, words.commutator(u, v)), tol, max_iter)


def detect_fuchsian_torus(
    rep: Representation,
    pairs: Sequence[tuple[Word, Word]],
    tol: Optional[float] = None,
) -> Optional[tuple[Word, Word]]:
    """The first pair whose lifted commutator has translation number exactly +-1.

    Raises:
        NotApplicable: a pair does not have algebraic intersection +-1.
    """
    for u, v in pairs:
        if abs(words.algebraic_intersection(u, v)) != 1:
            raise NotApplicable(f"i({u}, {v}) is not +-1")
        bound = commutator_translation(rep, u, v, tol)
        if bound.exact is not None and abs(bound.exact) == 1:
            _logger.debug("Fuchsian torus on (%s, %s) with value %s", u, v, bound.exact)
            return u, v
    return None
