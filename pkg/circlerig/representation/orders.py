"""Fixed-point tables and the cyclic-order laws of hyperbolic elements."""

import logging
from typing import Optional, Sequence

from pydantic import BaseModel, ConfigDict

from circlerig.homeo.classify import classify
from circlerig.representation.representation import Representation, evaluate_word
from circlerig.shared_libraries import config
from circlerig.shared_libraries.errors import CoincidentFixedPoints, NotApplicable, NotHyperbolic
from circlerig.shared_libraries.types import DynClass
from circlerig.surface.chains import DirectedChain
from circlerig.surface.words import Word

_logger = logging.getLogger(__name__)


class FixedPointTable(BaseModel):
    """Classification of rho(w) for each word w."""
    model_config = ConfigDict(frozen=True)

    entries: tuple[tuple[Word, DynClass], ...]

    def __getitem__(self, w: Word) -> DynClass:
        for word, cls in self.entries:
            if word == w:
                return cls
        raise KeyError(str(w))

    def to_json(self) -> dict:
        return {str(w): cls.to_json() for w, cls in self.entries}


def fixed_point_table(rep: Representation, ws: Sequence[Word], tol: Optional[float] = None) -> FixedPointTable:
    return FixedPointTable(entries=tuple((w, classify(evaluate_word(rep, w), tol)) for w in ws))


def orientation(x: float, y: float, z: float, tol: float = 0.0) -> int:
    """+1 if x, y, z are in counterclockwise cyclic order, -1 if clockwise, 0 on a coincidence."""
    dy = (y - x) % 1.0
    dz = (z - x) % 1.0
    gaps = (dy, dz, (z - y) % 1.0)
    if any(min(g, 1.0 - g) <= tol for g in gaps):
        return 0
    return 1 if dy < dz else -1


def _hyperbolic_points(rep: Representation, w: Word, tol: float) -> tuple[float, float]:
    """(repelling, attracting) angles of rho(w)."""
    cls = classify(evaluate_word(rep, w), tol)
    if cls.tag != "Hyperbolic":
        raise NotHyperbolic(f"rho({w}) is {cls.tag}")
    return cls.repelling.value, cls.attracting.value


def _check_distinct(points: Sequence[float], tol: float) -> None:
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            d = abs(points[i] - points[j]) % 1.0
            if min(d, 1.0 - d) <= tol:
                raise CoincidentFixedPoints(f"fixed points {points[i]} and {points[j]} coincide")


def verify_separation(rep: Representation, a: Word, b: Word, tol: Optional[float] = None) -> bool:
    """Whether Fix(rho(a)) separates Fix(rho(b)).

    Raises:
        NotHyperbolic: a or b is not hyperbolic.
        CoincidentFixedPoints: the two maps share a fixed point.
    """
    tol = config.default_tol() if tol is None else tol
    a_minus, a_plus = _hyperbolic_points(rep, a, tol)
    b_minus, b_plus = _hyperbolic_points(rep, b, tol)
    _check_distinct([a_minus, a_plus, b_minus, b_plus], tol)
    return orientation(a_minus, b_minus, a_plus) != orientation(a_minus, b_plus, a_plus)


def _expected_order(k: int) -> list[tuple[int, str]]:
    """Cyclic order of the fixed points of a directed chain of length k (3 or 5)."""
    if k == 3:
        return [(0, "-"), (1, "-"), (0, "+"), (2, "-"), (1, "+"), (2, "+")]
    if k == 5:
        return [
            (0, "-"), (1, "-"), (0, "+"), (2, "-"), (1, "+"),
            (3, "-"), (2, "+"), (4, "-"), (3, "+"), (4, "+"),
        ]
    raise NotApplicable(f"cyclic order is known for chains of length 3 and 5, not {k}")


def verify_chain_order(rep: Representation, chain: DirectedChain, tol: Optional[float] = None) -> bool:
    """Whether the fixed points of the chain images sit in the chain's cyclic order,
    up to reversing the orientation of the circle.

    Raises:
        NotHyperbolic: a chain element is not hyperbolic.
        CoincidentFixedPoints: two fixed points coincide.
    """
    tol = config.default_tol() if tol is None else tol
    order = _expected_order(chain.length)
    points = [_hyperbolic_points(rep, w, tol) for w in chain.words]
    _check_distinct([x for pair in points for x in pair], tol)
    seq = [points[i][0 if sign == "-" else 1] for i, sign in order]
    turns = {orientation(seq[0], seq[i], seq[i + 1]) for i in range(1, len(seq) - 1)}
    _logger.debug("chain of length %d: orientations %s", chain.length, turns)
    return turns in ({1}, {-1})
