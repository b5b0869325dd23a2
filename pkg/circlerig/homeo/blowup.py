"""Denjoy blow-up of a periodic orbit and the collapsing semi-conjugacy."""

from fractions import Fraction
import bisect
import logging
import math
from typing import Sequence, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from circlerig.homeo import lifts
from circlerig.homeo.lifts import CircleHomeo, MapLike, PLLift, RotationLift
from circlerig.shared_libraries.errors import (
    InternalInvariantError,
    InvalidMap,
    NotPeriodic,
    UnsupportedKind,
)
from circlerig.shared_libraries.numeric import to_fraction

_logger = logging.getLogger(__name__)


class SemiConjugacyMap(BaseModel):
    """Monotone degree-one map h with h(x + 1) = h(x) + 1, possibly constant on intervals."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    breakpoints: tuple[tuple[Fraction, Fraction], ...] = Field(
        description="(x_i, y_i), x_i in [0,1) strictly increasing, y_i nondecreasing."
    )

    @model_validator(mode="after")
    def _monotone(self):
        bps = self.breakpoints
        if not bps:
            raise InvalidMap("a semi-conjugacy needs breakpoints")
        for i in range(1, len(bps)):
            if not (bps[i - 1][0] < bps[i][0] and bps[i - 1][1] <= bps[i][1]):
                raise InvalidMap("semi-conjugacy breakpoints must be monotone")
        if not (0 <= bps[0][0] and bps[-1][0] < 1 and bps[-1][1] <= bps[0][1] + 1):
            raise InvalidMap("semi-conjugacy breakpoints must fit one period")
        return self

    def __call__(self, x: Union[Fraction, int]) -> Fraction:
        x = Fraction(x)
        xs = [a for a, _ in self.breakpoints]
        ys = [b for _, b in self.breakpoints]
        ext_x = [xs[-1] - 1] + xs + [xs[0] + 1]
        ext_y = [ys[-1] - 1] + ys + [ys[0] + 1]
        k = math.floor(x)
        r = x - k
        i = bisect.bisect_right(ext_x, r) - 1
        x0, x1, y0, y1 = ext_x[i], ext_x[i + 1], ext_y[i], ext_y[i + 1]
        return k + y0 + (y1 - y0) * (r - x0) / (x1 - x0)


class BlowUp(BaseModel):
    """Result of inserting intervals along a periodic orbit."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    f_prime: CircleHomeo = Field(description="The blown-up homeomorphism.")
    h: SemiConjugacyMap = Field(description="Collapse map with h o f' = f o h.")
    intervals: tuple[tuple[Fraction, Fraction], ...] = Field(
        description="Inserted intervals, aligned with the orbit order."
    )


def _as_exact_pl(f: MapLike) -> PLLift:
    lift = lifts.as_lift(lifts.canonicalize(f))
    if isinstance(lift, PLLift):
        return lift
    if isinstance(lift, RotationLift) and isinstance(lift.tau, Fraction):
        return lifts.pl([(0, lift.tau)])
    raise UnsupportedKind(f"blow-up needs an exact PL or rational rotation map, got {lift.kind}")


def denjoy_blowup(
    f: MapLike,
    x: Union[Fraction, int, str],
    q: int,
    weights: Sequence[Union[Fraction, int, str]],
) -> BlowUp:
    """Replaces each point of the period-q orbit of x by an interval.

    weights[k] is the length inserted at the k-th orbit point f^k(x).

    Raises:
        NotPeriodic: x is not periodic of exact period q.
    """
    F = _as_exact_pl(f)
    x = to_fraction(x) % 1
    weights = [to_fraction(w) for w in weights]
    if len(weights) != q or any(w <= 0 for w in weights) or sum(weights) >= 1:
        raise InvalidMap("weights must be q positive rationals with sum below 1")

    lifted = [x]
    for _ in range(q):
        lifted.append(lifts.evaluate(F, lifted[-1]))
    winding = lifted[q] - x
    orbit = [z % 1 for z in lifted[:q]]
    if winding.denominator != 1 or len(set(orbit)) != q:
        raise NotPeriodic(f"{x} is not periodic of period {q}")

    weight_at = dict(zip(orbit, weights))
    total = sum(weights)
    sorted_orbit = sorted(orbit)

    def left(y: Fraction) -> Fraction:
        k = math.floor(y)
        r = y - k
        before = sum(weight_at[o] for o in sorted_orbit if o < r)
        return k + (1 - total) * r + before

    def right(y: Fraction) -> Fraction:
        return left(y) + weight_at.get(y % 1, 0)

    nodes = []
    for b, fb in F.breakpoints:
        if b not in weight_at:
            nodes.append((left(b), left(fb)))
    for o in orbit:
        fo = lifts.evaluate(F, o)
        nodes.append((left(o), left(fo)))
        nodes.append((right(o), right(fo)))
    F_prime = lifts.pl(nodes)

    h_nodes = []
    for o in sorted_orbit:
        h_nodes.append((left(o), o))
        h_nodes.append((right(o), o))
    h_nodes = sorted({(a % 1, b - math.floor(a)) for a, b in h_nodes})
    h = SemiConjugacyMap(breakpoints=tuple(h_nodes))

    for u, _ in F_prime.breakpoints + h.breakpoints:
        if h(lifts.evaluate(F_prime, u)) != lifts.evaluate(F, h(u)):
            raise InternalInvariantError("blow-up does not semi-conjugate to f")
    f_prime = lifts.canonicalize(F_prime)
    intervals = tuple((left(o), right(o)) for o in orbit)
    _logger.debug("blew up orbit of %s (period %d) into %s", x, q, intervals)
    return BlowUp(f_prime=f_prime, h=h, intervals=intervals)
