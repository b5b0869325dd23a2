"""Exact periodic-orbit certificates for rational lifts."""

from fractions import Fraction
import logging
import math
from typing import Optional

from circlerig.homeo import lifts
from circlerig.homeo.lifts import MapLike, PLLift, RotationLift
from circlerig.shared_libraries import config, constants
from circlerig.shared_libraries.errors import UnsupportedKind
from circlerig.shared_libraries.types import PeriodicWitness

_logger = logging.getLogger(__name__)


def periodic_certificate(f: MapLike, q_max: Optional[int] = None) -> Optional[PeriodicWitness]:
    """Searches for x, q <= q_max, p with F^q(x) = x + p in exact arithmetic.

    The lift is used as given, so p is the winding of that lift. Returns None
    when no periodic orbit of period at most q_max exists.

    Raises:
        UnsupportedKind: f is not a rational rotation or a PL lift.
    """
    q_max = config.q_max() if q_max is None else q_max
    lift = lifts.as_lift(f)
    if isinstance(lift, RotationLift):
        if not isinstance(lift.tau, Fraction):
            raise UnsupportedKind("float rotations have no exact certificate")
        q = lift.tau.denominator
        if q > q_max:
            return None
        return PeriodicWitness(x=Fraction(0), q=q, p=int(lift.tau * q))
    if not isinstance(lift, PLLift):
        raise UnsupportedKind(f"no exact certificate for {lift.kind} lifts")

    lo, hi = coarse_enclosure(lift, constants.PRUNE_ORBIT_LENGTH)
    for q in range(1, q_max + 1):
        candidates = range(math.ceil(lo * q), math.floor(hi * q) + 1)
        if not candidates:
            continue
        g = lifts.power(lift, q)
        for p in candidates:
            x = _periodic_point(g, p)
            if x is not None:
                _logger.debug("periodic orbit x=%s q=%d p=%d", x, q, p)
                return PeriodicWitness(x=x, q=q, p=p)
    return None


def coarse_enclosure(f: PLLift, n: int) -> tuple[float, float]:
    """A float enclosure of the translation number from n iterates of 0."""
    x = 0.0
    k = 0
    for _ in range(n):
        x = float(lifts.evaluate(f, x))
        shift = math.floor(x)
        k += shift
        x -= shift
    d = k + x
    slack = 1e-9
    return (d - 1) / n - slack, (d + 1) / n + slack


def _periodic_point(g, p: int) -> Optional[Fraction]:
    """A point x in [0,1) with G(x) = x + p, solved piece by piece."""
    if isinstance(g, RotationLift):
        return Fraction(0) if g.tau == p else None
    nodes = [(x, y - x - p) for x, y in g.breakpoints]
    nodes.append((nodes[0][0] + 1, nodes[0][1]))
    for (x0, e0), (x1, e1) in zip(nodes, nodes[1:]):
        if e0 == 0:
            return x0 % 1
        if e0 * e1 < 0:
            return (x0 + (x1 - x0) * (-e0) / (e1 - e0)) % 1
    return None
