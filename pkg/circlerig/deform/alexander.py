"""Alexander-trick deformation of a representation with a global fixed point."""

from fractions import Fraction
import logging
from typing import Optional, Union

from circlerig.deform.monitor import DeformationPath
from circlerig.homeo import lifts
from circlerig.homeo.classify import classify
from circlerig.homeo.lifts import PLLift, RotationLift
from circlerig.representation.representation import Representation, new_representation
from circlerig.shared_libraries.errors import NoGlobalFixedPoint, NotApplicable, UnsupportedKind
from circlerig.shared_libraries.numeric import to_fraction

_logger = logging.getLogger(__name__)


def _check_kinds(rep: Representation) -> None:
    for name in rep.generators:
        lift = rep[name].lift
        if not isinstance(lift, (PLLift, RotationLift)) or not lifts.is_exact(lift):
            raise UnsupportedKind(f"{name} is a {lift.kind} map; the trick needs exact PL data")


def _fixes(lift, p: Fraction) -> bool:
    displacement = lifts.evaluate(lift, p) - p
    return displacement == int(displacement)


def global_fixed_point(rep: Representation) -> Fraction:
    """A point fixed by every generator, found among their fixed-set endpoints.

    Raises:
        UnsupportedKind: a generator is not exact PL or rotation.
        NoGlobalFixedPoint: the generators share no fixed point.
    """
    _check_kinds(rep)
    candidates = {Fraction(0)}
    for name in rep.generators:
        candidates.update(to_fraction(p.angle) for p in classify(rep[name]).fixed_points())
    for p in sorted(candidates):
        if all(_fixes(rep[name].lift, p) for name in rep.generators):
            return p
    raise NoGlobalFixedPoint("the generators have no common fixed point")


def _shrink(lift, p: Fraction, s: Fraction):
    """R_p F_s R_-p, where F_s is G squeezed into [0, s] and the identity on [s, 1]."""
    g = lifts.compose_all([lifts.rotation(-p), lift, lifts.rotation(p)])
    g = lifts.translate(g, -int(lifts.evaluate(g, Fraction(0))))
    if isinstance(g, RotationLift):
        return lifts.identity()
    nodes = [(Fraction(0), Fraction(0))]
    nodes.extend((s * x, s * y) for x, y in g.breakpoints)
    nodes.append((s, s))
    return lifts.conjugate(lifts.rotation(p), lifts.pl(nodes))


def alexander_trick(rep: Representation, t: Union[Fraction, float, int, str], p: Optional[Fraction] = None) -> Representation:
    """rho_t: the generators squeezed toward the common fixed point p.

    rho_0 = rho and rho_1 is trivial; the relator holds exactly for every t
    since rho_t is rho conjugated inside the arc it is squeezed into.

    Raises:
        NotApplicable: rep is a free-group representation or t is outside [0, 1].
        NoGlobalFixedPoint: the generators share no fixed point.
        UnsupportedKind: a generator is not exact PL or rotation.
    """
    if rep.presentation is None:
        raise NotApplicable("the Alexander trick needs a surface-group representation")
    t = to_fraction(t)
    if not 0 <= t <= 1:
        raise NotApplicable(f"t = {t} outside [0, 1]")
    p = global_fixed_point(rep) if p is None else p
    s = 1 - t
    if s == 0:
        assignment = {name: lifts.identity() for name in rep.generators}
    else:
        assignment = {name: _shrink(rep[name].lift, p, s) for name in rep.generators}
    return new_representation(rep.presentation, assignment, rep.tol)


def alexander_path(rep: Representation) -> DeformationPath:
    p = global_fixed_point(rep)
    _logger.debug("Alexander path about the common fixed point %s", p)
    return DeformationPath(
        base=rep,
        parameterization=lambda t: alexander_trick(rep, t, p),
        kind="alexander",
        details={"fixed_point": str(p)},
    )
