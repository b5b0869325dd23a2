"""Contraction dynamics of f^N g for a hyperbolic f."""

import logging
from typing import Literal, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field

from circlerig.homeo import lifts
from circlerig.homeo.classify import classify
from circlerig.homeo.lifts import MapLike
from circlerig.shared_libraries import config, constants
from circlerig.shared_libraries.errors import (
    ContractionNotCertified,
    ExchangedFixedPoints,
    NotApplicable,
    NotHyperbolic,
)
from circlerig.shared_libraries.types import Arc, CirclePoint, DynClass

_logger = logging.getLogger(__name__)


class FixedPointAlternative(BaseModel):
    """Which of f^N g and f^{-N} g has a fixed point."""
    model_config = ConfigDict(frozen=True)

    n: int = Field(description="The power N.")
    forward: DynClass = Field(description="Class of f^N g.")
    backward: DynClass = Field(description="Class of f^{-N} g.")
    holds: Literal["forward", "backward", "both"] = Field(description="Which maps have a fixed point.")
    exchanged: bool = Field(description="Whether g swaps f_+ and f_- within tolerance.")


class ApproachRecord(BaseModel):
    """Distances of the fixed points of f^N g from their limits."""
    model_config = ConfigDict(frozen=True)

    n: int
    attracting_distance: float = Field(description="Distance from the attracting point of f^N g to f_+.")
    repelling_distance: float = Field(description="Distance from the repelling point of f^N g to g^{-1}(f_-).")


def _hyperbolic(f: MapLike, tol: float) -> DynClass:
    cls = classify(f, tol)
    if cls.tag != "Hyperbolic":
        raise NotHyperbolic(f"expected a hyperbolic map, got {cls.tag}")
    return cls


def _point(h: MapLike, angle: float) -> float:
    return float(lifts.evaluate(h, angle)) % 1.0


def arc_image_within(h: MapLike, arc: Arc, target: Arc) -> bool:
    """Whether h(arc) is contained in target, decided from the endpoint images."""
    a = _point(h, arc.start)
    b = _point(h, arc.end)
    length = (b - a) % 1.0
    return target.contains(a) and (a - target.start) % 1.0 + length <= target.length


def find_contraction_power(
    f: MapLike,
    g: MapLike,
    u_minus: Arc,
    u_plus: Arc,
    v_minus: Arc,
    v_plus: Arc,
    tol: Optional[float] = None,
    n_max: int = constants.CONTRACTION_MAX_POWER,
) -> int:
    """Smallest N <= n_max with f^N g(S^1 - V_-) in U_+ and g f^N(S^1 - U_-) in V_+.

    Raises:
        NotHyperbolic: f is not hyperbolic.
        NotApplicable: an arc does not contain the point it must surround.
        ContractionNotCertified: no N up to n_max works.
    """
    tol = config.default_tol() if tol is None else tol
    cls = _hyperbolic(f, tol)
    f_plus, f_minus = cls.attracting.value, cls.repelling.value
    g_inv = lifts.invert(g)
    checks = {
        "U_+": (u_plus, f_plus),
        "U_-": (u_minus, f_minus),
        "V_-": (v_minus, _point(g_inv, f_minus)),
        "V_+": (v_plus, _point(g, f_plus)),
    }
    for name, (arc, point) in checks.items():
        if not arc.contains(point):
            raise NotApplicable(f"{name} does not contain {point}")
    outside_v = v_minus.complement()
    outside_u = u_minus.complement()
    f_n = lifts.identity()
    for n in range(1, n_max + 1):
        f_n = lifts.compose(f, f_n)
        first = arc_image_within(lifts.compose(f_n, g), outside_v, u_plus)
        second = arc_image_within(lifts.compose(g, f_n), outside_u, v_plus)
        if first and second:
            _logger.debug("containments certified at N=%d", n)
            return n
    raise ContractionNotCertified(f"no N <= {n_max} satisfies both containments")


def _exchanges(f_cls: DynClass, g: MapLike, tol: float) -> bool:
    plus, minus = f_cls.attracting, f_cls.repelling
    g_plus = CirclePoint.of(_point(g, plus.value))
    g_minus = CirclePoint.of(_point(g, minus.value))
    return g_plus.distance(minus) <= tol and g_minus.distance(plus) <= tol


def contraction_fixed_point(f: MapLike, g: MapLike, n: int, tol: Optional[float] = None) -> FixedPointAlternative:
    """Reports which of f^N g and f^{-N} g has a fixed point.

    Raises:
        ExchangedFixedPoints: g swaps f_+ and f_- and neither map has a fixed point.
        ContractionNotCertified: neither map has a fixed point at this N.
    """
    tol = config.default_tol() if tol is None else tol
    cls = _hyperbolic(f, tol)
    forward = classify(lifts.compose(lifts.power(f, n), g), tol)
    backward = classify(lifts.compose(lifts.power(f, -n), g), tol)
    exchanged = _exchanges(cls, g, tol)
    has_forward = forward.tag != "FixedPointFree"
    has_backward = backward.tag != "FixedPointFree"
    if not (has_forward or has_backward):
        if exchanged:
            raise ExchangedFixedPoints("g exchanges the fixed points of f")
        raise ContractionNotCertified(f"neither f^{n} g nor f^-{n} g has a fixed point")
    holds = "both" if has_forward and has_backward else ("forward" if has_forward else "backward")
    return FixedPointAlternative(n=n, forward=forward, backward=backward, holds=holds, exchanged=exchanged)


def contraction_approach(f: MapLike, g: MapLike, powers: Sequence[int], tol: Optional[float] = None) -> list[ApproachRecord]:
    """Tracks the fixed points of f^N g, which tend to f_+ and g^{-1}(f_-)."""
    tol = config.default_tol() if tol is None else tol
    cls = _hyperbolic(f, tol)
    target_repelling = CirclePoint.of(_point(lifts.invert(g), cls.repelling.value))
    records = []
    for n in powers:
        h_cls = classify(lifts.compose(lifts.power(f, n), g), tol)
        if h_cls.tag != "Hyperbolic":
            raise NotHyperbolic(f"f^{n} g is {h_cls.tag}")
        records.append(
            ApproachRecord(
                n=n,
                attracting_distance=h_cls.attracting.distance(cls.attracting),
                repelling_distance=h_cls.repelling.distance(target_repelling),
            )
        )
    return records
