"""Certified enclosures of translation and rotation numbers.

Every lift F satisfies |rot(F) - (F^n(x) - x)/n| < 1/n for any x; PL lifts are
also bracketed by the extremes of F^n - id over their breakpoint orbits. Exact
answers are tried first: rational rotations and PL lifts through periodic
orbits, Mobius lifts through their fixed points or their conjugacy to a
rotation.
"""

from fractions import Fraction
import logging
import math
import sys
from typing import Optional, Sequence

import numpy as np

from circlerig.homeo import lifts
from circlerig.homeo.classify import classify
from circlerig.homeo.lifts import CompositeLift, MapLike, MobiusLift, PLLift, RotationLift
from circlerig.rotnum.certificate import periodic_certificate
from circlerig.shared_libraries import config, constants
from circlerig.shared_libraries.errors import (
    AmbiguousAtTolerance,
    NotIdentityLift,
    ToleranceNotReached,
)
from circlerig.shared_libraries.numeric import widen_down, widen_up
from circlerig.shared_libraries.types import PeriodicWitness, RotBound

_logger = logging.getLogger(__name__)

_STEP_SLACK = 1e-14


def translation_number(
    f: MapLike,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    q_max: Optional[int] = None,
) -> RotBound:
    """Encloses the translation number of the lift f (used as given).

    Raises:
        ToleranceNotReached: the enclosure is wider than tol after max_iter
            iterates; the error carries the best enclosure.
    """
    tol = config.default_tol() if tol is None else tol
    max_iter = config.max_iter() if max_iter is None else max_iter
    q_max = config.q_max() if q_max is None else q_max
    lift = lifts.as_lift(f)
    prior: Optional[RotBound] = None

    if isinstance(lift, RotationLift):
        return _rotation_bound(lift, q_max)
    if isinstance(lift, PLLift):
        witness = periodic_certificate(lift, q_max)
        if witness is not None:
            return RotBound.from_exact(Fraction(witness.p, witness.q), witness)
    elif isinstance(lift, MobiusLift):
        prior = _mobius_bound(lift)
        if prior.width <= tol:
            return prior
        _logger.debug("elliptic Mobius enclosure %s too wide, iterating", prior.describe())
    else:
        exact = _fixed_point_integer(lift, tol)
        if exact is not None:
            return exact
    return _iterate(lift, tol, max_iter, prior)


def rotation_number(
    f: MapLike,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    q_max: Optional[int] = None,
) -> RotBound:
    """Rotation number of the circle map of f, as an enclosure reduced mod 1.

    Float enclosures straddling an integer keep a representative with lo < 0.
    """
    bound = translation_number(lifts.canonicalize(f), tol, max_iter, q_max)
    if bound.exact is not None:
        value = bound.exact - math.floor(bound.exact)
        witness = bound.witness
        if witness is not None:
            shift = math.floor(bound.exact)
            witness = PeriodicWitness(x=witness.x, q=witness.q, p=witness.p - shift * witness.q)
        return RotBound.from_exact(value, witness)
    k = math.floor(bound.midpoint)
    return RotBound(lo=bound.lo - k, hi=bound.hi - k, iterations=bound.iterations)


def integer_translation_value(f: MapLike, tol: Optional[float] = None) -> int:
    """The integer k with F(x) = x + k for a lift of the identity.

    Raises:
        NotIdentityLift: the displacement is not a constant integer within tol.
    """
    tol = config.default_tol() if tol is None else tol
    lift = lifts.as_lift(f)
    if isinstance(lift, RotationLift):
        if isinstance(lift.tau, Fraction):
            if lift.tau.denominator != 1:
                raise NotIdentityLift(f"rotation by {lift.tau} is not an integer translation")
            return int(lift.tau)
        k = round(lift.tau)
        if abs(lift.tau - k) >= tol:
            raise NotIdentityLift(f"rotation by {lift.tau} is not an integer translation")
        return k
    if isinstance(lift, PLLift):
        ds = {y - x for x, y in lift.breakpoints}
        if len(ds) != 1 or next(iter(ds)).denominator != 1:
            raise NotIdentityLift(f"PL displacement takes values {sorted(ds)}")
        return int(ds.pop())
    count = constants.IDENTITY_SAMPLES
    ds = [float(lifts.evaluate(lift, i / count)) - i / count for i in range(count)]
    k = round(ds[0])
    spread = max(abs(d - k) for d in ds)
    if spread >= tol:
        raise NotIdentityLift(f"displacement differs from {k} by {spread:.3g}")
    return k


def rot_bound_sum(bounds: Sequence[RotBound], signs: Sequence[int]) -> RotBound:
    """Signed sum of enclosures, rounded outward; exact when every term is exact."""
    if len(bounds) != len(signs):
        raise ValueError("bounds and signs differ in length")
    if all(b.exact is not None for b in bounds):
        return RotBound.from_exact(sum((s * b.exact for b, s in zip(bounds, signs)), Fraction(0)))
    lows = [s * (b.lo if s > 0 else b.hi) for b, s in zip(bounds, signs)]
    highs = [s * (b.hi if s > 0 else b.lo) for b, s in zip(bounds, signs)]
    ulps = 2 * len(bounds)
    return RotBound(
        lo=widen_down(math.fsum(lows), ulps=ulps),
        hi=widen_up(math.fsum(highs), ulps=ulps),
        iterations=min(b.iterations for b in bounds),
    )


def _rotation_bound(lift: RotationLift, q_max: int) -> RotBound:
    tau = lift.tau
    if isinstance(tau, Fraction):
        witness = None
        if tau.denominator <= q_max:
            witness = PeriodicWitness(x=Fraction(0), q=tau.denominator, p=int(tau * tau.denominator))
        return RotBound.from_exact(tau, witness)
    return RotBound(lo=widen_down(tau, ulps=1), hi=widen_up(tau, ulps=1))


def _mobius_bound(lift: MobiusLift) -> RotBound:
    m = np.asarray(lift.matrix, dtype=float)
    (a, b), (c, d) = m
    tr = a + d
    sign = 1.0 if tr >= 0 else -1.0
    if np.max(np.abs(m - sign * np.eye(2))) <= constants.MATRIX_TOL:
        k = round(float(lifts.evaluate(lift, 0.0)))
        return RotBound.from_exact(Fraction(k), PeriodicWitness(x=0.0, q=1, p=k))
    if abs(tr) >= 2.0:
        cls = classify(lift, 0.0)
        theta = cls.fixed_points()[0].value
        k = round(float(lifts.evaluate(lift, theta)) - theta)
        _logger.debug("Mobius lift with fixed point %s has translation %d", theta, k)
        return RotBound.from_exact(Fraction(k), PeriodicWitness(x=theta, q=1, p=k))
    # elliptic: conjugate to a rotation about the fixed point z0 in the upper half-plane
    root = math.sqrt(4.0 - tr * tr)
    x0 = (a - d) / (2.0 * c)
    y0 = abs(root / (2.0 * c))
    s = math.sqrt(y0)
    p = np.array([[s, x0 / s], [0.0, 1.0 / s]])
    p_inv = np.array([[1.0 / s, -x0 / s], [0.0, s]])
    r = p_inv @ m @ p
    psi = math.atan2(r[1, 0], r[0, 0]) / math.pi
    p_lift = lifts.mobius(p)
    p_lift_inv = lifts.invert(p_lift)
    g0 = float(lifts.evaluate(p_lift, float(lifts.evaluate(p_lift_inv, 0.0)) + psi))
    value = psi + round(float(lifts.evaluate(lift, 0.0)) - g0)
    # cos(pi rot) = tr / 2, so entry errors of size eps |M|^2 move rot by that over pi sqrt(4 - tr^2)
    entry_error = constants.MOBIUS_ERROR_GAIN * sys.float_info.epsilon * max(1.0, float(np.sum(m * m)))
    half = constants.MOBIUS_HALF_WIDTH + entry_error / (math.pi * root)
    return RotBound(lo=widen_down(value, half), hi=widen_up(value, half))


def _fixed_point_integer(lift: CompositeLift, tol: float) -> Optional[RotBound]:
    try:
        cls = classify(lift, tol)
    except AmbiguousAtTolerance:
        return None
    if cls.tag == "FixedPointFree":
        return None
    theta = cls.fixed_points()[0].value
    k = round(float(lifts.evaluate(lift, theta)) - theta)
    return RotBound.from_exact(Fraction(k), PeriodicWitness(x=theta, q=1, p=k))


def _seeds(lift) -> list[float]:
    parts = lift.parts if isinstance(lift, CompositeLift) else (lift,)
    seeds = {0.0}
    for part in parts:
        if isinstance(part, PLLift):
            seeds.update(float(x) for x, _ in part.breakpoints)
    return sorted(seeds)


def _step(lift, k: int, r: float, down: bool) -> tuple[int, float]:
    v = float(lifts.evaluate(lift, r))
    v = widen_down(v, _STEP_SLACK) if down else widen_up(v, _STEP_SLACK)
    shift = math.floor(v)
    return k + shift, v - shift


class _Orbit:
    """Outward-rounded iterates of one point, as (integer part, remainder) pairs."""

    def __init__(self, lift, x: float):
        self.lift = lift
        self.lower = [(0, x)]
        self.upper = [(0, x)]

    def extend(self, length: int) -> None:
        while len(self.lower) < length:
            self.lower.append(_step(self.lift, *self.lower[-1], True))
            self.upper.append(_step(self.lift, *self.upper[-1], False))

    @staticmethod
    def _array(points: Sequence[tuple[int, float]]) -> tuple[np.ndarray, np.ndarray]:
        ks, rs = zip(*points)
        return np.asarray(ks, dtype=float), np.asarray(rs, dtype=float)


class _BreakpointOrbits:
    """Sharp enclosure of a PL lift from the orbits of its breakpoints.

    F^n - id is PL with breakpoints among the F^-j(b), 0 <= j < n, so its
    extremes are the values F^(n-j)(b) - F^-j(b), and n rot(F) lies between them.
    """

    def __init__(self, lift: PLLift):
        inverse = lifts.invert(lift)
        xs = [float(x) for x, _ in lift.breakpoints] or [0.0]
        self.forward = [_Orbit(lift, x) for x in xs]
        self.backward = [_Orbit(inverse, x) for x in xs]

    def enclosure(self, n: int) -> tuple[float, float]:
        lows, highs = [], []
        for fwd, bwd in zip(self.forward, self.backward):
            fwd.extend(n + 1)
            bwd.extend(n)
            fk_lo, fr_lo = _Orbit._array(fwd.lower[n:0:-1])
            fk_hi, fr_hi = _Orbit._array(fwd.upper[n:0:-1])
            bk_lo, br_lo = _Orbit._array(bwd.lower[:n])
            bk_hi, br_hi = _Orbit._array(bwd.upper[:n])
            lows.append(float(np.min((fk_lo - bk_hi) + (fr_lo - br_hi))))
            highs.append(float(np.max((fk_hi - bk_lo) + (fr_hi - br_lo))))
        return widen_down(min(lows) / n, _STEP_SLACK), widen_up(max(highs) / n, _STEP_SLACK)


def _iterate(lift, tol: float, max_iter: int, prior: Optional[RotBound] = None) -> RotBound:
    """Iterates the seeds with outward rounding; PL lifts also use their breakpoint orbits.

    The result is intersected with prior, an enclosure known beforehand.
    """
    seeds = _seeds(lift)
    lower = [(0, x) for x in seeds]
    upper = [(0, x) for x in seeds]
    sharp = _BreakpointOrbits(lift) if isinstance(lift, PLLift) else None
    sharp_lo, sharp_hi = (prior.lo, prior.hi) if prior is not None else (-math.inf, math.inf)
    n = 0
    target = min(constants.FIRST_ORBIT_LENGTH, max_iter)
    best: Optional[RotBound] = None
    while True:
        while n < target:
            lower = [_step(lift, k, r, True) for k, r in lower]
            upper = [_step(lift, k, r, False) for k, r in upper]
            n += 1
        lo = max((k + r - x - 1) / n for (k, r), x in zip(lower, seeds))
        hi = min((k + r - x + 1) / n for (k, r), x in zip(upper, seeds))
        lo, hi = widen_down(lo), widen_up(hi)
        if sharp is not None and n <= constants.SHARP_ORBIT_LENGTH:
            s_lo, s_hi = sharp.enclosure(n)
            sharp_lo, sharp_hi = max(sharp_lo, s_lo), min(sharp_hi, s_hi)
        lo, hi = max(lo, sharp_lo), min(hi, sharp_hi)
        best = RotBound(lo=lo, hi=hi, iterations=n)
        if hi - lo <= tol:
            _logger.debug("translation number enclosed in [%s, %s] after %d iterates", lo, hi, n)
            return best
        if n >= max_iter:
            raise ToleranceNotReached(f"enclosure width {hi - lo:.3g} exceeds {tol} after {n} iterates", best)
        target = min(2 * n, max_iter)
