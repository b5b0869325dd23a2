"""One-parameter flows through circle homeomorphisms and conjugating families."""

from dataclasses import dataclass
from fractions import Fraction
import logging
import math
from typing import Callable, Optional, Sequence

import numpy as np

from circlerig.homeo import lifts
from circlerig.homeo.classify import classify
from circlerig.homeo.lifts import CircleHomeo, CompositeLift, MapLike, MobiusLift, PLLift
from circlerig.shared_libraries import config, constants
from circlerig.shared_libraries.errors import (
    FixedPointInInterval,
    NoFixedPoint,
    UnsupportedKind,
)

_logger = logging.getLogger(__name__)

_MAX_STEPS = 100_000


class Flow:
    """A one-parameter group t -> Flow(t) with Flow(1) = base."""

    def __init__(self, base: CircleHomeo, path: Callable[[float], object]):
        self.base = base
        self._path = path

    def lift_at(self, t: float):
        """A lift of Flow(t), continuous in t with the identity at t = 0."""
        return self._path(t)

    def __call__(self, t: float) -> CircleHomeo:
        return lifts.canonicalize(self._path(t))

    def scaled(self, factor: float) -> "Flow":
        """The flow t -> Flow(factor * t)."""
        path = self._path
        base = lifts.canonicalize(path(factor))
        return Flow(base, lambda t: path(factor * t))


def one_parameter_flow(f: MapLike, tol: Optional[float] = None) -> Flow:
    """Embeds f in a one-parameter group.

    Mobius non-elliptic maps use the matrix one-parameter subgroup; PL maps with
    a fixed point are interpolated affinely on a fundamental domain of each
    fixed-point-free component.

    Raises:
        NoFixedPoint: f is fixed-point free and not a non-elliptic Mobius map.
        UnsupportedKind: f is a composite lift.
    """
    tol = config.default_tol() if tol is None else tol
    homeo = lifts.canonicalize(f)
    lift = homeo.lift
    if isinstance(lift, CompositeLift):
        raise UnsupportedKind("flows of composite lifts are not constructed")
    cls = classify(homeo, tol)
    if cls.tag == "FixedPointFree":
        raise NoFixedPoint("fixed-point free map has no flow")
    if cls.whole_circle:
        return Flow(homeo, lambda t: lifts.identity())
    if isinstance(lift, MobiusLift):
        return _mobius_flow(homeo, lift, cls, tol)
    return _PLFlow(homeo, lift, cls).flow()


def _mobius_flow(homeo: CircleHomeo, lift: MobiusLift, cls, tol: float) -> Flow:
    m = np.asarray(lift.matrix, dtype=float)
    if np.trace(m) < 0:
        m = -m
    anchor = cls.fixed_points()[0].value
    adjugate = np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])
    if cls.tag == "Hyperbolic":
        eigenvalues, vectors = np.linalg.eig(m)
        lam = eigenvalues.real
        p = vectors.real
        p_inv = np.linalg.inv(p)

        def fractional(t: float) -> np.ndarray:
            return p @ np.diag(lam**t) @ p_inv

    else:
        nilpotent = m - np.eye(2)

        def fractional(t: float) -> np.ndarray:
            return np.eye(2) + t * nilpotent

    def matrix_at(t: float) -> np.ndarray:
        # Flow(n) is the matrix power f^n at integer times
        if float(t).is_integer():
            n = int(t)
            return np.linalg.matrix_power(m if n > 0 else adjugate, abs(n))
        return fractional(t)

    def path(t: float):
        if t == 0:
            return lifts.identity()
        return lifts.mobius_through(matrix_at(t), anchor, anchor)

    return Flow(homeo, path)


@dataclass(frozen=True)
class _Component:
    """A fixed-point-free arc (p, q) of the lift with its fundamental domain."""
    p: Fraction
    q: Fraction
    x0: Fraction
    gx0: Fraction

    @property
    def forward(self) -> bool:
        return self.gx0 > self.x0


class _PLFlow:
    """Flow of a PL map with fixed points, built per component.

    On each component h(G^n(x0 + s L)) = n + s conjugates G to the unit
    translation, and Flow(t) = h^{-1}(h(y) + t). Flow(t) is stored as a PL lift
    with breakpoints on the G-orbits of the breakpoints of h, truncated near the
    fixed points.
    """

    def __init__(self, homeo: CircleHomeo, lift: PLLift, cls):
        self.homeo = homeo
        k = self._fixed_translation(lift)
        self.g = lifts.translate(lift, -k)
        self.g_inv = lifts.invert(self.g)
        self.components = self._components(cls)

    @staticmethod
    def _fixed_translation(lift: PLLift) -> int:
        ds = [y - x for x, y in lift.breakpoints]
        return math.ceil(min(ds))

    def _components(self, cls) -> list[_Component]:
        if cls.tag == "Hyperbolic":
            arcs = sorted([(cls.attracting.angle,) * 2, (cls.repelling.angle,) * 2])
        elif cls.tag == "SingleNeutralFixed":
            arcs = [(cls.point.angle, cls.point.angle)]
        else:
            arcs = sorted((s.angle, e.angle) for s, e in cls.fixed_set)
        lifted = [(Fraction(s), Fraction(e) + (1 if e < s else 0)) for s, e in arcs]
        comps = []
        xs = [x for x, _ in self.g.breakpoints]
        for i, (_, p) in enumerate(lifted):
            q = lifted[i + 1][0] if i + 1 < len(lifted) else lifted[0][0] + 1
            inside = sorted(x + j for x in xs for j in (-1, 0, 1, 2) if p < x + j < q)
            x0 = inside[0] if inside else (p + q) / 2
            comps.append(_Component(p=p, q=q, x0=x0, gx0=lifts.evaluate(self.g, x0)))
        return comps

    def flow(self) -> Flow:
        def path(t: float):
            if t == 0:
                return lifts.identity()
            if float(t).is_integer():
                return lifts.power(self.g, int(t))
            return self._flow_lift(float(t))

        return Flow(self.homeo, path)

    def _g(self, z: float) -> float:
        return float(lifts.evaluate(self.g, z))

    def _g_inv(self, z: float) -> float:
        return float(lifts.evaluate(self.g_inv, z))

    def _h(self, c: _Component, y: float) -> float:
        x0, gx0 = float(c.x0), float(c.gx0)
        n, z, steps = 0, y, 0
        if c.forward:
            while z >= gx0 and steps < _MAX_STEPS:
                z, n, steps = self._g_inv(z), n + 1, steps + 1
            while z < x0 and steps < _MAX_STEPS:
                z, n, steps = self._g(z), n - 1, steps + 1
        else:
            while z <= gx0 and steps < _MAX_STEPS:
                z, n, steps = self._g_inv(z), n + 1, steps + 1
            while z > x0 and steps < _MAX_STEPS:
                z, n, steps = self._g(z), n - 1, steps + 1
        return n + (z - x0) / (gx0 - x0)

    def _h_inv(self, c: _Component, u: float) -> float:
        x0, gx0 = float(c.x0), float(c.gx0)
        n = math.floor(u)
        z = x0 + (u - n) * (gx0 - x0)
        step = self._g if n > 0 else self._g_inv
        for _ in range(abs(n)):
            z = step(z)
        return z

    def _move(self, c: _Component, y: float, t: float) -> float:
        return self._h_inv(c, self._h(c, y) + t)

    def _orbit(self, c: _Component, seed: float) -> list[float]:
        p, q = float(c.p), float(c.q)
        points = [seed]
        for step in (self._g, self._g_inv):
            z = seed
            for _ in range(_MAX_STEPS):
                z = step(z)
                if not (p + constants.FLOW_EDGE < z < q - constants.FLOW_EDGE):
                    break
                points.append(z)
        return points

    def _flow_lift(self, t: float) -> PLLift:
        nodes: dict[Fraction, Fraction] = {}
        for c in self.components:
            nodes[c.p] = c.p
            nodes[c.q] = c.q
            seeds = [float(c.x0)]
            lo, hi = sorted((c.x0, c.gx0))
            seeds.extend(float(x + j) for x, _ in self.g.breakpoints for j in (-1, 0, 1, 2) if lo < x + j < hi)
            orbit: list[float] = []
            for s in seeds:
                orbit.extend(self._orbit(c, s))
            candidates = set(orbit)
            candidates.update(self._move(c, y, -t) for y in orbit)
            p, q = float(c.p), float(c.q)
            for y in candidates:
                if p + constants.FLOW_EDGE < y < q - constants.FLOW_EDGE:
                    value = self._move(c, y, t)
                    if p < value < q:
                        nodes[Fraction(y)] = Fraction(value)
        ordered = sorted(nodes.items())
        clean: list[tuple[Fraction, Fraction]] = []
        for x, y in ordered:
            if clean and not (x > clean[-1][0] and y > clean[-1][1]):
                continue
            clean.append((x, y))
        reduced = {}
        for x, y in clean:
            k = math.floor(x)
            reduced.setdefault(x - k, y - k)
        return lifts.pl(sorted(reduced.items()))


class ConjugatingFamily:
    """f_t with f_t g_t f_t^{-1} = g_0 on an interval, f_0 = identity.

    f_t maps the fundamental domain [x, g_t(x)] affinely onto [x, g_0(x)] and is
    extended equivariantly: f_t(g_t^n(z)) = g_0^n(A_t z).
    """

    def __init__(self, family: Callable[[float], MapLike], interval: tuple[float, float], base_point: float):
        self.family = family
        self.interval = interval
        self.base_point = base_point
        self._g0 = lifts.as_lift(family(0.0))
        self._g0_inv = lifts.invert(self._g0)

    def map_at(self, t: float) -> Callable[[float], float]:
        g_t = lifts.as_lift(self.family(t))
        g_t_inv = lifts.invert(g_t)
        x = self.base_point
        end_t = float(lifts.evaluate(g_t, x))
        end_0 = float(lifts.evaluate(self._g0, x))
        ratio = (end_0 - x) / (end_t - x)
        forward = end_t > x

        def f_t(y: float) -> float:
            n, z, steps = 0, y, 0
            if forward:
                while z >= end_t and steps < _MAX_STEPS:
                    z, n, steps = float(lifts.evaluate(g_t_inv, z)), n + 1, steps + 1
                while z < x and steps < _MAX_STEPS:
                    z, n, steps = float(lifts.evaluate(g_t, z)), n - 1, steps + 1
            else:
                while z <= end_t and steps < _MAX_STEPS:
                    z, n, steps = float(lifts.evaluate(g_t_inv, z)), n + 1, steps + 1
                while z > x and steps < _MAX_STEPS:
                    z, n, steps = float(lifts.evaluate(g_t, z)), n - 1, steps + 1
            w = x + (z - x) * ratio
            step = self._g0 if n > 0 else self._g0_inv
            for _ in range(abs(n)):
                w = float(lifts.evaluate(step, w))
            return w

        return f_t

    def conjugacy_error(self, t: float, grid: Sequence[float]) -> float:
        """max |f_t(g_t(y)) - g_0(f_t(y))| over the grid."""
        f_t = self.map_at(t)
        g_t = lifts.as_lift(self.family(t))
        return max(abs(f_t(float(lifts.evaluate(g_t, y))) - float(lifts.evaluate(self._g0, f_t(y)))) for y in grid)


def interval_grid(interval: tuple[float, float], count: int, center: float = 0.0) -> list[float]:
    """count interior points of the interval; infinite ends are cut at center +- 100."""
    lo, hi = interval
    lo = center - 100.0 if math.isinf(lo) else lo
    hi = center + 100.0 if math.isinf(hi) else hi
    return [lo + (hi - lo) * (i + 0.5) / count for i in range(count)]


def conjugating_family(
    family: Callable[[float], MapLike],
    interval: tuple[float, float],
    samples: Sequence[float],
    base_point: Optional[float] = None,
) -> ConjugatingFamily:
    """Builds f_t conjugating g_t to g_0 on the interval.

    Raises:
        FixedPointInInterval: some sampled g_t has a fixed point in the interval.
    """
    lo, hi = interval
    if base_point is None:
        if math.isinf(lo) and math.isinf(hi):
            base_point = 0.0
        elif math.isinf(lo):
            base_point = hi - 1.0
        elif math.isinf(hi):
            base_point = lo + 1.0
        else:
            base_point = 0.5 * (lo + hi)
    grid = interval_grid(interval, 512, base_point)
    for t in samples:
        g_t = lifts.as_lift(family(t))
        disp = [float(lifts.evaluate(g_t, y)) - y for y in grid]
        if not (all(d > 0 for d in disp) or all(d < 0 for d in disp)):
            raise FixedPointInInterval(f"g_{t} has a fixed point in {interval}")
    _logger.debug("conjugating family on %s checked at %d samples", interval, len(samples))
    return ConjugatingFamily(family, interval, base_point)
