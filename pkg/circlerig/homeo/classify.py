"""Fixed-point classification of circle homeomorphisms."""

from fractions import Fraction
import logging
import math
from typing import Optional

import numpy as np

from circlerig.homeo import lifts
from circlerig.homeo.lifts import CompositeLift, MapLike, MobiusLift, PLLift, RotationLift
from circlerig.shared_libraries import config, constants
from circlerig.shared_libraries.errors import AmbiguousAtTolerance
from circlerig.shared_libraries.numeric import Number
from circlerig.shared_libraries.types import CirclePoint, DynClass

_logger = logging.getLogger(__name__)


def classify(f: MapLike, tol: Optional[float] = None) -> DynClass:
    """Classifies f by its fixed set.

    PL lifts are solved exactly, Mobius lifts by the trace criterion and
    composites by root isolation on the displacement function at tolerance tol.

    Raises:
        AmbiguousAtTolerance: a composite's displacement root is not certified.
    """
    tol = config.default_tol() if tol is None else tol
    lift = lifts.as_lift(lifts.canonicalize(f))
    if isinstance(lift, RotationLift):
        return _classify_rotation(lift, tol)
    if isinstance(lift, PLLift):
        return _classify_pl(lift)
    if isinstance(lift, MobiusLift):
        return _classify_mobius(lift, tol)
    return _classify_composite(lift, tol)


def whole_circle() -> DynClass:
    zero = CirclePoint(angle=Fraction(0))
    return DynClass(tag="GeneralFixed", fixed_set=((zero, zero),), whole_circle=True)


def _classify_rotation(f: RotationLift, tol: float) -> DynClass:
    tau = f.tau
    if isinstance(tau, Fraction):
        integral = tau.denominator == 1
    else:
        integral = abs(tau - round(tau)) <= tol
    return whole_circle() if integral else DynClass(tag="FixedPointFree")


def _from_isolated(points: list[Number], signs: list[int], error: float = 0.0) -> DynClass:
    """Builds the class from sorted isolated fixed points and the sign of the
    displacement on the arc following each point."""
    cps = [CirclePoint.of(p, error) for p in points]
    if len(points) == 1:
        if signs[0] == 0:
            return whole_circle()
        return DynClass(tag="SingleNeutralFixed", point=cps[0])
    if len(points) == 2 and signs[0] != signs[1] and 0 not in signs:
        # sign after p is the sign on the arc that leaves p counterclockwise
        first_attracts = signs[0] < 0
        attracting, repelling = (cps[0], cps[1]) if first_attracts else (cps[1], cps[0])
        return DynClass(tag="Hyperbolic", attracting=attracting, repelling=repelling)
    return DynClass(tag="GeneralFixed", fixed_set=tuple((p, p) for p in cps))


def _sign(v: Number, tol: float = 0.0) -> int:
    if v > tol:
        return 1
    if v < -tol:
        return -1
    return 0


def _classify_pl(f: PLLift) -> DynClass:
    xs = [x for x, _ in f.breakpoints]
    ds = [y - x for x, y in f.breakpoints]
    n = len(xs)
    lo, hi = min(ds), max(ds)
    k = math.ceil(lo)
    if k > hi:
        return DynClass(tag="FixedPointFree")
    # walk the periodic displacement over [x_0, x_0 + 1]
    nodes = list(zip(xs, ds)) + [(xs[0] + 1, ds[0])]
    arcs: list[tuple[Fraction, Fraction]] = []
    for i in range(n):
        (x0, d0), (x1, d1) = nodes[i], nodes[i + 1]
        e0, e1 = d0 - k, d1 - k
        if e0 == 0 and e1 == 0:
            arcs.append((x0, x1))
        elif e0 == 0:
            arcs.append((x0, x0))
        elif e0 * e1 < 0:
            root = x0 + (x1 - x0) * (-e0) / (e1 - e0)
            arcs.append((root, root))
    arcs = _merge_arcs(arcs)
    if len(arcs) == 1 and arcs[0][1] - arcs[0][0] >= 1:
        return whole_circle()
    if any(a != b for a, b in arcs):
        fixed = tuple((CirclePoint.of(a), CirclePoint.of(b)) for a, b in arcs)
        return DynClass(tag="GeneralFixed", fixed_set=fixed)
    points = [a for a, _ in arcs]
    signs = []
    for i, p in enumerate(points):
        q = points[i + 1] if i + 1 < len(points) else points[0] + 1
        mid = (p + q) / 2
        signs.append(_sign(lifts.evaluate(f, mid) - mid - k))
    _logger.debug("PL fixed points %s with signs %s", points, signs)
    return _from_isolated(points, signs)


def _merge_arcs(arcs: list[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    """Merges touching arcs of [x_0, x_0 + 1), including across the wrap."""
    arcs = sorted(set(arcs))
    merged: list[list[Fraction]] = []
    for a, b in arcs:
        if merged and a <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    if len(merged) > 1 and merged[-1][1] >= merged[0][0] + 1:
        first = merged.pop(0)
        merged[-1][1] = max(merged[-1][1], first[1] + 1)
    return [(a, b) for a, b in merged]


def _classify_mobius(f: MobiusLift, tol: float) -> DynClass:
    m = np.asarray(f.matrix, dtype=float)
    tr = float(np.trace(m))
    s = 1.0 if tr >= 0 else -1.0
    if abs(abs(tr) - 2.0) <= tol:
        if np.max(np.abs(m - s * np.eye(2))) <= tol:
            return whole_circle()
        direction = _kernel_direction(m - s * np.eye(2))
        return DynClass(tag="SingleNeutralFixed", point=_direction_point(direction))
    if abs(tr) < 2.0:
        return DynClass(tag="FixedPointFree")
    eigenvalues, vectors = np.linalg.eig(m)
    order = np.argsort(-np.abs(eigenvalues.real))
    attracting = _direction_point(vectors[:, order[0]].real)
    repelling = _direction_point(vectors[:, order[1]].real)
    return DynClass(tag="Hyperbolic", attracting=attracting, repelling=repelling)


def _kernel_direction(n: np.ndarray) -> np.ndarray:
    row = n[0] if np.abs(n[0]).sum() >= np.abs(n[1]).sum() else n[1]
    return np.array([row[1], -row[0]])


def _direction_point(v: np.ndarray) -> CirclePoint:
    theta = (math.atan2(float(v[1]), float(v[0])) / math.pi) % 1.0
    if theta >= 1.0:
        theta = 0.0
    return CirclePoint(angle=theta, error=constants.MATRIX_TOL)


def _classify_composite(f: CompositeLift, tol: float) -> DynClass:
    n = constants.CLASSIFY_GRID

    def displacement(x: float) -> float:
        return float(lifts.evaluate(f, x)) - x

    xs, disp = _refine(displacement, [i / n for i in range(n)])
    lo, hi = min(disp), max(disp)
    k = math.ceil(lo - tol)
    if k > hi + tol:
        return DynClass(tag="FixedPointFree")
    if hi - lo <= tol:
        return whole_circle()
    g = [d - k for d in disp]

    def shifted(x: float) -> float:
        return displacement(x) - k

    m = len(xs)
    roots: list[float] = []
    i = 0
    while i < m:
        here, nxt = g[i], g[(i + 1) % m]
        right = xs[i + 1] if i + 1 < m else xs[0] + 1
        if abs(here) <= tol:
            before = g[i - 1]
            left = xs[i - 1] if i else xs[-1] - 1
            if abs(before) > tol and abs(nxt) > tol and before * nxt < 0:
                roots.append(_bisect(shifted, left, right))
                i += 2
                continue
            raise AmbiguousAtTolerance(
                f"displacement touches {k} near {xs[i]} without a certified crossing",
                (left, right),
            )
        if here * nxt < 0 and abs(nxt) > tol:
            roots.append(_bisect(shifted, xs[i], right))
        i += 1
    if not roots:
        if min(abs(v) for v in g) <= 10 * tol:
            raise AmbiguousAtTolerance(f"displacement comes within {10 * tol} of {k}")
        return DynClass(tag="FixedPointFree")
    roots = sorted(r % 1.0 for r in roots)
    for a, b in zip(roots, roots[1:] + [roots[0] + 1]):
        if b - a <= tol:
            raise AmbiguousAtTolerance(f"fixed points {a} and {b % 1.0} closer than {tol}", (a, b))
    signs = []
    for i, p in enumerate(roots):
        q = roots[i + 1] if i + 1 < len(roots) else roots[0] + 1
        signs.append(_sign(shifted((p + q) / 2), tol))
    _logger.debug("composite fixed points %s with signs %s", roots, signs)
    return _from_isolated(roots, signs, error=tol)


def _refine(fn, grid: list[float]) -> tuple[list[float], list[float]]:
    """Samples fn on the grid, subdividing cells where two roots could hide.

    A cell whose end values lie on one side of an integer, closer to it than
    twice the largest jump over the cell and its neighbours, is resampled finer.
    """
    n = len(grid)
    h = 1.0 / n
    values = [fn(x) for x in grid]
    jumps = [abs(values[(i + 1) % n] - values[i]) for i in range(n)]
    xs: list[float] = []
    out: list[float] = []
    steps = constants.CLASSIFY_REFINE
    for i, (x, v) in enumerate(zip(grid, values)):
        xs.append(x)
        out.append(v)
        w = values[(i + 1) % n]
        k = math.floor(v)
        if math.floor(w) != k:
            continue
        gap = min(v - k, w - k, k + 1 - v, k + 1 - w)
        if gap < 2 * max(jumps[i - 1], jumps[i], jumps[(i + 1) % n]):
            for j in range(1, steps):
                x_j = x + j * h / steps
                xs.append(x_j)
                out.append(fn(x_j))
    return xs, out


def _bisect(fn, a: float, b: float) -> float:
    fa = fn(a)
    for _ in range(80):
        mid = 0.5 * (a + b)
        fm = fn(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (fa < 0):
            a, fa = mid, fm
        else:
            b = mid
        if b - a < 1e-15:
            break
    return 0.5 * (a + b)


def fixed_point_angles(cls: DynClass) -> list[float]:
    return [p.value for p in cls.fixed_points()]
