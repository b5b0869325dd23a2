"""Lifts of circle homeomorphisms to the line, and the group operations on them.

A lift is a strictly increasing map F: R -> R with F(x + 1) = F(x) + 1. Four
kinds are supported:

  * RotationLift: x -> x + tau.
  * PLLift: periodic piecewise-linear interpolation of breakpoints (x_i, y_i)
    with x_i in [0, 1); exact when the data is rational.
  * MobiusLift: lift of the projective action of a 2x2 matrix on the circle of
    directions, theta -> (cos(pi theta), sin(pi theta)); `branch` picks one of
    the Z-many lifts.
  * CompositeLift: parts applied right to left, f o g stored as [f, g].
"""

import bisect
from fractions import Fraction
from functools import cached_property
import logging
import math
import random
from typing import Annotated, Any, Iterable, Literal, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from circlerig.shared_libraries import constants
from circlerig.shared_libraries.errors import InvalidMap
from circlerig.shared_libraries.numeric import (
    Number,
    number_from_json,
    number_to_json,
    to_fraction,
    to_number,
)

_logger = logging.getLogger(__name__)

Matrix = tuple[tuple[float, float], tuple[float, float]]


class RotationLift(BaseModel):
    """Translation x -> x + tau."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: Literal["rotation"] = "rotation"
    tau: Number = Field(description="Translation amount; a Fraction when exact.")


class PLLift(BaseModel):
    """Periodic piecewise-linear lift through its breakpoints on one period."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: Literal["pl"] = "pl"
    breakpoints: tuple[tuple[Fraction, Fraction], ...] = Field(
        description="(x_i, y_i) with x_i in [0,1) strictly increasing and y_i strictly increasing."
    )

    @model_validator(mode="after")
    def _check_breakpoints(self):
        bps = self.breakpoints
        if not bps:
            raise InvalidMap("a PL lift needs at least one breakpoint")
        for i, (x, _) in enumerate(bps):
            if not 0 <= x < 1:
                raise InvalidMap(f"breakpoint x={x} outside [0,1)")
            if i and not (bps[i - 1][0] < x and bps[i - 1][1] < bps[i][1]):
                raise InvalidMap("breakpoints must be strictly increasing in x and y")
        if not bps[-1][1] < bps[0][1] + 1:
            raise InvalidMap("breakpoint values must span less than one period")
        return self

    @cached_property
    def _nodes(self) -> tuple[list, list, list, list, list]:
        xs = [x for x, _ in self.breakpoints]
        ys = [y for _, y in self.breakpoints]
        ext_x = [xs[-1] - 1] + xs + [xs[0] + 1]
        ext_y = [ys[-1] - 1] + ys + [ys[0] + 1]
        fx = [float(v) for v in ext_x]
        fy = [float(v) for v in ext_y]
        slopes = [float((ext_y[i + 1] - ext_y[i]) / (ext_x[i + 1] - ext_x[i])) for i in range(len(ext_x) - 1)]
        return ext_x, ext_y, fx, fy, slopes


class MobiusLift(BaseModel):
    """Lift of a projective 2x2 matrix action on the circle of directions."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["mobius"] = "mobius"
    matrix: Matrix = Field(description="Row-major matrix with determinant 1.")
    branch: int = Field(default=0, description="Integer offset from the base lift.")

    @model_validator(mode="after")
    def _check_det(self):
        (a, b), (c, d) = self.matrix
        det = a * d - b * c
        scale = max(1.0, a * a + b * b + c * c + d * d)
        if abs(det - 1.0) > constants.MATRIX_TOL * scale:
            raise InvalidMap(f"matrix determinant {det} is not 1")
        return self


class CompositeLift(BaseModel):
    """Composition of lifts; parts[0] is applied last."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: Literal["composite"] = "composite"
    parts: tuple["LiftedMap", ...] = Field(description="Lifts applied right to left.")

    @model_validator(mode="after")
    def _check_parts(self):
        if len(self.parts) < 2:
            raise InvalidMap("a composite needs at least two parts")
        return self


LiftedMap = Annotated[
    Union[RotationLift, PLLift, MobiusLift, CompositeLift], Field(discriminator="kind")
]
CompositeLift.model_rebuild()


class CircleHomeo(BaseModel):
    """A circle homeomorphism, stored through its canonical lift (value at 0 in [0,1))."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lift: LiftedMap

    def __call__(self, x: Number) -> Number:
        """Image of the circle point x, reduced mod 1."""
        return evaluate(self.lift, x) % 1

    def to_json(self) -> dict:
        return lift_to_json(self.lift)


MapLike = Union[RotationLift, PLLift, MobiusLift, CompositeLift, CircleHomeo]


def as_lift(f: MapLike) -> Any:
    """The lift of f (the canonical one for a CircleHomeo)."""
    if isinstance(f, CircleHomeo):
        return f.lift
    return f


# Constructors


def rotation(tau: Union[Number, int, str]) -> RotationLift:
    return RotationLift(tau=to_number(tau))


def identity() -> RotationLift:
    return RotationLift(tau=Fraction(0))


def pl(points: Iterable[Sequence[Union[Number, int, str]]]) -> PLLift:
    """A PL lift through the given (x, y) points; any x, reduced to one period.

    Collinear breakpoints are dropped.
    """
    nodes = [(to_fraction(x), to_fraction(y)) for x, y in points]
    return _pl_from_nodes(nodes)


def mobius(matrix: Any, branch: int = 0) -> MobiusLift:
    """A Mobius lift; the matrix is rescaled to determinant 1."""
    m = np.asarray(matrix, dtype=float).reshape(2, 2)
    det = float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    if not det > 0:
        raise InvalidMap(f"matrix determinant {det} is not positive")
    m = m / math.sqrt(det)
    return MobiusLift(matrix=_as_matrix(m), branch=branch)


def mobius_through(matrix: Any, x: float, value: float) -> MobiusLift:
    """The Mobius lift of matrix whose value at x is nearest to value."""
    base = mobius(matrix)
    return MobiusLift(matrix=base.matrix, branch=round(value - _mobius_base(base.matrix, x)))


def random_pl(rng: random.Random, pieces: int = 3, denominator: int = 12) -> PLLift:
    """A random PL lift with small rational data."""
    pieces = max(1, min(pieces, denominator))
    xs = sorted(rng.sample(range(denominator), pieces))
    weights = [rng.randint(1, 4) for _ in range(pieces)]
    total = sum(weights)
    y0 = Fraction(rng.randrange(denominator), denominator)
    points = []
    acc = 0
    for x, w in zip(xs, weights):
        points.append((Fraction(x, denominator), y0 + Fraction(acc, total)))
        acc += w
    return pl(points)


def _as_matrix(m: np.ndarray) -> Matrix:
    return ((float(m[0, 0]), float(m[0, 1])), (float(m[1, 0]), float(m[1, 1])))


def _pl_from_nodes(nodes: list[tuple[Fraction, Fraction]]) -> PLLift:
    if not nodes:
        raise InvalidMap("a PL lift needs at least one breakpoint")
    reduced = {}
    for x, y in nodes:
        k = math.floor(x)
        x, y = x - k, y - k
        if x in reduced and reduced[x] != y:
            raise InvalidMap(f"two values given at x={x}")
        reduced[x] = y
    xs = sorted(reduced)
    ys = [reduced[x] for x in xs]
    n = len(xs)
    if n > 1:
        keep = []
        for i in range(n):
            px, py = (xs[i - 1], ys[i - 1]) if i else (xs[-1] - 1, ys[-1] - 1)
            nx, ny = (xs[i + 1], ys[i + 1]) if i + 1 < n else (xs[0] + 1, ys[0] + 1)
            if (ys[i] - py) * (nx - xs[i]) != (ny - ys[i]) * (xs[i] - px):
                keep.append(i)
        if not keep:
            keep = [0]
        xs = [xs[i] for i in keep]
        ys = [ys[i] for i in keep]
    return PLLift(breakpoints=tuple(zip(xs, ys)))


# Evaluation


def _pl_value(f: PLLift, x: Number) -> Number:
    ext_x, ext_y, fx, fy, slopes = f._nodes
    k = math.floor(x)
    r = x - k
    if isinstance(x, float):
        i = bisect.bisect_right(fx, r) - 1
        return k + (fy[i] + slopes[i] * (r - fx[i]))
    i = bisect.bisect_right(ext_x, r) - 1
    x0, x1, y0, y1 = ext_x[i], ext_x[i + 1], ext_y[i], ext_y[i + 1]
    return k + y0 + (y1 - y0) * (r - x0) / (x1 - x0)


def _mobius_base(m: Matrix, x: float) -> float:
    """Base lift of the matrix action: the branch-0 lift."""
    (a, b), (c, d) = m
    k = math.floor(x)
    f = x - k
    a0 = (math.atan2(c, a) / math.pi) % 1.0
    cf, sf = math.cos(math.pi * f), math.sin(math.pi * f)
    wx, wy = a * cf + b * sf, c * cf + d * sf
    det = a * d - b * c
    return k + a0 + math.atan2(det * sf, a * wx + c * wy) / math.pi


def evaluate(f: MapLike, x: Union[Number, int]) -> Number:
    """Value of the lift at x; exact for rational data and rational x."""
    f = as_lift(f)
    if isinstance(f, RotationLift):
        if isinstance(f.tau, float) and not isinstance(x, float):
            x = float(x)
        return x + f.tau
    if isinstance(f, PLLift):
        if isinstance(x, int):
            x = Fraction(x)
        return _pl_value(f, x)
    if isinstance(f, MobiusLift):
        return _mobius_base(f.matrix, float(x)) + f.branch
    if isinstance(f, CompositeLift):
        value = x
        for part in reversed(f.parts):
            value = evaluate(part, value)
        return value
    raise InvalidMap(f"unknown lift {f!r}")


def is_exact(f: MapLike) -> bool:
    """True when evaluation at rationals is exact rational arithmetic."""
    f = as_lift(f)
    if isinstance(f, RotationLift):
        return isinstance(f.tau, Fraction)
    if isinstance(f, PLLift):
        return True
    if isinstance(f, CompositeLift):
        return all(is_exact(p) for p in f.parts)
    return False


def sample_points(f: MapLike, count: int) -> list[Number]:
    """A deterministic grid on [0,1) plus the breakpoints of PL parts."""
    f = as_lift(f)
    exact = is_exact(f)
    points: set = {Fraction(i, count) if exact else i / count for i in range(count)}
    for part in (f.parts if isinstance(f, CompositeLift) else (f,)):
        if isinstance(part, PLLift):
            points.update(x if exact else float(x) for x, _ in part.breakpoints)
    return sorted(points)


def circle_distance(f: MapLike, g: MapLike, count: int = 1000) -> float:
    """Sup over a grid of the circular distance between f(x) and g(x)."""
    worst = 0.0
    for i in range(count):
        x = i / count
        d = abs(float(evaluate(f, x)) - float(evaluate(g, x))) % 1.0
        worst = max(worst, min(d, 1.0 - d))
    return worst


def lift_distance(f: MapLike, g: MapLike, count: int = 1000) -> float:
    """Sup over a grid of |F(x) - G(x)| for the lifts themselves."""
    return max(abs(float(evaluate(f, i / count)) - float(evaluate(g, i / count))) for i in range(count))


# Group operations


def translate(f: MapLike, k: int) -> Any:
    """The lift T^k o f."""
    f = as_lift(f)
    if k == 0:
        return f
    if isinstance(f, RotationLift):
        return RotationLift(tau=f.tau + k)
    if isinstance(f, PLLift):
        return PLLift(breakpoints=tuple((x, y + k) for x, y in f.breakpoints))
    if isinstance(f, MobiusLift):
        return MobiusLift(matrix=f.matrix, branch=f.branch + k)
    return CompositeLift(parts=(translate(f.parts[0], k),) + tuple(f.parts[1:]))


def _integer_translation(f: Any) -> Optional[int]:
    if isinstance(f, RotationLift) and f.tau == math.floor(f.tau):
        return int(f.tau)
    return None


def _as_pl(f: Any) -> Optional[PLLift]:
    if isinstance(f, PLLift):
        return f
    if isinstance(f, RotationLift):
        return PLLift(breakpoints=((Fraction(0), to_fraction(f.tau)),))
    return None


def _rotation_as_mobius(f: RotationLift) -> MobiusLift:
    angle = math.pi * float(f.tau)
    m = ((math.cos(angle), -math.sin(angle)), (math.sin(angle), math.cos(angle)))
    return MobiusLift(matrix=m, branch=round(float(f.tau) - _mobius_base(m, 0.0)))


def _as_mobius(f: Any) -> Optional[MobiusLift]:
    if isinstance(f, MobiusLift):
        return f
    if isinstance(f, RotationLift):
        return _rotation_as_mobius(f)
    return None


def _pl_compose(f: PLLift, g: PLLift) -> PLLift:
    g_inv = _pl_invert(g)
    xs = {x for x, _ in g.breakpoints}
    xs.update(_pl_value(g_inv, x) % 1 for x, _ in f.breakpoints)
    return _pl_from_nodes([(x, _pl_value(f, _pl_value(g, x))) for x in xs])


def _pl_invert(f: PLLift) -> PLLift:
    return _pl_from_nodes([(y, x) for x, y in f.breakpoints])


def _mobius_compose(f: MobiusLift, g: MobiusLift) -> MobiusLift:
    product = np.asarray(f.matrix) @ np.asarray(g.matrix)
    value = evaluate(f, evaluate(g, 0.0))
    return mobius_through(product, 0.0, value)


def _merge(f: Any, g: Any) -> Optional[Any]:
    """f o g as a single non-composite lift when the kinds allow it."""
    k = _integer_translation(f)
    if k is not None:
        return translate(g, k)
    k = _integer_translation(g)
    if k is not None:
        return translate(f, k)
    if isinstance(f, RotationLift) and isinstance(g, RotationLift):
        return RotationLift(tau=f.tau + g.tau)
    if isinstance(f, (PLLift, RotationLift)) and isinstance(g, (PLLift, RotationLift)):
        return _pl_compose(_as_pl(f), _as_pl(g))
    mf, mg = _as_mobius(f), _as_mobius(g)
    if mf is not None and mg is not None:
        return _mobius_compose(mf, mg)
    return None


def _from_parts(parts: list) -> Any:
    flat: list = []
    for part in parts:
        flat.extend(part.parts if isinstance(part, CompositeLift) else (part,))
    merged: list = []
    for part in reversed(flat):
        merged.append(part)
        while len(merged) > 1:
            combined = _merge(merged[-1], merged[-2])
            if combined is None:
                break
            merged[-2:] = [combined]
    merged.reverse()
    if len(merged) == 1:
        return merged[0]
    return CompositeLift(parts=tuple(merged))


def compose(f: MapLike, g: MapLike) -> Any:
    """The lift of f o g (g applied first)."""
    return _from_parts([as_lift(f), as_lift(g)])


def compose_all(maps: Sequence[MapLike]) -> Any:
    """maps[0] o maps[1] o ... ; the identity for an empty list."""
    if not maps:
        return identity()
    return _from_parts([as_lift(m) for m in maps])


def invert(f: MapLike) -> Any:
    f = as_lift(f)
    if isinstance(f, RotationLift):
        return RotationLift(tau=-f.tau)
    if isinstance(f, PLLift):
        return _pl_invert(f)
    if isinstance(f, MobiusLift):
        (a, b), (c, d) = f.matrix
        inverse = ((d, -b), (-c, a))
        return MobiusLift(matrix=inverse, branch=round(-_mobius_base(inverse, float(evaluate(f, 0.0)))))
    return _from_parts([invert(p) for p in reversed(f.parts)])


def power(f: MapLike, n: int) -> Any:
    """f composed with itself n times; negative n uses the inverse."""
    f = as_lift(f)
    if n < 0:
        return power(invert(f), -n)
    if isinstance(f, RotationLift):
        return RotationLift(tau=f.tau * n)
    result: Any = identity()
    base = f
    while n:
        if n & 1:
            result = compose(base, result)
        n >>= 1
        if n:
            base = compose(base, base)
    return result


def conjugate(c: MapLike, f: MapLike) -> Any:
    """c o f o c^{-1}."""
    return compose_all([c, f, invert(c)])


def reflect(f: MapLike) -> Any:
    """Conjugate of f by the orientation reversal x -> -x."""
    f = as_lift(f)
    if isinstance(f, RotationLift):
        return RotationLift(tau=-f.tau)
    if isinstance(f, PLLift):
        return _pl_from_nodes([(-x, -y) for x, y in f.breakpoints])
    if isinstance(f, MobiusLift):
        (a, b), (c, d) = f.matrix
        flipped = ((a, -b), (-c, d))
        return MobiusLift(matrix=flipped, branch=round(-float(evaluate(f, 0.0)) - _mobius_base(flipped, 0.0)))
    return CompositeLift(parts=tuple(reflect(p) for p in f.parts))


def canonicalize(f: MapLike) -> CircleHomeo:
    """The circle homeomorphism of f, stored with its canonical lift."""
    if isinstance(f, CircleHomeo):
        return f
    k = math.floor(evaluate(f, Fraction(0) if is_exact(f) else 0.0))
    return CircleHomeo(lift=translate(f, -k))


def mobius_matrix(f: MapLike) -> np.ndarray:
    f = as_lift(f)
    if isinstance(f, RotationLift):
        f = _rotation_as_mobius(f)
    if not isinstance(f, MobiusLift):
        raise InvalidMap(f"{f.kind} lift has no matrix")
    return np.asarray(f.matrix, dtype=float)


# Serialization


def lift_to_json(f: MapLike) -> dict:
    f = as_lift(f)
    if isinstance(f, RotationLift):
        return {constants.KIND: constants.ROTATION, "tau": number_to_json(f.tau)}
    if isinstance(f, PLLift):
        return {
            constants.KIND: constants.PL,
            "breakpoints": [[str(x), str(y)] for x, y in f.breakpoints],
        }
    if isinstance(f, MobiusLift):
        return {constants.KIND: constants.MOBIUS, "matrix": [list(r) for r in f.matrix], "branch": f.branch}
    return {constants.KIND: constants.COMPOSITE, "parts": [lift_to_json(p) for p in f.parts]}


def lift_from_json(record: dict) -> Any:
    kind = record.get(constants.KIND)
    try:
        if kind == constants.ROTATION:
            return RotationLift(tau=number_from_json(record["tau"]))
        if kind == constants.PL:
            points = tuple((Fraction(x), Fraction(y)) for x, y in record["breakpoints"])
            return PLLift(breakpoints=points)
        if kind == constants.MOBIUS:
            m = record["matrix"]
            matrix = ((float(m[0][0]), float(m[0][1])), (float(m[1][0]), float(m[1][1])))
            return MobiusLift(matrix=matrix, branch=int(record.get("branch", 0)))
        if kind == constants.COMPOSITE:
            return CompositeLift(parts=tuple(lift_from_json(p) for p in record["parts"]))
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise InvalidMap(f"malformed {kind} record: {e}") from e
    raise InvalidMap(f"unknown lift kind {kind!r}")
