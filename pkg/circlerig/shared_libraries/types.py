"""Common data schema and types shared across circlerig modules."""

from fractions import Fraction
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from circlerig.shared_libraries.numeric import (
    Number,
    float_down,
    float_up,
    fmt,
    number_from_json,
    number_to_json,
)


class CirclePoint(BaseModel):
    """A point of the circle R/Z."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    angle: Number = Field(description="Coordinate in [0,1); a Fraction when exact.")
    error: float = Field(default=0.0, description="Absolute error bound of a float angle.")

    @model_validator(mode="after")
    def _in_unit_interval(self):
        if not 0 <= self.angle < 1:
            raise ValueError(f"circle point {self.angle} outside [0,1)")
        return self

    @classmethod
    def of(cls, value: Number, error: float = 0.0) -> "CirclePoint":
        """Reduces value mod 1."""
        reduced = value % 1
        if reduced >= 1:
            reduced = 0.0
        return cls(angle=reduced, error=error)

    @property
    def value(self) -> float:
        return float(self.angle)

    def distance(self, other: "CirclePoint") -> float:
        """Length of the shorter arc between the two points."""
        d = abs(self.value - other.value) % 1.0
        return min(d, 1.0 - d)

    def to_json(self) -> Any:
        return number_to_json(self.angle)


class DynClass(BaseModel):
    """Dynamical type of a circle homeomorphism."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    tag: Literal["FixedPointFree", "Hyperbolic", "SingleNeutralFixed", "GeneralFixed"]
    attracting: Optional[CirclePoint] = Field(default=None, description="f_+ for Hyperbolic.")
    repelling: Optional[CirclePoint] = Field(default=None, description="f_- for Hyperbolic.")
    point: Optional[CirclePoint] = Field(default=None, description="The fixed point for SingleNeutralFixed.")
    fixed_set: tuple[tuple[CirclePoint, CirclePoint], ...] = Field(
        default=(),
        description="Closed arcs (start, end), counterclockwise; a point is a degenerate arc, "
        "and the whole circle is the arc (0, 0) with whole_circle set.",
    )
    whole_circle: bool = Field(default=False, description="True for the identity map.")

    @model_validator(mode="after")
    def _check_tag(self):
        if self.tag == "Hyperbolic":
            if self.attracting is None or self.repelling is None:
                raise ValueError("Hyperbolic needs attracting and repelling points")
            if self.attracting.angle == self.repelling.angle:
                raise ValueError("attracting and repelling points coincide")
        if self.tag == "SingleNeutralFixed" and self.point is None:
            raise ValueError("SingleNeutralFixed needs its point")
        return self

    def fixed_points(self) -> list[CirclePoint]:
        """Isolated fixed points (endpoints of arcs for GeneralFixed)."""
        if self.tag == "Hyperbolic":
            return [self.attracting, self.repelling]
        if self.tag == "SingleNeutralFixed":
            return [self.point]
        points = []
        for start, end in self.fixed_set:
            points.append(start)
            if end.angle != start.angle:
                points.append(end)
        return points

    def describe(self) -> str:
        if self.tag == "Hyperbolic":
            return (
                f"Hyperbolic(attracting={fmt(self.attracting.angle)}, "
                f"repelling={fmt(self.repelling.angle)})"
            )
        if self.tag == "SingleNeutralFixed":
            return f"SingleNeutralFixed({fmt(self.point.angle)})"
        if self.tag == "GeneralFixed":
            if self.whole_circle:
                return "GeneralFixed(circle)"
            arcs = ", ".join(
                fmt(s.angle) if s.angle == e.angle else f"[{fmt(s.angle)}, {fmt(e.angle)}]"
                for s, e in self.fixed_set
            )
            return f"GeneralFixed({arcs})"
        return "FixedPointFree"

    def to_json(self) -> dict:
        record: dict[str, Any] = {"tag": self.tag}
        if self.tag == "Hyperbolic":
            record["attracting"] = self.attracting.to_json()
            record["repelling"] = self.repelling.to_json()
        elif self.tag == "SingleNeutralFixed":
            record["point"] = self.point.to_json()
        elif self.tag == "GeneralFixed":
            record["whole_circle"] = self.whole_circle
            record["fixed_set"] = [[s.to_json(), e.to_json()] for s, e in self.fixed_set]
        return record


class PeriodicWitness(BaseModel):
    """A periodic orbit record: F^q(x) = x + p."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    x: Number = Field(description="Starting point of the orbit (lift coordinate).")
    q: int = Field(ge=1, description="Period.")
    p: int = Field(description="Winding: the lift returns to x + p.")

    def to_json(self) -> dict:
        return {"x": number_to_json(self.x), "q": self.q, "p": self.p}


class RotBound(BaseModel):
    """A certified enclosure of a translation or rotation number."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lo: float = Field(description="Lower end of the enclosure.")
    hi: float = Field(description="Upper end of the enclosure.")
    exact: Optional[Fraction] = Field(default=None, description="Exact rational value when certified.")
    witness: Optional[PeriodicWitness] = Field(default=None, description="Periodic orbit certificate.")
    iterations: int = Field(default=0, description="Orbit length used for the enclosure.")

    @model_validator(mode="after")
    def _ordered(self):
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")
        if self.exact is not None and not (self.lo <= self.exact <= self.hi):
            raise ValueError("exact value outside its enclosure")
        return self

    @classmethod
    def from_exact(cls, value: Fraction, witness: Optional[PeriodicWitness] = None) -> "RotBound":
        value = Fraction(value)
        return cls(lo=float_down(value), hi=float_up(value), exact=value, witness=witness)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        if self.exact is not None:
            return float(self.exact)
        return 0.5 * (self.lo + self.hi)

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return self.lo - slack <= value <= self.hi + slack

    def describe(self) -> str:
        text = f"[{fmt(self.lo)}, {fmt(self.hi)}]"
        if self.exact is not None:
            text += f" exact {self.exact}"
        return text

    def to_json(self) -> dict:
        record: dict[str, Any] = {"lo": self.lo, "hi": self.hi}
        if self.exact is not None:
            record["exact"] = str(self.exact)
        if self.witness is not None:
            record["witness"] = self.witness.to_json()
        return record

    @classmethod
    def from_json(cls, record: dict) -> "RotBound":
        witness = None
        if "witness" in record:
            w = record["witness"]
            witness = PeriodicWitness(x=number_from_json(w["x"]), q=w["q"], p=w["p"])
        exact = Fraction(record["exact"]) if "exact" in record else None
        return cls(lo=record["lo"], hi=record["hi"], exact=exact, witness=witness)


class Arc(BaseModel):
    """A proper closed arc of the circle, counterclockwise from start to end."""
    model_config = ConfigDict(frozen=True)

    start: float = Field(description="Start angle in [0,1).")
    length: float = Field(gt=0.0, lt=1.0, description="Arc length in (0,1).")

    @classmethod
    def around(cls, center: float, radius: float) -> "Arc":
        return cls(start=(center - radius) % 1.0, length=2.0 * radius)

    @property
    def end(self) -> float:
        return (self.start + self.length) % 1.0

    def contains(self, angle: float) -> bool:
        return (angle - self.start) % 1.0 <= self.length

    def complement(self) -> "Arc":
        """Closure of the complementary arc."""
        return Arc(start=self.end, length=1.0 - self.length)
