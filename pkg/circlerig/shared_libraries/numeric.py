"""Exact/float number helpers: coercion, outward rounding and report formatting."""

from fractions import Fraction
import math
from typing import Union

from circlerig.shared_libraries import constants

Number = Union[Fraction, float]


def to_fraction(value: Union[Number, int, str]) -> Fraction:
    """Coerces ints, floats (exactly) and "p/q" strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def to_number(value: Union[Number, int, str]) -> Number:
    """Ints and strings become Fractions; floats stay floats."""
    if isinstance(value, float):
        return value
    return to_fraction(value)


def is_exact(value: object) -> bool:
    return isinstance(value, (Fraction, int))


def floor(value: Number) -> int:
    return math.floor(value)


def frac(value: Number) -> Number:
    return value - math.floor(value)


def float_down(value: Fraction) -> float:
    """Largest float not above value."""
    f = float(value)
    if Fraction(f) > value:
        f = math.nextafter(f, -math.inf)
    return f


def float_up(value: Fraction) -> float:
    """Smallest float not below value."""
    f = float(value)
    if Fraction(f) < value:
        f = math.nextafter(f, math.inf)
    return f


def widen_down(value: float, slack: float = 0.0, ulps: int = 2) -> float:
    v = value - slack
    for _ in range(ulps):
        v = math.nextafter(v, -math.inf)
    return v


def widen_up(value: float, slack: float = 0.0, ulps: int = 2) -> float:
    v = value + slack
    for _ in range(ulps):
        v = math.nextafter(v, math.inf)
    return v


def number_to_json(value: Number) -> Union[str, float]:
    """Rationals serialize as "p/q" strings, floats as JSON numbers."""
    if isinstance(value, (Fraction, int)):
        return str(Fraction(value))
    return float(value)


def number_from_json(value: Union[str, float, int]) -> Number:
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, int):
        return Fraction(value)
    return float(value)


def fmt(value: Union[Number, int]) -> str:
    """Report formatting with a fixed number of significant digits."""
    if isinstance(value, int) or (isinstance(value, Fraction) and value.denominator == 1):
        return str(int(value))
    result = format(float(value), f".{constants.SIGNIFICANT_DIGITS}g")
    return "0" if result == "-0" else result


def round_report(value: float) -> float:
    """A float rounded to the report precision, for JSON output."""
    return float(format(value, f".{constants.SIGNIFICANT_DIGITS}g"))
