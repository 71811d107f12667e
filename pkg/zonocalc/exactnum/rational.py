"""
Exact rationals.

The calculus works over sympy's ``QQ`` domain; every rational that crosses a
module boundary is a ``QQ`` element. This module holds the few conversions
the rest of the package needs: parsing and formatting the "p/q" wire form,
floors and ceilings, and coordinate-wise vector helpers.
"""
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

from sympy import QQ

from ..errors import ConfigError

Rat = type(QQ(1))
Point = Tuple[Rat, ...]
RatLike = Union[int, str, Rat, Fraction]


def rat(value: RatLike) -> Rat:
    """Converts ints, "p/q" strings, Fractions and QQ elements to QQ."""
    if isinstance(value, bool):
        raise ConfigError(f"boolean is not a rational: {value}")
    if isinstance(value, Rat):
        return value
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, str):
        return parse_rat(value)
    if hasattr(value, "numerator") and hasattr(value, "denominator") and not isinstance(value, float):
        return QQ(int(value.numerator), int(value.denominator))
    raise ConfigError(f"not an exact rational: {value!r}")


def parse_rat(text: str) -> Rat:
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            den_value = int(den)
            if den_value == 0:
                raise ConfigError(f"zero denominator in '{text}'")
            return QQ(int(num), den_value)
        return QQ(int(text))
    except ValueError:
        raise ConfigError(f"not an exact rational: '{text}'")


def format_rat(value: Rat) -> str:
    value = rat(value)
    if value.denominator == 1:
        return str(int(value.numerator))
    return f"{int(value.numerator)}/{int(value.denominator)}"


def floor_rat(value: Rat) -> int:
    return int(value.numerator) // int(value.denominator)


def ceil_rat(value: Rat) -> int:
    return -(-int(value.numerator) // int(value.denominator))


def is_integral(value: Rat) -> bool:
    return int(value.denominator) == 1


# ------------------------------------------
# Vectors
# ------------------------------------------

def point(values: Iterable[RatLike]) -> Point:
    return tuple(rat(v) for v in values)


def dot(u: Sequence, v: Sequence) -> Rat:
    total = QQ(0)
    for a, b in zip(u, v):
        if a and b:
            total += a * b
    return total


def add(u: Sequence, v: Sequence) -> Point:
    return tuple(QQ(a) + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Point:
    return tuple(QQ(a) - b for a, b in zip(u, v))


def scale(c: RatLike, u: Sequence) -> Point:
    c = rat(c)
    return tuple(c * a for a in u)


def centroid(points: Sequence[Sequence]) -> Point:
    count = len(points)
    dim = len(points[0])
    return tuple(sum((QQ(p[i]) for p in points), QQ(0)) / count for i in range(dim))


def format_point(values: Sequence) -> list:
    return [format_rat(v) for v in values]
