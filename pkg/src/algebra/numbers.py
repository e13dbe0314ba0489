"""Exact rationals extended by +infinity.

Rationals are plain ``fractions.Fraction`` values. The only non-finite value ever
needed is +inf, which arises from degenerate weights (an unbounded edge sitting on a
coordinate axis), so it is modelled by a single ordered sentinel.
"""

from fractions import Fraction
from functools import total_ordering
from typing import Union


@total_ordering
class PositiveInfinity:
    """The value +inf, ordered above every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __hash__(self) -> int:
        return hash("restrikt-inf")

    def __eq__(self, other) -> bool:
        return other is self

    def __lt__(self, other) -> bool:
        return False

    def __gt__(self, other) -> bool:
        return other is not self

    def __add__(self, other) -> "PositiveInfinity":
        return self

    __radd__ = __add__

    def __mul__(self, other) -> "PositiveInfinity":
        if other is self or other > 0:
            return self
        raise ArithmeticError("inf * non-positive is undefined")

    __rmul__ = __mul__

    def __truediv__(self, other) -> "PositiveInfinity":
        if other is self:
            raise ArithmeticError("inf / inf is undefined")
        if other > 0:
            return self
        raise ArithmeticError("inf / non-positive is undefined")

    def __rtruediv__(self, other) -> Fraction:
        return Fraction(0)

    def __float__(self) -> float:
        return float("inf")


INF = PositiveInfinity()

ExtRational = Union[Fraction, PositiveInfinity]


def reciprocal(value: ExtRational) -> ExtRational:
    """1/x on [0, +inf], with 1/0 = inf and 1/inf = 0."""
    if value is INF:
        return Fraction(0)
    if value == 0:
        return INF
    return 1 / Fraction(value)


def as_fraction(value: Union[int, str, Fraction]) -> Fraction:
    """Coerce ints, Fractions and "num/den" strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def format_ext(value: ExtRational) -> str:
    """Serialize as "num/den" (always with a denominator) or "inf"."""
    if value is INF:
        return "inf"
    q = Fraction(value)
    return f"{q.numerator}/{q.denominator}"


def parse_ext(text: str) -> ExtRational:
    if text.strip() in ("inf", "+inf"):
        return INF
    return Fraction(text.strip())


def format_float(value: ExtRational) -> str:
    """Exact-to-float conversion with 17 significant digits, as used by CSV output."""
    return format(float(value), ".17g")
