"""Exact rational scalars.

``fractions.Fraction`` is the Rational type of the whole package: it is always reduced,
keeps a positive denominator and represents zero as 0/1. Polynomial coefficients live in
sympy's ``QQ`` and are converted at the boundary.
"""

from fractions import Fraction
from math import comb, factorial
from typing import Union

from sympy.polys.domains import QQ

Rational = Fraction
RationalLike = Union[Fraction, int, str]


class RationalParseError(ValueError):
    pass


def parse_rational(value: RationalLike) -> Fraction:
    """Parse "p/q", "p" or an int into a Fraction. Floats are refused."""
    if isinstance(value, bool) or isinstance(value, float):
        raise RationalParseError(f"not an exact rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError, AttributeError):
        raise RationalParseError(f"cannot parse rational from {value!r}") from None


def format_rational(value: Fraction) -> str:
    # Fraction.__str__ already prints "p/q", or "p" when q == 1
    return str(Fraction(value))


def to_qq(value: RationalLike):
    r = parse_rational(value)
    return QQ(r.numerator, r.denominator)


def from_qq(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def binomial(top: int, bottom: int) -> int:
    if bottom < 0 or top < 0 or bottom > top:
        return 0
    return comb(top, bottom)


def falling_ratio(top: int, drop: int) -> int:
    """top! / (top - drop)!"""
    return factorial(top) // factorial(top - drop)
