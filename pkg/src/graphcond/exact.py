"""Exact scalars: Python ints, or Fractions when a value is not integral."""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Scalar = Union[int, Fraction]


def as_scalar(x) -> Scalar:
    """Normalize ``x`` to an int, or a reduced Fraction if it is not integral.

    Strings are parsed exactly ("3", "-7/2", "1.25").  Floats are refused.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not exact scalars")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        try:
            f = Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact number: {x!r}") from exc
        return f.numerator if f.denominator == 1 else f
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted as exact scalars")
    # numpy integers and the like
    try:
        return int(x)
    except (TypeError, ValueError) as exc:
        raise TypeError(f"cannot convert {x!r} to an exact scalar") from exc


def normalize(x: Scalar) -> Scalar:
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def scalar_to_str(x: Scalar) -> str:
    return str(normalize(x))
