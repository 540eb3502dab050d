"""Scalar modes.

Every computation runs either in exact rational arithmetic
(:class:`fractions.Fraction`) or in IEEE double precision. The mode is a
property of the data; rules (weights, Cesaro orders, matrix entries) return
exact numbers whenever they can and are coerced at the point of use.
"""

from __future__ import annotations

import enum
import math
import numbers
from fractions import Fraction
from typing import Iterable, Union

from .errors import ModeError

Scalar = Union[Fraction, float]


class Mode(str, enum.Enum):
    EXACT = "exact"
    FLOAT = "float"


EXACT = Mode.EXACT
FLOAT = Mode.FLOAT


def as_mode(mode: Mode | str) -> Mode:
    return mode if isinstance(mode, Mode) else Mode(mode)


def coerce(value, mode: Mode) -> Scalar:
    """Convert ``value`` to the scalar type of ``mode``.

    Exact mode accepts integers and fractions only; a float reaching exact
    mode means some rule could not produce an exact value, which is an error
    rather than a silent loss of precision.
    """
    if mode is Mode.EXACT:
        if isinstance(value, bool):
            raise ModeError("booleans are not scalars")
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if isinstance(value, numbers.Rational):
            return Fraction(value.numerator, value.denominator)
        raise ModeError(f"exact mode cannot represent {value!r} ({type(value).__name__})")
    v = float(value)
    if not math.isfinite(v):
        raise ModeError(f"non-finite value {value!r}")
    return v


def infer_mode(values: Iterable) -> Mode:
    """Mode implied by a collection of raw values; mixing is rejected."""
    kinds = set()
    for v in values:
        if isinstance(v, bool):
            raise ModeError("booleans are not scalars")
        if isinstance(v, numbers.Rational):
            kinds.add(Mode.EXACT)
        elif isinstance(v, numbers.Real):
            kinds.add(Mode.FLOAT)
        else:
            raise ModeError(f"not a real scalar: {v!r}")
    if len(kinds) > 1:
        raise ModeError("exact and floating values mixed in one sequence")
    return kinds.pop() if kinds else Mode.EXACT


def zero(mode: Mode) -> Scalar:
    return Fraction(0) if mode is Mode.EXACT else 0.0


def total(values: Iterable[Scalar], mode: Mode) -> Scalar:
    """Sum in the given mode; floating sums are correctly rounded."""
    if mode is Mode.EXACT:
        return sum(values, Fraction(0))
    return math.fsum(values)


def parse_scalar(text: str, mode: Mode) -> Scalar:
    """Parse ``"3"``, ``"-1/2"`` or ``"0.25"``; decimals are exact in exact mode."""
    text = text.strip()
    if mode is Mode.EXACT:
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse {text!r} as a rational") from exc
    if "/" in text:
        return float(Fraction(text))
    return coerce(float(text), mode)


def format_scalar(value) -> str:
    """Lossless text form: ``p/q`` for rationals, shortest repr for floats."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)
