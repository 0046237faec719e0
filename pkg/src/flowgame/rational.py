"""Exact rational parsing for file and CLI surfaces.

Every numeric quantity in this package is a ``fractions.Fraction``.
Equilibrium decisions are equality tests, so floats are rejected at the
boundary instead of being silently converted.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:\s*/\s*\d+)?$")


def parse_rational(value, what: str = "value") -> Fraction:
    """Parse an exact rational from an int, a Fraction, or a string like
    ``"3"``, ``"-2"`` or ``"7/2"``. Floats and float-like strings are
    rejected to preserve exact arithmetic."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"{what} must be a rational number, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ParseError(
            f"{what} must be an exact rational such as '3' or '7/2'; "
            f"floats like {value!r} are not accepted because results are "
            "decided by exact equality"
        )
    if isinstance(value, str):
        text = value.strip()
        if _RATIONAL_RE.match(text):
            num, _, den = text.partition("/")
            if den:
                if int(den) == 0:
                    raise ParseError(f"{what} has a zero denominator: {value!r}")
                return Fraction(int(num), int(den))
            return Fraction(int(num))
        raise ParseError(
            f"{what} must be an exact rational such as '3' or '7/2', "
            f"got {value!r}"
        )
    raise ParseError(f"{what} must be a rational number, got {type(value).__name__}")
