"""Exact rationals as ``fractions.Fraction`` plus the "p/q" wire format."""

from fractions import Fraction
import re

from .errors import ParseError

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(value):
    """Parse ``"p/q"``, ``"p"``, an int or a Fraction into a Fraction.

    Floats are refused: every action must be exact.
    """
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        match = _RATIONAL_RE.match(value)
        if match:
            num, den = match.groups()
            if den is not None and int(den) == 0:
                raise ParseError(f"zero denominator in {value!r}")
            return Fraction(int(num), int(den) if den else 1)
    raise ParseError(f"not a rational: {value!r}")


def format_rational(value):
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"
