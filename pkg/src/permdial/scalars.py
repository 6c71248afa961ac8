"""Exact rational scalars.

The coefficient field is Q throughout.  ``fractions.Fraction`` already
guarantees the canonical form we rely on (positive denominator, reduced,
exact arithmetic), so a scalar is simply a ``Fraction`` or a plain ``int``
(the two interoperate and compare equal when mathematically equal).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .util import FormatError

Scalar = Fraction

_RATIONAL_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")


def as_scalar(value: int | str | Fraction) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise FormatError(f"not a rational value: {value!r}")


def parse_scalar(text: str) -> Fraction:
    """Parse "p" or "p/q" (q > 0).  Decimal or float forms are rejected."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise FormatError(f"not a rational literal: {text!r}")
    return Fraction(text)


def format_scalar(value) -> str:
    """Render a scalar as "p/q", or "p" when the denominator is 1."""
    return str(Fraction(value))
