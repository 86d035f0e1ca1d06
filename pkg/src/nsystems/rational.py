"""Exact rational scalars.

:class:`fractions.Fraction` is the rational type used throughout; it keeps
numerator and denominator in lowest terms with a positive denominator.  This
module only adds strict parsing (no floats, no decimal exponents) and the
canonical ``"p/q"`` text encoding used by the file formats and the CLI.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (integers only) into a Fraction.

    Integers and Fractions pass through.  Floats and decimal strings are
    rejected because they cannot carry an exact parameter.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ValueError(f"not a rational string: {text!r}")
    num, den = match.groups()
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def as_vector(values: Iterable) -> tuple:
    return tuple(parse_rational(v) if isinstance(v, str) else Fraction(v) for v in values)


def dot(row: Sequence[Fraction], x: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(row, x)), Fraction(0))


def in_lattice(x: Fraction, delta: Fraction) -> bool:
    """True iff ``x`` is an integer multiple of ``delta``."""
    if delta == 1:
        return x.denominator == 1
    return (x / delta).denominator == 1
