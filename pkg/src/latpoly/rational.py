"""Exact rational values and their integer scaling for the kernels."""

from __future__ import annotations

import re
from fractions import Fraction
from math import lcm
from typing import Iterable

import numpy as np

from .errors import BadRational

_RATIONAL = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def parse_rational(text: str) -> Fraction:
    """Parse an integer literal or ``p/q`` with q > 0."""
    m = _RATIONAL.match(text.strip()) if isinstance(text, str) else None
    if m is None:
        raise BadRational(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise BadRational(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def as_fraction(value) -> Fraction:
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise BadRational(f"floats are not accepted, got {value!r}")
    return Fraction(value)


def common_denominator(values: Iterable[Fraction]) -> int:
    d = 1
    for v in values:
        d = lcm(d, Fraction(v).denominator)
    return d


def scale(values: Iterable[Fraction], denom: int) -> np.ndarray:
    """Integer numerators of ``values`` over ``denom`` (exact)."""
    out = []
    for v in values:
        s = Fraction(v) * denom
        assert s.denominator == 1
        out.append(int(s))
    return np.array(out, dtype=np.int64)
