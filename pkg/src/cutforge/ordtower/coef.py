"""Coefficients of tower elements: rationals, or real algebraic numbers.

Rational values are always stored as :class:`fractions.Fraction`; a
:class:`RealAlg` appears only for irrational coefficients.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Union

from ..realalg import RealAlg, ra_root

Coef = Union[Fraction, RealAlg]


def norm(c) -> Coef:
    if isinstance(c, RealAlg):
        return c.as_fraction() if c.is_rational() else c
    return Fraction(c)


def is_zero(c: Coef) -> bool:
    if isinstance(c, RealAlg):
        return c.sign() == 0
    return c == 0


def sign(c: Coef) -> int:
    if isinstance(c, RealAlg):
        return c.sign()
    return (c > 0) - (c < 0)


def add(a: Coef, b: Coef) -> Coef:
    return norm(a + b)


def sub(a: Coef, b: Coef) -> Coef:
    return norm(a - b)


def mul(a: Coef, b: Coef) -> Coef:
    return norm(a * b)


def div(a: Coef, b: Coef) -> Coef:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a / b
    return norm(RealAlg.from_rational(a) / b if not isinstance(a, RealAlg) else a / b)


def cmp(a: Coef, b: Coef) -> int:
    return sign(sub(a, b))


def power(c: Coef, q: Fraction) -> Coef:
    """c ** q for c > 0 (or q integral)."""
    q = Fraction(q)
    base = c if isinstance(c, RealAlg) else RealAlg.from_rational(c)
    p, d = q.numerator, q.denominator
    if p < 0:
        base = RealAlg.from_rational(1) / base
        p = -p
    r = ra_root(base ** p, d) if d > 1 else base ** p
    return norm(r)


def to_str(c: Coef) -> str:
    if isinstance(c, RealAlg):
        return str(c)
    return str(c)
