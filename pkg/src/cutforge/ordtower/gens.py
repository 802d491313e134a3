"""Infinitesimal generators and their scale ranks.

Every generator is a positive infinitesimal.  Generators are totally
ordered by a positive rational *rank*: a generator of larger rank is
smaller than every positive rational power of a generator of smaller rank.
The default generators ``t1, t2, ...`` have rank ``1, 2, ...`` so that
``t1 >> t2 >> t3``.  Names of the form ``s<p>_<q>`` denote the generator of
rank ``p/q``; hull constructions use them to insert fresh scales between
existing ones.  Other names must be declared explicitly.
"""
from __future__ import annotations

import re
from fractions import Fraction

_T_NAME = re.compile(r"^t(\d+)$")
_S_NAME = re.compile(r"^s(\d+)_(\d+)$")

_declared: dict[str, Fraction] = {}


class UnknownGenerator(KeyError):
    pass


def declare(name: str, rank) -> None:
    """Register a custom generator name at the given rank."""
    rank = Fraction(rank)
    if rank <= 0:
        raise ValueError("generator ranks are positive")
    if _T_NAME.match(name) or _S_NAME.match(name):
        if rank_of(name) != rank:
            raise ValueError(f"{name} has fixed rank {rank_of(name)}")
        return
    old = _declared.get(name)
    if old is not None and old != rank:
        raise ValueError(f"{name} already declared with rank {old}")
    for other, r in _declared.items():
        if r == rank and other != name:
            raise ValueError(f"rank {rank} already taken by {other}")
    _declared[name] = rank


def is_generator(name: str) -> bool:
    return bool(_T_NAME.match(name) or _S_NAME.match(name)) or name in _declared


def rank_of(name: str) -> Fraction:
    m = _T_NAME.match(name)
    if m:
        return Fraction(int(m.group(1)))
    m = _S_NAME.match(name)
    if m:
        return Fraction(int(m.group(1)), int(m.group(2)))
    try:
        return _declared[name]
    except KeyError:
        raise UnknownGenerator(name) from None


def name_for_rank(rank) -> str:
    rank = Fraction(rank)
    for name, r in _declared.items():
        if r == rank:
            return name
    if rank.denominator == 1:
        return f"t{rank.numerator}"
    return f"s{rank.numerator}_{rank.denominator}"


def by_significance(names) -> list[str]:
    """Most significant (smallest scale, largest rank) first."""
    return sorted(names, key=rank_of, reverse=True)


def fresh_between(lo, hi, avoid=()) -> str:
    """A generator with rank strictly between ``lo`` and ``hi`` (``hi`` may be None).

    Deterministic: the midpoint (or ``lo + 1``) is tried first and halved
    toward ``lo`` while the name collides with ``avoid``.
    """
    lo = Fraction(lo)
    avoid = set(avoid)
    if hi is None:
        cand = lo + 1 if lo.denominator == 1 else Fraction(int(lo) + 1)
        hi = cand + 1
    else:
        hi = Fraction(hi)
        cand = (lo + hi) / 2
    while name_for_rank(cand) in avoid:
        cand = (lo + cand) / 2
    return name_for_rank(cand)
