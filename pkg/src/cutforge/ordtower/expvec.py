"""Exponent vectors: the value group of the Puiseux fragment.

An :class:`ExpVec` is a finitely supported map generator -> rational.  The
order is lexicographic with the most significant coordinate being the
generator of *largest* rank (smallest scale).  A larger exponent vector
means a smaller element: ``val(t2) = (t2: 1) > (t1: q) = val(t1^q)`` for
every rational ``q``, matching ``t2 < t1^q``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import total_ordering

from .gens import by_significance, rank_of


@total_ordering
class ExpVec:
    __slots__ = ("_items", "_hash")

    def __init__(self, mapping=None, **kw):
        d = dict(mapping or {})
        d.update(kw)
        items = tuple(
            (g, Fraction(e)) for g, e in sorted(d.items(), key=lambda kv: rank_of(kv[0]), reverse=True) if e != 0
        )
        self._items = items
        self._hash = hash(items)

    @classmethod
    def _from_items(cls, items) -> "ExpVec":
        obj = object.__new__(cls)
        obj._items = items
        obj._hash = hash(items)
        return obj

    @classmethod
    def zero(cls) -> "ExpVec":
        return _ZERO

    @classmethod
    def unit(cls, name: str, e=1) -> "ExpVec":
        return cls({name: e})

    def __getitem__(self, name: str) -> Fraction:
        for g, e in self._items:
            if g == name:
                return e
        return Fraction(0)

    def items(self):
        return self._items

    def support(self) -> frozenset:
        return frozenset(g for g, _ in self._items)

    def is_zero(self) -> bool:
        return not self._items

    def as_dict(self) -> dict:
        return dict(self._items)

    def _combine(self, other: "ExpVec", sign: int) -> "ExpVec":
        d = dict(self._items)
        for g, e in other._items:
            d[g] = d.get(g, 0) + sign * e
        return ExpVec(d)

    def __add__(self, other: "ExpVec") -> "ExpVec":
        if not other._items:
            return self
        if not self._items:
            return other
        return self._combine(other, 1)

    def __sub__(self, other: "ExpVec") -> "ExpVec":
        if not other._items:
            return self
        return self._combine(other, -1)

    def __neg__(self) -> "ExpVec":
        return ExpVec._from_items(tuple((g, -e) for g, e in self._items))

    def __mul__(self, q) -> "ExpVec":
        q = Fraction(q)
        if q == 0:
            return _ZERO
        return ExpVec._from_items(tuple((g, e * q) for g, e in self._items))

    __rmul__ = __mul__

    def restrict(self, names) -> "ExpVec":
        names = set(names)
        return ExpVec._from_items(tuple((g, e) for g, e in self._items if g in names))

    def drop(self, names) -> "ExpVec":
        names = set(names)
        return ExpVec._from_items(tuple((g, e) for g, e in self._items if g not in names))

    def leading(self):
        """(generator, exponent) of the most significant nonzero coordinate."""
        return self._items[0] if self._items else None

    def cmp(self, other: "ExpVec") -> int:
        a, b = self._items, other._items
        i = j = 0
        while i < len(a) or j < len(b):
            if j >= len(b):
                ga, ea = a[i]
                return 1 if ea > 0 else -1
            if i >= len(a):
                gb, eb = b[j]
                return -1 if eb > 0 else 1
            ga, ea = a[i]
            gb, eb = b[j]
            if ga == gb:
                if ea != eb:
                    return 1 if ea > eb else -1
                i += 1
                j += 1
                continue
            ra, rb = rank_of(ga), rank_of(gb)
            if ra > rb:
                return 1 if ea > 0 else -1
            return -1 if eb > 0 else 1
        return 0

    def sign(self) -> int:
        return self.cmp(_ZERO)

    def __eq__(self, other) -> bool:
        return isinstance(other, ExpVec) and self._items == other._items

    def __lt__(self, other: "ExpVec") -> bool:
        return self.cmp(other) < 0

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        inner = ", ".join(f"{g}: {e}" for g, e in self._items)
        return f"ExpVec({{{inner}}})"

    def as_tuple(self, names) -> tuple:
        """Coordinates in the given generator order (e.g. ``("t1", "t2")``)."""
        return tuple(self[g] for g in names)

    def __str__(self) -> str:
        return "(" + ", ".join(f"{g}:{e}" for g, e in self._items) + ")"


_ZERO = ExpVec._from_items(())

__all__ = ["ExpVec", "by_significance"]
