"""Rational Puiseux fragments: quotients of Laurent-Puiseux polynomials.

A :class:`Frag` is ``num / den`` where both are finite sums ``c * t^e`` with
``e`` an :class:`ExpVec` (rational exponents, so every element carries its
own ramification) and ``c`` a rational or real algebraic coefficient.  The
canonical form has the dominant term of the denominator equal to ``1``; when
all coefficients are rational the polynomial gcd of numerator and
denominator is also removed.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Dict, Iterator

import flint

from ..realalg import RealAlg
from . import coef as C
from .errors import Undecided
from .expvec import ExpVec
from .gens import by_significance

LPoly = Dict[ExpVec, C.Coef]

_ZERO = ExpVec.zero()


# ----------------------------------------------------------------------------
# Laurent-Puiseux polynomials as dicts
# ----------------------------------------------------------------------------

def lp_add(a: LPoly, b: LPoly, sign: int = 1) -> LPoly:
    out = dict(a)
    for e, c in b.items():
        if sign < 0:
            c = -c
        v = C.add(out[e], c) if e in out else C.norm(c)
        if C.is_zero(v):
            out.pop(e, None)
        else:
            out[e] = v
    return out


def lp_mul(a: LPoly, b: LPoly) -> LPoly:
    out: LPoly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            v = C.mul(ca, cb)
            if e in out:
                v = C.add(out[e], v)
            if C.is_zero(v):
                out.pop(e, None)
            else:
                out[e] = v
    return out


def lp_scale(a: LPoly, c: C.Coef, e: ExpVec = _ZERO) -> LPoly:
    return {k + e: C.mul(v, c) for k, v in a.items()}


def lp_lead(a: LPoly):
    """Dominant term (smallest exponent vector) as ``(exp, coef)``."""
    best = None
    for e in a:
        if best is None or e < best:
            best = e
    return best, a[best]


def lp_trunc(a: LPoly, bound: ExpVec) -> LPoly:
    return {e: c for e, c in a.items() if e < bound}


def _support(*polys: LPoly) -> set:
    s = set()
    for p in polys:
        for e in p:
            s |= e.support()
    return s


def _all_rational(*polys: LPoly) -> bool:
    return all(isinstance(c, Fraction) for p in polys for c in p.values())


def _gcd_reduce(num: LPoly, den: LPoly) -> tuple[LPoly, LPoly]:
    names = by_significance(_support(num, den))
    if not names:
        return num, den
    scale, shift = {}, {}
    for g in names:
        exps = [e[g] for p in (num, den) for e in p]
        scale[g] = lcm(*(x.denominator for x in exps))
        shift[g] = min(exps)
    ctx = flint.fmpq_mpoly_ctx.get(tuple(names), "lex")

    def conv(p: LPoly):
        return ctx.from_dict({
            tuple(int((e[g] - shift[g]) * scale[g]) for g in names): flint.fmpq(c.numerator, c.denominator)
            for e, c in p.items()
        })

    def back(p) -> LPoly:
        out: LPoly = {}
        for k, c in p.to_dict().items():
            e = ExpVec({g: Fraction(int(x), scale[g]) + shift[g] for g, x in zip(names, k)})
            out[e] = Fraction(int(c.p), int(c.q))
        return out

    pn, pd = conv(num), conv(den)
    g = pn.gcd(pd)
    if g == 1:
        return num, den
    return back(pn / g), back(pd / g)


# ----------------------------------------------------------------------------
# Frag
# ----------------------------------------------------------------------------

class Frag:
    """An element ``num / den`` of the rational Puiseux fragment."""

    __slots__ = ("num", "den")

    def __init__(self, num: LPoly, den: LPoly | None = None, *, reduce: bool = True):
        if den is None:
            den = {_ZERO: Fraction(1)}
        if not den:
            raise ZeroDivisionError("fragment with zero denominator")
        if reduce:
            num, den = _canon(num, den)
        self.num = num
        self.den = den

    # construction ----------------------------------------------------------
    @classmethod
    def const(cls, c) -> "Frag":
        c = C.norm(c)
        return cls({_ZERO: c} if not C.is_zero(c) else {}, reduce=False)

    @classmethod
    def gen(cls, name: str) -> "Frag":
        return cls({ExpVec.unit(name): Fraction(1)}, reduce=False)

    @classmethod
    def monomial(cls, e: ExpVec, c=1) -> "Frag":
        c = C.norm(c)
        return cls({e: c} if not C.is_zero(c) else {}, reduce=False)

    @staticmethod
    def coerce(x) -> "Frag":
        if isinstance(x, Frag):
            return x
        if isinstance(x, (int, Fraction, RealAlg)):
            return Frag.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Frag")

    # queries -----------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def is_poly(self) -> bool:
        return len(self.den) == 1

    def is_monomial(self) -> bool:
        return self.is_poly() and len(self.num) == 1

    def is_constant(self) -> bool:
        return self.is_poly() and all(e.is_zero() for e in self.num) and len(self.num) <= 1

    def constant_value(self) -> C.Coef:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.get(_ZERO, Fraction(0))

    def generators(self) -> frozenset:
        return frozenset(_support(self.num, self.den))

    def leading_term(self) -> tuple[ExpVec, C.Coef]:
        if not self.num:
            raise ZeroDivisionError("zero element has no leading term")
        return lp_lead(self.num)

    def val(self) -> ExpVec:
        return self.leading_term()[0]

    def lc(self) -> C.Coef:
        return self.leading_term()[1]

    def sign(self) -> int:
        if not self.num:
            return 0
        return C.sign(self.lc())

    # arithmetic ----------------------------------------------------------------
    def __add__(self, other) -> "Frag":
        try:
            other = Frag.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == other.den:
            return Frag(lp_add(self.num, other.num), self.den)
        n = lp_add(lp_mul(self.num, other.den), lp_mul(other.num, self.den))
        return Frag(n, lp_mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self) -> "Frag":
        return Frag({e: -c for e, c in self.num.items()}, self.den, reduce=False)

    def __sub__(self, other) -> "Frag":
        try:
            other = Frag.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Frag":
        return Frag.coerce(other) - self

    def __mul__(self, other) -> "Frag":
        try:
            other = Frag.coerce(other)
        except TypeError:
            return NotImplemented
        return Frag(lp_mul(self.num, other.num), lp_mul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self) -> "Frag":
        if not self.num:
            raise ZeroDivisionError("division by zero element")
        return Frag(self.den, self.num)

    def __truediv__(self, other) -> "Frag":
        try:
            other = Frag.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Frag":
        return Frag.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "Frag":
        if not isinstance(n, int):
            if isinstance(n, Fraction) and n.denominator == 1:
                n = int(n)
            elif self.is_monomial():
                (e, c), = self.num.items()
                return Frag.monomial(e * n, C.power(c, Fraction(n)))
            else:
                raise ValueError("non-integral power of a non-monomial fragment")
        if n < 0:
            return self.inverse() ** (-n)
        result = Frag.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # order ---------------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Frag):
            try:
                other = Frag.coerce(other)
            except TypeError:
                return NotImplemented
        return (self - other).is_zero()

    def __hash__(self) -> int:
        if not self.num:
            return hash(0)
        e, c = self.leading_term()
        return hash((e, c))

    def __lt__(self, other) -> bool:
        return (Frag.coerce(other) - self).sign() > 0

    def __le__(self, other) -> bool:
        return (Frag.coerce(other) - self).sign() >= 0

    def __gt__(self, other) -> bool:
        return (self - Frag.coerce(other)).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - Frag.coerce(other)).sign() >= 0

    # calculus and substitution -------------------------------------------------------
    def derivative(self, g: str) -> "Frag":
        dn = _lp_diff(self.num, g)
        dd = _lp_diff(self.den, g)
        n = lp_add(lp_mul(dn, self.den), lp_mul(self.num, dd), sign=-1)
        return Frag(n, lp_mul(self.den, self.den))

    def specialize_zero(self, names) -> "Frag | None":
        """Set the given generators to 0, if that is a regular substitution."""
        names = set(names)
        for p in (self.num, self.den):
            for e in p:
                if any(e[g] < 0 for g in names):
                    return None
        n = {e: c for e, c in self.num.items() if not (e.support() & names)}
        d = {e: c for e, c in self.den.items() if not (e.support() & names)}
        if not d:
            return None
        return Frag(n, d)

    def series(self, bound: ExpVec, fuel: int = 64) -> LPoly:
        """All terms of the expansion with exponent ``< bound``.

        Raises :class:`Undecided` when more than ``fuel`` expansion rounds
        would be needed (the support below ``bound`` may be infinite).
        """
        if self.is_poly():
            (e0, c0), = self.den.items()
            return lp_trunc(lp_scale(self.num, C.div(Fraction(1), c0), -e0), bound)
        w = {e: c for e, c in self.den.items() if not e.is_zero()}
        minus_w = {e: -c for e, c in w.items()}
        term = lp_trunc(self.num, bound)
        acc = dict(term)
        rounds = 0
        while term:
            rounds += 1
            if rounds > fuel:
                raise Undecided(fuel, "expansion support below the bound exceeds fuel")
            term = lp_trunc(lp_mul(term, minus_w), bound)
            acc = lp_add(acc, term)
        return acc

    def iter_terms(self, fuel: int = 64) -> Iterator[tuple[ExpVec, C.Coef]]:
        """Expansion terms in increasing exponent order (lazily, ω-prefix only).

        Each step finds the next term as the leading term of the remainder,
        so it always succeeds; only order type ω of the support is reached.
        """
        rest = self
        while not rest.is_zero():
            e, c = rest.leading_term()
            yield e, c
            rest = rest - Frag.monomial(e, c)

    # display -------------------------------------------------------------------
    def __repr__(self) -> str:
        return f"Frag({self})"

    def __str__(self) -> str:
        n = lp_str(self.num)
        if self.is_poly():
            (e0, c0), = self.den.items()
            if e0.is_zero() and c0 == 1:
                return n
        return f"({n})/({lp_str(self.den)})"


def _lp_diff(p: LPoly, g: str) -> LPoly:
    out: LPoly = {}
    for e, c in p.items():
        k = e[g]
        if k:
            out[e - ExpVec.unit(g)] = C.mul(c, k)
    return out


def _canon(num: LPoly, den: LPoly) -> tuple[LPoly, LPoly]:
    if not num:
        return {}, {_ZERO: Fraction(1)}
    if len(den) > 1 and _all_rational(num, den):
        num, den = _gcd_reduce(num, den)
    e0, c0 = lp_lead(den)
    if e0.is_zero() and c0 == 1:
        return num, den
    inv = C.div(Fraction(1), c0)
    return lp_scale(num, inv, -e0), lp_scale(den, inv, -e0)


def _mono_str(e: ExpVec) -> str:
    parts = []
    for g, k in e.items():
        if k == 1:
            parts.append(g)
        elif k.denominator == 1 and k > 0:
            parts.append(f"{g}^{k}")
        else:
            parts.append(f"{g}^({k})")
    return "*".join(reversed(parts))


def lp_str(p: LPoly) -> str:
    if not p:
        return "0"
    out = []
    for e in sorted(p, key=_SortKey):
        c = p[e]
        m = _mono_str(e)
        cs = C.to_str(c)
        if not m:
            term = cs
        elif isinstance(c, Fraction) and c == 1:
            term = m
        elif isinstance(c, Fraction) and c == -1:
            term = "-" + m
        else:
            term = f"{cs}*{m}" if isinstance(c, Fraction) and c.denominator == 1 else f"({cs})*{m}"
        out.append(term)
    s = out[0]
    for t in out[1:]:
        s += " - " + t[1:] if t.startswith("-") else " + " + t
    return s


class _SortKey:
    __slots__ = ("e",)

    def __init__(self, e: ExpVec):
        self.e = e

    def __lt__(self, other: "_SortKey") -> bool:
        return self.e < other.e
