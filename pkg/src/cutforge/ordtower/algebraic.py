"""Algebraic elements over fragment fields via Newton-Puiseux.

A univariate polynomial over the fragment is a list of :class:`Frag`
coefficients, constant term first.  Real roots are isolated branch by
branch with the Newton polygon; a branch becomes an :class:`AlgElem` as soon
as its residual root is simple, at which point the root is the unique root
of the polynomial in an interval ``(Y + r_lo t^g, Y + r_hi t^g)`` with
fragment endpoints.  Roots that turn out to be fragments are returned as
fragments.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterator, Sequence, Union

import flint

from ..realalg import RealAlg, isolate_roots, sign_at, to_zpoly
from . import coef as C
from .errors import Undecided
from .expvec import ExpVec
from .frag import Frag

UPoly = list  # list[Frag], constant term first

DEFAULT_FUEL = 64


# ----------------------------------------------------------------------------
# polynomial arithmetic over the fragment
# ----------------------------------------------------------------------------

def up(coeffs: Sequence) -> UPoly:
    p = [Frag.coerce(c) for c in coeffs]
    while p and p[-1].is_zero():
        p.pop()
    return p


def up_eval(p: UPoly, x: Frag) -> Frag:
    acc = Frag.const(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def up_deriv(p: UPoly) -> UPoly:
    return up([c * i for i, c in enumerate(p)][1:])


def up_divmod(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Frag.const(0)] * max(len(a) - len(b) + 1, 0)
    inv_lead = b[-1].inverse()
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] * inv_lead
        q[k] = f
        for i, c in enumerate(b):
            a[i + k] = a[i + k] - f * c
        a = up(a)
    return up(q), a


def up_gcd(a: UPoly, b: UPoly) -> UPoly:
    while b:
        a, b = b, up_divmod(a, b)[1]
    if not a:
        return a
    lead = a[-1]
    return [c / lead for c in a]


def up_squarefree(p: UPoly) -> UPoly:
    g = up_gcd(p, up_deriv(p))
    if len(g) <= 1:
        return p
    return up_divmod(p, g)[0]


def up_taylor_shift(p: UPoly, m: Frag) -> UPoly:
    """Coefficients of ``p(m + y)`` in ``y``."""
    d = len(p) - 1
    powers = [Frag.const(1)]
    for _ in range(d):
        powers.append(powers[-1] * m)
    out = []
    for j in range(d + 1):
        acc = Frag.const(0)
        for i in range(j, d + 1):
            if not p[i].is_zero():
                acc = acc + p[i] * powers[i - j] * comb(i, j)
        out.append(acc)
    return up(out)


def up_str(p: UPoly, var: str = "x") -> str:
    parts = []
    for i, c in enumerate(p):
        if c.is_zero():
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        parts.append(f"({c})" + (f"*{mono}" if mono else ""))
    return " + ".join(reversed(parts)) or "0"


# ----------------------------------------------------------------------------
# Sturm sequences over the fragment (verification route)
# ----------------------------------------------------------------------------

def sturm_chain(p: UPoly) -> list[UPoly]:
    chain = [p, up_deriv(p)]
    while chain[-1]:
        r = up_divmod(chain[-2], chain[-1])[1]
        if not r:
            break
        chain.append([-c for c in r])
    return [q for q in chain if q]


def _variations(signs) -> int:
    s = [x for x in signs if x]
    return sum(1 for a, b in zip(s, s[1:]) if a != b)


def _signs_at(chain, x) -> list[int]:
    if x == "+inf":
        return [q[-1].sign() for q in chain]
    if x == "-inf":
        return [q[-1].sign() * (-1) ** (len(q) - 1) for q in chain]
    return [up_eval(q, x).sign() for q in chain]


def sturm_count_over(p: UPoly, lo="-inf", hi="+inf") -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]``."""
    chain = sturm_chain(up(p))
    return _variations(_signs_at(chain, lo)) - _variations(_signs_at(chain, hi))


# ----------------------------------------------------------------------------
# real roots of residual polynomials (coefficients rational or RealAlg)
# ----------------------------------------------------------------------------

def _coef_roots(coeffs: Sequence) -> list[tuple[C.Coef, int]]:
    """Distinct real roots with multiplicities, ascending."""
    coeffs = [C.norm(c) for c in coeffs]
    if all(isinstance(c, Fraction) for c in coeffs):
        zp = to_zpoly(coeffs)
        out = []
        _, facs = zp.factor()
        for f, e in facs:
            for r in isolate_roots(f):
                out.append((C.norm(r), e))
    else:
        out = []
        ann = _annihilator(coeffs)
        _, facs = ann.factor()
        for f, _e in facs:
            for r in isolate_roots(f):
                m = _multiplicity(coeffs, r)
                if m:
                    out.append((C.norm(r), m))
    out.sort(key=lambda t: _SortCoef(t[0]))
    return out


class _SortCoef:
    __slots__ = ("c",)

    def __init__(self, c):
        self.c = c

    def __lt__(self, other):
        return C.cmp(self.c, other.c) < 0


def _eval_coef(coeffs, x) -> C.Coef:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = C.add(C.mul(acc, x), c)
    return acc


def _multiplicity(coeffs, r) -> int:
    m = 0
    cur = list(coeffs)
    while cur and C.is_zero(_eval_coef(cur, r)):
        m += 1
        cur = [C.mul(c, i) for i, c in enumerate(cur)][1:]
    return m


def _annihilator(coeffs) -> flint.fmpz_poly:
    """Integer polynomial vanishing at every real root of ``sum coeffs[i] z^i``."""
    alg = []
    for c in coeffs:
        if isinstance(c, RealAlg) and all(c is not a for a in alg):
            alg.append(c)
    names = ("z",) + tuple(f"y{i}" for i in range(len(alg)))
    ctx = flint.fmpq_mpoly_ctx.get(names, "lex")
    gens = ctx.gens()
    z = gens[0]
    P = ctx.from_dict({})
    for i, c in enumerate(coeffs):
        if isinstance(c, RealAlg):
            P = P + gens[1 + next(j for j, a in enumerate(alg) if a is c)] * z ** i
        elif c != 0:
            P = P + flint.fmpq(c.numerator, c.denominator) * z ** i
    for j in reversed(range(len(alg))):
        dp = alg[j].defpoly
        y = gens[1 + j]
        m = ctx.from_dict({})
        for k, a in enumerate(dp.coeffs()):
            if a != 0:
                m = m + int(a) * y ** k
        P = P.resultant(m, names[1 + j])
    d = P.to_dict()
    deg = max(k[0] for k in d)
    qp = flint.fmpq_poly([d.get((k,) + (0,) * len(alg), 0) for k in range(deg + 1)])
    num = qp.numer()
    return flint.fmpz_poly([int(c) for c in num.coeffs()])


def _rational_bracket(c: C.Coef, others: list) -> tuple[Fraction, Fraction]:
    """Rationals ``lo < c < hi`` of the sign of ``c`` with no other root in ``[lo, hi]``."""
    if isinstance(c, Fraction):
        w = abs(c) / 2
        while True:
            lo, hi = c - w, c + w
            if all(C.cmp(o, lo) < 0 or C.cmp(o, hi) > 0 for o in others):
                return lo, hi
            w /= 2
    while True:
        lo, hi = c.interval
        if (lo > 0 or hi < 0) and lo != 0 and hi != 0:
            if all(C.cmp(o, lo) < 0 or C.cmp(o, hi) > 0 for o in others):
                return lo, hi
        c.refine()


# ----------------------------------------------------------------------------
# Newton polygon
# ----------------------------------------------------------------------------

def _newton_edges(q: UPoly, lower: ExpVec | None):
    """Yield ``(gamma, [(coef, multiplicity), ...])`` for slopes above ``lower``."""
    pts = [(i, c.val(), c.lc()) for i, c in enumerate(q) if not c.is_zero()]
    slopes = set()
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            i, vi, _ = pts[a]
            j, vj, _ = pts[b]
            g = (vi - vj) * Fraction(1, j - i)
            if lower is None or lower < g:
                slopes.add(g)
    out = []
    for g in slopes:
        vals = [(v + g * i, i, c) for i, v, c in pts]
        m = min(v for v, _, _ in vals)
        support = [(i, c) for v, i, c in vals if v == m]
        if len(support) < 2:
            continue
        base = support[0][0]
        res = [Fraction(0)] * (support[-1][0] - base + 1)
        for i, c in support:
            res[i - base] = c
        roots = [(r, mult) for r, mult in _coef_roots(res) if not C.is_zero(r)]
        if roots:
            out.append((g, roots))
    out.sort(key=lambda t: _SortExp(t[0]))
    return out


class _SortExp:
    __slots__ = ("e",)

    def __init__(self, e):
        self.e = e

    def __lt__(self, other):
        return self.e < other.e


# ----------------------------------------------------------------------------
# algebraic elements
# ----------------------------------------------------------------------------

class AlgElem:
    """A simple real root of ``poly`` isolated by fragment endpoints.

    ``prefix`` holds the Puiseux terms found so far; the root equals
    ``sum(prefix) + (root of state with exponent > last exponent)``.
    """

    __slots__ = ("poly", "lo", "hi", "_prefix", "_state", "_done")

    def __init__(self, poly: UPoly, lo: Frag, hi: Frag, prefix, state: UPoly):
        self.poly = poly
        self.lo = lo
        self.hi = hi
        self._prefix = list(prefix)
        self._state = state
        self._done = False

    def generators(self) -> frozenset:
        s = frozenset()
        for c in self.poly:
            s |= c.generators()
        return s

    def leading_term(self) -> tuple[ExpVec, C.Coef]:
        return self._prefix[0]

    def val(self) -> ExpVec:
        return self._prefix[0][0]

    def lc(self) -> C.Coef:
        return self._prefix[0][1]

    def sign(self) -> int:
        return C.sign(self.lc())

    def _advance(self) -> bool:
        """Compute one more Puiseux term; False once the expansion is finite."""
        if self._done:
            return False
        q = self._state
        if q[0].is_zero():
            self._done = True
            return False
        last = self._prefix[-1][0]
        edges = _newton_edges(q, last)
        cands = [(g, r) for g, roots in edges for r, m in roots]
        if len(cands) != 1:
            raise ArithmeticError("branch is not simple; polynomial not squarefree")
        g, r = cands[0]
        self._prefix.append((g, r))
        self._state = up_taylor_shift(q, Frag.monomial(g, r))
        return True

    def iter_terms(self) -> Iterator[tuple[ExpVec, C.Coef]]:
        i = 0
        while True:
            while i >= len(self._prefix):
                if not self._advance():
                    return
            yield self._prefix[i]
            i += 1

    def refine(self) -> None:
        """Tighten ``(lo, hi)`` by one Puiseux term."""
        if not self._advance():
            return
        y = Frag({e: c for e, c in self._prefix[:-1]}, reduce=False)
        g, c = self._prefix[-1]
        others = [r for gg, roots in _newton_edges(self._prev_state(), self._prefix[-2][0]) if gg == g
                  for r, _ in roots if C.cmp(r, c) != 0]
        lo, hi = _rational_bracket(c, others)
        self.lo = y + Frag.monomial(g, lo)
        self.hi = y + Frag.monomial(g, hi)

    def _prev_state(self) -> UPoly:
        g, c = self._prefix[-1]
        return up_taylor_shift(self._state, Frag.monomial(g, C.norm(-c)))

    def cmp_frag(self, f: Frag) -> int:
        f = Frag.coerce(f)
        if f <= self.lo:
            return 1
        if f >= self.hi:
            return -1
        pf = up_eval(self.poly, f)
        if pf.is_zero():
            return 0
        plo = up_eval(self.poly, self.lo)
        return -1 if plo.sign() != pf.sign() else 1

    def __repr__(self) -> str:
        return f"AlgElem({self})"

    def __str__(self) -> str:
        return f"root({up_str(self.poly)}, {self.lo}, {self.hi})"


Root = Union[Frag, AlgElem]


def isolate_real_roots(p: Sequence, fuel: int = DEFAULT_FUEL) -> list[Root]:
    """All real roots of ``p`` in the real closure, as fragments or AlgElems, unsorted."""
    p = up(p)
    if not p:
        raise ValueError("zero polynomial")
    p = up_squarefree(p)
    if all(c.is_constant() for c in p):
        # real algebraic constants are fragments already; no expansion needed
        return [Frag.const(c) for c, _ in _coef_roots([c.constant_value() for c in p])]
    roots: list[Root] = []
    _branches(p, p, [], None, roots, fuel)
    return roots


def _branches(orig: UPoly, q: UPoly, prefix: list, lower, out: list, fuel: int) -> None:
    if len(q) <= 1:
        return
    if fuel <= 0:
        raise Undecided(DEFAULT_FUEL, "Newton-Puiseux branches did not separate")
    y = Frag({e: c for e, c in prefix}, reduce=False)
    if q[0].is_zero():
        out.append(y)
        q = q[1:]
        while q and q[0].is_zero():
            q = q[1:]
    edges = _newton_edges(q, lower)
    for g, roots in edges:
        for idx, (c, mult) in enumerate(roots):
            shifted = up_taylor_shift(q, Frag.monomial(g, c))
            new_prefix = prefix + [(g, c)]
            if mult == 1:
                if shifted[0].is_zero():
                    out.append(y + Frag.monomial(g, c))
                    continue
                others = [r for j, (r, _) in enumerate(roots) if j != idx]
                lo, hi = _rational_bracket(c, others)
                out.append(AlgElem(orig, y + Frag.monomial(g, lo), y + Frag.monomial(g, hi), new_prefix, shifted))
            else:
                _branches(orig, shifted, new_prefix, g, out, fuel - 1)
