"""Exact real algebraic numbers.

A :class:`RealAlg` is a squarefree integer polynomial together with a
rational interval that isolates exactly one of its real roots.  Every
decision (sign, comparison, equality) is made with exact rational
arithmetic; the isolating interval is the only mutable state and it only
ever shrinks.

Polynomial storage and the raw kernel operations (multiplication, gcd,
composition, bivariate resultants, irreducible factorisation used for
normalisation) are delegated to python-flint.  Root counting uses Sturm
chains for isolation and Descartes' rule of signs for the cheaper checks
inside arithmetic.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from functools import total_ordering
from numbers import Rational
from typing import Iterable, Sequence, Union

import flint

__all__ = [
    "RealAlg",
    "Rat",
    "isolate_roots",
    "ra_arith",
    "ra_cmp",
    "ra_root",
    "sign_at",
    "sturm_sequence",
    "sturm_count",
    "descartes_bound",
    "to_zpoly",
]

Rat = Fraction
PolyLike = Union[Sequence, "flint.fmpz_poly", "flint.fmpq_poly"]

LT, EQ, GT = -1, 0, 1


# ---------------------------------------------------------------------------
# polynomial helpers


def _q(x) -> flint.fmpq:
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, int):
        return flint.fmpq(x)
    x = Fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


def _frac(x: flint.fmpq) -> Fraction:
    return Fraction(int(x.p), int(x.q))


def to_zpoly(p: PolyLike) -> flint.fmpz_poly:
    """Primitive integer polynomial with positive leading coefficient.

    ``p`` may be a coefficient sequence (constant term first) of ints or
    rationals, or a flint polynomial.  Positive rescaling keeps every sign
    query unchanged.
    """
    if isinstance(p, flint.fmpz_poly):
        zp = p
    else:
        if not isinstance(p, flint.fmpq_poly):
            p = flint.fmpq_poly([_q(c) for c in p])
        zp = p.numer()
    if zp.is_zero():
        return zp
    c = zp.content()
    if zp.leading_coefficient() < 0:
        c = -c
    if c != 1:
        zp = flint.fmpz_poly([v // c for v in zp.coeffs()])
    return zp


def _squarefree(p: flint.fmpz_poly) -> flint.fmpz_poly:
    if p.degree() <= 1:
        return p
    g = p.gcd(p.derivative())
    if g.degree() > 0:
        p = to_zpoly(p // g)
    return p


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(signs: Iterable[int]) -> int:
    count, last = 0, 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            count += 1
        last = s
    return count


def sturm_sequence(p: PolyLike) -> list[flint.fmpz_poly]:
    """Sturm chain p, p', -rem(...), ... with each member made primitive."""
    p0 = to_zpoly(p)
    if p0.is_zero():
        raise ValueError("zero polynomial has no Sturm sequence")
    seq = [p0]
    if p0.degree() == 0:
        return seq
    seq.append(to_zpoly(p0.derivative()))
    while seq[-1].degree() > 0:
        r = flint.fmpq_poly(seq[-2]) % flint.fmpq_poly(seq[-1])
        if r.is_zero():
            break
        # -rem, rescaled by a positive constant
        r = -r
        num = r.numer()
        c = num.content()
        seq.append(flint.fmpz_poly([v // c for v in num.coeffs()]))
    return seq


def _sturm_var_at(seq, x) -> int:
    xq = _q(x)
    return _variations(_sign(s(xq)) for s in seq)


def _sturm_var_inf(seq, positive: bool) -> int:
    signs = []
    for s in seq:
        lc = _sign(s.leading_coefficient())
        if not positive and s.degree() % 2:
            lc = -lc
        signs.append(lc)
    return _variations(signs)


def sturm_count(p: PolyLike, lo=None, hi=None, _seq=None) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]``.

    ``None`` bounds mean -inf / +inf.
    """
    seq = _seq if _seq is not None else sturm_sequence(p)
    vlo = _sturm_var_inf(seq, False) if lo is None else _sturm_var_at(seq, lo)
    vhi = _sturm_var_inf(seq, True) if hi is None else _sturm_var_at(seq, hi)
    return vlo - vhi


def descartes_bound(p: flint.fmpz_poly, lo, hi) -> int:
    """Descartes' bound on the number of roots in the open interval (lo, hi).

    Exact when the result is 0 or 1.
    """
    lo, hi = _q(lo), _q(hi)
    n = p.degree()
    q = flint.fmpq_poly(p)(flint.fmpq_poly([lo, hi - lo]))
    coeffs = q.coeffs()
    coeffs += [0] * (n + 1 - len(coeffs))
    rev = flint.fmpq_poly(list(reversed(coeffs))).numer()
    shifted = rev(flint.fmpz_poly([1, 1]))
    return _variations(_sign(c) for c in shifted.coeffs())


def _cauchy_bound(p: flint.fmpz_poly) -> Fraction:
    cs = p.coeffs()
    lc = abs(int(cs[-1]))
    m = max(abs(int(c)) for c in cs[:-1]) if len(cs) > 1 else 0
    b = 1 + Fraction(m, lc)
    # round up to a power of two so bisection points stay dyadic
    k = 1
    while k < b:
        k *= 2
    return Fraction(k)


# ---------------------------------------------------------------------------
# the number type


@total_ordering
class RealAlg:
    """A real algebraic number: squarefree defining polynomial + isolating interval.

    The defining polynomial is kept primitive with positive leading
    coefficient.  Public constructors additionally reduce it to the
    irreducible factor that vanishes at the value, so equal numbers share a
    defining polynomial and ``hash`` is well defined.  Rational values have a
    linear defining polynomial and a degenerate interval ``lo == hi``.
    """

    __slots__ = ("_poly", "_lo", "_hi", "_lock")

    def __init__(self, poly: PolyLike, lo, hi, *, check: bool = True):
        p = _squarefree(to_zpoly(poly))
        if p.is_zero():
            raise ValueError("zero polynomial cannot define a real algebraic number")
        if p.degree() == 0:
            raise ValueError("constant polynomial has no roots")
        lo, hi = _q(lo), _q(hi)
        if lo > hi:
            raise ValueError("empty interval")
        if check:
            n = sturm_count(p, lo, hi) + (1 if p(lo) == 0 else 0)
            if n != 1:
                raise ValueError(f"interval [{lo}, {hi}] holds {n} roots, expected 1")
        self._poly = p
        self._lo = lo
        self._hi = hi
        self._lock = threading.Lock()
        self._settle()
        self._normalize()

    # -- construction helpers ------------------------------------------------

    @classmethod
    def _raw(cls, poly: flint.fmpz_poly, lo: flint.fmpq, hi: flint.fmpq) -> "RealAlg":
        obj = object.__new__(cls)
        obj._poly = poly
        obj._lo = lo
        obj._hi = hi
        obj._lock = threading.Lock()
        obj._settle()
        return obj

    @classmethod
    def from_rational(cls, r) -> "RealAlg":
        r = _q(r)
        return cls._raw(flint.fmpz_poly([-r.p, r.q]), r, r)

    @classmethod
    def sqrt(cls, k) -> "RealAlg":
        return ra_root(cls.from_rational(k), 2)

    def _settle(self) -> None:
        """Collapse the interval onto an endpoint that is itself the root."""
        p = self._poly
        if p.degree() == 1:
            c = p.coeffs()
            r = flint.fmpq(-c[0], c[1])
            self._lo = self._hi = r
            return
        if self._lo != self._hi:
            if p(self._lo) == 0:
                self._hi = self._lo
            elif p(self._hi) == 0:
                self._lo = self._hi

    def _normalize(self) -> None:
        """Replace the defining polynomial by its irreducible factor at the root."""
        p = self._poly
        if p.degree() <= 1:
            return
        _, facs = p.factor()
        if len(facs) == 1:
            self._poly = to_zpoly(facs[0][0])
            return
        facs = [to_zpoly(f) for f, _ in facs]
        if self._lo == self._hi:
            for f in facs:
                if f(self._lo) == 0:
                    self._poly = f
                    self._settle()
                    return
        while True:
            hits = [f for f in facs if _sign(f(self._lo)) * _sign(f(self._hi)) < 0]
            if len(hits) == 1:
                self._poly = hits[0]
                self._settle()
                return
            self.refine()

    # -- accessors ------------------------------------------------------------

    @property
    def defpoly(self) -> flint.fmpz_poly:
        return self._poly

    @property
    def degree(self) -> int:
        return self._poly.degree()

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        return _frac(self._lo), _frac(self._hi)

    def is_rational(self) -> bool:
        return self._lo == self._hi

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("irrational real algebraic number")
        return _frac(self._lo)

    # -- refinement -------------------------------------------------------------

    def refine(self) -> None:
        """Halve the isolating interval (no-op for rationals)."""
        with self._lock:
            if self._lo == self._hi:
                return
            mid = (self._lo + self._hi) / 2
            sm = _sign(self._poly(mid))
            if sm == 0:
                self._lo = self._hi = mid
            elif sm == _sign(self._poly(self._lo)):
                self._lo = mid
            else:
                self._hi = mid

    def refine_to(self, width) -> None:
        width = _q(width)
        while self._hi - self._lo > width:
            self.refine()

    def sturm_check(self) -> int:
        """Roots of the defining polynomial in [lo, hi]; always 1."""
        extra = 1 if self._poly(self._lo) == 0 else 0
        return sturm_count(self._poly, self._lo, self._hi) + extra

    # -- ordering -----------------------------------------------------------

    def sign(self) -> int:
        if self._lo == self._hi:
            return _sign(self._lo)
        while self._lo < 0 < self._hi:
            self.refine()
        if self._lo == self._hi:
            return _sign(self._lo)
        return 1 if self._lo >= 0 else -1

    def __eq__(self, other) -> bool:
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ra_cmp(self, o) == EQ

    def __lt__(self, other) -> bool:
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ra_cmp(self, o) == LT

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.as_fraction())
        # equal irrationals share the irreducible defining polynomial
        roots = isolate_roots(self._poly)
        idx = next(i for i, r in enumerate(roots) if ra_cmp(r, self) == EQ)
        return hash((tuple(int(c) for c in self._poly.coeffs()), idx))

    # -- arithmetic -----------------------------------------------------------

    def __neg__(self) -> "RealAlg":
        cs = self._poly.coeffs()
        neg = flint.fmpz_poly([c if i % 2 == 0 else -c for i, c in enumerate(cs)])
        return RealAlg._raw(to_zpoly(neg), -self._hi, -self._lo)

    def __pos__(self) -> "RealAlg":
        return self

    def __abs__(self) -> "RealAlg":
        return -self if self.sign() < 0 else self

    def __add__(self, other):
        o = _coerce(other)
        return NotImplemented if o is NotImplemented else ra_arith(self, o, "add")

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        return NotImplemented if o is NotImplemented else ra_arith(self, o, "sub")

    def __rsub__(self, other):
        o = _coerce(other)
        return NotImplemented if o is NotImplemented else ra_arith(o, self, "sub")

    def __mul__(self, other):
        o = _coerce(other)
        return NotImplemented if o is NotImplemented else ra_arith(self, o, "mul")

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        return NotImplemented if o is NotImplemented else ra_arith(self, o, "div")

    def __rtruediv__(self, other):
        o = _coerce(other)
        return NotImplemented if o is NotImplemented else ra_arith(o, self, "div")

    def __pow__(self, n: int) -> "RealAlg":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return RealAlg.from_rational(1) / (self ** (-n))
        result = RealAlg.from_rational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "RealAlg":
        return ra_arith(RealAlg.from_rational(1), self, "div")

    def __float__(self) -> float:
        if self.is_rational():
            return float(self.as_fraction())
        self.refine_to(Fraction(1, 2**60) * max(1, abs(_frac(self._hi))))
        return float(_frac((self._lo + self._hi) / 2))

    def __repr__(self) -> str:
        if self.is_rational():
            return f"RealAlg({self.as_fraction()})"
        lo, hi = self.interval
        return f"RealAlg({self._poly}, [{lo}, {hi}])"

    def __str__(self) -> str:
        return format_realalg(self)


def _coerce(x):
    if isinstance(x, RealAlg):
        return x
    if isinstance(x, (int, Rational)):
        return RealAlg.from_rational(Fraction(x))
    return NotImplemented


def format_realalg(a: RealAlg) -> str:
    """Text form that parses back: a rational, ``sqrt(k)`` or ``root(p, lo, hi)``."""
    if a.is_rational():
        return str(a.as_fraction())
    cs = [int(c) for c in a.defpoly.coeffs()]
    if len(cs) == 3 and cs[1] == 0 and cs[2] == 1 and cs[0] < 0:
        k = -cs[0]
        return f"sqrt({k})" if a.sign() > 0 else f"-sqrt({k})"
    terms = []
    for i in range(len(cs) - 1, -1, -1):
        c = cs[i]
        if c == 0:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if mono and abs(c) == 1:
            body = mono
        elif mono:
            body = f"{abs(c)}*{mono}"
        else:
            body = str(abs(c))
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(f"+ {body}" if c > 0 else f"- {body}")
    lo, hi = a.interval
    return f"root({' '.join(terms)}, {lo}, {hi})"


# ---------------------------------------------------------------------------
# operations


def isolate_roots(p: PolyLike) -> list[RealAlg]:
    """All distinct real roots of ``p`` in ascending order.

    Sturm-chain bisection over a dyadic Cauchy bound; each isolated root is
    then attached to the irreducible factor of ``p`` vanishing on it.
    """
    zp = to_zpoly(p)
    if zp.is_zero():
        raise ValueError("zero polynomial")
    if zp.degree() == 0:
        return []
    sq = _squarefree(zp)
    seq = sturm_sequence(sq)
    bound = _cauchy_bound(sq)
    found: list[tuple[flint.fmpq, flint.fmpq]] = []
    stack = [(_q(-bound), _q(bound), None)]
    while stack:
        lo, hi, n = stack.pop()
        if n is None:
            n = _sturm_var_at(seq, lo) - _sturm_var_at(seq, hi)
        if n == 0:
            continue
        if n == 1:
            if sq(hi) == 0:
                found.append((hi, hi))
                continue
            if _sign(sq(lo)) * _sign(sq(hi)) < 0:
                found.append((lo, hi))
                continue
        mid = (lo + hi) / 2
        vmid = _sturm_var_at(seq, mid)
        nl = _sturm_var_at(seq, lo) - vmid
        stack.append((mid, hi, n - nl))
        stack.append((lo, mid, nl))
    found.sort(key=lambda iv: iv[0])
    if sq.degree() > 1:
        facs = [to_zpoly(f) for f, _ in sq.factor()[1]]
    else:
        facs = [sq]
    out = []
    for lo, hi in found:
        if lo == hi:
            out.append(RealAlg.from_rational(lo))
            continue
        for f in facs:
            if _sign(f(lo)) * _sign(f(hi)) < 0:
                out.append(RealAlg._raw(f, lo, hi))
                break
    return out


def _interval_op(op: str, a: RealAlg, b: RealAlg) -> tuple[flint.fmpq, flint.fmpq]:
    al, ah, bl, bh = a._lo, a._hi, b._lo, b._hi
    if op == "add":
        return al + bl, ah + bh
    if op == "sub":
        return al - bh, ah - bl
    if op == "mul":
        vals = [al * bl, al * bh, ah * bl, ah * bh]
        return min(vals), max(vals)
    vals = [al / bl, al / bh, ah / bl, ah / bh]
    return min(vals), max(vals)


_CTX = flint.fmpz_mpoly_ctx.get(("x", "y"), "lex")


def _annihilator(op: str, pa: flint.fmpz_poly, pb: flint.fmpz_poly) -> flint.fmpz_poly:
    """Integer polynomial vanishing at a (op) b for every root pair."""
    x, y = _CTX.gens()
    zero = _CTX.from_dict({})
    fa = zero
    for c in reversed(pa.coeffs()):
        fa = fa * y + int(c)
    bc = [int(c) for c in pb.coeffs()]
    db = len(bc) - 1
    if op in ("add", "sub"):
        arg = x - y if op == "add" else y - x
        fb = zero
        for c in reversed(bc):
            fb = fb * arg + c
    elif op == "mul":
        # y^db * pb(x / y)
        fb = zero
        for i, c in enumerate(bc):
            if c:
                fb = fb + c * x**i * y ** (db - i)
    else:
        # x^db * pb(y / x)
        fb = zero
        for i, c in enumerate(bc):
            if c:
                fb = fb + c * y**i * x ** (db - i)
    r = fa.resultant(fb, "y")
    d = r.to_dict()
    deg = max(k[0] for k in d)
    coeffs = [0] * (deg + 1)
    for k, v in d.items():
        coeffs[k[0]] = int(v)
    return to_zpoly(coeffs)


def _rational_op(op: str, a: Fraction, b: Fraction) -> Fraction:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    return a / b


def ra_arith(a: RealAlg, b: RealAlg, op: str) -> RealAlg:
    """Exact field operation ``op`` in {add, sub, mul, div}."""
    if op not in ("add", "sub", "mul", "div"):
        raise ValueError(f"unknown operation {op!r}")
    if op == "div" and b.sign() == 0:
        raise ZeroDivisionError("division by zero real algebraic number")
    if a.is_rational() and b.is_rational():
        return RealAlg.from_rational(_rational_op(op, a.as_fraction(), b.as_fraction()))
    if b.is_rational() or a.is_rational():
        return _mixed(op, a, b)
    if op == "div":
        while b._lo <= 0 <= b._hi:
            b.refine()
    r = _annihilator(op, a._poly, b._poly)
    r = _squarefree(r)
    facs = [to_zpoly(f) for f, _ in r.factor()[1]] if r.degree() > 1 else [r]
    while True:
        lo, hi = _interval_op(op, a, b)
        cands = []
        for f in facs:
            zl, zh = f(lo), f(hi)
            n = descartes_bound(f, lo, hi) if lo < hi else 0
            n += (zl == 0) + (zh == 0 and lo != hi)
            if n:
                cands.append((f, n, zl, zh))
        if len(cands) == 1 and cands[0][1] == 1:
            f, _, zl, zh = cands[0]
            if zl == 0:
                return RealAlg.from_rational(lo)
            if zh == 0:
                return RealAlg.from_rational(hi)
            if f.degree() == 1:
                c = f.coeffs()
                return RealAlg.from_rational(flint.fmpq(-c[0], c[1]))
            return RealAlg._raw(f, lo, hi)
        a.refine()
        b.refine()


def _mixed(op: str, a: RealAlg, b: RealAlg) -> RealAlg:
    """One operand rational: transform the defining polynomial directly."""
    if op == "sub":
        return _mixed("add", a, -b)
    if op == "div":
        if b.is_rational():
            return _mixed("mul", a, RealAlg.from_rational(1 / b.as_fraction()))
        inv = _inverse(b)
        return _mixed("mul", a, inv)
    if a.is_rational():
        a, b = b, a
    r = _q(b.as_fraction())
    p = flint.fmpq_poly(a._poly)
    if op == "add":
        np_ = p(flint.fmpq_poly([-r, 1]))
        return RealAlg._raw(to_zpoly(np_), a._lo + r, a._hi + r)
    if r == 0:
        return RealAlg.from_rational(0)
    np_ = p(flint.fmpq_poly([0, 1 / r]))
    lo, hi = a._lo * r, a._hi * r
    if lo > hi:
        lo, hi = hi, lo
    return RealAlg._raw(to_zpoly(np_), lo, hi)


def _inverse(a: RealAlg) -> RealAlg:
    if a.is_rational():
        return RealAlg.from_rational(1 / a.as_fraction())
    while a._lo <= 0 <= a._hi:
        a.refine()
    rev = flint.fmpz_poly(list(reversed(a._poly.coeffs())))
    return RealAlg._raw(to_zpoly(rev), 1 / a._hi, 1 / a._lo)


def sign_at(p: PolyLike, a: RealAlg) -> int:
    """Exact sign of ``p`` at the value of ``a``."""
    zp = _as_qpoly(p)
    if zp.is_zero():
        return 0
    if a.is_rational():
        return _sign(zp(a._lo))
    zi = zp.numer()
    g = zi.gcd(a._poly)
    if g.degree() > 0 and _sign(g(a._lo)) * _sign(g(a._hi)) < 0:
        return 0
    # zp has no root at a: shrink until zp has no root in the interval
    zi = to_zpoly(zi)
    while descartes_bound(zi, a._lo, a._hi) > 0 or zi(a._lo) == 0 or zi(a._hi) == 0:
        a.refine()
        if a.is_rational():
            return _sign(zp(a._lo))
    return _sign(zp(a._lo))


def _as_qpoly(p) -> flint.fmpq_poly:
    if isinstance(p, flint.fmpq_poly):
        return p
    if isinstance(p, flint.fmpz_poly):
        return flint.fmpq_poly(p)
    return flint.fmpq_poly([_q(c) for c in p])


def _count_closed(g: flint.fmpz_poly, lo, hi) -> int:
    n = sturm_count(g, lo, hi)
    return n + (1 if g(lo) == 0 else 0)


def ra_cmp(a: RealAlg, b: RealAlg) -> int:
    """-1, 0 or +1 as a <, =, > b."""
    if a is b:
        return EQ
    if a.is_rational() and b.is_rational():
        return _sign(a._lo - b._lo)
    if a._hi < b._lo:
        return LT
    if b._hi < a._lo:
        return GT
    if a.is_rational():
        s = sign_at(b._poly, a)
        if s == 0 and b._lo <= a._lo <= b._hi:
            return EQ
        return -_cmp_separated(b, a)
    if b.is_rational():
        s = sign_at(a._poly, b)
        if s == 0 and a._lo <= b._lo <= a._hi:
            return EQ
        return _cmp_separated(a, b)
    g = a._poly.gcd(b._poly)
    if g.degree() > 0:
        g = to_zpoly(g)
        on_a = _sign(g(a._lo)) * _sign(g(a._hi)) < 0
        on_b = _sign(g(b._lo)) * _sign(g(b._hi)) < 0
        if on_a and on_b:
            # both are roots of g: equal iff one root of g covers both intervals
            while True:
                if a._hi < b._lo:
                    return LT
                if b._hi < a._lo:
                    return GT
                lo, hi = min(a._lo, b._lo), max(a._hi, b._hi)
                if _count_closed(g, lo, hi) == 1:
                    return EQ
                a.refine()
                b.refine()
    return _cmp_separated(a, b)


def _cmp_separated(a: RealAlg, b: RealAlg) -> int:
    """Compare two values already known to differ."""
    while True:
        if a._hi < b._lo:
            return LT
        if b._hi < a._lo:
            return GT
        a.refine()
        b.refine()


def _nth_root_bounds(x: flint.fmpq, n: int) -> tuple[Fraction, Fraction]:
    """Rational lo <= x^(1/n) <= hi for x >= 0 (loose, then tightened by caller)."""
    xf = _frac(x)
    scale = 2**32
    target = xf * scale**n
    lo = _iroot(int(target), n)
    hi = lo + 1
    return Fraction(lo, scale), Fraction(hi, scale)


def _iroot(v: int, n: int) -> int:
    if v <= 0:
        return 0
    r = int(round(v ** (1.0 / n))) if v.bit_length() < 1000 else 1 << (v.bit_length() // n)
    # Newton correction
    while True:
        nr = ((n - 1) * r + v // r ** (n - 1)) // n if r else 1
        if abs(nr - r) <= 1:
            r = nr
            break
        r = nr
    while r**n > v:
        r -= 1
    while (r + 1) ** n <= v:
        r += 1
    return r


def ra_root(a: RealAlg, n: int) -> RealAlg:
    """The real n-th root of ``a`` (principal, positive for even n)."""
    if n <= 0:
        raise ValueError("root index must be positive")
    if n == 1:
        return a
    s = a.sign()
    if s < 0:
        if n % 2 == 0:
            raise ValueError("even root of a negative number")
        return -ra_root(-a, n)
    if s == 0:
        return RealAlg.from_rational(0)
    cs = a._poly.coeffs()
    spread = [0] * ((len(cs) - 1) * n + 1)
    for i, c in enumerate(cs):
        spread[i * n] = c
    p = _squarefree(to_zpoly(flint.fmpz_poly(spread)))
    facs = [to_zpoly(f) for f, _ in p.factor()[1]]
    while True:
        lo = _nth_root_bounds(a._lo, n)[0]
        hi = _nth_root_bounds(a._hi, n)[1]
        lo, hi = _q(max(lo, Fraction(0))), _q(hi)
        cands = []
        for f in facs:
            zl, zh = f(lo), f(hi)
            k = descartes_bound(f, lo, hi) + (zl == 0) + (zh == 0)
            if k:
                cands.append((f, k, zl, zh))
        if len(cands) == 1 and cands[0][1] == 1:
            f, _, zl, zh = cands[0]
            if zl == 0:
                return RealAlg.from_rational(lo)
            if zh == 0:
                return RealAlg.from_rational(hi)
            if f.degree() == 1:
                c = f.coeffs()
                return RealAlg.from_rational(flint.fmpq(-c[0], c[1]))
            return RealAlg._raw(f, lo, hi)
        if a.is_rational():
            # tighten the root bracket itself by bisection on each candidate
            f = cands[0][0] if len(cands) == 1 else p
            return _bisect_root(f, lo, hi, facs)
        a.refine()


def _bisect_root(p: flint.fmpz_poly, lo, hi, facs) -> RealAlg:
    while True:
        cands = []
        for f in facs:
            zl, zh = f(lo), f(hi)
            k = descartes_bound(f, lo, hi) + (zl == 0) + (zh == 0)
            if k:
                cands.append((f, k, zl, zh))
        if len(cands) == 1 and cands[0][1] == 1:
            f, _, zl, zh = cands[0]
            if zl == 0:
                return RealAlg.from_rational(lo)
            if zh == 0:
                return RealAlg.from_rational(hi)
            return RealAlg._raw(f, lo, hi)
        mid = (lo + hi) / 2
        if p(mid) == 0:
            return RealAlg.from_rational(mid)
        if _sign(p(lo)) * _sign(p(mid)) < 0:
            hi = mid
        else:
            lo = mid
