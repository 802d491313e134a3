"""Order, valuation and arithmetic on tower elements.

A tower element is a :class:`Frag`, an :class:`AlgElem` or a
:class:`StreamElem`.  Everything that inspects a stream or an infinite
Puiseux expansion takes a ``fuel`` bound and raises :class:`Undecided`
when it is exhausted.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from typing import Iterator, Union

from ..realalg import EQ, GT, LT, RealAlg
from . import coef as C
from .algebraic import DEFAULT_FUEL, AlgElem, isolate_real_roots, up, up_taylor_shift
from .errors import Undecided, UnsupportedStreamOp
from .expvec import ExpVec
from .field import TowerField
from .frag import Frag, lp_add
from .stream import StreamElem

TowerElem = Union[Frag, AlgElem, StreamElem]


def as_elem(x) -> TowerElem:
    if isinstance(x, (Frag, AlgElem, StreamElem)):
        return x
    return Frag.coerce(x)


# ----------------------------------------------------------------------------
# term iteration
# ----------------------------------------------------------------------------

def iter_terms(x: TowerElem, fuel: int = DEFAULT_FUEL) -> Iterator[tuple[ExpVec, C.Coef]]:
    """Expansion terms in increasing exponent order (first ω of them).

    Raises :class:`Undecided` after ``fuel`` terms of a stream could not be
    placed (the head expansion keeps preceding the tail).
    """
    x = as_elem(x)
    if isinstance(x, Frag):
        yield from x.iter_terms()
    elif isinstance(x, AlgElem):
        yield from x.iter_terms()
    else:
        yield from _stream_terms(x, fuel)


def _stream_terms(x: StreamElem, fuel: int):
    head = x.head.iter_terms()
    h = next(head, None)
    k = 0
    while True:
        s = x.term(k)
        steps = 0
        while h is not None and h[0] < s[0]:
            yield h
            h = next(head, None)
            steps += 1
            if steps > fuel:
                raise Undecided(fuel, "stream head expansion precedes the tail indefinitely")
        if h is not None and h[0] == s[0]:
            c = C.add(h[1], s[1])
            h = next(head, None)
            if not C.is_zero(c):
                yield s[0], c
        else:
            yield s
        k += 1


def _first_term_stream(x: StreamElem, fuel: int) -> tuple[ExpVec, C.Coef]:
    for k in range(fuel + 1):
        p = x.partial(k)
        e, c = x.term(k)
        if p.is_zero():
            return e, c
        v = p.val()
        if v < e:
            return v, p.lc()
    raise Undecided(fuel, "leading term of stream")


def leading_term(x, fuel: int = DEFAULT_FUEL) -> tuple[ExpVec, C.Coef]:
    x = as_elem(x)
    if isinstance(x, StreamElem):
        return _first_term_stream(x, fuel)
    if isinstance(x, Frag) and x.is_zero():
        raise ZeroDivisionError("zero element has no valuation")
    return x.leading_term()


def val(x, fuel: int = DEFAULT_FUEL) -> ExpVec:
    return leading_term(x, fuel)[0]


def leading_coeff(x, fuel: int = DEFAULT_FUEL) -> C.Coef:
    return leading_term(x, fuel)[1]


def sign(x, fuel: int = DEFAULT_FUEL) -> int:
    x = as_elem(x)
    if isinstance(x, Frag):
        return x.sign()
    return C.sign(leading_coeff(x, fuel))


def truncate(x, k: ExpVec, fuel: int = DEFAULT_FUEL) -> Frag:
    """The sum of all terms of ``x`` with exponent ``< k``."""
    x = as_elem(x)
    if isinstance(x, Frag):
        return Frag(x.series(k, fuel), reduce=False)
    if isinstance(x, StreamElem):
        acc = dict(x.head.series(k, fuel))
        for i in range(fuel + 1):
            e, c = x.term(i)
            if not e < k:
                return Frag(acc, reduce=False)
            acc = lp_add(acc, {e: c})
        raise Undecided(fuel, "stream support below truncation bound")
    acc = {}
    for i, (e, c) in enumerate(x.iter_terms()):
        if not e < k:
            break
        if i > fuel:
            raise Undecided(fuel, "algebraic expansion below truncation bound")
        acc[e] = c
    return Frag(acc, reduce=False)


# ----------------------------------------------------------------------------
# comparison
# ----------------------------------------------------------------------------

def _cmp_stream_frag(s: StreamElem, f: Frag, fuel: int) -> int:
    d = s - f
    e, c = _first_term_stream(d, fuel)
    return C.sign(c)


def _cmp_stream_stream(a: StreamElem, b: StreamElem, fuel: int) -> int:
    if a.same_tail(b):
        return (a.head - b.head).sign()
    for k in range(fuel + 1):
        p = a.partial(k) - b.partial(k)
        ea, ca = a.term(k)
        eb, cb = b.term(k)
        nxt = ea if ea < eb else eb
        if not p.is_zero():
            if p.val() < nxt:
                return p.sign()
            continue
        if ea < eb:
            return C.sign(ca)
        if eb < ea:
            return -C.sign(cb)
        if C.cmp(ca, cb) != 0:
            return C.cmp(ca, cb)
    raise Undecided(fuel, "streams agree on all inspected terms")


def _cmp_termwise(a: TowerElem, b: TowerElem, fuel: int) -> int:
    ia, ib = iter_terms(a, fuel), iter_terms(b, fuel)
    ta, tb = next(ia, None), next(ib, None)
    for _ in range(fuel + 1):
        if ta is None and tb is None:
            return EQ
        if tb is None:
            return C.sign(ta[1])
        if ta is None:
            return -C.sign(tb[1])
        (ea, ca), (eb, cb) = ta, tb
        if ea < eb:
            return C.sign(ca)
        if eb < ea:
            return -C.sign(cb)
        s = C.cmp(ca, cb)
        if s:
            return s
        ta, tb = next(ia, None), next(ib, None)
    raise Undecided(fuel, "expansions agree on all inspected terms")


def _same_branch(a: AlgElem, b: AlgElem) -> bool:
    if len(a.poly) != len(b.poly) or any(x != y for x, y in zip(a.poly, b.poly)):
        return False
    return a.lo == b.lo and a.hi == b.hi


def cmp(a, b, fuel: int = DEFAULT_FUEL) -> int:
    """Exact comparison; returns LT, EQ or GT."""
    a, b = as_elem(a), as_elem(b)
    if isinstance(a, Frag) and isinstance(b, Frag):
        return (a - b).sign()
    if isinstance(a, AlgElem) and isinstance(b, Frag):
        return a.cmp_frag(b)
    if isinstance(a, Frag) and isinstance(b, AlgElem):
        return -b.cmp_frag(a)
    if isinstance(a, StreamElem) and isinstance(b, Frag):
        return _cmp_stream_frag(a, b, fuel)
    if isinstance(a, Frag) and isinstance(b, StreamElem):
        return -_cmp_stream_frag(b, a, fuel)
    if isinstance(a, StreamElem) and isinstance(b, StreamElem):
        return _cmp_stream_stream(a, b, fuel)
    if isinstance(a, AlgElem) and isinstance(b, AlgElem):
        if _same_branch(a, b):
            return EQ
        if cmp(a.hi, b.lo) <= 0:
            return LT
        if cmp(b.hi, a.lo) <= 0:
            return GT
    return _cmp_termwise(a, b, fuel)


def less(a, b, fuel: int = DEFAULT_FUEL) -> bool:
    return cmp(a, b, fuel) < 0


# ----------------------------------------------------------------------------
# arithmetic
# ----------------------------------------------------------------------------

def _alg_affine(a: AlgElem, mul: Frag, add: Frag) -> TowerElem:
    """The root ``mul * a + add`` re-isolated as an algebraic element."""
    if mul.is_zero():
        return add
    # q(y) = p((y - add) / mul) has root mul*a + add
    inv = mul.inverse()
    shifted = up_taylor_shift(a.poly, -add * inv)
    q = up([c * inv ** i for i, c in enumerate(shifted)])
    lo, hi = a.lo * mul + add, a.hi * mul + add
    if mul.sign() < 0:
        lo, hi = hi, lo
    for r in isolate_real_roots(q):
        if cmp(r, lo) > 0 and cmp(r, hi) < 0:
            return r
    raise ArithmeticError("lost the isolated root under an affine map")


def frag_arith(a, b, op: str) -> TowerElem:
    """``a op b`` for op in add, sub, mul, div with the stream restrictions."""
    a, b = as_elem(a), as_elem(b)
    if op not in ("add", "sub", "mul", "div"):
        raise ValueError(f"unknown op {op!r}")
    if isinstance(b, Frag) and op == "div" and b.is_zero():
        raise ZeroDivisionError("division by zero element")
    if isinstance(a, Frag) and isinstance(b, Frag):
        return {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}[op](b)
    if isinstance(a, StreamElem) or isinstance(b, StreamElem):
        if isinstance(a, StreamElem) and isinstance(b, StreamElem):
            raise UnsupportedStreamOp(f"stream {op} stream")
        if isinstance(a, AlgElem) or isinstance(b, AlgElem):
            raise UnsupportedStreamOp(f"stream {op} algebraic element")
        if op == "add":
            return a + b
        if op == "sub":
            return a - b
        if op == "mul":
            return a * b
        if isinstance(b, StreamElem):
            raise UnsupportedStreamOp("division by a stream")
        return a / b
    if isinstance(a, AlgElem) and isinstance(b, Frag):
        if op == "add":
            return _alg_affine(a, Frag.const(1), b)
        if op == "sub":
            return _alg_affine(a, Frag.const(1), -b)
        if op == "mul":
            return _alg_affine(a, b, Frag.const(0))
        return _alg_affine(a, b.inverse(), Frag.const(0))
    if isinstance(a, Frag) and isinstance(b, AlgElem):
        if op == "add":
            return _alg_affine(b, Frag.const(1), a)
        if op == "sub":
            return _alg_affine(b, Frag.const(-1), a)
        if op == "mul":
            return _alg_affine(b, a, Frag.const(0))
        raise UnsupportedStreamOp("division by an algebraic element")
    raise UnsupportedStreamOp("arithmetic between two algebraic elements")


def cmp_with_power(y, x, q, fuel: int = DEFAULT_FUEL) -> int:
    """Compare ``y`` with ``x^q`` (``x > 0``) without forming ``x^q``."""
    y, x = as_elem(y), as_elem(x)
    q = Fraction(q)
    if sign(x, fuel) <= 0:
        raise ValueError("cmp_with_power requires x > 0")
    if sign(y, fuel) <= 0:
        return LT
    vy, vx = val(y, fuel), val(x, fuel)
    vq = vx * q
    if vy < vq:
        return GT
    if vq < vy:
        return LT
    s = C.cmp(leading_coeff(y, fuel), C.power(leading_coeff(x, fuel), q))
    if s:
        return s
    if isinstance(y, Frag) and isinstance(x, Frag):
        a, b = q.numerator, q.denominator
        return ((y ** b) - (x ** a)).sign()
    raise Undecided(fuel, "tie in cmp_with_power beyond the leading term")


def root_isolate_over(K: TowerField, p, fuel: int = DEFAULT_FUEL) -> list:
    """Real roots of ``p`` (coefficients in ``K``, constant first), sorted."""
    coeffs = up(p)
    for c in coeffs:
        if not K.contains(c):
            raise ValueError(f"coefficient {c} is not in {K}")
    roots = isolate_real_roots(coeffs, fuel)
    return sorted(roots, key=cmp_to_key(lambda a, b: cmp(a, b, fuel)))


__all__ = [
    "LT", "EQ", "GT", "TowerElem", "as_elem", "iter_terms", "leading_term", "val", "leading_coeff",
    "sign", "truncate", "cmp", "less", "frag_arith", "cmp_with_power", "root_isolate_over", "RealAlg",
]
