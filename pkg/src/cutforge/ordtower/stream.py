"""Lazy infinite sums with a symbolic term profile.

A :class:`StreamElem` denotes ``head + coeff * t^shift * sum_{n >= start} term(n)``
where ``head`` is a fragment and ``term(n) = c(n) * t^{e(n)}`` is given by
sympy expressions in the index ``n``.  Only finitely many terms are ever
materialized; each query is bounded by ``fuel`` and raises
:class:`Undecided` when that is not enough.

The symbolic profile is kept so that cut analysis can reason about the
limit behaviour of the exponents (``sympy.limit``) instead of sampling.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from . import coef as C
from .errors import UnsupportedStreamOp
from .expvec import ExpVec
from .frag import Frag

N = sympy.Symbol("n", integer=True, positive=True)


def _rat(v) -> Fraction:
    v = sympy.nsimplify(v) if not isinstance(v, sympy.Rational) else v
    if not isinstance(v, sympy.Rational):
        raise ValueError(f"stream term is not rational: {v}")
    return Fraction(int(v.p), int(v.q))


@dataclass(frozen=True, eq=False)
class StreamTail:
    """The profile ``n -> coeff(n) * prod_g g^{exps[g](n)}`` for ``n >= start``."""

    coeff: sympy.Expr
    exps: tuple  # ((generator, sympy.Expr), ...) sorted by generator name
    start: int = 1
    label: str = ""
    _memo: dict = field(default_factory=dict, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    @classmethod
    def make(cls, coeff, exps: dict, start: int = 1, label: str = "") -> "StreamTail":
        coeff = sympy.sympify(coeff)
        items = tuple(sorted((g, sympy.sympify(e)) for g, e in exps.items()))
        tail = cls(coeff, items, int(start), label)
        tail._check_increasing()
        return tail

    def key(self) -> tuple:
        return (sympy.srepr(self.coeff), tuple((g, sympy.srepr(e)) for g, e in self.exps), self.start)

    def __eq__(self, other) -> bool:
        return isinstance(other, StreamTail) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def generators(self) -> frozenset:
        return frozenset(g for g, _ in self.exps)

    def term(self, k: int) -> tuple[ExpVec, Fraction]:
        """The ``k``-th term (``k = 0, 1, ...``), i.e. index ``n = start + k``."""
        with self._lock:
            hit = self._memo.get(k)
            if hit is not None:
                return hit
        n = self.start + k
        e = ExpVec({g: _rat(ex.subs(N, n)) for g, ex in self.exps})
        c = _rat(self.coeff.subs(N, n))
        if c == 0:
            raise ValueError(f"stream coefficient vanishes at n={n}")
        with self._lock:
            self._memo[k] = (e, c)
        return e, c

    def _check_increasing(self, count: int = 8) -> None:
        prev = None
        for k in range(count):
            e, _ = self.term(k)
            if prev is not None and not prev < e:
                raise ValueError("stream exponents must be strictly increasing")
            prev = e

    def describe(self) -> str:
        if self.label:
            return self.label
        mono = "*".join(f"{g}^({str(e).replace('**', '^')})" for g, e in self.exps)
        return f"sum(n={self.start}, ({self.coeff})*{mono})"


class StreamElem:
    """``head + scale_coef * t^scale_exp * sum_k tail.term(k)``."""

    __slots__ = ("head", "tail", "scale_coef", "scale_exp")

    def __init__(self, tail: StreamTail, head: Frag | None = None, scale_coef=1, scale_exp: ExpVec | None = None):
        self.tail = tail
        self.head = head if head is not None else Frag.const(0)
        self.scale_coef = C.norm(scale_coef)
        self.scale_exp = scale_exp if scale_exp is not None else ExpVec.zero()
        if C.is_zero(self.scale_coef):
            raise ValueError("zero stream scale")

    def term(self, k: int) -> tuple[ExpVec, C.Coef]:
        e, c = self.tail.term(k)
        return e + self.scale_exp, C.mul(c, self.scale_coef)

    def partial(self, k: int) -> Frag:
        """``head`` plus the first ``k`` tail terms."""
        acc = {}
        for i in range(k):
            e, c = self.term(i)
            acc[e] = c
        return self.head + Frag(acc, reduce=False)

    def generators(self) -> frozenset:
        return self.head.generators() | self.tail.generators() | self.scale_exp.support()

    def same_tail(self, other: "StreamElem") -> bool:
        return (
            self.tail == other.tail
            and self.scale_exp == other.scale_exp
            and C.cmp(self.scale_coef, other.scale_coef) == 0
        )

    # restricted arithmetic -------------------------------------------------------------
    def __add__(self, other) -> "StreamElem":
        if isinstance(other, StreamElem):
            raise UnsupportedStreamOp("stream + stream")
        try:
            other = Frag.coerce(other)
        except TypeError:
            return NotImplemented
        return StreamElem(self.tail, self.head + other, self.scale_coef, self.scale_exp)

    __radd__ = __add__

    def __neg__(self) -> "StreamElem":
        return StreamElem(self.tail, -self.head, -self.scale_coef, self.scale_exp)

    def __sub__(self, other) -> "StreamElem":
        if isinstance(other, StreamElem):
            raise UnsupportedStreamOp("stream - stream")
        return self + (-Frag.coerce(other))

    def __rsub__(self, other) -> "StreamElem":
        return (-self) + other

    def __mul__(self, other) -> "StreamElem":
        if isinstance(other, StreamElem):
            raise UnsupportedStreamOp("stream * stream")
        try:
            other = Frag.coerce(other)
        except TypeError:
            return NotImplemented
        if not other.is_monomial():
            raise UnsupportedStreamOp("streams can only be multiplied by a monomial")
        (e, c), = other.num.items()
        return StreamElem(self.tail, self.head * other, C.mul(self.scale_coef, c), self.scale_exp + e)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "StreamElem":
        other = Frag.coerce(other)
        if not other.is_monomial():
            raise UnsupportedStreamOp("streams can only be divided by a monomial")
        return self * other.inverse()

    def __repr__(self) -> str:
        return f"StreamElem({self})"

    def __str__(self) -> str:
        s = self.tail.describe()
        if not (self.scale_exp.is_zero() and self.scale_coef == 1):
            s = f"{Frag.monomial(self.scale_exp, self.scale_coef)}*{s}"
        if not self.head.is_zero():
            s = f"{self.head} + {s}"
        return s
