"""Finitely presented cuts of tower fields and their classification.

Every cut is reduced to a *normal form* relative to its base field ``K``:

``plus_inf`` / ``minus_inf``
    one side empty.
``above k`` / ``below k``
    the principal cuts ``k+`` and ``k-`` of a point ``k`` in ``K``.
``val (k, sigma, delta)``
    the cut realized by ``k + sigma * t^delta`` where ``delta`` lies outside
    the value group of ``K``; it is determined by ``k``, ``sigma`` and the
    upward closed set ``U = {g in value group: g > delta}``.
``limit a``
    the cut realized by a stream ``a`` whose tail consists of ``K``-monomials;
    the distances from ``a`` to its partial sums are the gaps of the cut.

Element-induced cuts reach their normal form by prefix analysis: the terms of
the expansion of the witness that lie in ``K`` are collected into a center
until the first term of ``K``-external scale appears.  All predicates, derived
cuts and cofinality tags are read off the normal form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import sympy

from .ordtower import (
    DEFAULT_FUEL, AlgElem, ExpVec, Frag, StreamElem, TowerField, Undecided, cmp, fresh_between,
    iter_terms, leading_term, rank_of, sign, val,
)
from .ordtower import coef as C
from .ordtower.errors import UnsupportedStreamOp
from .ordtower.stream import N as IDX

LEFT, RIGHT = "Left", "Right"
OMEGA = "w"


class PreconditionError(ValueError):
    pass


class RealizedInL(ValueError):
    """A cut meant to be extended canonically is realized in the larger field."""

    def __init__(self, witness, message: str = ""):
        self.witness = witness
        super().__init__(message or f"cut is realized by {witness}")


# ----------------------------------------------------------------------------
# cofinality tags
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class CofinalityTag:
    left: str
    right: str

    @property
    def symmetric(self) -> bool:
        return self.left == self.right

    def swap(self) -> "CofinalityTag":
        return CofinalityTag(self.right, self.left)

    def as_list(self) -> list:
        return [self.left, self.right]

    def __str__(self) -> str:
        return f"({self.left.replace('w', 'ω')},{self.right.replace('w', 'ω')})"


TAG_PLUS = CofinalityTag(OMEGA, "0")
TAG_MINUS = CofinalityTag("0", OMEGA)
TAG_ABOVE = CofinalityTag("1", OMEGA)
TAG_BELOW = CofinalityTag(OMEGA, "1")
TAG_DEDEKIND = CofinalityTag(OMEGA, OMEGA)


# ----------------------------------------------------------------------------
# cut specifications
# ----------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CutSpec:
    base: TowerField
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def describe(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return f"{self.describe()} over {self.base}"


@dataclass(frozen=True, eq=False)
class ElementInduced(CutSpec):
    a: object = None

    def __post_init__(self):
        if self.base.contains(self.a):
            raise PreconditionError(f"{self.a} lies in {self.base}; it does not induce a proper cut")

    def describe(self) -> str:
        return f"elem({self.a})"


@dataclass(frozen=True, eq=False)
class PlusInfinity(CutSpec):
    def describe(self) -> str:
        return "+inf"


@dataclass(frozen=True, eq=False)
class MinusInfinity(CutSpec):
    def describe(self) -> str:
        return "-inf"


@dataclass(frozen=True, eq=False)
class AbovePoint(CutSpec):
    a: object = None

    def __post_init__(self):
        if not self.base.contains(self.a):
            raise PreconditionError(f"{self.a} is not in {self.base}")

    def describe(self) -> str:
        return f"above({self.a})"


@dataclass(frozen=True, eq=False)
class BelowPoint(CutSpec):
    a: object = None

    def __post_init__(self):
        if not self.base.contains(self.a):
            raise PreconditionError(f"{self.a} is not in {self.base}")

    def describe(self) -> str:
        return f"below({self.a})"


@dataclass(frozen=True, eq=False)
class SeqGenerated(CutSpec):
    """Cut generated by an increasing ``lower`` and a decreasing ``upper`` sequence.

    ``witness`` is an element of an extension realizing the cut; the
    classification procedures work through it, while :func:`side` uses the
    sequences themselves.
    """

    lower: Callable[[int], object] = None
    upper: Callable[[int], object] = None
    witness: object = None
    start: int = 1
    label: str = ""

    def describe(self) -> str:
        return self.label or "seq(...)"


# ----------------------------------------------------------------------------
# supremum analysis of symbolic exponent sequences
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class SupInfo:
    """The supremum of an increasing exponent sequence relative to ``K``.

    ``pivot`` is the most significant generator whose exponent varies; the
    coordinates of ``K``-generators more significant than it are fixed at
    ``prefix``.  In mode ``unbounded`` the pivot exponent grows without bound,
    in mode ``limit`` it converges to ``limit`` from below.
    """

    prefix: ExpVec
    pivot: str
    mode: str
    limit: Optional[Fraction] = None
    field_gens: frozenset = frozenset()

    def _above(self) -> list:
        r = rank_of(self.pivot)
        return [g for g in self.field_gens if rank_of(g) > r]

    def is_cofinal(self) -> bool:
        """True iff the sequence is cofinal in the value group of ``K``."""
        return self.mode == "unbounded" and not self._above()

    def exceeds(self, gamma: ExpVec) -> bool:
        """Whether ``gamma`` lies above every term of the sequence."""
        r = rank_of(self.pivot)
        above = set(self._above()) | {g for g in gamma.support() if rank_of(g) > r}
        head = ExpVec({g: gamma[g] for g in above})
        s = head.cmp(self.prefix)
        if s:
            return s > 0
        if self.mode == "unbounded":
            return False
        # the pivot exponents stay strictly below their limit
        return gamma[self.pivot] >= self.limit

    def delta(self, avoid=()) -> Optional[ExpVec]:
        """A value ``d`` outside ``K``'s group with ``{g > d} = {g above the sequence}``."""
        r = rank_of(self.pivot)
        ranks = sorted(rank_of(g) for g in self.field_gens)
        avoid = set(avoid) | set(self.field_gens)
        if self.mode == "unbounded":
            higher = [x for x in ranks if x > r]
            if not higher:
                return None
            w = fresh_between(r, higher[0], avoid)
            return self.prefix + ExpVec.unit(w)
        lower = [x for x in ranks if x < r]
        w = fresh_between(lower[-1] if lower else 0, r, avoid)
        return self.prefix + ExpVec.unit(self.pivot, self.limit) - ExpVec.unit(w)


def _const_rational(expr) -> Optional[Fraction]:
    expr = sympy.simplify(expr)
    if expr.free_symbols:
        return None
    expr = sympy.nsimplify(expr)
    if not isinstance(expr, sympy.Rational):
        raise ValueError(f"non-rational exponent {expr}")
    return Fraction(int(expr.p), int(expr.q))


def sup_analysis(K: TowerField, exps: dict) -> SupInfo:
    """Analyze ``n -> t^{exps(n)}`` (strictly increasing exponents) over ``K``."""
    if not set(exps) <= K.gens:
        raise PreconditionError("stream exponents must use generators of the base field")
    prefix = {}
    for g in sorted(K.gens, key=rank_of, reverse=True):
        expr = sympy.sympify(exps.get(g, 0))
        c = _const_rational(expr)
        if c is not None:
            prefix[g] = c
            continue
        lim = sympy.limit(expr, IDX, sympy.oo)
        pre = ExpVec(prefix)
        if lim == sympy.oo:
            return SupInfo(pre, g, "unbounded", None, K.gens)
        if lim.is_finite:
            return SupInfo(pre, g, "limit", _const_rational(lim), K.gens)
        raise PreconditionError(f"exponent of {g} has no usable limit ({lim})")
    raise PreconditionError("stream exponents do not increase")


def stream_sup(K: TowerField, a: StreamElem) -> SupInfo:
    exps = {g: e for g, e in a.tail.exps}
    for g, e in a.scale_exp.items():
        exps[g] = sympy.sympify(exps.get(g, 0)) + sympy.Rational(e.numerator, e.denominator)
    return sup_analysis(K, exps)


# ----------------------------------------------------------------------------
# normal forms
# ----------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class NormalForm:
    kind: str  # plus_inf, minus_inf, above, below, val, limit
    center: object = None
    sigma: int = 0
    delta: Optional[ExpVec] = None
    stream: Optional[StreamElem] = None
    sup: Optional[SupInfo] = None
    field_gens: frozenset = frozenset()

    @property
    def dedekind(self) -> bool:
        return self.kind in ("val", "limit")

    def u_key(self) -> tuple:
        """Canonical description of ``U = {g in value group : g > delta}``."""
        h = _first_external(self.delta, self.field_gens)
        above = frozenset(g for g in self.field_gens if rank_of(g) > rank_of(h))
        return above, self.delta.restrict(above), 1 if self.delta[h] > 0 else -1

    def in_u(self, gamma: ExpVec) -> bool:
        return self.delta < gamma

    def describe(self) -> str:
        if self.kind in ("plus_inf", "minus_inf"):
            return self.kind
        if self.kind in ("above", "below"):
            return f"{self.kind} {self.center}"
        if self.kind == "val":
            return f"val(center={self.center}, sign={self.sigma:+d}, delta={self.delta})"
        return f"limit({self.stream})"


def _first_external(delta: ExpVec, gens) -> str:
    for g, _ in delta.items():
        if g not in gens:
            return g
    raise ValueError("value lies in the value group of the field")


def _diff(a, b):
    """``a - b`` for elements where this stays representable."""
    if isinstance(a, StreamElem) and isinstance(b, StreamElem):
        if a.same_tail(b):
            return a.head - b.head
        raise UnsupportedStreamOp("difference of streams with different tails")
    if isinstance(b, StreamElem):
        return -(b - a)
    if isinstance(a, StreamElem):
        return a - b
    if isinstance(a, AlgElem) or isinstance(b, AlgElem):
        from .ordtower import frag_arith
        return frag_arith(a, b, "sub")
    return a - b


def _is_zero(x) -> bool:
    return isinstance(x, Frag) and x.is_zero()


def val_nf(K: TowerField, center, delta: ExpVec, sigma: int) -> NormalForm:
    h = _first_external(delta, K.gens)
    above = [g for g in K.gens if rank_of(g) > rank_of(h)]
    if not above:
        if delta[h] > 0:
            return NormalForm("above" if sigma > 0 else "below", center, field_gens=K.gens)
        return NormalForm("plus_inf" if sigma > 0 else "minus_inf", field_gens=K.gens)
    return NormalForm("val", center, sigma, delta, field_gens=K.gens)


def prefix_analysis(K: TowerField, a, fuel: int = DEFAULT_FUEL) -> NormalForm:
    """Normal form of the cut that ``a`` (not in ``K``) induces on ``K``."""
    if K.contains(a):
        raise PreconditionError(f"{a} lies in {K}")
    if isinstance(a, StreamElem):
        core = StreamElem(a.tail, Frag.const(0), a.scale_coef, a.scale_exp)
        if K.contains(core):
            nf = prefix_analysis(K, a.head, fuel)
            return _shift_nf(nf, core)
        if not a.head.generators() <= K.gens:
            if not a.head.is_poly():
                raise Undecided(fuel, "stream witness with a non-polynomial head outside the base field")
            inner = {e: c for e, c in a.head.num.items() if e.support() <= K.gens}
            outer = Frag({e: c for e, c in a.head.num.items() if e not in inner}, reduce=False)
            a = StreamElem(a.tail, Frag(inner, reduce=False), a.scale_coef, a.scale_exp)
            sup = stream_sup(K, a)
            if not sup.exceeds(outer.val()):
                return _prefix_terms(K, a + outer, fuel)
            return NormalForm("limit", stream=a, sup=sup, field_gens=K.gens)
        return NormalForm("limit", stream=a, sup=stream_sup(K, a), field_gens=K.gens)
    center = Frag.const(0)
    if isinstance(a, Frag):
        x = a
        spec = x.specialize_zero(x.generators() - K.gens)
        if spec is not None and not spec.is_zero():
            center, x = spec, x - spec
        for _ in range(fuel):
            if x.is_zero():
                raise PreconditionError(f"{a} lies in {K}")
            e, c = x.leading_term()
            if not e.support() <= K.gens:
                return val_nf(K, center, e, C.sign(c))
            m = Frag.monomial(e, c)
            center, x = center + m, x - m
        raise Undecided(fuel, "no term of external scale within fuel")
    return _prefix_terms(K, a, fuel)


def _prefix_terms(K: TowerField, a, fuel: int) -> NormalForm:
    acc = {}
    for i, (e, c) in enumerate(iter_terms(a, fuel)):
        if i >= fuel:
            break
        if not e.support() <= K.gens:
            return val_nf(K, Frag(acc, reduce=False), e, C.sign(c))
        acc[e] = c
    else:
        raise PreconditionError(f"{a} lies in {K}")
    raise Undecided(fuel, "no term of external scale within fuel")


def _shift_nf(nf: NormalForm, s: StreamElem) -> NormalForm:
    if nf.kind in ("plus_inf", "minus_inf"):
        return nf
    return NormalForm(nf.kind, s + nf.center, nf.sigma, nf.delta, field_gens=nf.field_gens)


def normal_form(cut: CutSpec, fuel: int = DEFAULT_FUEL) -> NormalForm:
    hit = cut._cache.get(("nf", fuel))
    if hit is not None:
        return hit
    K = cut.base
    if isinstance(cut, PlusInfinity):
        nf = NormalForm("plus_inf", field_gens=K.gens)
    elif isinstance(cut, MinusInfinity):
        nf = NormalForm("minus_inf", field_gens=K.gens)
    elif isinstance(cut, AbovePoint):
        nf = NormalForm("above", cut.a, field_gens=K.gens)
    elif isinstance(cut, BelowPoint):
        nf = NormalForm("below", cut.a, field_gens=K.gens)
    elif isinstance(cut, ElementInduced):
        nf = prefix_analysis(K, cut.a, fuel)
    elif isinstance(cut, SeqGenerated):
        if cut.witness is None:
            raise Undecided(fuel, "sequence-generated cut without a witness")
        nf = prefix_analysis(K, cut.witness, fuel)
    else:
        raise TypeError(type(cut).__name__)
    cut._cache[("nf", fuel)] = nf
    return nf


def nf_side(nf: NormalForm, k, fuel: int = DEFAULT_FUEL) -> str:
    """Side of ``k`` computed from the normal form alone."""
    if nf.kind == "plus_inf":
        return LEFT
    if nf.kind == "minus_inf":
        return RIGHT
    if nf.kind == "above":
        return LEFT if cmp(k, nf.center, fuel) <= 0 else RIGHT
    if nf.kind == "below":
        return LEFT if cmp(k, nf.center, fuel) < 0 else RIGHT
    if nf.kind == "limit":
        return LEFT if cmp(k, nf.stream, fuel) < 0 else RIGHT
    d = _diff(k, nf.center)
    s = sign(d, fuel) if not _is_zero(d) else 0
    if nf.sigma > 0:
        return LEFT if s <= 0 or nf.delta < val(d, fuel) else RIGHT
    return LEFT if s < 0 and val(d, fuel) < nf.delta else RIGHT


# ----------------------------------------------------------------------------
# queries
# ----------------------------------------------------------------------------

def side(cut: CutSpec, k, fuel: int = DEFAULT_FUEL) -> str:
    """``Left`` iff ``k`` belongs to the left side of the cut."""
    if isinstance(cut, ElementInduced):
        s = cmp(k, cut.a, fuel)
        if s == 0:
            raise PreconditionError("element equals the witness; it is not in the base field")
        return LEFT if s < 0 else RIGHT
    if isinstance(cut, SeqGenerated):
        for n in range(cut.start, cut.start + fuel):
            if cmp(k, cut.lower(n), fuel) < 0:
                return LEFT
            if cmp(k, cut.upper(n), fuel) >= 0:
                return RIGHT
        raise Undecided(fuel, f"{k} not separated by the first {fuel} generators")
    return nf_side(normal_form(cut, fuel), k, fuel)


def is_dedekind(cut: CutSpec, fuel: int = DEFAULT_FUEL) -> bool:
    if isinstance(cut, SeqGenerated):
        return True
    return normal_form(cut, fuel).dedekind


def cofinality(cut: CutSpec, fuel: int = DEFAULT_FUEL) -> CofinalityTag:
    if isinstance(cut, SeqGenerated):
        return TAG_DEDEKIND
    return {
        "plus_inf": TAG_PLUS, "minus_inf": TAG_MINUS, "above": TAG_ABOVE, "below": TAG_BELOW,
        "val": TAG_DEDEKIND, "limit": TAG_DEDEKIND,
    }[normal_form(cut, fuel).kind]


def is_symmetric(cut: CutSpec, fuel: int = DEFAULT_FUEL) -> bool:
    return cofinality(cut, fuel).symmetric


def is_positive(cut: CutSpec, fuel: int = DEFAULT_FUEL) -> bool:
    nf = normal_form(cut, fuel)
    if nf.kind == "plus_inf":
        return True
    if nf.kind == "minus_inf":
        return False
    if nf.kind == "limit":
        return sign(nf.stream, fuel) > 0
    s = 0 if _is_zero(nf.center) else sign(nf.center, fuel)
    if nf.kind == "above":
        return s > 0
    if nf.kind == "below":
        return s > 0
    return s > 0 or (s == 0 and nf.sigma > 0)


def is_scott(cut: CutSpec, fuel: int = DEFAULT_FUEL) -> bool:
    nf = normal_form(cut, fuel)
    if not nf.dedekind:
        raise PreconditionError("is_scott requires a Dedekind cut")
    return nf.kind == "limit" and nf.sup.is_cofinal()


def _center_zero(nf: NormalForm) -> bool:
    return _is_zero(nf.center)


def is_additive(cut: CutSpec, fuel: int = DEFAULT_FUEL) -> bool:
    nf = normal_form(cut, fuel)
    if nf.kind == "plus_inf":
        return True
    if nf.kind == "val":
        return _center_zero(nf) and nf.sigma > 0
    return False


def is_multiplicative(cut: CutSpec, fuel: int = DEFAULT_FUEL) -> bool:
    nf = normal_form(cut, fuel)
    if nf.kind == "plus_inf":
        return True
    if nf.kind == "val" and _center_zero(nf) and nf.sigma > 0:
        above, prefix, direction = nf.u_key()
        return prefix.is_zero() and direction < 0
    return False


def classify(cut: CutSpec, fuel: int = DEFAULT_FUEL) -> dict:
    """The full predicate vector and tag."""
    ded = is_dedekind(cut, fuel)
    tag = cofinality(cut, fuel)
    return {
        "dedekind": ded,
        "positive": is_positive(cut, fuel),
        "scott": is_scott(cut, fuel) if ded else False,
        "additive": is_additive(cut, fuel),
        "multiplicative": is_multiplicative(cut, fuel),
        "symmetric": tag.symmetric,
        "tag": tag.as_list(),
    }


# ----------------------------------------------------------------------------
# derived cuts
# ----------------------------------------------------------------------------

def _mono(e: ExpVec, c=1) -> Frag:
    return Frag.monomial(e, c)


def _cut_from_val(K: TowerField, center, sigma: int, delta: ExpVec) -> CutSpec:
    return ElementInduced(K, center + _mono(delta, sigma))


def _avoid(nf: NormalForm, cut: CutSpec) -> set:
    names = set(cut.base.gens)
    for x in (getattr(cut, "a", None), getattr(cut, "witness", None)):
        if x is not None:
            names |= set(x.generators())
    return names


def derive_add(cut: CutSpec, fuel: int = DEFAULT_FUEL) -> CutSpec:
    """The cut with left side ``{r : r + C- in C-}``."""
    K = cut.base
    nf = normal_form(cut, fuel)
    if nf.kind in ("plus_inf", "minus_inf"):
        return PlusInfinity(K)
    if nf.kind in ("above", "below"):
        return AbovePoint(K, Frag.const(0))
    if nf.kind == "val":
        return _cut_from_val(K, Frag.const(0), 1, nf.delta)
    d = nf.sup.delta(_avoid(nf, cut))
    if d is None:
        return AbovePoint(K, Frag.const(0))
    return _cut_from_val(K, Frag.const(0), 1, d)


def derive_mlt(cut: CutSpec, fuel: int = DEFAULT_FUEL) -> CutSpec:
    """The cut with left side ``{r : r * (C- and positive) in C-}``."""
    K = cut.base
    if not is_positive(cut, fuel):
        raise PreconditionError("derive_mlt requires a positive cut")
    nf = normal_form(cut, fuel)
    one = Frag.const(1)
    if nf.kind == "plus_inf":
        return PlusInfinity(K)
    if nf.kind in ("above", "below"):
        return AbovePoint(K, one)
    if nf.kind == "val":
        if _center_zero(nf):
            h = _first_external(nf.delta, K.gens)
            return ElementInduced(K, _mono(-ExpVec.unit(h)))
        return _cut_from_val(K, one, 1, nf.delta - val(nf.center, fuel))
    d = nf.sup.delta(_avoid(nf, cut))
    if d is None:
        return AbovePoint(K, one)
    return _cut_from_val(K, one, 1, d - val(nf.stream, fuel))


# ----------------------------------------------------------------------------
# restriction and equality
# ----------------------------------------------------------------------------

def restrict(cut: CutSpec, L: TowerField) -> CutSpec:
    """The cut induced on the subfield ``L``."""
    K = cut.base
    if not L.is_subfield_of(K):
        raise PreconditionError(f"{L} is not a subfield of {K}")
    if isinstance(cut, ElementInduced):
        return ElementInduced(L, cut.a)
    if isinstance(cut, PlusInfinity):
        return PlusInfinity(L)
    if isinstance(cut, MinusInfinity):
        return MinusInfinity(L)
    if isinstance(cut, (AbovePoint, BelowPoint)):
        if L.contains(cut.a):
            return type(cut)(L, cut.a)
        return ElementInduced(L, cut.a)
    if isinstance(cut, SeqGenerated):
        probe = [cut.lower(cut.start), cut.upper(cut.start), cut.lower(cut.start + 1)]
        if all(L.contains(x) for x in probe):
            return SeqGenerated(L, cut.lower, cut.upper, cut.witness, cut.start, cut.label)
        if cut.witness is None:
            raise Undecided(DEFAULT_FUEL, "cannot restrict a sequence cut without a witness")
        return ElementInduced(L, cut.witness)
    raise TypeError(type(cut).__name__)


def nf_equal(a: NormalForm, b: NormalForm, fuel: int = DEFAULT_FUEL) -> bool:
    """Whether two normal forms over the same field describe the same cut."""
    if a.kind != b.kind:
        return False
    if a.kind in ("plus_inf", "minus_inf"):
        return True
    if a.kind in ("above", "below"):
        return cmp(a.center, b.center, fuel) == 0
    if a.kind == "val":
        if a.sigma != b.sigma or a.u_key() != b.u_key():
            return False
        d = _diff(a.center, b.center)
        return _is_zero(d) or a.delta < val(d, fuel)
    if a.stream.same_tail(b.stream):
        d = a.stream.head - b.stream.head
        return d.is_zero() or a.sup.exceeds(d.val())
    if cmp(a.stream, b.stream, fuel) == 0:
        return True
    raise Undecided(fuel, "limit cuts with different stream tails")


def same_cut(c1: CutSpec, c2: CutSpec, fuel: int = DEFAULT_FUEL) -> bool:
    """Decide whether two specs over the same field describe the same cut."""
    if c1.base.gens != c2.base.gens:
        raise PreconditionError("cuts over different fields")
    return nf_equal(normal_form(c1, fuel), normal_form(c2, fuel), fuel)


__all__ = [
    "AbovePoint", "BelowPoint", "CofinalityTag", "CutSpec", "ElementInduced", "LEFT", "MinusInfinity",
    "NormalForm", "OMEGA", "nf_equal", "PlusInfinity", "PreconditionError", "RIGHT", "RealizedInL", "SeqGenerated",
    "SupInfo", "TAG_ABOVE", "TAG_BELOW", "TAG_DEDEKIND", "TAG_MINUS", "TAG_PLUS", "classify", "cofinality",
    "derive_add", "derive_mlt", "val_nf", "is_additive", "is_dedekind", "is_multiplicative", "is_positive", "is_scott",
    "is_symmetric", "nf_side", "normal_form", "prefix_analysis", "restrict", "same_cut", "side", "stream_sup",
    "sup_analysis",
]
