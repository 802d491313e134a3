"""Independence of cuts through their realizations, and hull constructions.

Two routes decide algebraic dependence of fragment realizations over a base
field ``K``:

* the Jacobian criterion: with ``H`` the generators that occur in the
  realizations but not in ``K``, the elements are dependent iff the matrix
  of partial derivatives with respect to ``H`` has rank below their number;
* bounded-degree elimination: all products of the realizations up to a
  total degree are expanded in the ``H``-monomials, and a vanishing
  combination is a linear relation over the rational functions in ``K``'s
  generators.  A relation found this way is a dependence certificate.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Callable, Optional, Sequence, Union

from .cuts import (
    TAG_DEDEKIND, AbovePoint, BelowPoint, CofinalityTag, CutSpec, ElementInduced, MinusInfinity, PlusInfinity,
    PreconditionError, RealizedInL, SeqGenerated, cofinality, is_dedekind, normal_form,
)
from .ordtower import (
    DEFAULT_FUEL, AlgElem, ExpVec, Frag, StreamElem, TowerField, Undecided, UnsupportedStreamOp,
    fresh_between, rank_of,
)
from .search import SearchBounds, SearchCertificate, search_realizations


class CatalogExhausted(Exception):
    """The cut catalog of a field has no cuts passing the hull filter."""


# ----------------------------------------------------------------------------
# linear algebra over the fragment
# ----------------------------------------------------------------------------

def frag_rank(rows: list[list[Frag]]) -> int:
    """Rank of a matrix with fragment entries (fraction-free enough for small sizes)."""
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if not m[i][col].is_zero()), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for i in range(len(m)):
            if i != rank and not m[i][col].is_zero():
                f = m[i][col] / p
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def frag_kernel_vector(rows: list[list[Frag]]) -> Optional[list[Frag]]:
    """A nonzero ``x`` with ``x^T M = 0`` (a dependence among rows), or None."""
    n = len(rows)
    if n == 0:
        return None
    ncols = len(rows[0])
    # augment each row with an identity block to track combinations
    m = [list(r) + [Frag.const(1 if j == i else 0) for j in range(n)] for i, r in enumerate(rows)]
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, n) if not m[i][col].is_zero()), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for i in range(n):
            if i != rank and not m[i][col].is_zero():
                f = m[i][col] / p
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    if rank == n:
        return None
    return m[rank][ncols:]


# ----------------------------------------------------------------------------
# dependence
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Dependence:
    dependent: bool
    rank: int
    external: tuple
    certificate: Optional[str] = None


def _check_realizations(elems) -> list[Frag]:
    out = []
    for e in elems:
        if isinstance(e, StreamElem):
            raise UnsupportedStreamOp("dependence of stream realizations is not decidable here")
        if isinstance(e, AlgElem):
            raise UnsupportedStreamOp("dependence is decided for fragment realizations only")
        out.append(Frag.coerce(e))
    return out


def _external(K: TowerField, elems: Sequence[Frag]) -> list[str]:
    ext = set()
    for e in elems:
        ext |= e.generators() - K.gens
    return sorted(ext, key=rank_of)


def jacobian_rank(K: TowerField, elems: Sequence) -> int:
    elems = _check_realizations(elems)
    ext = _external(K, elems)
    if not elems or not ext:
        return 0
    return frag_rank([[e.derivative(h) for h in ext] for e in elems])


def are_dependent(K: TowerField, elems: Sequence, certificate_degree: int = 4) -> Dependence:
    """Jacobian decision, plus an elimination certificate when dependent."""
    elems = _check_realizations(elems)
    ext = tuple(_external(K, elems))
    r = jacobian_rank(K, elems)
    dep = r < len(elems)
    cert = None
    if dep:
        rel = find_relation(K, elems, certificate_degree)
        cert = rel
    return Dependence(dep, r, ext, cert)


def _split_monomial(e: ExpVec, ext: set) -> tuple[ExpVec, ExpVec]:
    return e.restrict(ext), e.drop(ext)


def _expand(K: TowerField, f: Frag, ext: set) -> dict:
    """``f`` (a polynomial after clearing denominators) as ext-monomial -> K-coefficient."""
    out: dict = {}
    for e, c in f.num.items():
        he, ke = _split_monomial(e, ext)
        out[he] = out.get(he, Frag.const(0)) + Frag.monomial(ke, c)
    return {k: v for k, v in out.items() if not v.is_zero()}


def find_relation(K: TowerField, elems: Sequence, max_degree: int = 4) -> Optional[str]:
    """A polynomial relation over ``K`` among ``elems`` of degree at most ``max_degree``.

    Returns a printable relation in variables ``x1, x2, ...`` or None.  The
    denominators of the elements are cleared by one common denominator
    ``D``, so ``D^d * prod x_i^{a_i}`` is a polynomial for every exponent
    vector of total degree ``<= d``.
    """
    elems = _check_realizations(elems)
    ext = set(_external(K, elems))
    D = Frag.const(1)
    for e in elems:
        D = D * Frag(e.den, reduce=False)
    nums = [e * D for e in elems]
    for d in range(1, max_degree + 1):
        exps = [()]
        for deg in range(1, d + 1):
            exps += list(combinations_with_replacement(range(len(elems)), deg))
        rows_raw = []
        for combo in exps:
            term = Frag.const(1)
            for i in combo:
                term = term * nums[i]
            term = term * D ** (d - len(combo))
            rows_raw.append(term)
        if any(not t.is_poly() for t in rows_raw):
            continue
        expanded = [_expand(K, t, ext) for t in rows_raw]
        cols = sorted({m for ex in expanded for m in ex}, key=lambda m: tuple(sorted(m.as_dict().items())))
        rows = [[ex.get(m, Frag.const(0)) for m in cols] for ex in expanded]
        kern = frag_kernel_vector(rows)
        if kern is not None:
            return _relation_str(exps, kern)
    return None


def _relation_str(exps, kern) -> str:
    parts = []
    for combo, c in zip(exps, kern):
        if c.is_zero():
            continue
        mono = "*".join(f"x{i + 1}" for i in combo) or "1"
        parts.append(f"({c})*{mono}")
    return " + ".join(parts) + " = 0"


# ----------------------------------------------------------------------------
# families and realizations
# ----------------------------------------------------------------------------

@dataclass
class CutFamily:
    base: TowerField
    cuts: list
    realizations: Optional[list] = None
    names: Optional[list] = None

    def __post_init__(self):
        for c in self.cuts:
            if c.base.gens != self.base.gens:
                raise PreconditionError("all cuts of a family share the base field")
        if self.names is None:
            self.names = [f"C{i + 1}" for i in range(len(self.cuts))]

    def realization(self, i: int):
        if self.realizations is not None and self.realizations[i] is not None:
            return self.realizations[i]
        return realize(self.cuts[i])


@dataclass(frozen=True)
class ThetaSet:
    tags: frozenset

    def __post_init__(self):
        for t in self.tags:
            if t.swap() not in self.tags:
                raise ValueError(f"Θ must be closed under swap; missing {t.swap()}")

    @classmethod
    def closure(cls, tags) -> "ThetaSet":
        tags = set(tags)
        return cls(frozenset(tags | {t.swap() for t in tags}))

    def __contains__(self, tag: CofinalityTag) -> bool:
        return tag in self.tags


Filter = Union[str, ThetaSet]


def passes(tag: CofinalityTag, flt: Filter) -> bool:
    if flt == "all":
        return True
    if flt == "symmetric":
        return tag.symmetric
    if isinstance(flt, ThetaSet):
        return tag in flt
    raise ValueError(f"unknown filter {flt!r}")


def _below_all(K: TowerField, avoid=()) -> str:
    ranks = K.ranks()
    return fresh_between(ranks[-1] if ranks else 0, None, avoid)


def realize(cut: CutSpec, fuel: int = DEFAULT_FUEL):
    """A canonical realization of ``cut`` in an extension of its base field."""
    K = cut.base
    if isinstance(cut, ElementInduced):
        return cut.a
    if isinstance(cut, SeqGenerated):
        if cut.witness is None:
            raise Undecided(fuel, "sequence cut without witness")
        return cut.witness
    w = Frag.gen(_below_all(K))
    if isinstance(cut, PlusInfinity):
        return w.inverse()
    if isinstance(cut, MinusInfinity):
        return -w.inverse()
    if isinstance(cut, AbovePoint):
        return cut.a + w
    if isinstance(cut, BelowPoint):
        return cut.a - w
    raise TypeError(type(cut).__name__)


def max_independent(family: CutFamily, indices: Optional[Sequence[int]] = None) -> list[int]:
    """Greedy maximal independent subfamily (indices into the family)."""
    K = family.base
    chosen: list[int] = []
    for i in (range(len(family.cuts)) if indices is None else indices):
        cand = [family.realization(j) for j in chosen] + [family.realization(i)]
        if not are_dependent(K, cand).dependent:
            chosen.append(i)
    return chosen


def canonical_extension(cut: CutSpec, L: TowerField, bounds: SearchBounds = SearchBounds(),
                        fuel: int = DEFAULT_FUEL) -> CutSpec:
    """The cut of ``L`` whose left side is generated by the left side of ``cut``."""
    K = cut.base
    if not K.is_subfield_of(L):
        raise PreconditionError(f"{K} is not a subfield of {L}")
    if K.gens == L.gens and K.step_keys == L.step_keys:
        return cut
    found, _ = search_realizations(K, L, [cut], bounds, fuel)
    if found[0] is not None:
        raise RealizedInL(found[0])
    if isinstance(cut, PlusInfinity):
        return PlusInfinity(L)
    if isinstance(cut, MinusInfinity):
        return MinusInfinity(L)
    if isinstance(cut, (AbovePoint, BelowPoint)):
        return type(cut)(L, cut.a)
    if isinstance(cut, SeqGenerated):
        return SeqGenerated(L, cut.lower, cut.upper, cut.witness, cut.start, cut.label)
    return ElementInduced(L, cut.a)


# ----------------------------------------------------------------------------
# hulls
# ----------------------------------------------------------------------------

@dataclass
class RealizationRecord:
    name: str
    tag: CofinalityTag
    passed: bool
    chosen: bool
    realized: bool
    witness: Optional[str]
    dedekind: bool


@dataclass
class HullResult:
    base: TowerField
    field: TowerField
    chosen: list
    realizations: list
    records: list
    certificate: Optional[SearchCertificate] = None
    exhausted: bool = False

    def realized_names(self) -> list[str]:
        return [r.name for r in self.records if r.realized]

    def unexpected(self) -> list[str]:
        """Cuts realized in the hull although they did not pass the filter."""
        return [r.name for r in self.records if r.realized and not r.passed]

    def as_dict(self) -> dict:
        return {
            "base": str(self.base),
            "field": str(self.field),
            "chosen": list(self.chosen),
            "realizations": [str(a) for a in self.realizations],
            "records": [
                {"name": r.name, "tag": r.tag.as_list(), "passed": r.passed, "chosen": r.chosen,
                 "realized": r.realized, "witness": r.witness, "dedekind": r.dedekind}
                for r in self.records
            ],
            "search_certificate": self.certificate.as_dict() if self.certificate else None,
            "exhausted": self.exhausted,
        }


def _extension_field(K: TowerField, reals: list) -> TowerField:
    new = set()
    for a in reals:
        new |= set(a.generators()) - K.gens
    if len(new) != len(reals):
        raise UnsupportedStreamOp(
            "realizations must each introduce exactly one new generator to describe the hull"
        )
    return K.extend(gens=new)


def one_step_hull(K: TowerField, family: CutFamily, flt: Filter = "symmetric",
                  bounds: SearchBounds = SearchBounds(), fuel: int = DEFAULT_FUEL,
                  extra: Optional[CutFamily] = None) -> HullResult:
    """Extend ``K`` by realizations of a maximal independent subfamily of passing cuts.

    Every cut of ``family`` (and of ``extra``, cuts that only take part in the
    report) is then checked for a realization in the extension: exactly when
    its own realization lies there, or else by bounded-height search.
    """
    tags = [cofinality(c, fuel) for c in family.cuts]
    passing = [i for i, t in enumerate(tags) if passes(t, flt)]
    usable = [i for i in passing if not isinstance(family.realization(i), StreamElem)]
    chosen = max_independent(family, usable)
    reals = [family.realization(i) for i in chosen]
    L = _extension_field(K, reals) if reals else K
    cuts = list(family.cuts) + (list(extra.cuts) if extra else [])
    names = list(family.names) + (list(extra.names) if extra else [])
    all_tags = tags + ([cofinality(c, fuel) for c in extra.cuts] if extra else [])
    found, cert = search_realizations(K, L, cuts, bounds, fuel)
    records = []
    for i, c in enumerate(cuts):
        is_chosen = i in chosen
        w = reals[chosen.index(i)] if is_chosen else found[i]
        records.append(RealizationRecord(
            names[i], all_tags[i], i < len(family.cuts) and i in passing, is_chosen, w is not None,
            str(w) if w is not None else None, is_dedekind(c, fuel),
        ))
    return HullResult(K, L, [names[i] for i in chosen], reals, records, cert)


@dataclass
class HullChain:
    """``K = K_0 <= K_1 <= ...`` with the one-step hull that produced each level."""

    levels: list
    exhausted: bool = False

    @property
    def fields(self) -> list:
        if not self.levels:
            return []
        return [self.levels[0].base] + [h.field for h in self.levels if h.field != h.base]

    def strictly_grows(self) -> bool:
        fs = self.fields
        return all(a.is_subfield_of(b) and a.gens < b.gens for a, b in zip(fs, fs[1:]))

    def as_dict(self) -> dict:
        return {"fields": [str(f) for f in self.fields], "levels": [h.as_dict() for h in self.levels],
                "exhausted": self.exhausted}


def iterate_hull(K: TowerField, catalog: Callable[[TowerField], tuple], flt: Filter = "symmetric",
                 steps: int = 2, bounds: SearchBounds = SearchBounds(), fuel: int = DEFAULT_FUEL,
                 max_steps: int = 4, strict: bool = False) -> HullChain:
    """A chain of one-step hulls; ``catalog(K)`` returns ``(family, extra)`` for each level.

    The chain stops early when a level's catalog has no passing cut; with
    ``strict`` that raises :class:`CatalogExhausted` instead.
    """
    if steps > max_steps:
        raise PreconditionError(f"at most {max_steps} hull steps are supported")
    levels: list[HullResult] = []
    cur = K
    for _ in range(steps):
        family, extra = catalog(cur)
        if not any(passes(cofinality(c, fuel), flt) for c in family.cuts):
            if strict:
                raise CatalogExhausted(f"no cut of {cur} passes the filter")
            chain = HullChain(levels, exhausted=True)
            if not levels:
                chain.levels = [HullResult(cur, cur, [], [], [], None, exhausted=True)]
            return chain
        res = one_step_hull(cur, family, flt, bounds, fuel, extra)
        levels.append(res)
        cur = res.field
    if not levels:
        return HullChain([HullResult(K, K, [], [], [], None)])
    return HullChain(levels)


__all__ = [
    "CatalogExhausted", "CutFamily", "HullChain", "Dependence", "HullResult", "RealizationRecord", "ThetaSet", "TAG_DEDEKIND",
    "are_dependent", "canonical_extension", "find_relation", "frag_rank", "iterate_hull", "jacobian_rank",
    "max_independent", "one_step_hull", "passes", "realize", "normal_form",
]
