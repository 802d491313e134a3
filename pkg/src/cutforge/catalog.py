"""Shipped cut catalogs.

``taxonomy_catalog`` is the fixed list of named cuts whose classification
is pinned by ``tests/golden/catalog.json``; ``hull_catalog`` regenerates a
catalog for any tower field, which is what the hull iteration consumes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cuts import (
    AbovePoint, BelowPoint, CutSpec, ElementInduced, MinusInfinity, PlusInfinity, SeqGenerated, derive_add,
    derive_mlt,
)
from .independence import CutFamily
from .ordtower import Frag, N, StreamElem, StreamTail, TowerField, fresh_between, gen, name_for_rank, rank_of
from .realalg import RealAlg

Q = TowerField.of()
K1 = TowerField.of("t1")
K12 = TowerField.of("t1", "t2")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    cut: CutSpec
    note: str = ""


def sigma_stream() -> StreamElem:
    """``sum_{n >= 2} t1^(1 - 1/n)``."""
    return StreamElem(StreamTail.make(1, {"t1": 1 - 1 / N}, start=2))


def lacunary_stream() -> StreamElem:
    """``sum_{n >= 1} t1^(2^n)``, whose gaps close up on every K-scale."""
    return StreamElem(StreamTail.make(1, {"t1": 2 ** N}, start=1))


def _sigma_partial(n: int) -> Frag:
    t1 = gen("t1")
    acc = Frag.const(0)
    for k in range(2, n + 1):
        acc = acc + t1 ** Fraction(k - 1, k)
    return acc


def sigma_upper(n: int) -> Frag:
    return _sigma_partial(n) + 2 * gen("t1") ** Fraction(n, n + 1)


def sigma_cut(K: TowerField = K1) -> SeqGenerated:
    """The cut of the partial sums of :func:`sigma_stream`."""
    return SeqGenerated(K, lower=_sigma_partial, upper=sigma_upper, witness=sigma_stream(), start=2,
                        label="sum(n=2, t1^(1-1/n))")


def taxonomy_catalog() -> list[CatalogEntry]:
    t1, t2 = gen("t1"), gen("t2")
    s = gen(name_for_rank(Fraction(1, 2)))
    sig = sigma_cut()
    sig_add = derive_add(sig)
    return [
        CatalogEntry("q-plus-inf", PlusInfinity(Q)),
        CatalogEntry("q-minus-inf", MinusInfinity(Q)),
        CatalogEntry("q-above-sqrt2", AbovePoint(Q, Frag.const(RealAlg.sqrt(2)))),
        CatalogEntry("q-below-0", BelowPoint(Q, Frag.const(0))),
        CatalogEntry("t1-plus-inf", PlusInfinity(K1)),
        CatalogEntry("t1-above-0", AbovePoint(K1, Frag.const(0))),
        CatalogEntry("t1-below-1", BelowPoint(K1, Frag.const(1))),
        CatalogEntry("t1-arch", ElementInduced(K1, 1 / s), "between the rationals and t1^(-q)"),
        CatalogEntry("t1-infinitesimal-gap", ElementInduced(K1, s), "between t1^q and the positive rationals"),
        CatalogEntry("t1-one-minus", ElementInduced(K1, t1 / s), "the t1^(1-) cut"),
        CatalogEntry("t1-sigma", sig),
        CatalogEntry("t1-sigma-add", sig_add),
        CatalogEntry("t1-sigma-add-mlt", derive_mlt(sig_add)),
        CatalogEntry("t1-lacunary", ElementInduced(K1, lacunary_stream())),
        CatalogEntry("t1-above-inv-t1", ElementInduced(K1, 1 / t1 + t2 / t1 ** 2)),
        CatalogEntry("t1-one-plus-gap", ElementInduced(K1, 1 + s), "just above 1 at the archimedean scale"),
        CatalogEntry("t12-inv-t2", ElementInduced(K12, -1 / gen("t3")), "below every element"),
        CatalogEntry("t12-gap", ElementInduced(K12, 1 / gen(name_for_rank(Fraction(3, 2)))),
                     "between t1^(-q) and t2^(-q)"),
        CatalogEntry("t12-t1-above-t2", ElementInduced(K12, t1 + gen("t3")), "just above t1"),
    ]


def hull_catalog(K: TowerField) -> tuple[CutFamily, None]:
    """Symmetric gap cuts of ``K`` next to endpoint and infinity cuts.

    For every gap ``(r_i, r_{i+1})`` between consecutive generator ranks
    (with ``r_0 = 0``) a fresh generator ``w`` of intermediate rank gives the
    symmetric cuts of ``1/w``, ``w`` and ``g/w`` (``g`` the generator closing
    the gap).  The remaining cuts are not symmetric.
    """
    ranks = [Fraction(0)] + K.ranks()
    cuts: list[CutSpec] = []
    names: list[str] = []
    by_rank = {rank_of(g): g for g in K.gens}
    for lo, hi in zip(ranks, ranks[1:]):
        w = gen(fresh_between(lo, hi, K.gens))
        g = gen(by_rank[hi])
        for label, a in (("inv", 1 / w), ("gap", w), ("ratio", g / w)):
            cuts.append(ElementInduced(K, a))
            names.append(f"{label}[{lo},{hi}]")
    one = Frag.const(1)
    for label, c in (
        ("plus-inf", PlusInfinity(K)),
        ("minus-inf", MinusInfinity(K)),
        ("above-0", AbovePoint(K, Frag.const(0))),
        ("below-0", BelowPoint(K, Frag.const(0))),
        ("above-1", AbovePoint(K, one)),
        ("below-1", BelowPoint(K, one)),
    ):
        cuts.append(c)
        names.append(label)
    return CutFamily(K, cuts, names=names), None


__all__ = [
    "CatalogEntry", "K1", "K12", "Q", "hull_catalog", "lacunary_stream", "sigma_cut", "sigma_stream",
    "taxonomy_catalog",
]
