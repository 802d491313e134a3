"""Bounded-height witness search for cut realizations.

Candidates in an extension ``L`` of ``K`` have the shape ``k0 + c * m``
where ``k0`` is drawn from a finite set of centers in ``K``, ``m`` is a
monomial in the generators of ``L`` that involves at least one generator
outside ``K``, and ``c = +-1``.  The exponents of ``m`` are rationals with
denominator at most ``ramification``, numerator at most ``max_height`` in
absolute value and total absolute degree at most ``max_degree``; at most two
generators appear in ``m``.

For such a candidate the induced cut on ``K`` depends on ``c`` only through
its sign, so the two signs stand for every coefficient.  The search is a
falsifiable check, never a proof: a negative answer only means that no
candidate within the recorded bounds realizes the target.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .cuts import CutSpec, ElementInduced, SeqGenerated, NormalForm, nf_equal, normal_form, val_nf
from .ordtower import DEFAULT_FUEL, UnsupportedStreamOp, ExpVec, Frag, TowerField, Undecided, by_significance


@dataclass(frozen=True)
class SearchBounds:
    max_degree: int = 6
    max_height: int = 12
    ramification: int = 4

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class SearchCertificate:
    field: str
    bounds: dict
    centers: int
    candidates_examined: int
    found: int

    def as_dict(self) -> dict:
        return asdict(self)


def exponent_values(bounds: SearchBounds) -> list[Fraction]:
    vals = set()
    for q in range(1, bounds.ramification + 1):
        for p in range(-bounds.max_height, bounds.max_height + 1):
            v = Fraction(p, q)
            if v != 0 and abs(v) <= bounds.max_degree:
                vals.add(v)
    return sorted(vals)


def monomials(new_gens: Iterable[str], all_gens: Iterable[str], bounds: SearchBounds) -> list[ExpVec]:
    new_gens = by_significance(new_gens)
    all_gens = by_significance(all_gens)
    exps = exponent_values(bounds)
    out = []
    for h in new_gens:
        for e in exps:
            out.append(ExpVec({h: e}))
    for g, h in combinations(all_gens, 2):
        if g not in new_gens and h not in new_gens:
            continue
        for e1 in exps:
            for e2 in exps:
                if abs(e1) + abs(e2) <= bounds.max_degree:
                    out.append(ExpVec({g: e1, h: e2}))
    return out


def default_centers(K: TowerField, targets: Iterable[NormalForm]) -> list:
    centers = [Frag.const(0), Frag.const(1), Frag.const(-1)]
    for nf in targets:
        c = nf.center
        if c is not None and not any(_same(c, d) for d in centers):
            centers.append(c)
    return centers


def _same(a, b) -> bool:
    if type(a) is not type(b):
        return False
    try:
        return a == b
    except (TypeError, UnsupportedStreamOp):
        return False


def search_realizations(K: TowerField, L: TowerField, targets: list[CutSpec],
                        bounds: SearchBounds = SearchBounds(), fuel: int = DEFAULT_FUEL,
                        centers=None):
    """For each target cut of ``K``, an element of ``L`` realizing it, or None."""
    nfs = []
    for t in targets:
        try:
            nfs.append(normal_form(t, fuel))
        except Undecided:
            nfs.append(None)
    found: list = [None] * len(targets)
    for i, t in enumerate(targets):
        w = _own_witness(t)
        if w is not None and L.contains(w):
            found[i] = w
    if centers is None:
        centers = default_centers(K, [n for n in nfs if n is not None])
    new = L.gens - K.gens
    monos = [m for m in monomials(new, L.gens, bounds) if not m.support() <= K.gens]
    examined = 0
    for k0 in centers:
        for m in monos:
            for sgn in (1, -1):
                if all(f is not None for f in found):
                    break
                examined += 1
                cand = val_nf(K, k0, m, sgn)
                for i, nf in enumerate(nfs):
                    if found[i] is None and nf is not None and _nf_match(cand, nf, fuel):
                        found[i] = k0 + Frag.monomial(m, sgn)
    cert = SearchCertificate(str(L), bounds.as_dict(), len(centers), examined, sum(f is not None for f in found))
    return found, cert


def _nf_match(a: NormalForm, b: NormalForm, fuel: int) -> bool:
    if a.kind != b.kind:
        return False
    try:
        return nf_equal(a, b, fuel)
    except (Undecided, UnsupportedStreamOp):
        return False


def _own_witness(cut: CutSpec):
    if isinstance(cut, ElementInduced):
        return cut.a
    if isinstance(cut, SeqGenerated):
        return cut.witness
    return None
