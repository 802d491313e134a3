from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest
import sympy

from cutforge.catalog import K1, hull_catalog
from cutforge.cuts import AbovePoint, ElementInduced, PlusInfinity, cofinality, is_dedekind
from cutforge.independence import (
    CatalogExhausted, CutFamily, ThetaSet, are_dependent, find_relation, iterate_hull, jacobian_rank,
    max_independent, one_step_hull,
)
from cutforge.ordtower import Frag, TowerField, UnsupportedStreamOp, gen, gens, name_for_rank
from cutforge.catalog import sigma_stream

from helpers import eliminates_to_relation

t1, t2, t3 = gens("t1", "t2", "t3")
s1, s2, s3 = sympy.symbols("t1 t2 t3")
Q = TowerField.of()

# (fragment, sympy twin) pairs; every family of two or three is checked
FIXTURES = [
    (t1, s1), (t2, s2), (t1 ** 2, s1 ** 2), (t1 + t2, s1 + s2), (t1 * t2, s1 * s2),
    (t1 ** 2 + t2 ** 2, s1 ** 2 + s2 ** 2), (t1 / t2, s1 / s2), (t3, s3), (t1 + t3, s1 + s3),
    (t2 * t3, s2 * s3), (1 / (1 + t1), 1 / (1 + s1)),
]


def _jacobian_dependent(family) -> bool:
    return are_dependent(Q, [f for f, _ in family]).dependent


def _oracle_dependent(family) -> bool:
    exprs = [e for _, e in family]
    used = sorted(set().union(*(e.free_symbols for e in exprs)), key=str)
    return eliminates_to_relation(exprs, (), used)


class TestExamples:
    def test_distinct_generators(self):
        assert not are_dependent(Q, [t1, t2]).dependent

    def test_power(self):
        d = are_dependent(Q, [t1, t1 ** 2])
        assert d.dependent and d.rank == 1 and d.certificate is not None

    def test_symmetric_functions(self):
        d = are_dependent(Q, [t1 + t2, t1 * t2, t1 ** 2 + t2 ** 2])
        assert d.dependent and d.rank == 2
        assert d.certificate is not None

    def test_over_larger_base(self):
        assert are_dependent(K1, [t2, t2 + t1]).dependent
        assert not are_dependent(K1, [t2, t3]).dependent

    def test_streams_unsupported(self):
        with pytest.raises(UnsupportedStreamOp):
            are_dependent(Q, [sigma_stream()])

    def test_relation_degree_bound(self):
        assert find_relation(Q, [t1, t1 ** 5], max_degree=4) is None
        assert find_relation(Q, [t1, t1 ** 3], max_degree=4) is not None


class TestMaxIndependent:
    def _family(self, reals):
        cuts = [ElementInduced(Q, a) if a.generators() else PlusInfinity(Q) for a in reals]
        return CutFamily(Q, cuts, realizations=reals)

    def test_rank_two(self):
        assert max_independent(self._family([t1, t1 ** 2, t2])) == [0, 2]

    def test_empty(self):
        assert max_independent(self._family([])) == []

    def test_symmetric_functions_any_pair(self):
        fam = self._family([t1 + t2, t1 * t2, t1 ** 2 + t2 ** 2])
        assert len(max_independent(fam)) == 2
        assert len(max_independent(fam, [2, 1, 0])) == 2


@pytest.mark.parametrize("size", [2, 3])
def test_jacobian_agrees_with_elimination(size):
    for family in combinations(FIXTURES, size):
        assert _jacobian_dependent(family) == _oracle_dependent(family), [str(f) for f, _ in family]


def _depends(C, fam) -> bool:
    return jacobian_rank(Q, list(fam) + [C]) == jacobian_rank(Q, list(fam))


def test_steinitz_exchange():
    elems = [f for f, _ in FIXTURES]
    checked = 0
    for k in range(0, 2):
        for base in combinations(range(len(elems)), k):
            fam = [elems[i] for i in base]
            for c in range(len(elems)):
                for d in range(len(elems)):
                    if c == d or c in base or d in base:
                        continue
                    C, D = elems[c], elems[d]
                    if _depends(C, fam + [D]) and not _depends(C, fam):
                        assert _depends(D, fam + [C])
                        checked += 1
    assert checked > 0


def test_dependence_is_monotone():
    elems = [f for f, _ in FIXTURES]
    for family in combinations(elems, 2):
        if are_dependent(Q, list(family)).dependent:
            for extra in elems:
                assert are_dependent(Q, list(family) + [extra]).dependent


# ----------------------------------------------------------------------------
# hulls
# ----------------------------------------------------------------------------

ARCH = ElementInduced(K1, 1 / gen(name_for_rank(Fraction(1, 2))))


def test_hull_realizes_only_symmetric():
    fam = CutFamily(K1, [ARCH, AbovePoint(K1, Frag.const(0))], names=["arch", "above-0"])
    res = one_step_hull(K1, fam, "symmetric")
    assert res.chosen == ["arch"]
    assert res.realized_names() == ["arch"]
    assert res.unexpected() == []


def test_empty_theta_is_identity():
    fam, _ = hull_catalog(K1)
    res = one_step_hull(K1, fam, ThetaSet(frozenset()))
    assert res.field == K1 and res.chosen == []


def test_filter_all_realizes_both():
    fam = CutFamily(K1, [ElementInduced(K1, t2), ElementInduced(K1, t3)], realizations=[t2, t3])
    res = one_step_hull(K1, fam, "all")
    assert res.field == TowerField.of("t1", "t2", "t3")
    assert all(r.realized for r in res.records)


def test_theta_must_be_swap_closed():
    with pytest.raises(ValueError):
        ThetaSet(frozenset({cofinality(AbovePoint(K1, Frag.const(0)))}))
    assert len(ThetaSet.closure({cofinality(AbovePoint(K1, Frag.const(0)))}).tags) == 2


def test_hull_realizes_only_dedekind_cuts():
    fam, _ = hull_catalog(K1)
    res = one_step_hull(K1, fam, "symmetric")
    for r in res.records:
        if r.realized:
            assert r.dedekind


def test_cofinality_filter_lemma():
    # whenever a Dedekind catalog cut depends on an independent subfamily, one member
    # of that subfamily carries its tag or the swapped tag
    fam, _ = hull_catalog(TowerField.of("t1", "t2"))
    n = len(fam.cuts)
    tags = [cofinality(c) for c in fam.cuts]
    for k in (1, 2):
        for sub in combinations(range(n), k):
            reals = [fam.realization(i) for i in sub]
            if are_dependent(fam.base, reals).dependent:
                continue
            for c in range(n):
                if c in sub or not is_dedekind(fam.cuts[c]):
                    continue
                if are_dependent(fam.base, reals + [fam.realization(c)]).dependent:
                    assert any(tags[i] in (tags[c], tags[c].swap()) for i in sub)


def test_independent_unchosen_cuts_stay_unrealized():
    fam, _ = hull_catalog(K1)
    res = one_step_hull(K1, fam, "symmetric")
    chosen = [fam.names.index(n) for n in res.chosen]
    reals = [fam.realization(i) for i in chosen]
    for i, rec in enumerate(res.records):
        if i in chosen:
            continue
        if not are_dependent(K1, reals + [fam.realization(i)]).dependent:
            assert not rec.realized, rec.name


class TestIterate:
    def test_zero_steps(self):
        assert iterate_hull(K1, hull_catalog, steps=0).fields == [K1]

    def test_rationals_have_no_symmetric_cuts(self):
        chain = iterate_hull(Q, hull_catalog, steps=2)
        assert chain.exhausted and chain.fields == [Q]
        with pytest.raises(CatalogExhausted):
            iterate_hull(Q, hull_catalog, steps=2, strict=True)

    def test_two_levels_grow(self):
        chain = iterate_hull(K1, hull_catalog, steps=2)
        assert len(chain.fields) == 3 and chain.strictly_grows()
