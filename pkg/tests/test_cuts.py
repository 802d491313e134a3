from __future__ import annotations

import random
from fractions import Fraction

import pytest

from cutforge.catalog import K1, K12, Q, lacunary_stream, sigma_cut, taxonomy_catalog
from cutforge.cuts import (
    LEFT, RIGHT, TAG_ABOVE, TAG_DEDEKIND, TAG_PLUS, AbovePoint, BelowPoint, ElementInduced, MinusInfinity,
    PlusInfinity, PreconditionError, SeqGenerated, classify, cofinality, derive_add, derive_mlt, is_additive,
    is_dedekind, is_multiplicative, is_positive, is_scott, is_symmetric, restrict, same_cut, side,
)
from cutforge.ordtower import Frag, Undecided, cmp, gen, gens, name_for_rank
from cutforge.realalg import RealAlg

from helpers import random_frag

t1, t2, t3 = gens("t1", "t2", "t3")
ARCH = ElementInduced(K1, 1 / gen(name_for_rank(Fraction(1, 2))))


class TestSide:
    def test_deep_infinitesimal(self):
        assert side(ElementInduced(K1, t2), t1 ** 100) == RIGHT

    def test_above_point_includes_point(self):
        assert side(AbovePoint(Q, Frag.const(3)), Frag.const(3)) == LEFT
        assert side(BelowPoint(Q, Frag.const(3)), Frag.const(3)) == RIGHT

    def test_sigma_cut(self):
        sig = sigma_cut()
        assert side(sig, 2 * t1 ** Fraction(1, 2)) == RIGHT
        assert side(sig, t1) == LEFT
        assert side(sig, t1 ** Fraction(1, 2)) == LEFT

    def test_sequence_terms_on_their_sides(self):
        sig = sigma_cut()
        for n in range(2, 8):
            assert side(sig, sig.lower(n)) == LEFT
            assert side(sig, sig.upper(n)) == RIGHT

    def test_element_in_field_rejected(self):
        with pytest.raises(PreconditionError):
            ElementInduced(K1, t1 + 1)
        with pytest.raises(PreconditionError):
            AbovePoint(K1, t2)

    def test_exhausted_fuel(self):
        sig = sigma_cut()
        with pytest.raises(Undecided):
            side(sig, sig.lower(7), fuel=3)


class TestPredicates:
    def test_dedekind(self):
        assert not is_dedekind(PlusInfinity(K1))
        assert not is_dedekind(AbovePoint(Q, Frag.const(RealAlg.sqrt(2))))
        assert is_dedekind(sigma_cut())

    def test_positive(self):
        assert not is_positive(ElementInduced(K1, t2))
        assert is_positive(sigma_cut())
        assert is_positive(PlusInfinity(K1))
        assert not is_positive(MinusInfinity(K1))

    def test_tags(self):
        assert cofinality(ElementInduced(K1, 1 / t2)) == TAG_PLUS
        assert cofinality(ElementInduced(K1, 1 / t1 + t2 / t1 ** 2)) == TAG_ABOVE
        assert cofinality(sigma_cut()) == TAG_DEDEKIND and is_symmetric(sigma_cut())

    def test_scott(self):
        assert is_scott(ElementInduced(K1, lacunary_stream()))
        assert not is_scott(sigma_cut())
        with pytest.raises(PreconditionError):
            is_scott(PlusInfinity(K1))

    def test_additive(self):
        assert is_additive(derive_add(sigma_cut()))
        assert not is_additive(sigma_cut())
        assert is_additive(PlusInfinity(K1))

    def test_multiplicative(self):
        assert is_multiplicative(ARCH)
        assert not is_multiplicative(derive_add(sigma_cut()))
        assert is_multiplicative(PlusInfinity(K1))


class TestDerived:
    def test_add_of_sigma_is_one_minus_cut(self):
        add = derive_add(sigma_cut())
        for m in range(2, 12):
            assert side(add, t1 ** (1 - Fraction(1, m))) == RIGHT
        for c in (1, 5, 1000):
            assert side(add, c * t1) == LEFT

    def test_add_of_plus_inf(self):
        assert isinstance(derive_add(PlusInfinity(K1)), PlusInfinity)

    def test_add_of_scott_is_nonpositive(self):
        add = derive_add(ElementInduced(K1, lacunary_stream()))
        assert side(add, Frag.const(0)) == LEFT
        assert side(add, t1 ** 50) == RIGHT

    def test_mlt_of_one_minus_is_archimedean(self):
        assert same_cut(derive_mlt(derive_add(sigma_cut())), ARCH)

    def test_mlt_of_archimedean_is_itself(self):
        assert same_cut(derive_mlt(ARCH), ARCH)
        assert isinstance(derive_mlt(PlusInfinity(K1)), PlusInfinity)

    def test_mlt_requires_positive(self):
        with pytest.raises(PreconditionError):
            derive_mlt(ElementInduced(K1, t2))


class TestRestrict:
    def test_element_witness_kept(self):
        r = restrict(ElementInduced(K12, t3), K1)
        assert isinstance(r, ElementInduced) and r.a == t3 and r.base == K1

    def test_archimedean_restricts(self):
        arch12 = ElementInduced(K12, 1 / gen(name_for_rank(Fraction(1, 2))))
        assert same_cut(restrict(arch12, K1), ARCH)

    def test_sequence_keeps_generators(self):
        sig = SeqGenerated(K12, sigma_cut().lower, sigma_cut().upper, sigma_cut().witness, 2)
        r = restrict(sig, K1)
        assert isinstance(r, SeqGenerated) and r.lower is sig.lower

    def test_not_a_subfield(self):
        with pytest.raises(PreconditionError):
            restrict(ARCH, K12)


# ----------------------------------------------------------------------------
# properties over the catalog
# ----------------------------------------------------------------------------

def _samples(K, count, seed):
    rng = random.Random(seed)
    names = K.ordered_gens()
    return [random_frag(rng, names) for _ in range(count)]


def test_side_is_a_monotone_partition():
    rng = random.Random(3)
    catalog = taxonomy_catalog()
    pairs = 0
    while pairs < 1000:
        entry = rng.choice(catalog)
        K = entry.cut.base
        a, b = _samples(K, 2, rng.randrange(10 ** 6))
        if cmp(a, b) == 0:
            continue
        if cmp(a, b) > 0:
            a, b = b, a
        sa, sb = side(entry.cut, a), side(entry.cut, b)
        assert sa in (LEFT, RIGHT) and sb in (LEFT, RIGHT)
        if sb == LEFT:
            assert sa == LEFT, (entry.name, a, b)
        pairs += 1


@pytest.mark.parametrize("entry", [e for e in taxonomy_catalog() if e.cut.base.gens], ids=lambda e: e.name)
def test_restrict_commutes_with_side(entry):
    L = K1 if entry.cut.base == K12 else Q
    r = restrict(entry.cut, L)
    for k in _samples(L, 30, 11) if L.gens else [Frag.const(Fraction(n, 3)) for n in range(-9, 10)]:
        assert side(r, k) == side(entry.cut, k)


def test_classify_is_cached_and_stable():
    sig = sigma_cut()
    assert classify(sig) == classify(sig)
