from __future__ import annotations

import random
from fractions import Fraction

import pytest

from cutforge.catalog import K1
from cutforge.cuts import ElementInduced, PlusInfinity, is_dedekind
from cutforge.ordtower import TowerField, cmp_with_power, gens
from cutforge.verify import (
    FAIL, INAPPLICABLE, PASS, ArchimedeanBase, LemmaReport, build_asymmetric_examples, check_multiplicative_bound,
    derivative_numerator, piecewise_monotone_decompose, pole_count, sample_elements, shipped_instances,
)

from helpers import check_piece_modes, random_poly

t1, t2 = gens("t1", "t2")
Q = TowerField.of()
INSTANCES = shipped_instances()


@pytest.mark.parametrize("name", sorted(INSTANCES))
def test_shipped_instance_verdict(name):
    run, expected = INSTANCES[name]
    assert run().verdict == expected


@pytest.mark.parametrize("y, n", [(1 / t1 ** 2, 3), (5 / t1, 2), ((1 / t1) ** Fraction(3, 2), 2)])
def test_multiplicative_witness_is_minimal(y, n):
    x = 1 / t1
    rep = check_multiplicative_bound(Q, PlusInfinity(Q), x, y)
    assert rep.verdict == PASS and rep.witness["n"] == n
    # independent recheck through the power comparison
    assert cmp_with_power(y, x, Fraction(1, n)) > 0 and cmp_with_power(y, x, n) < 0
    m = n - 1
    assert not (cmp_with_power(y, x, Fraction(1, m)) > 0 and cmp_with_power(y, x, m) < 0)


def test_multiplicative_requires_multiplicative_cut():
    rep = check_multiplicative_bound(K1, ElementInduced(K1, t2), 1 / t1, 1 / t1 ** 2)
    assert rep.verdict == INAPPLICABLE


def test_fail_needs_counterexample():
    with pytest.raises(ValueError):
        LemmaReport("x", "y", FAIL)


def test_samples_deterministic_and_distinct():
    a, b = sample_elements(K1, 30, 4), sample_elements(K1, 30, 4)
    assert [str(x) for x in a] == [str(x) for x in b]
    assert len({str(x) for x in a}) == 30


def test_asymmetric_examples_cover_tags():
    tags = {str(t) for _, t in build_asymmetric_examples(K1)}
    assert tags == {"(1,ω)", "(ω,1)", "(ω,0)", "(0,ω)", "(ω,ω)"}
    with pytest.raises(ArchimedeanBase):
        build_asymmetric_examples(Q)


def test_asymmetric_examples_dedekind_only_when_symmetric():
    for cut, tag in build_asymmetric_examples(K1):
        assert is_dedekind(cut) == tag.symmetric


class TestMonotone:
    def test_square(self):
        pieces = piecewise_monotone_decompose(Q, [0, 0, 1], [1], (-1, 1))
        assert [p.mode for p in pieces] == ["decreasing", "increasing"]

    def test_constant(self):
        pieces = piecewise_monotone_decompose(Q, [2, 4], [1, 2], (-10, 10))
        assert [p.mode for p in pieces] == ["constant", "constant"]

    def test_pole_splits(self):
        assert pole_count(Q, [-1, 0, 1], (-2, 2)) == 2
        pieces = piecewise_monotone_decompose(Q, [1], [-1, 0, 1], (-2, 2))
        assert [p.mode for p in pieces] == ["increasing", "increasing", "decreasing", "decreasing"]

    def test_empty_domain(self):
        with pytest.raises(ValueError):
            piecewise_monotone_decompose(Q, [0, 1], [1], (1, 1))

    def test_random_functions_small(self):
        rng = random.Random(17)
        for _ in range(8):
            num, den = random_poly(rng, 4, 9), random_poly(rng, 2, 9)
            pieces = piecewise_monotone_decompose(Q, num, den, (-10, 10))
            assert check_piece_modes(num, den, pieces, 20, rng) == []
            d = derivative_numerator(num, den)
            assert len(pieces) - 1 <= max(len(d) - 1, 0) + pole_count(Q, den, (-10, 10))
