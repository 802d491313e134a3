from __future__ import annotations

import json
from pathlib import Path

import pytest

from cutforge.catalog import K1, K12, Q, taxonomy_catalog
from cutforge.cuts import (
    TAG_ABOVE, TAG_BELOW, TAG_MINUS, TAG_PLUS, RealizedInL, classify, cofinality, derive_add, derive_mlt,
    is_additive, is_dedekind, is_multiplicative, is_positive, is_scott, is_symmetric, restrict, same_cut,
)
from cutforge.independence import canonical_extension

from oracle import oracle_classify

GOLDEN = {r["name"]: r for r in json.loads((Path(__file__).parent / "golden" / "catalog.json").read_text())["entries"]}
KEYS = ("dedekind", "positive", "scott", "additive", "multiplicative", "tag")
CATALOG = taxonomy_catalog()
EXTENSION = {Q.gens: K1, K1.gens: K12, K12.gens: K12.extend(["t3"])}


def test_catalog_covers_three_fields():
    assert len(CATALOG) >= 12
    assert {e.cut.base.gens for e in CATALOG} == {Q.gens, K1.gens, K12.gens}
    assert set(GOLDEN) == {e.name for e in CATALOG}


@pytest.mark.parametrize("entry", CATALOG, ids=lambda e: e.name)
def test_classification_matches_golden(entry):
    got = classify(entry.cut)
    assert {k: got[k] for k in KEYS} == {k: GOLDEN[entry.name][k] for k in KEYS}


@pytest.mark.parametrize("entry", CATALOG, ids=lambda e: e.name)
def test_golden_corroborated_by_membership_oracle(entry):
    assert oracle_classify(entry.cut) == {k: GOLDEN[entry.name][k] for k in KEYS}


def chain_holds(cut) -> list[str]:
    """The observation chain on one cut; returns the violated links."""
    bad = []
    if is_dedekind(cut) and is_scott(cut) and not is_symmetric(cut):
        bad.append("scott-not-symmetric")
    if is_positive(cut) and is_dedekind(cut) and not is_scott(cut) and not is_additive(derive_add(cut)):
        bad.append("add-not-additive")
    if is_additive(cut) and not is_multiplicative(cut) and not is_multiplicative(derive_mlt(cut)):
        bad.append("mlt-not-multiplicative")
    if not is_dedekind(cut) and cofinality(cut) not in (TAG_PLUS, TAG_MINUS, TAG_ABOVE, TAG_BELOW):
        bad.append("endpoint-tag")
    return bad


@pytest.mark.parametrize("entry", CATALOG, ids=lambda e: e.name)
def test_observation_chain(entry):
    assert chain_holds(entry.cut) == []


def extended_catalog():
    out = []
    for e in CATALOG:
        try:
            out.append((e.name, canonical_extension(e.cut, EXTENSION[e.cut.base.gens])))
        except RealizedInL:
            continue
    return out


def test_observation_chain_after_canonical_extension():
    ext = extended_catalog()
    # a new generator realizes every endpoint cut, so exactly the Dedekind cuts extend
    assert {name for name, _ in ext} == {name for name, row in GOLDEN.items() if row["dedekind"]}
    for name, cut in ext:
        assert chain_holds(cut) == [], name


def test_canonical_extension_restricts_back():
    for name, cut in extended_catalog():
        original = next(e.cut for e in CATALOG if e.name == name)
        assert same_cut(restrict(cut, original.base), original), name


def test_endpoint_cuts_are_realized_after_extension():
    above = next(e.cut for e in CATALOG if e.name == "t1-above-0")
    with pytest.raises(RealizedInL):
        canonical_extension(above, K12)
