"""A bounded-height membership oracle for cut classification.

Every predicate here is computed from ``side`` queries on a finite set of
sample elements of the base field, never from the normal form.  Positive
answers for Scott and negative answers for additivity and multiplicativity
come with concrete witnesses; the remaining answers are the absence of a
witness among the samples, so the oracle can only corroborate the
classifier, never prove it.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product

from cutforge.cuts import LEFT, ElementInduced, SeqGenerated, side
from cutforge.ordtower import Frag, StreamElem, cmp, gen, truncate
from cutforge.ordtower.ops import iter_terms
from cutforge.realalg import RealAlg

CONSTS = [Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3)]
EXPS = [Fraction(k, 2) for k in range(-6, 7) if k]


def sample_field(K) -> list[Frag]:
    names = K.ordered_gens()
    out = [Frag.const(c) for c in CONSTS] + [Frag.const(RealAlg.sqrt(2))]
    monos = []
    for g in names:
        for q in EXPS:
            monos.append(gen(g) ** q)
    if len(names) == 2:
        for a, b in product([Fraction(k, 2) for k in range(-2, 3) if k], repeat=2):
            monos.append(gen(names[0]) ** a * gen(names[1]) ** b)
    for m in monos:
        for c in (1, 2):
            out.append(c * m)
    for m in monos[:: 3]:
        out.append(1 + m)
        out.append(1 - m)
    out += [-x for x in out if not x.is_zero()]
    return out


def tiny(K) -> Frag:
    names = K.ordered_gens()
    return gen(names[-1]) ** 4096 if names else Frag.const(Fraction(1, 2 ** 40))


def _stream_brackets(a: StreamElem, count: int = 8):
    """Truncations of ``a`` paired with the truncation plus the next term, twice over."""
    terms = []
    for e, c in iter_terms(a):
        terms.append((e, c))
        if len(terms) > count:
            break
    pairs = []
    for i in range(1, count):
        t = truncate(a, terms[i][0])
        nxt = Frag.monomial(terms[i][0], 2 * abs(terms[i][1]))
        pairs.append((t - nxt, t + nxt))
    return pairs


def brackets(cut) -> list[tuple[Frag, Frag]]:
    if isinstance(cut, SeqGenerated):
        return [(cut.lower(n), cut.upper(n)) for n in range(cut.start, cut.start + 8)]
    if isinstance(cut, ElementInduced) and isinstance(cut.a, StreamElem):
        return _stream_brackets(cut.a)
    return []


def _left(cut, k) -> bool:
    return side(cut, k) == LEFT


def oracle_classify(cut) -> dict:
    K = cut.base
    S = sample_field(K)
    for lo, hi in brackets(cut):
        S += [lo, hi]
    left = [k for k in S if _left(cut, k)]
    right = [k for k in S if not _left(cut, k)]
    eps = tiny(K)
    left_max = any(not _left(cut, k + eps) for k in left)
    right_min = any(_left(cut, k - eps) for k in right)
    if not right:
        tag = ["w", "0"]
    elif not left:
        tag = ["0", "w"]
    elif left_max:
        tag = ["1", "w"]
    elif right_min:
        tag = ["w", "1"]
    else:
        tag = ["w", "w"]
    dedekind = tag == ["w", "w"]
    pos_left = [k for k in left if k.sign() > 0]
    positive = bool(pos_left)
    additive = positive and all(_left(cut, a + b) for a, b in product(pos_left, repeat=2))
    multiplicative = (positive and _left(cut, Frag.const(2))
                      and all(_left(cut, a * b) for a, b in product(pos_left, repeat=2)))
    scott = False
    if dedekind:
        pairs = [(a, b) for a, b in brackets(cut) if _left(cut, a) and not _left(cut, b)]
        rs = [gen(g) ** m for g in K.ordered_gens() for m in range(1, 9)] or [Frag.const(Fraction(1, 2 ** m))
                                                                            for m in range(1, 30)]
        scott = bool(pairs) and all(any(cmp(b - a, r) < 0 for a, b in pairs) for r in rs)
    return {"dedekind": dedekind, "positive": positive, "scott": scott, "additive": additive,
            "multiplicative": multiplicative, "tag": tag}
