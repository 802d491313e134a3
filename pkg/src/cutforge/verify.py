"""Executable checks of the cut lemmas on concrete instances.

Every check returns a :class:`LemmaReport`.  Conclusions that quantify over
a whole field are checked on deterministic bounded-height samples with exact
arithmetic, so a ``pass`` is evidence and a ``fail`` is a counterexample.
Violated hypotheses give ``inapplicable``, never ``fail``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .cuts import (
    LEFT, RIGHT, AbovePoint, BelowPoint, CofinalityTag, CutSpec, ElementInduced, MinusInfinity, PlusInfinity,
    PreconditionError, cofinality, derive_add, derive_mlt, is_additive, is_dedekind, is_multiplicative, is_positive,
    is_scott, restrict, same_cut, side,
)
from .ordtower import (
    DEFAULT_FUEL, AlgElem, ExpVec, Frag, StreamElem, TowerField, Undecided, UnsupportedStreamOp, cmp,
    cmp_with_power, fresh_between, gen, name_for_rank, rank_of, root_isolate_over, sign, val,
)
from .ordtower.algebraic import up, up_deriv, up_eval, up_squarefree

PASS, FAIL, UNDECIDED, INAPPLICABLE = "pass", "fail", "undecided", "inapplicable"


class ArchimedeanBase(ValueError):
    """The base field has no generator, so only endpoint-type cuts exist."""


@dataclass
class LemmaReport:
    lemma: str
    instance: str
    verdict: str
    witness: dict = field(default_factory=dict)
    counterexample: Optional[str] = None
    weak: bool = False

    def __post_init__(self):
        if self.verdict == FAIL and self.counterexample is None:
            raise ValueError("a failing report needs a counterexample")

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def as_dict(self) -> dict:
        return {"lemma": self.lemma, "instance": self.instance, "verdict": self.verdict,
                "witness": self.witness, "counterexample": self.counterexample, "weak": self.weak}


# ----------------------------------------------------------------------------
# samples
# ----------------------------------------------------------------------------

_COEFFS = [Fraction(c) for c in (1, 2, 3, 5)] + [Fraction(1, 2), Fraction(1, 3), Fraction(3, 2)]
_EXPS = [Fraction(p, q) for q in (1, 2, 3) for p in range(-3 * q, 3 * q + 1) if Fraction(p, q).denominator == q]


def sample_elements(K: TowerField, count: int = 30, seed: int = 0) -> list[Frag]:
    """``count`` distinct elements of ``K`` of bounded height, deterministic in ``seed``.

    Mostly single terms ``c * m`` of both signs, with binomials mixed in so
    that elements sharing a leading term are compared too.
    """
    rng = random.Random(seed)
    names = K.ordered_gens()
    out: list[Frag] = []
    seen = set()
    tries = 0
    while len(out) < count and tries < 50 * count:
        tries += 1
        x = _random_term(rng, names)
        if names and rng.random() < 0.3:
            x = x + _random_term(rng, names)
        if x.is_zero() or str(x) in seen:
            continue
        seen.add(str(x))
        out.append(x)
    return out


def _random_term(rng: random.Random, names: list[str]) -> Frag:
    c = rng.choice(_COEFFS) * rng.choice((1, -1))
    if not names:
        return Frag.const(c * rng.choice((1, 1, 2, 7)) / rng.choice((1, 3, 4)))
    e = {g: rng.choice(_EXPS) for g in names if rng.random() < 0.7}
    return Frag.monomial(ExpVec(e), c)


def _left_of(k, z, fuel: int) -> str:
    s = cmp(k, z, fuel)
    if s == 0:
        raise PreconditionError(f"sample {k} equals {z}")
    return LEFT if s < 0 else RIGHT


def _agree(c1: CutSpec, c2: CutSpec, samples, fuel: int):
    """The first sample on which two cuts of the same field disagree, or None."""
    for k in samples:
        if side(c1, k, fuel) != side(c2, k, fuel):
            return k
    return None


def _difference(y, x):
    """``y - x``, also when both are translates of one stream."""
    if isinstance(x, StreamElem) and isinstance(y, StreamElem):
        if not x.same_tail(y):
            raise UnsupportedStreamOp("difference of streams with different tails")
        return y.head - x.head
    return y - x


# ----------------------------------------------------------------------------
# multiplicative bound
# ----------------------------------------------------------------------------

def check_multiplicative_bound(K: TowerField, C: CutSpec, x, y, n_max: int = 16,
                               fuel: int = DEFAULT_FUEL) -> LemmaReport:
    """Least ``n <= n_max`` with ``x^(1/n) < y < x^n``."""
    inst = f"C = {C}, x = {x}, y = {y}"
    if not is_multiplicative(C, fuel):
        return LemmaReport("multiplicative", inst, INAPPLICABLE, {"reason": "cut is not multiplicative"})
    for z in (x, y):
        if K.contains(z) or side(ElementInduced(K, z), Frag.const(0), fuel) != LEFT:
            return LemmaReport("multiplicative", inst, INAPPLICABLE, {"reason": f"{z} does not realize a positive cut"})
        if not same_cut(ElementInduced(K, z), C, fuel):
            return LemmaReport("multiplicative", inst, INAPPLICABLE, {"reason": f"{z} does not realize C"})
    trail = []
    for n in range(1, n_max + 1):
        lower = cmp_with_power(y, x, Fraction(1, n), fuel) > 0
        upper = cmp_with_power(y, x, n, fuel) < 0
        trail.append({"n": n, "lower": lower, "upper": upper})
        if lower and upper:
            return LemmaReport("multiplicative", inst, PASS, {"n": n, "minimal": n == 1 or not all(
                (trail[-2]["lower"], trail[-2]["upper"])), "trail": trail})
    vx, vy = val(x, fuel), val(y, fuel)
    if not _proportional(vx, vy):
        side_name = "upper" if not trail[-1]["upper"] else "lower"
        return LemmaReport("multiplicative", inst, FAIL, {"n_max": n_max, "violated": side_name, "trail": trail},
                           counterexample=f"x^{n_max if side_name == 'upper' else '1/' + str(n_max)}")
    return LemmaReport("multiplicative", inst, UNDECIDED, {"n_max": n_max, "trail": trail})


def _proportional(a: ExpVec, b: ExpVec) -> bool:
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    if a.support() != b.support():
        return False
    g = next(iter(a.support()))
    q = b[g] / a[g]
    return all(b[h] == q * a[h] for h in a.support())


# ----------------------------------------------------------------------------
# quotient and difference cuts
# ----------------------------------------------------------------------------

def _straddle(C: CutSpec, x, y, fuel: int) -> Optional[str]:
    if side(C, x, fuel) != LEFT:
        return "x is not on the left of C"
    if side(C, y, fuel) != RIGHT:
        return "y is not on the right of C"
    return None


def check_quotient_cut(K: TowerField, C: CutSpec, x, y, samples: Optional[Sequence] = None, seed: int = 0,
                       fuel: int = DEFAULT_FUEL) -> LemmaReport:
    """``y/x`` induces on ``K`` the multiplicative derivative of ``C`` restricted to ``K``."""
    inst = f"C = {C}, x = {x}, y = {y}"
    name = "additive"
    if samples is None:
        samples = sample_elements(K, 30, seed)
    if not is_additive(C, fuel):
        return LemmaReport(name, inst, INAPPLICABLE, {"reason": "C is not additive"})
    why = _straddle(C, x, y, fuel)
    if why:
        return LemmaReport(name, inst, INAPPLICABLE, {"reason": why})
    try:
        target = derive_mlt(restrict(C, K), fuel)
        bad = _agree(target, restrict(derive_mlt(C, fuel), K), samples, fuel)
    except PreconditionError as exc:
        return LemmaReport(name, inst, INAPPLICABLE, {"reason": f"hypothesis undefined: {exc}"})
    if bad is not None:
        return LemmaReport(name, inst, INAPPLICABLE, {"reason": "hypothesis fails", "sample": str(bad)})
    q = y / x
    return _compare_samples(name, inst, target, q, samples, fuel)


def check_difference_cut(K: TowerField, C: CutSpec, x, y, samples: Optional[Sequence] = None, seed: int = 0,
                         fuel: int = DEFAULT_FUEL) -> LemmaReport:
    """``y - x`` induces on ``K`` the additive derivative of ``C`` restricted to ``K``."""
    inst = f"C = {C}, x = {x}, y = {y}"
    name = "dedekind"
    if samples is None:
        samples = sample_elements(K, 30, seed)
    if not (is_positive(C, fuel) and is_dedekind(C, fuel)) or is_additive(C, fuel):
        return LemmaReport(name, inst, INAPPLICABLE, {"reason": "C is not a positive non-additive Dedekind cut"})
    why = _straddle(C, x, y, fuel)
    if why:
        return LemmaReport(name, inst, INAPPLICABLE, {"reason": why})
    try:
        target = derive_add(restrict(C, K), fuel)
        bad = _agree(target, restrict(derive_add(C, fuel), K), samples, fuel)
    except PreconditionError as exc:
        return LemmaReport(name, inst, INAPPLICABLE, {"reason": f"hypothesis undefined: {exc}"})
    if bad is not None:
        return LemmaReport(name, inst, INAPPLICABLE, {"reason": "hypothesis fails", "sample": str(bad)})
    if not is_additive(target, fuel):
        return LemmaReport(name, inst, INAPPLICABLE, {"reason": "the derived cut on K is not additive (Scott cut)"})
    return _compare_samples(name, inst, target, _difference(y, x), samples, fuel)


def _compare_samples(name: str, inst: str, target: CutSpec, z, samples, fuel: int) -> LemmaReport:
    transcript = []
    for k in samples:
        want = side(target, k, fuel)
        got = _left_of(k, z, fuel)
        transcript.append([str(k), want])
        if want != got:
            return LemmaReport(name, inst, FAIL, {"element": str(z), "transcript": transcript},
                               counterexample=str(k))
    return LemmaReport(name, inst, PASS, {"element": str(z), "samples": len(samples), "transcript": transcript},
                       weak=not samples)


# ----------------------------------------------------------------------------
# piecewise monotonicity
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Piece:
    lo: object
    hi: object
    mode: str
    sample: Frag


def _up_mul(a, b):
    out = [Frag.const(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return up(out)


def _up_sub(a, b):
    n = max(len(a), len(b))
    z = Frag.const(0)
    return up([(a[i] if i < len(a) else z) - (b[i] if i < len(b) else z) for i in range(n)])


def derivative_numerator(num, den):
    """Numerator of ``(num/den)'``: ``num' den - num den'``."""
    num, den = up(num), up(den)
    return _up_sub(_up_mul(up_deriv(num), den), _up_mul(num, up_deriv(den)))


def _degree(p) -> int:
    p = up(p)
    return len(p) - 1 if p else -1


def _bounds(r):
    if isinstance(r, AlgElem):
        return r.lo, r.hi
    return r, r


def _strictly_between(a, b, fuel: int) -> Frag:
    """A fragment strictly between ``a < b``."""
    for _ in range(fuel):
        (_, ahi), (blo, _) = _bounds(a), _bounds(b)
        if cmp(ahi, blo, fuel) < 0 or (ahi is not a and blo is not b and cmp(ahi, blo, fuel) <= 0):
            m = (Frag.coerce(ahi) + Frag.coerce(blo)) / 2
            m = _rationalize(m, a, b, fuel)
            if cmp(a, m, fuel) < 0 and cmp(m, b, fuel) < 0:
                return m
        for r in (a, b):
            if isinstance(r, AlgElem):
                r.refine()
    raise Undecided(fuel, "could not separate consecutive breakpoints")


def _rationalize(m: Frag, a, b, fuel: int) -> Frag:
    """Prefer a rational point when ``m`` is a real algebraic constant."""
    if not m.is_constant():
        return m
    c = m.lc() if not m.is_zero() else Fraction(0)
    if isinstance(c, Fraction):
        return m
    for _ in range(fuel):
        lo, hi = c.interval
        for q in (lo, hi, (lo + hi) / 2):
            f = Frag.const(q)
            if cmp(a, f, fuel) < 0 and cmp(f, b, fuel) < 0:
                return f
        c.refine()
    return m


def piecewise_monotone_decompose(K: TowerField, num, den, domain: tuple, fuel: int = DEFAULT_FUEL) -> list[Piece]:
    """Pieces of ``num/den`` on the open interval ``domain`` with their modes.

    ``num`` and ``den`` are coefficient lists (constant first) over ``K``.
    Breakpoints are the real roots of the derivative numerator and of the
    denominator; the mode of a piece is the sign of the derivative numerator
    at an interior point (the denominator enters squared).
    """
    num, den = up(num), up(den)
    lo, hi = Frag.coerce(domain[0]), Frag.coerce(domain[1])
    if cmp(lo, hi, fuel) >= 0:
        raise ValueError("empty domain")
    d = derivative_numerator(num, den)
    const = not d
    crit = up_squarefree(_up_mul(d, den)) if not const else up_squarefree(den)
    pts = []
    if _degree(crit) > 0:
        for r in root_isolate_over(K, crit, fuel):
            if cmp(lo, r, fuel) < 0 and cmp(r, hi, fuel) < 0:
                pts.append(r)
    ends = [lo] + pts + [hi]
    pieces = []
    for a, b in zip(ends, ends[1:]):
        m = _strictly_between(a, b, fuel)
        if const:
            mode = "constant"
        else:
            s = Frag.coerce(up_eval(d, m)).sign()
            mode = "increasing" if s > 0 else "decreasing"
        pieces.append(Piece(a, b, mode, m))
    return pieces


def pole_count(K: TowerField, den, domain: tuple, fuel: int = DEFAULT_FUEL) -> int:
    den = up_squarefree(up(den))
    if _degree(den) <= 0:
        return 0
    lo, hi = Frag.coerce(domain[0]), Frag.coerce(domain[1])
    return sum(1 for r in root_isolate_over(K, den, fuel) if cmp(lo, r, fuel) < 0 and cmp(r, hi, fuel) < 0)


# ----------------------------------------------------------------------------
# Scott gaps and asymmetric cuts
# ----------------------------------------------------------------------------

def check_scott_gap(K: TowerField, C: CutSpec, x, y, samples: Optional[Sequence] = None, seed: int = 0,
                    fuel: int = DEFAULT_FUEL) -> LemmaReport:
    """Two realizations of a Scott cut differ by less than every positive element of ``K``."""
    inst = f"C = {C}, x = {x}, y = {y}"
    if not is_dedekind(C, fuel) or not is_scott(C, fuel):
        return LemmaReport("scott", inst, INAPPLICABLE, {"reason": "C is not a Scott cut"})
    if samples is None:
        samples = [s if sign(s) > 0 else -s for s in sample_elements(K, 30, seed)]
    d = _difference(y, x)
    if isinstance(d, Frag) and d.is_zero():
        return LemmaReport("scott", inst, PASS, {"difference": "0"})
    v = val(d, fuel)
    top = v.leading()
    below_all = top is not None and top[0] not in K.gens and top[1] > 0 and all(
        rank_of(top[0]) > rank_of(g) for g in K.gens)
    if not below_all:
        r = Frag.monomial(v.restrict(K.gens), 1) if v.support() <= K.gens else None
        if r is not None:
            return LemmaReport("scott", inst, FAIL, {"difference": str(d), "valuation": str(v)}, counterexample=str(r))
    absd = d if sign(d, fuel) > 0 else -d
    for r in samples:
        if cmp(absd, r, fuel) >= 0:
            return LemmaReport("scott", inst, FAIL, {"difference": str(d)}, counterexample=str(r))
    if not below_all:
        return LemmaReport("scott", inst, UNDECIDED, {"difference": str(d), "valuation": str(v)})
    return LemmaReport("scott", inst, PASS, {"difference": str(d), "valuation": str(v), "samples": len(samples)})


def build_asymmetric_examples(K: TowerField, fuel: int = DEFAULT_FUEL) -> list[tuple[CutSpec, CofinalityTag]]:
    """Cuts of ``K`` of each tag shape (1,w), (w,1), (w,0), (0,w), (w,w)."""
    if not K.gens:
        raise ArchimedeanBase("only endpoint-type cuts over an archimedean base")
    ranks = K.ranks()
    w = gen(fresh_between(0, ranks[0], K.gens))
    zero = Frag.const(0)
    cuts = [AbovePoint(K, zero), BelowPoint(K, zero), PlusInfinity(K), MinusInfinity(K), ElementInduced(K, 1 / w)]
    return [(c, cofinality(c, fuel)) for c in cuts]


# ----------------------------------------------------------------------------
# shipped instances
# ----------------------------------------------------------------------------

def _g(rank) -> Frag:
    return gen(name_for_rank(Fraction(rank)))


def shipped_instances() -> dict:
    """Named lemma instances with the verdict each is expected to produce."""
    from .catalog import K1, lacunary_stream, sigma_stream

    Q = TowerField.of()
    t1, t2 = gen("t1"), gen("t2")
    u, w = _g(Fraction(1, 2)), _g(Fraction(1, 4))
    v = _g(Fraction(3, 2))
    s12 = name_for_rank(Fraction(1, 2))
    a, lac = sigma_stream(), lacunary_stream()
    L_u = TowerField.of("t1", s12)
    L_a = TowerField.of("t1", s12, steps=[a])
    L_a2 = TowerField.of("t1", "t2", steps=[a])
    L_lac = TowerField.of("t1", "t2", steps=[lac])
    plus = PlusInfinity(Q)
    C_scott = ElementInduced(K1, lac)

    def monotone(K, num, den, dom):
        def run():
            pieces = piecewise_monotone_decompose(K, num, den, dom)
            modes = [[str(p.lo), str(p.hi), p.mode] for p in pieces]
            return LemmaReport("monotone", f"({num})/({den}) on {dom}", PASS, {"pieces": modes})
        return run

    return {
        "mult-square": (lambda: check_multiplicative_bound(Q, plus, 1 / t1, 1 / t1 ** 2), PASS),
        "mult-scaled": (lambda: check_multiplicative_bound(Q, plus, 1 / t1, 5 / t1), PASS),
        "mult-three-halves": (lambda: check_multiplicative_bound(Q, plus, 1 / t1, (1 / t1) ** Fraction(3, 2)), PASS),
        "mult-outside-hull": (lambda: check_multiplicative_bound(Q, plus, 1 / t1, 1 / t2), FAIL),
        "add-quot-1": (lambda: check_quotient_cut(K1, ElementInduced(L_u, t1 / (u * w)), t1 / u, t1 / u ** 2), PASS),
        "add-quot-degenerate": (lambda: check_quotient_cut(K1, ElementInduced(L_u, t1 / (u * w)), t1 / u, t1 / u),
                                INAPPLICABLE),
        "add-quot-hypothesis": (lambda: check_quotient_cut(K1, ElementInduced(TowerField.of("t1", "t2"), t2 / v),
                                                           t2 ** 2, t2 ** Fraction(1, 2)), INAPPLICABLE),
        "ded-diff-1": (lambda: check_difference_cut(K1, ElementInduced(L_a, a + t1 / (u * w)), a - t1,
                                                    a + t1 / u ** 2), PASS),
        "ded-diff-hypothesis": (lambda: check_difference_cut(K1, ElementInduced(L_a2, a + t2 / v), a - t2,
                                                             a + t2 ** Fraction(1, 2)), INAPPLICABLE),
        "ded-diff-scott": (lambda: check_difference_cut(K1, ElementInduced(L_lac, lac + t2 / v), lac - t2,
                                                        lac + t2 ** Fraction(1, 2)), INAPPLICABLE),
        "scott-gap-below": (lambda: check_scott_gap(K1, C_scott, lac, lac + t2), PASS),
        "scott-gap-visible": (lambda: check_scott_gap(K1, C_scott, lac, lac + t1), FAIL),
        "scott-gap-equal": (lambda: check_scott_gap(K1, C_scott, lac, lac), PASS),
        "monotone-square": (monotone(Q, [0, 0, 1], [1], (-1, 1)), PASS),
        "monotone-cubic": (monotone(Q, [0, -3, 0, 1], [1], (-2, 2)), PASS),
        "monotone-pole": (monotone(K1, [1, 2], [-t1, 1], (2 * t1, 1)), PASS),
    }


__all__ = [
    "ArchimedeanBase", "FAIL", "INAPPLICABLE", "LemmaReport", "PASS", "Piece", "UNDECIDED",
    "build_asymmetric_examples", "check_difference_cut", "check_multiplicative_bound", "check_quotient_cut",
    "check_scott_gap", "derivative_numerator", "shipped_instances", "piecewise_monotone_decompose", "pole_count", "sample_elements",
]
