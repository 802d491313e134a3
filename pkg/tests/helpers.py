"""Independent oracles shared by the test modules.

Nothing here calls into the decision procedures under test except to read
off isolating intervals, which the oracles then re-evaluate on their own.
"""
from __future__ import annotations

import random
from fractions import Fraction

from mpmath import iv

from cutforge.realalg import RealAlg, isolate_roots

PREC = 500


def random_poly(rng: random.Random, max_deg: int, height: int) -> list[int]:
    while True:
        d = rng.randint(1, max_deg)
        p = [rng.randint(-height, height) for _ in range(d + 1)]
        if p[-1] != 0:
            return p


def random_realalg(rng: random.Random, max_deg: int = 8, height: int = 50) -> RealAlg:
    while True:
        roots = isolate_roots(random_poly(rng, max_deg, height))
        if roots:
            return rng.choice(roots)


def enclosure(a: RealAlg):
    """A 500-bit interval around ``a``: refine, then round the endpoints outward."""
    a.refine_to(Fraction(1, 2 ** (PREC - 20)))
    lo, hi = a.interval
    iv.prec = PREC
    lo_iv = iv.mpf(lo.numerator) / lo.denominator
    hi_iv = iv.mpf(hi.numerator) / hi.denominator
    return iv.mpf([lo_iv.a, hi_iv.b])


def iv_op(op: str, x, y):
    iv.prec = PREC
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    return x / y


def iv_contains(outer, inner) -> bool:
    """Whether the two enclosures of one real number are consistent (they intersect)."""
    return not (inner.b < outer.a or outer.b < inner.a)


def grid_roots(p: list[int], lo: int = -10, hi: int = 10, step: Fraction = Fraction(1, 1024)):
    """Grid cells ``(x_k, x_{k+1}]`` with a sign change or an exact zero of ``p``.

    ``p`` is evaluated exactly at ``x = k / q`` through the integer
    ``q^d p(k / q)``, which has the same sign.
    """
    assert step.numerator == 1
    qd = step.denominator
    d = len(p) - 1
    scaled = [c * qd ** (d - i) for i, c in enumerate(p)]

    def sgn(k: int) -> int:
        acc = 0
        for c in reversed(scaled):
            acc = acc * k + c
        return (acc > 0) - (acc < 0)

    cells = []
    k0, k1 = lo * qd, hi * qd
    prev = sgn(k0)
    if prev == 0:
        cells.append((Fraction(k0, qd), Fraction(k0, qd)))
    for k in range(k0 + 1, k1 + 1):
        v = sgn(k)
        if v == 0:
            cells.append((Fraction(k, qd), Fraction(k, qd)))
        elif prev != 0 and v != prev:
            cells.append((Fraction(k - 1, qd), Fraction(k, qd)))
        prev = v
    return cells


def random_frag(rng: random.Random, names: list[str], terms: int = 3, height: int = 5):
    """A random polynomial fragment with half-integer exponents in ``names``."""
    from cutforge.ordtower import Frag, gen

    acc = Frag.const(0)
    for _ in range(rng.randint(1, terms)):
        c = Fraction(rng.randint(-height, height), rng.randint(1, 3))
        m = Frag.const(c)
        for g in names:
            m = m * gen(g) ** Fraction(rng.randint(-4, 4), 2)
        acc = acc + m
    return acc


def eliminates_to_relation(exprs, base_syms=(), ext_syms=()) -> bool:
    """Whether ``exprs`` satisfy a nonzero polynomial relation over ``Q(base_syms)``.

    Lex Groebner elimination of ``ext_syms`` from the graph ideal
    ``<den_i * y_i - num_i, 1 - z * prod(den_i)>``: the elements are
    dependent iff the elimination ideal contains a polynomial involving the
    ``y_i``.
    """
    import sympy

    ys = sympy.symbols(f"y1:{len(exprs) + 1}")
    z = sympy.Symbol("z_sat")
    polys, dens = [], sympy.Integer(1)
    for y, e in zip(ys, exprs):
        num, den = sympy.fraction(sympy.together(e))
        polys.append(sympy.expand(den * y - num))
        dens *= den
    polys.append(sympy.expand(1 - z * dens))
    gb = sympy.groebner(polys, z, *ext_syms, *ys, *base_syms, order="lex")
    drop = {z, *ext_syms}
    return any(not (p.free_symbols & drop) and (p.free_symbols & set(ys)) for p in gb.exprs)


def eval_rational(num: list, den: list, x: Fraction) -> Fraction:
    def ev(p):
        acc = Fraction(0)
        for c in reversed(p):
            acc = acc * x + c
        return acc
    return ev(num) / ev(den)


def inner_point(endpoint, anchor: Fraction) -> Fraction:
    """A rational strictly between a piece endpoint (a real constant) and ``anchor``."""
    from cutforge.ordtower import Frag, cmp

    c = endpoint.constant_value() if not endpoint.is_zero() else Fraction(0)
    if isinstance(c, RealAlg):
        c.refine_to(Fraction(1, 2 ** 60))
        x = c.interval[1] if anchor > c.interval[1] else c.interval[0]
    else:
        x = Fraction(c)
    for j in range(40, 0, -1):
        cand = x + (anchor - x) / 2 ** j
        lo, hi = (endpoint, Frag.const(anchor)) if anchor > cand else (Frag.const(anchor), endpoint)
        if cmp(lo, Frag.const(cand)) < 0 and cmp(Frag.const(cand), hi) < 0:
            return cand
    raise AssertionError("no rational point next to the endpoint")


def check_piece_modes(num: list, den: list, pieces, pairs: int, rng: random.Random) -> list:
    """Sampled pairs of each piece whose values contradict the piece's mode."""
    bad = []
    for p in pieces:
        m = p.sample.constant_value() if not p.sample.is_zero() else Fraction(0)
        m = Fraction(m)
        a, b = inner_point(p.lo, m), inner_point(p.hi, m)
        for _ in range(pairs):
            u, v = sorted(a + (b - a) * Fraction(rng.randint(0, 10 ** 6), 10 ** 6) for _ in range(2))
            if u == v:
                continue
            fu, fv = eval_rational(num, den, u), eval_rational(num, den, v)
            ok = {"increasing": fu < fv, "decreasing": fu > fv, "constant": fu == fv}[p.mode]
            if not ok:
                bad.append((p.mode, u, v))
    return bad
