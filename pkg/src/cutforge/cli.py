"""Command-line front end and the line-oriented cut DSL.

A script is a sequence of statements, one per line, ``#`` starting a
comment::

    field K = Q_rc(t1)
    elem a = 1/t1 + t2/t1^2
    cut C = elem(1/t2) over K
    cut S = sum(n=2, t1^(1 - 1/n)) over K
    derive A = add S
    family F = [C, A]
    classify A
    hull H = K with family F filter symmetric
    iterate K steps 2 filter symmetric
    verify multiplicative_bound x=1/t1 y=5/t1
    verify instance add-quot-1 expect pass
    report

Any statement may end with ``; fuel=N max_degree=D max_height=H`` to
override the configuration for that statement alone.

Exit codes: 0 success, 1 a verify verdict differs from its expectation
(``pass`` unless ``expect`` says otherwise), 2 usage or parse error,
3 evaluation error, 4 undecided within the fuel bound.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from typing import Optional

import sympy

from . import __version__
from .catalog import hull_catalog
from .cuts import (
    AbovePoint, BelowPoint, CofinalityTag, CutSpec, ElementInduced, MinusInfinity, PlusInfinity, PreconditionError,
    SeqGenerated, classify, derive_add, derive_mlt, normal_form,
)
from .independence import CutFamily, ThetaSet, iterate_hull, one_step_hull
from .ordtower import (
    Frag, N, NotInField, StreamElem, StreamTail, TowerField, Undecided, UnknownGenerator, UnsupportedStreamOp, cmp,
    frag_arith, gen, is_generator, root_isolate_over,
)
from .ordtower.algebraic import isolate_real_roots, up, up_str
from .realalg import RealAlg, isolate_roots, ra_root
from .search import SearchBounds
from .verify import PASS, LemmaReport, check_multiplicative_bound, piecewise_monotone_decompose, shipped_instances

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_EVAL, EXIT_UNDECIDED = 0, 1, 2, 3, 4


class DSLError(Exception):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(message)
        self.line, self.col = line, col

    def __str__(self) -> str:
        return f"line {self.line}, column {self.col}: {self.args[0]}"


# ----------------------------------------------------------------------------
# configuration
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Config:
    fuel: int = 64
    max_degree: int = 6
    max_height: int = 12
    ramification: int = 4
    gens: int = 3
    seed: int = 0

    def bounds(self) -> SearchBounds:
        return SearchBounds(self.max_degree, self.max_height, self.ramification)


_OVERRIDABLE = {"fuel", "max_degree", "max_height", "ramification", "seed"}


# ----------------------------------------------------------------------------
# lexer and expression trees
# ----------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*/^(),=\[\];]))")


@dataclass
class Tok:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str, line: int = 1) -> list[Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise DSLError(f"unexpected character {text[col - 1]!r}", line, col)
        kind = m.lastgroup
        tok = m.group(kind)
        toks.append(Tok(kind, "^" if tok == "**" else tok, line, m.start(kind) + 1))
        pos = m.end()
    toks.append(Tok("end", "", line, len(text) + 1))
    return toks


@dataclass
class Node:
    kind: str
    value: object = None
    args: list = field(default_factory=list)
    kwargs: dict = field(default_factory=dict)
    tok: Optional[Tok] = None


class Parser:
    def __init__(self, toks: list[Tok]):
        self.toks = toks
        self.i = 0

    @property
    def cur(self) -> Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg: str, tok: Optional[Tok] = None):
        tok = tok or self.cur
        raise DSLError(msg, tok.line, tok.col)

    def accept(self, text: str) -> Optional[Tok]:
        if self.cur.text == text and self.cur.kind != "end":
            t = self.cur
            self.i += 1
            return t
        return None

    def expect(self, text: str) -> Tok:
        t = self.accept(text)
        if t is None:
            self.error(f"expected {text!r}, found {self.cur.text or 'end of line'!r}")
        return t

    def name(self) -> Tok:
        if self.cur.kind != "name":
            self.error(f"expected a name, found {self.cur.text or 'end of line'!r}")
        t = self.cur
        self.i += 1
        return t

    def integer(self) -> int:
        neg = self.accept("-") is not None
        if self.cur.kind != "num":
            self.error("expected an integer")
        v = int(self.cur.text)
        self.i += 1
        return -v if neg else v

    def at_end(self) -> bool:
        return self.cur.kind == "end" or self.cur.text == ";"

    # expressions -----------------------------------------------------------

    def expr(self) -> Node:
        node = self.term()
        while self.cur.text in ("+", "-") and self.cur.kind == "op":
            op = self.cur
            self.i += 1
            node = Node("bin", op.text, [node, self.term()], tok=op)
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.cur.text in ("*", "/") and self.cur.kind == "op":
            op = self.cur
            self.i += 1
            node = Node("bin", op.text, [node, self.unary()], tok=op)
        return node

    def unary(self) -> Node:
        if self.cur.text in ("-", "+") and self.cur.kind == "op":
            op = self.cur
            self.i += 1
            inner = self.unary()
            return Node("neg", None, [inner], tok=op) if op.text == "-" else inner
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.cur.text == "^":
            op = self.cur
            self.i += 1
            if self.cur.text in ("-", "+"):
                ex = self.unary()
            else:
                ex = self.atom()
            return Node("pow", None, [base, ex], tok=op)
        return base

    def atom(self) -> Node:
        t = self.cur
        if t.kind == "num":
            self.i += 1
            return Node("num", int(t.text), tok=t)
        if t.text == "(":
            self.i += 1
            node = self.expr()
            self.expect(")")
            return node
        if t.kind == "name":
            self.i += 1
            if self.cur.text == "(" and t.text in ("sqrt", "root", "sum", "elem", "above", "below"):
                self.i += 1
                args, kwargs = [], {}
                if self.cur.text != ")":
                    while True:
                        if self.cur.kind == "name" and self.peek().text == "=":
                            k = self.name().text
                            self.expect("=")
                            kwargs[k] = self.expr()
                        else:
                            args.append(self.expr())
                        if not self.accept(","):
                            break
                self.expect(")")
                return Node("call", t.text, args, kwargs, tok=t)
            return Node("name", t.text, tok=t)
        self.error(f"unexpected {t.text or 'end of line'!r}")


# ----------------------------------------------------------------------------
# evaluation of expressions
# ----------------------------------------------------------------------------

class XPoly:
    """A polynomial in the placeholder ``x`` (only inside ``root(p, lo, hi)``)."""

    def __init__(self, coeffs):
        self.c = up(coeffs)

    @staticmethod
    def lift(v) -> "XPoly":
        return v if isinstance(v, XPoly) else XPoly([Frag.coerce(v)])

    def __add__(self, o):
        o = XPoly.lift(o)
        n = max(len(self.c), len(o.c))
        z = Frag.const(0)
        return XPoly([(self.c[i] if i < len(self.c) else z) + (o.c[i] if i < len(o.c) else z) for i in range(n)])

    def __neg__(self):
        return XPoly([-c for c in self.c])

    def __mul__(self, o):
        o = XPoly.lift(o)
        if not self.c or not o.c:
            return XPoly([])
        out = [Frag.const(0)] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            for j, b in enumerate(o.c):
                out[i + j] = out[i + j] + a * b
        return XPoly(out)

    def __str__(self) -> str:
        return up_str(self.c)

    def __pow__(self, k: int):
        out = XPoly([Frag.const(1)])
        for _ in range(k):
            out = out * self
        return out


def positive_root(f, k: int):
    """The positive ``k``-th root of ``f > 0``."""
    f = Frag.coerce(f)
    if f.sign() <= 0:
        raise PreconditionError(f"root of a non-positive element {f}")
    if f.is_monomial():
        return f ** Fraction(1, k)
    if f.is_constant():
        c = f.lc()
        return Frag.const(ra_root(c if isinstance(c, RealAlg) else RealAlg.from_rational(c), k))
    p = [-f] + [Frag.const(0)] * (k - 1) + [Frag.const(1)]
    return root_isolate_over(TowerField.of(*f.generators()), p)[-1]


def _select_root(p: XPoly, lo, hi):
    lo, hi = Frag.coerce(lo), Frag.coerce(hi)
    if all(c.is_constant() for c in p.c):
        coeffs = [c.lc() if not c.is_zero() else Fraction(0) for c in p.c]
        if all(isinstance(c, Fraction) for c in coeffs):
            for r in isolate_roots(coeffs):
                if Frag.const(r) > lo and Frag.const(r) < hi:
                    return Frag.const(r)
    for r in isolate_real_roots(p.c):
        if cmp(lo, r) < 0 and cmp(r, hi) < 0:
            return r
    raise PreconditionError("no root of the polynomial in the given interval")


class Evaluator:
    def __init__(self, session: "Session"):
        self.s = session

    def fail(self, node: Node, msg: str):
        t = node.tok
        raise DSLError(msg, t.line if t else 0, t.col if t else 0)

    def value(self, node: Node, xvar: bool = False):
        k = node.kind
        if k == "num":
            return Frag.const(node.value)
        if k == "name":
            return self._name(node, xvar)
        if k == "neg":
            v = self.value(node.args[0], xvar)
            return -v
        if k == "bin":
            a, b = self.value(node.args[0], xvar), self.value(node.args[1], xvar)
            return self._arith(node, a, b)
        if k == "pow":
            base = self.value(node.args[0], xvar)
            ex = self.exponent(node.args[1])
            return self._pow(node, base, ex)
        if k == "call":
            return self._call(node)
        self.fail(node, f"unexpected {k}")

    def _name(self, node: Node, xvar: bool):
        name = node.value
        if xvar and name == "x":
            return XPoly([Frag.const(0), Frag.const(1)])
        if name in self.s.elems:
            return self.s.elems[name]
        if name in self.s.cuts or name in self.s.fields or name in self.s.families:
            self.fail(node, f"{name!r} is not an element")
        if is_generator(name):
            m = re.fullmatch(r"t(\d+)", name)
            if m and int(m.group(1)) > self.s.config.gens:
                self.fail(node, f"generator {name} exceeds --gens {self.s.config.gens}")
            return gen(name)
        self.fail(node, f"unknown identifier {name!r}")

    def _arith(self, node: Node, a, b):
        op = node.value
        if isinstance(a, XPoly) or isinstance(b, XPoly):
            if op == "+":
                return XPoly.lift(a) + b
            if op == "-":
                return XPoly.lift(a) + (-XPoly.lift(b))
            if op == "*":
                return XPoly.lift(a) * b
            if isinstance(b, XPoly):
                self.fail(node, "division by a polynomial in x")
            return XPoly.lift(a) * XPoly([Frag.coerce(b).inverse()])
        name = {"+": "add", "-": "sub", "*": "mul", "/": "div"}[op]
        try:
            return frag_arith(a, b, name)
        except ZeroDivisionError:
            self.fail(node, "division by zero")

    def _pow(self, node: Node, base, ex):
        if isinstance(ex, sympy.Expr):
            self.fail(node, "symbolic exponent outside sum(...)")
        if isinstance(base, XPoly):
            if ex.denominator != 1 or ex < 0:
                self.fail(node, "x may only be raised to natural powers")
            return base ** int(ex)
        if isinstance(base, Frag):
            if ex.denominator == 1:
                return base ** int(ex)
            if base.is_monomial():
                return base ** ex
            r = positive_root(base, ex.denominator)
            return self._pow(node, r, Fraction(ex.numerator)) if isinstance(r, Frag) else (
                r if ex.numerator == 1 else self.fail(node, "power of an algebraic element"))
        self.fail(node, f"cannot raise {type(base).__name__} to a power")

    def exponent(self, node: Node, var: Optional[str] = None):
        """A rational exponent, or a sympy expression in ``var`` inside a sum."""
        k = node.kind
        if k == "num":
            return Fraction(node.value)
        if k == "name":
            if var is not None and node.value in (var, "N"):
                return N
            self.fail(node, f"exponents are rational constants, not {node.value!r}")
        if k == "neg":
            v = self.exponent(node.args[0], var)
            return -v
        if k in ("bin", "pow"):
            a = self.exponent(node.args[0], var)
            b = self.exponent(node.args[1], var)
            sym = isinstance(a, sympy.Expr) or isinstance(b, sympy.Expr)
            if sym:
                a = sympy.Rational(a.numerator, a.denominator) if isinstance(a, Fraction) else a
                b = sympy.Rational(b.numerator, b.denominator) if isinstance(b, Fraction) else b
            if k == "pow":
                if not sym and b.denominator != 1:
                    self.fail(node, "irrational exponent")
                return a ** b if sym else a ** int(b)
            op = node.value
            if op == "/" and not sym and b == 0:
                self.fail(node, "division by zero in exponent")
            return {"+": a + b, "-": a - b, "*": a * b}.get(op) if op != "/" else a / b
        self.fail(node, "unsupported exponent")

    def _call(self, node: Node):
        f = node.value
        if f == "sqrt":
            if len(node.args) != 1:
                self.fail(node, "sqrt takes one argument")
            return positive_root(self.value(node.args[0]), 2)
        if f == "root":
            if len(node.args) == 2:
                k = self.exponent(node.args[1])
                if k.denominator != 1 or k < 1:
                    self.fail(node, "root index must be a positive integer")
                return positive_root(self.value(node.args[0]), int(k))
            if len(node.args) == 3:
                p = XPoly.lift(self.value(node.args[0], xvar=True))
                return _select_root(p, self.value(node.args[1]), self.value(node.args[2]))
            self.fail(node, "root takes (expr, k) or (polynomial in x, lo, hi)")
        if f == "sum":
            return self.stream(node)
        self.fail(node, f"{f}(...) is a cut, not an element")

    def stream(self, node: Node) -> StreamElem:
        if len(node.kwargs) != 1 or len(node.args) != 1:
            self.fail(node, "sum takes (n=start, term)")
        (var, start), = node.kwargs.items()
        start = self.exponent(start)
        if start.denominator != 1:
            self.fail(node, "sum start must be an integer")
        coeff, exps = self._stream_term(node.args[0], var)
        try:
            tail = StreamTail.make(coeff, exps, start=int(start))
        except (ValueError, PreconditionError) as exc:
            self.fail(node, str(exc))
        return StreamElem(tail)

    def _stream_term(self, node: Node, var: str):
        k = node.kind
        if k == "num":
            return sympy.Integer(node.value), {}
        if k == "name":
            if not is_generator(node.value):
                self.fail(node, f"{node.value!r} is not a generator")
            return sympy.Integer(1), {node.value: sympy.Integer(1)}
        if k == "neg":
            c, e = self._stream_term(node.args[0], var)
            return -c, e
        if k == "pow":
            b = node.args[0]
            ex = self.exponent(node.args[1], var)
            ex = sympy.Rational(ex.numerator, ex.denominator) if isinstance(ex, Fraction) else ex
            if b.kind == "name" and is_generator(b.value):
                return sympy.Integer(1), {b.value: ex}
            c, e = self._stream_term(b, var)
            return c ** ex, {g: v * ex for g, v in e.items()}
        if k == "bin" and node.value in ("*", "/"):
            c1, e1 = self._stream_term(node.args[0], var)
            c2, e2 = self._stream_term(node.args[1], var)
            sgn = 1 if node.value == "*" else -1
            out = dict(e1)
            for g, v in e2.items():
                out[g] = out.get(g, 0) + sgn * v
            return (c1 * c2 if sgn > 0 else c1 / c2), out
        self.fail(node, "a sum term must be a coefficient times a monomial")


# ----------------------------------------------------------------------------
# statements
# ----------------------------------------------------------------------------

@dataclass
class Session:
    config: Config = field(default_factory=Config)
    fields: dict = field(default_factory=dict)
    elems: dict = field(default_factory=dict)
    cuts: dict = field(default_factory=dict)
    families: dict = field(default_factory=dict)
    entries: list = field(default_factory=list)
    out: list = field(default_factory=list)
    verify_ok: bool = True


def _fmt_tag(tag: list) -> str:
    return f"({tag[0]},{tag[1]})"


class Runner:
    def __init__(self, session: Session):
        self.s = session
        self.ev = Evaluator(session)

    # fields and cuts -------------------------------------------------------

    def field_lit(self, p: Parser) -> TowerField:
        t = p.name()
        if t.text in self.s.fields:
            K = self.s.fields[t.text]
        elif t.text == "Q_rc":
            names = []
            if p.accept("("):
                if not p.accept(")"):
                    while True:
                        g = p.name()
                        if not is_generator(g.text):
                            p.error(f"{g.text!r} is not a generator", g)
                        names.append(g.text)
                        if not p.accept(","):
                            break
                    p.expect(")")
            K = TowerField.of(*names)
        elif t.text in self.s.cuts or t.text in self.s.elems:
            p.error(f"{t.text!r} is not a field", t)
        else:
            p.error(f"unknown field {t.text!r}", t)
        if p.accept("["):
            steps = []
            while True:
                steps.append(self.ev.value(p.expr()))
                if not p.accept(","):
                    break
            p.expect("]")
            K = K.extend(steps=steps)
        return K

    def cut_lit(self, p: Parser) -> CutSpec:
        t = p.cur
        if t.kind == "name" and t.text in self.s.cuts and p.peek().text != "(":
            p.i += 1
            return self.s.cuts[t.text]
        if t.text in ("+", "-") and p.peek().text == "inf":
            p.i += 2
            kind = "plus_inf" if t.text == "+" else "minus_inf"
        elif t.text in ("plus_inf", "minus_inf"):
            p.i += 1
            kind = t.text
        elif t.text in ("elem", "above", "below", "sum") and p.peek().text == "(":
            node = p.atom()
            kind = node
        else:
            p.error(f"expected a cut, found {t.text or 'end of line'!r}")
        p.expect("over")
        K = self.field_lit(p)
        if kind == "plus_inf":
            return PlusInfinity(K)
        if kind == "minus_inf":
            return MinusInfinity(K)
        f = kind.value
        if f == "sum":
            return _seq_cut(K, self.ev.stream(kind))
        if len(kind.args) != 1:
            self.ev.fail(kind, f"{f} takes one argument")
        a = self.ev.value(kind.args[0])
        return {"elem": ElementInduced, "above": AbovePoint, "below": BelowPoint}[f](K, a)

    def cut_ref(self, p: Parser) -> tuple[str, CutSpec]:
        t = p.name()
        if t.text not in self.s.cuts:
            if t.text in self.s.elems or t.text in self.s.fields:
                p.error(f"{t.text!r} is not a cut", t)
            p.error(f"unknown cut {t.text!r}", t)
        return t.text, self.s.cuts[t.text]

    # execution -------------------------------------------------------------

    def run_line(self, text: str, lineno: int) -> None:
        code = text.split("#", 1)[0]
        if not code.strip():
            return
        toks = tokenize(code, lineno)
        p = Parser(toks)
        head = p.name()
        cfg = self.s.config
        handler = getattr(self, f"st_{head.text}", None)
        if handler is None:
            p.error(f"unknown statement {head.text!r}", head)
        # options after ';' apply to this statement only
        semi = next((i for i, t in enumerate(toks) if t.text == ";"), None)
        if semi is not None:
            self.s.config = self._options(toks[semi + 1:], cfg)
            p.toks = toks[:semi] + [Tok("end", "", lineno, toks[semi].col)]
        try:
            handler(p)
            if not p.at_end():
                p.error(f"unexpected {p.cur.text!r}")
        finally:
            self.s.config = cfg

    def _options(self, toks: list[Tok], cfg: Config) -> Config:
        p = Parser(toks)
        changes = {}
        while p.cur.kind != "end":
            k = p.name()
            if k.text not in _OVERRIDABLE:
                p.error(f"unknown option {k.text!r}", k)
            p.expect("=")
            changes[k.text] = p.integer()
        return replace(cfg, **changes)

    def emit(self, command: str, binding: Optional[str], result, text: str, witnesses=None, cert=None) -> None:
        self.s.entries.append({"command": command, "binding": binding, "result": result,
                               "witnesses": witnesses, "search_certificate": cert})
        self.s.out.append(text)

    def st_field(self, p: Parser):
        name = p.name().text
        p.expect("=")
        K = self.field_lit(p)
        self.s.fields[name] = K
        self.emit("field", name, str(K), f"{name} = {K}")

    def st_elem(self, p: Parser):
        name = p.name().text
        p.expect("=")
        v = self.ev.value(p.expr())
        if isinstance(v, XPoly):
            p.error("x is only meaningful inside root(p, lo, hi)")
        self.s.elems[name] = v
        self.emit("elem", name, str(v), f"{name} = {v}")

    def st_cut(self, p: Parser):
        name = p.name().text
        p.expect("=")
        c = self.cut_lit(p)
        self.s.cuts[name] = c
        self.emit("cut", name, str(c), f"{name} = {c}")

    def st_family(self, p: Parser):
        name = p.name().text
        p.expect("=")
        p.expect("[")
        names, cuts = [], []
        if not p.accept("]"):
            while True:
                n, c = self.cut_ref(p)
                names.append(n)
                cuts.append(c)
                if not p.accept(","):
                    break
            p.expect("]")
        K = cuts[0].base if cuts else TowerField.of()
        if p.accept("over"):
            K = self.field_lit(p)
        try:
            fam = CutFamily(K, cuts, names=names)
        except PreconditionError as exc:
            p.error(str(exc))
        self.s.families[name] = fam
        self.emit("family", name, names, f"{name} = [{', '.join(names)}] over {K}")

    def st_classify(self, p: Parser):
        if p.cur.kind == "name" and p.cur.text in self.s.cuts and p.peek().kind == "end":
            name, c = self.cut_ref(p)
        else:
            name, c = None, self.cut_lit(p)
        fuel = self.s.config.fuel
        vec = classify(c, fuel)
        nf = normal_form(c, fuel).describe()
        flags = ", ".join(f"{k}: {str(v).lower()}" for k, v in vec.items() if k != "tag")
        self.emit("classify", name, dict(vec, normal_form=nf),
                  f"{name or c}: {{{flags}, tag: {_fmt_tag(vec['tag'])}}}")

    def st_derive(self, p: Parser):
        name = p.name().text
        p.expect("=")
        kind = p.name()
        if kind.text not in ("add", "mlt"):
            p.error("derive takes add or mlt", kind)
        src, c = self.cut_ref(p)
        d = (derive_add if kind.text == "add" else derive_mlt)(c, self.s.config.fuel)
        self.s.cuts[name] = d
        self.emit("derive", name, {"kind": kind.text, "of": src, "cut": str(d)}, f"{name} = {kind.text}({src}) = {d}")

    def _filter(self, p: Parser):
        t = p.name()
        if t.text in ("symmetric", "all"):
            return t.text
        if t.text != "theta":
            p.error("filter is symmetric, all or theta[(a,b), ...]", t)
        p.expect("[")
        tags = []
        if not p.accept("]"):
            while True:
                p.expect("(")
                a = self._card(p)
                p.expect(",")
                b = self._card(p)
                p.expect(")")
                tags.append(CofinalityTag(a, b))
                if not p.accept(","):
                    break
            p.expect("]")
        try:
            return ThetaSet(frozenset(tags))
        except ValueError as exc:
            p.error(str(exc), t)

    @staticmethod
    def _card(p: Parser) -> str:
        t = p.cur
        if t.text in ("0", "1", "w"):
            p.i += 1
            return t.text
        p.error("cofinality is 0, 1 or w")

    def st_hull(self, p: Parser):
        name = None
        if p.peek().text == "=":
            name = p.name().text
            p.expect("=")
        K = self.field_lit(p)
        p.expect("with")
        p.expect("family")
        ft = p.name()
        if ft.text not in self.s.families:
            p.error(f"unknown family {ft.text!r}", ft)
        p.expect("filter")
        flt = self._filter(p)
        cfg = self.s.config
        res = one_step_hull(K, self.s.families[ft.text], flt, cfg.bounds(), cfg.fuel)
        if name:
            self.s.fields[name] = res.field
        d = res.as_dict()
        cert = d.pop("search_certificate")
        lines = [f"hull of {K}: {res.field}", f"  chosen: {', '.join(res.chosen) or '-'}"]
        for r in res.records:
            state = f"realized by {r.witness}" if r.realized else "not realized"
            lines.append(f"  {r.name} {_fmt_tag(r.tag.as_list())}: {state}")
        self.emit("hull", name, d, "\n".join(lines), witnesses=d["realizations"], cert=cert)

    def st_iterate(self, p: Parser):
        K = self.field_lit(p)
        p.expect("steps")
        steps = p.integer()
        flt = "symmetric"
        if p.accept("filter"):
            flt = self._filter(p)
        cfg = self.s.config
        chain = iterate_hull(K, hull_catalog, flt, steps, cfg.bounds(), cfg.fuel)
        d = chain.as_dict()
        certs = [lv.pop("search_certificate") for lv in d["levels"]]
        self.emit("iterate", None, d, "chain: " + " < ".join(str(f) for f in chain.fields), cert=certs)

    def st_verify(self, p: Parser):
        t = p.name()
        expect = PASS
        cfg = self.s.config
        if t.text == "instance":
            first = p.name()
            label = first.text
            while p.cur.text == "-" and p.peek().kind in ("name", "num"):
                p.i += 1
                label += "-" + p.cur.text
                p.i += 1
            table = shipped_instances()
            if label not in table:
                p.error(f"unknown instance {label!r}", first)
            fn, _ = table[label]
            expect = self._expect(p)
            rep = fn()
        elif t.text == "multiplicative_bound":
            kw = self._kwargs(p, {"x", "y", "over", "n_max"})
            K = kw.get("over", TowerField.of())
            if "x" not in kw or "y" not in kw:
                p.error("multiplicative_bound needs x=... and y=...")
            cut = kw.get("cut") or ElementInduced(K, kw["x"])
            expect = self._expect(p)
            rep = check_multiplicative_bound(K, cut, kw["x"], kw["y"], int(kw.get("n_max", 16)), cfg.fuel)
            label = "multiplicative_bound"
        elif t.text == "monotone":
            kw = self._kwargs(p, {"num", "den", "lo", "hi", "over"})
            K = kw.get("over", TowerField.of())
            num = _coeffs(kw.get("num"))
            den = _coeffs(kw.get("den", Frag.const(1)))
            expect = self._expect(p)
            pieces = piecewise_monotone_decompose(K, num, den, (kw["lo"], kw["hi"]), cfg.fuel)
            rep = LemmaReport("monotone", f"({kw['num']})/({kw.get('den', 1)})", PASS,
                              {"pieces": [[str(x.lo), str(x.hi), x.mode] for x in pieces]})
            label = "monotone"
        else:
            p.error(f"unknown check {t.text!r}", t)
        ok = rep.verdict == expect
        self.s.verify_ok &= ok
        witness = dict(rep.witness)
        shown = {k: v for k, v in witness.items() if k in ("n", "reason", "element", "difference", "violated")}
        self.emit("verify", label, dict(rep.as_dict(), expected=expect), f"verify {label}: {rep.verdict}"
                  f"{'' if ok else f' (expected {expect})'}" + (f" {shown}" if shown else ""),
                  witnesses=rep.counterexample)

    def _expect(self, p: Parser) -> str:
        if p.accept("expect"):
            v = p.name().text
            if v not in ("pass", "fail", "undecided", "inapplicable"):
                p.error(f"unknown verdict {v!r}")
            return v
        return PASS

    def _kwargs(self, p: Parser, allowed: set) -> dict:
        out = {}
        while p.cur.kind == "name" and p.peek().text == "=":
            k = p.name()
            if k.text not in allowed | {"cut"}:
                p.error(f"unknown argument {k.text!r}", k)
            p.expect("=")
            if k.text == "over":
                out[k.text] = self.field_lit(p)
            elif k.text == "cut":
                out[k.text] = self.cut_lit(p)
            elif k.text == "n_max":
                out[k.text] = p.integer()
            elif k.text in ("num", "den"):
                out[k.text] = XPoly.lift(self.ev.value(p.expr(), xvar=True))
            else:
                out[k.text] = self.ev.value(p.expr())
        return out

    def st_report(self, p: Parser):
        summary = {
            "fields": {k: str(v) for k, v in self.s.fields.items()},
            "cuts": {k: str(v) for k, v in self.s.cuts.items()},
            "families": {k: list(v.names) for k, v in self.s.families.items()},
        }
        self.emit("report", None, summary, "\n".join(f"{k}: {v}" for k, v in summary["cuts"].items()))


def _coeffs(v):
    if v is None:
        raise DSLError("monotone needs num=...")
    return XPoly.lift(v).c


def _seq_cut(K: TowerField, s: StreamElem) -> SeqGenerated:
    """The cut of the partial sums of ``s``; the next term doubled bounds it from the other side."""
    sgn = 1 if s.tail.term(0)[1] > 0 else -1

    def lower(n: int):
        return s.partial(n - s.tail.start) if sgn > 0 else s.partial(n - s.tail.start) + 2 * _term(n + 1)

    def upper(n: int):
        return s.partial(n - s.tail.start) + 2 * _term(n + 1) if sgn > 0 else s.partial(n - s.tail.start)

    def _term(n: int) -> Frag:
        e, c = s.tail.term(n - s.tail.start)
        return Frag.monomial(e, c)

    return SeqGenerated(K, lower=lower, upper=upper, witness=s, start=s.tail.start, label=s.tail.describe())


# ----------------------------------------------------------------------------
# entry points
# ----------------------------------------------------------------------------

def run_script(text: str, config: Config = Config()) -> tuple[Session, int, Optional[str]]:
    """Execute ``text``; returns the session, the exit code and an error message."""
    s = Session(config=config)
    r = Runner(s)
    for i, line in enumerate(text.splitlines(), start=1):
        try:
            r.run_line(line, i)
        except DSLError as exc:
            if not exc.line:
                exc.line = i
            return s, EXIT_PARSE, str(exc)
        except Undecided as exc:
            return s, EXIT_UNDECIDED, f"line {i}{_binding(line)}: {exc}"
        except (PreconditionError, UnsupportedStreamOp, NotInField, UnknownGenerator, ValueError,
                ArithmeticError) as exc:
            return s, EXIT_EVAL, f"line {i}{_binding(line)}: {type(exc).__name__}: {exc}"
    return s, (EXIT_OK if s.verify_ok else EXIT_VERIFY), None


def _binding(line: str) -> str:
    m = re.match(r"\s*(\w+)\s+(\w+)", line)
    return f" ({m.group(1)} {m.group(2)})" if m else ""


def report_json(s: Session, error: Optional[str] = None, code: int = 0) -> str:
    doc = {"header": {"version": __version__, "config": asdict(s.config)}, "body": s.entries}
    if error is not None:
        doc["error"] = {"exit_code": code, "message": error}
    return json.dumps(doc, indent=2, ensure_ascii=True, default=str) + "\n"


def _config_from(ns: argparse.Namespace) -> Config:
    return Config(fuel=ns.fuel, max_degree=ns.max_degree, max_height=ns.max_height,
                  ramification=ns.ramification, gens=ns.gens, seed=ns.seed)


def _add_flags(ap: argparse.ArgumentParser) -> None:
    d = Config()
    ap.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")
    ap.add_argument("--fuel", type=int, default=d.fuel)
    ap.add_argument("--max-degree", type=int, default=d.max_degree)
    ap.add_argument("--max-height", type=int, default=d.max_height)
    ap.add_argument("--ramification", type=int, default=d.ramification)
    ap.add_argument("--gens", type=int, default=d.gens)
    ap.add_argument("--seed", type=int, default=d.seed)


def main(argv: Optional[list[str]] = None) -> int:
    ap = argparse.ArgumentParser(prog="cutforge", description="Cuts in ordered real closed field towers.")
    sub = ap.add_subparsers(dest="cmd", required=True)
    p_run = sub.add_parser("run", help="execute a script")
    p_run.add_argument("script")
    _add_flags(p_run)
    p_ver = sub.add_parser("verify", help="execute a verification suite (the shipped one without a file)")
    p_ver.add_argument("suite", nargs="?")
    _add_flags(p_ver)
    p_cls = sub.add_parser("classify", help="classify one cut literal")
    p_cls.add_argument("-e", "--expr", required=True, help='for example "elem(1/t2) over Q_rc(t1)"')
    _add_flags(p_cls)
    ns = ap.parse_args(argv)

    if ns.cmd == "classify":
        text = f"classify {ns.expr}"
    elif ns.cmd == "verify" and ns.suite is None:
        text = "\n".join(f"verify instance {k} expect {v}" for k, (_, v) in shipped_instances().items())
    else:
        path = ns.script if ns.cmd == "run" else ns.suite
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            print(f"cutforge: {exc}", file=sys.stderr)
            return EXIT_PARSE
    s, code, err = run_script(text, _config_from(ns))
    if ns.json == "-":
        sys.stdout.write(report_json(s, err, code))
    else:
        for line in s.out:
            print(line)
        if ns.json:
            with open(ns.json, "w", encoding="utf-8") as fh:
                fh.write(report_json(s, err, code))
    if err:
        print(f"cutforge: {err}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
