"""A computable non-archimedean real closed field fragment.

Elements are rational Puiseux fragments in lex-ordered infinitesimals,
algebraic elements isolated by Newton-Puiseux, and lazy streams.
"""
from __future__ import annotations

from .algebraic import DEFAULT_FUEL, AlgElem, isolate_real_roots, sturm_count_over, up_eval
from .errors import NotInField, Undecided, UnsupportedStreamOp
from .expvec import ExpVec
from .field import Q_RC, TowerField
from .frag import Frag
from .gens import UnknownGenerator, by_significance, declare, fresh_between, is_generator, name_for_rank, rank_of
from .ops import (
    EQ, GT, LT, TowerElem, as_elem, cmp, cmp_with_power, frag_arith, iter_terms, leading_coeff,
    leading_term, less, root_isolate_over, sign, truncate, val,
)
from .stream import N, StreamElem, StreamTail


def gen(name: str) -> Frag:
    return Frag.gen(name)


def gens(*names: str) -> tuple:
    return tuple(Frag.gen(n) for n in names)


__all__ = [
    "AlgElem", "DEFAULT_FUEL", "EQ", "ExpVec", "Frag", "GT", "LT", "N", "NotInField", "Q_RC", "StreamElem",
    "StreamTail", "TowerElem", "TowerField", "Undecided", "UnknownGenerator", "UnsupportedStreamOp", "is_generator", "as_elem", "by_significance",
    "cmp", "cmp_with_power", "declare", "frag_arith", "fresh_between", "gen", "gens", "isolate_real_roots",
    "iter_terms", "leading_coeff", "leading_term", "less", "name_for_rank", "rank_of", "root_isolate_over",
    "sign", "sturm_count_over", "truncate", "up_eval", "val",
]
