"""Descriptors of ordered subfields of the ambient real closed field."""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebraic import AlgElem
from .frag import Frag
from .gens import by_significance, rank_of
from .stream import StreamElem


@dataclass(frozen=True)
class TowerField:
    """``Q^rc(gens)`` followed by adjoined elements ``steps``.

    The field is always taken real closed: every real algebraic function of
    its generators belongs to it.  Adjoined stream elements make their
    translates by field fragments and monomial multiples members as well;
    adjoined algebraic elements are recorded for provenance.
    """

    gens: frozenset = frozenset()
    steps: tuple = field(default=(), compare=False)
    step_keys: tuple = ()

    @classmethod
    def of(cls, *gens: str, steps=()) -> "TowerField":
        steps = tuple(steps)
        return cls(frozenset(gens), steps, tuple(_step_key(s) for s in steps))

    def ordered_gens(self) -> list[str]:
        """Least significant (largest scale) first: ``t1, t2, ...``."""
        return list(reversed(by_significance(self.gens)))

    def ranks(self) -> list:
        return sorted(rank_of(g) for g in self.gens)

    def extend(self, gens=(), steps=()) -> "TowerField":
        new_steps = self.steps + tuple(s for s in steps if _step_key(s) not in self.step_keys)
        return TowerField(self.gens | frozenset(gens), new_steps, tuple(_step_key(s) for s in new_steps))

    def is_subfield_of(self, other: "TowerField") -> bool:
        return self.gens <= other.gens and set(self.step_keys) <= set(other.step_keys)

    def join(self, other: "TowerField") -> "TowerField":
        return self.extend(other.gens, other.steps)

    def contains(self, x) -> bool:
        if isinstance(x, Frag):
            return x.generators() <= self.gens
        if isinstance(x, AlgElem):
            return x.generators() <= self.gens
        if isinstance(x, StreamElem):
            if not x.head.generators() <= self.gens or not x.scale_exp.support() <= self.gens:
                return False
            return any(isinstance(s, StreamElem) and s.tail == x.tail for s in self.steps)
        return False

    def __str__(self) -> str:
        base = "Q_rc(" + ",".join(self.ordered_gens()) + ")" if self.gens else "Q_rc"
        if self.steps:
            base += "[" + ", ".join(str(s) for s in self.steps) + "]"
        return base


def _step_key(s) -> str:
    if isinstance(s, StreamElem):
        return "stream:" + repr(s.tail.key())
    return "elem:" + str(s)


Q_RC = TowerField()
