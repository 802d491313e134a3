"""Exceptions shared by the tower layer and everything above it."""
from __future__ import annotations


class Undecided(Exception):
    """A query could not be settled within the given fuel."""

    def __init__(self, fuel: int, reason: str = ""):
        self.fuel = fuel
        self.reason = reason
        super().__init__(f"undecided within fuel={fuel}" + (f": {reason}" if reason else ""))


class UnsupportedStreamOp(Exception):
    """Streams only support +/- a fragment and multiplication by a monomial."""


class NotInField(ValueError):
    """An element does not belong to the field it is used with."""
