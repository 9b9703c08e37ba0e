"""Finite sets of representative vertices for symbolic ω-structures.

Periodic structures (complete and Turán boards, residue patterns, block
cliques) look the same beyond a threshold T up to shifts by the period L.
Every vertex v >= T is represented by T + (v - T) % L, and a predicate that
only reads the structure around v takes the same value on the whole class.

Cantor structures are built from subtrees and finitely many special
strings.  Let S* be the specials closed under prefixes; a child c of a node
in S* that is not itself in S* represents c and all its descendants.

Predicates about several vertices at once (scorpion triples) need a wider
window in the periodic case: a triple can be pulled down by multiples of L
until consecutive elements above T are less than 2L apart, so triples inside
[0, T + 6L) suffice.
"""
from __future__ import annotations

import math
from typing import Callable, Iterable, Optional

from .. import cantor
from .natset import NatSet


class World:
    def __init__(self, period: int, specials: Iterable[int], is_cantor: bool):
        self.is_cantor = is_cantor
        specials = set(specials)
        if is_cantor:
            if period != 1:
                raise ValueError("residue patterns cannot be mixed with the Cantor board")
            closed = {0}
            for s in specials:
                closed.add(s)
                closed.update(cantor.ancestors(s))
            self.core = sorted(closed)
            self._core_set = closed
            frontier = set()
            for s in closed:
                for bit in (0, 1):
                    c = cantor.child(s, bit)
                    if c not in closed:
                        frontier.add(c)
            self.tails = sorted(frontier)
            self._tail_set = frontier
            self.L = 1
            self.T = None
        else:
            self.L = max(1, period)
            top = max(specials) + 1 if specials else 0
            self.T = -(-top // self.L) * self.L
            self.core = list(range(self.T))
            self.tails = list(range(self.T, self.T + self.L))

    @classmethod
    def of(cls, parts, board_cantor: bool, extra_specials: Iterable[int] = ()) -> "World":
        period = 1
        specials = set(extra_specials)
        is_cantor = board_cantor
        for p in parts:
            period = math.lcm(period, p.period())
            specials |= p.specials()
            is_cantor = is_cantor or p.cantor()
        return cls(period, specials, is_cantor)

    # ------------------------------------------------------------- queries
    def reps(self) -> list:
        return self.core + self.tails

    def is_tail(self, v: int) -> bool:
        """Does v stand for infinitely many vertices?"""
        if self.is_cantor:
            return v in self._tail_set
        return v >= self.T

    def rep_of(self, v: int) -> int:
        if self.is_cantor:
            core = self._core_set
            if v in core:
                return v
            x = v
            while x != 0 and cantor.parent(x) not in core:
                x = cantor.parent(x)
            return x
        if v < self.T:
            return v
        return self.T + (v - self.T) % self.L

    def fresh_member(self, r: int, above: int) -> int:
        """A member of r's class larger than ``above``."""
        if not self.is_tail(r):
            raise ValueError(f"{r} is not a tail representative")
        if self.is_cantor:
            x = r
            while x <= above:
                x = cantor.child(x, 0)
            return x
        return r + self.L * max(0, (above - r) // self.L + 1)

    def class_of(self, r: int) -> NatSet:
        if not self.is_tail(r):
            return NatSet.finite([r])
        if self.is_cantor:
            return NatSet.finite([r]) | NatSet.subtree(r)
        return NatSet.residues(self.L, [r % self.L], excluded=[x for x in range(self.T) if x % self.L == r % self.L])

    def collect(self, pred: Callable[[int], bool]) -> NatSet:
        """The exact set of vertices satisfying a class-invariant predicate."""
        core = [v for v in self.core if pred(v)]
        tails = [r for r in self.tails if pred(r)]
        if self.is_cantor:
            out = NatSet.finite(core)
            for r in tails:
                out = out | self.class_of(r)
            return out
        if not tails:
            return NatSet.finite(core)
        residues = {r % self.L for r in tails}
        excluded = [x for x in range(self.T) if x % self.L in residues and x not in set(core)]
        extra = [x for x in core if x % self.L not in residues]
        return NatSet.residues(self.L, residues, excluded=excluded, extra=extra)

    def exists(self, pred: Callable[[int], bool]) -> Optional[int]:
        for v in self.reps():
            if pred(v):
                return v
        return None

    def forall(self, pred: Callable[[int], bool]) -> bool:
        return self.exists(lambda v: not pred(v)) is None

    def tuple_window(self) -> int:
        if self.is_cantor:
            raise ValueError("tuple windows are only defined for periodic structures")
        return self.T + 6 * self.L
