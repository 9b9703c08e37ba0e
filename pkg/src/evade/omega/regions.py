"""Symbolic sets of vertex pairs over ω.

Every pair set answers ``contains(u, v)`` and ``nbr(v)`` (a :class:`NatSet`)
and reports the data a :class:`~evade.omega.world.World` needs to pick
representative vertices: its irregular points (``specials``), its period,
and whether it uses Cantor subtrees.
"""
from __future__ import annotations

import math
from collections import defaultdict
from typing import Iterable

from .. import cantor
from ..graph import Pair, pair
from .natset import NatSet, format_ints


class PairSet:
    def contains(self, u: int, v: int) -> bool:
        raise NotImplementedError

    def nbr(self, v: int) -> NatSet:
        raise NotImplementedError

    def specials(self) -> set:
        return set()

    def period(self) -> int:
        return 1

    def cantor(self) -> bool:
        return False

    def describe(self) -> str:
        raise NotImplementedError

    def __contains__(self, p) -> bool:
        return self.contains(*p)

    def __or__(self, other: "PairSet") -> "PairSet":
        return Union([self, other])

    def __and__(self, other: "PairSet") -> "PairSet":
        return Inter(self, other)

    def __sub__(self, other: "PairSet") -> "PairSet":
        return Diff(self, other)

    def __repr__(self) -> str:
        return self.describe()


def _set_desc(x: NatSet) -> str:
    if not x.infinite:
        return "{" + format_ints(x.finite_elements()) + "}"
    return repr(x)[len("NatSet("):-1]


class Rect(PairSet):
    """Pairs with one endpoint in X and the other in Y."""

    def __init__(self, X: NatSet, Y: NatSet):
        self.X, self.Y = X, Y
        self._nbr: dict = {}

    def contains(self, u, v):
        if u == v:
            return False
        return (u in self.X and v in self.Y) or (u in self.Y and v in self.X)

    def nbr(self, v):
        got = self._nbr.get(v)
        if got is None:
            inx, iny = v in self.X, v in self.Y
            if inx and iny:
                got = self.Y if self.X is self.Y else self.X | self.Y
            else:
                got = self.Y if inx else self.X if iny else NatSet.empty()
            got = got.minus([v]) if v in got else got
            if len(self._nbr) < 1 << 14:
                self._nbr[v] = got
        return got

    def specials(self):
        return self.X.specials() | self.Y.specials()

    def period(self):
        return math.lcm(self.X.period(), self.Y.period())

    def cantor(self):
        return self.X.has_subtrees() or self.Y.has_subtrees()

    def describe(self):
        return f"[{_set_desc(self.X)},{_set_desc(self.Y)}]"


def square(X: NatSet) -> Rect:
    return Rect(X, X)


def star(v: int, others: NatSet = None) -> Rect:
    """All pairs {v, u} with u in ``others`` (default: every vertex)."""
    return Rect(NatSet.finite([v]), NatSet.all() if others is None else others)


class AllPairs(PairSet):
    def contains(self, u, v):
        return u != v

    def nbr(self, v):
        return NatSet.cofinite([v])

    def describe(self):
        return "all"


class NoPairs(PairSet):
    def contains(self, u, v):
        return False

    def nbr(self, v):
        return NatSet.empty()

    def describe(self):
        return "none"


class BlockCliques(PairSet):
    """Disjoint cliques on the blocks {kb, ..., kb + b - 1}."""

    def __init__(self, b: int):
        if b < 2:
            raise ValueError(f"block size must be >= 2, got {b}")
        self.b = b

    def contains(self, u, v):
        return u != v and u // self.b == v // self.b

    def nbr(self, v):
        lo = v - v % self.b
        return NatSet.finite(x for x in range(lo, lo + self.b) if x != v)

    def period(self):
        return self.b

    def describe(self):
        return f"blocks:{self.b}"


class ModClassDistinct(PairSet):
    """Pairs whose endpoints differ modulo k (the Turán pattern)."""

    def __init__(self, k: int):
        if k < 2:
            raise ValueError(f"modulus must be >= 2, got {k}")
        self.k = k

    def contains(self, u, v):
        return u % self.k != v % self.k

    def nbr(self, v):
        c = v % self.k
        return NatSet.residues(self.k, [r for r in range(self.k) if r != c])

    def period(self):
        return self.k

    def describe(self):
        return f"modclass:{self.k}"


class Comparable(PairSet):
    """Prefix-comparable pairs of 0-1 strings."""

    def contains(self, u, v):
        return cantor.comparable(u, v)

    def nbr(self, v):
        return NatSet.finite(cantor.ancestors(v)) | NatSet.subtree(v)

    def cantor(self):
        return True

    def describe(self):
        return "comparable"


class Explicit(PairSet):
    """A finite, mutable pair set with adjacency lists."""

    def __init__(self, pairs: Iterable[Pair] = ()):
        self.adj: dict = defaultdict(set)
        self.size = 0
        for p in pairs:
            self.add(p)

    def add(self, p: Pair) -> None:
        u, v = p
        if v not in self.adj[u]:
            self.adj[u].add(v)
            self.adj[v].add(u)
            self.size += 1

    def discard(self, p: Pair) -> None:
        u, v = p
        if v in self.adj.get(u, ()):
            self.adj[u].discard(v)
            self.adj[v].discard(u)
            for x in (u, v):
                if not self.adj[x]:
                    del self.adj[x]
            self.size -= 1

    def pairs(self) -> list:
        return sorted(pair(u, v) for u, vs in self.adj.items() for v in vs if u < v)

    def contains(self, u, v):
        return v in self.adj.get(u, ())

    def nbr(self, v):
        return NatSet.finite(self.adj.get(v, ()))

    def degree(self, v) -> int:
        return len(self.adj.get(v, ()))

    def specials(self):
        return set(self.adj)

    def describe(self):
        ps = self.pairs()
        if len(ps) > 8:
            return f"pairs[{len(ps)}]"
        return "pairs{" + ",".join(f"{u}-{v}" for u, v in ps) + "}"


class Union(PairSet):
    def __init__(self, parts: Iterable[PairSet]):
        flat = []
        for p in parts:
            flat.extend(p.parts if isinstance(p, Union) else [p])
        self.parts = flat
        self._nbr: dict = {}

    def contains(self, u, v):
        return any(p.contains(u, v) for p in self.parts)

    def nbr(self, v):
        got = self._nbr.get(v)
        if got is None:
            got = NatSet.union_all(p.nbr(v) for p in self.parts)
            if len(self._nbr) < 1 << 14:
                self._nbr[v] = got
        return got

    def specials(self):
        return set().union(*(p.specials() for p in self.parts))

    def period(self):
        return math.lcm(1, *(p.period() for p in self.parts))

    def cantor(self):
        return any(p.cantor() for p in self.parts)

    def describe(self):
        return "(" + " | ".join(p.describe() for p in self.parts) + ")" if self.parts else "none"


class _Binary(PairSet):
    def __init__(self, a: PairSet, b: PairSet):
        self.a, self.b = a, b

    def specials(self):
        return self.a.specials() | self.b.specials()

    def period(self):
        return math.lcm(self.a.period(), self.b.period())

    def cantor(self):
        return self.a.cantor() or self.b.cantor()


class Inter(_Binary):
    def contains(self, u, v):
        return self.a.contains(u, v) and self.b.contains(u, v)

    def nbr(self, v):
        return self.a.nbr(v) & self.b.nbr(v)

    def describe(self):
        return f"({self.a.describe()} & {self.b.describe()})"


class Diff(_Binary):
    def contains(self, u, v):
        return self.a.contains(u, v) and not self.b.contains(u, v)

    def nbr(self, v):
        return self.a.nbr(v) - self.b.nbr(v)

    def describe(self):
        return f"({self.a.describe()} - {self.b.describe()})"


class RegionSet(PairSet):
    """Union of primitives with finite edits; removals win over additions."""

    def __init__(self, primitives: Iterable[PairSet] = (), plus: Iterable[Pair] = (), minus: Iterable[Pair] = ()):
        self.primitives = list(primitives)
        self.plus = Explicit(pair(*p) for p in plus)
        self.minus = Explicit(pair(*p) for p in minus)

    def contains(self, u, v):
        if u == v or self.minus.contains(u, v):
            return False
        return self.plus.contains(u, v) or any(p.contains(u, v) for p in self.primitives)

    def nbr(self, v):
        out = self.plus.nbr(v)
        for p in self.primitives:
            out = out | p.nbr(v)
        drop = self.minus.adj.get(v)
        return out.minus(drop) if drop else out

    def union(self, other: "RegionSet") -> "RegionSet":
        r = RegionSet(self.primitives + other.primitives)
        # an edit survives when both sides agree on it
        for side in (self, other):
            for p in side.plus.pairs():
                if not side.minus.contains(*p):
                    r.plus.add(p)
        for p in self.minus.pairs():
            if not other.contains(*p):
                r.minus.add(p)
        for p in other.minus.pairs():
            if not self.contains(*p):
                r.minus.add(p)
        for p in r.plus.pairs():
            if r.minus.contains(*p):
                r.minus.discard(p)
        return r

    def specials(self):
        out = self.plus.specials() | self.minus.specials()
        for p in self.primitives:
            out |= p.specials()
        return out

    def period(self):
        return math.lcm(1, *(p.period() for p in self.primitives))

    def cantor(self):
        return any(p.cantor() for p in self.primitives)

    def describe(self):
        parts = [p.describe() for p in self.primitives]
        if self.plus.size:
            parts.append("+" + self.plus.describe())
        text = " | ".join(parts) if parts else "none"
        if self.minus.size:
            text += " -" + self.minus.describe()
        return text
