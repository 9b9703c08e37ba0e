"""Exact minimax for finite probe games.

States are bitmask pairs (edges, nonedges) over the sorted allowed pairs.
The payoff of a finished game is the number of determined pairs; Alice
minimises it and Bob maximises it, so the root value is both the
decision-tree complexity on the board and, compared with the number of
allowed pairs, the winner under the all-pairs rule.
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from typing import Optional

from .canon import MAX_CANONICAL_N, keyer_for
from .engine import ALL_PAIRS, FamilyKind, LargeFamily, family_membership
from .graph import (
    FiniteGraph,
    FinitePregraph,
    Pair,
    all_components_two_edge_connected,
    graphs_up_to_isomorphism,
)
from .properties import Property, Status, cycle, holds, terminal_status

DEFAULT_PAIR_BOUND = 15


class SizeBoundExceeded(ValueError):
    pass


def _memo_limit() -> Optional[int]:
    raw = os.environ.get("EVADE_MEMO_LIMIT")
    if not raw:
        return None
    if not raw.isdigit():
        raise ValueError(f"EVADE_MEMO_LIMIT must be a non-negative integer, got {raw!r}")
    return int(raw)


@dataclass
class SolveResult:
    winner: str
    value: int
    strongly_elusive: bool
    optimal_first_probes: list
    allowed_pairs: int
    states: int = 0

    def to_dict(self) -> dict:
        return {
            "winner": self.winner,
            "value": self.value,
            "strongly_elusive": self.strongly_elusive,
            "optimal_first_probes": [list(p) for p in self.optimal_first_probes],
            "allowed_pairs": self.allowed_pairs,
        }


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class GameTree:
    """Position evaluation for one (allowed graph, property, family) instance."""

    def __init__(self, allowed: FiniteGraph, prop: Property, family: LargeFamily = ALL_PAIRS,
                 memo: bool = True, pair_bound: int = DEFAULT_PAIR_BOUND):
        self.g = allowed
        self.prop = prop
        self.family = family
        self.pairs = sorted(allowed.edges)
        self.m = len(self.pairs)
        if self.m > pair_bound:
            raise SizeBoundExceeded(
                f"size bound exceeded: {self.m} allowed pairs, bound is {pair_bound}"
            )
        if family.kind is FamilyKind.INFINITE_CLIQUE:
            raise ValueError("the infinite-clique family cannot decide a finite game")
        self.full = (1 << self.m) - 1
        self.memo_on = memo
        self.limit = _memo_limit()
        # automorphisms of the allowed graph are computed per instance
        self.keyer = keyer_for(allowed) if allowed.n <= MAX_CANONICAL_N else None
        self.values: dict = {}
        self.wins: dict = {}
        self.statuses: dict = {}
        # terminal status by exact position; a property lookup, never a game value
        self.raw_status: dict = {}

    # -- position helpers
    def key(self, e: int, nm: int):
        if self.keyer is not None:
            return self.keyer.key_masks(e, nm)
        return (e, nm)

    def edges_of(self, mask: int) -> frozenset:
        return frozenset(self.pairs[i] for i in _bits(mask))

    def pregraph(self, e: int, nm: int) -> FinitePregraph:
        return FinitePregraph(self.g, self.edges_of(e), self.edges_of(nm))

    def status(self, e: int, nm: int, key=None) -> Status:
        if key is not None and key in self.statuses:
            return self.statuses[key]
        if self.prop.monotone:
            if holds(self.prop, FiniteGraph(self.g.n, self.edges_of(e))):
                st = Status.FORCED_TRUE
            elif not holds(self.prop, FiniteGraph(self.g.n, self.edges_of(self.full & ~nm))):
                st = Status.FORCED_FALSE
            else:
                st = Status.OPEN
        else:
            st = terminal_status(self.prop, self.pregraph(e, nm))
        if key is not None and self._room(self.statuses):
            self.statuses[key] = st
        return st

    def _room(self, table) -> bool:
        return self.limit is None or len(table) < self.limit

    def member(self, e: int, nm: int) -> bool:
        return bool(family_membership(self.edges_of(e | nm), self.family, self.g).value)

    # -- exact value (memoised)
    def value(self, e: int = 0, nm: int = 0) -> int:
        key = self.key(e, nm) if self.memo_on else None
        if key is not None and key in self.values:
            return self.values[key]
        done = (e | nm).bit_count()
        if self.status(e, nm, key) is not Status.OPEN:
            v = done
        else:
            best = self.m + 1
            floor = done + 1
            for i in _bits(self.full & ~(e | nm)):
                b = 1 << i
                v1 = self.value(e | b, nm)
                if v1 < best and v1 < self.m:
                    v1 = max(v1, self.value(e, nm | b))
                if v1 < best:
                    best = v1
                    if best == floor:
                        break
            v = best
        if key is not None and self._room(self.values):
            self.values[key] = v
        return v

    # -- plain alpha-beta, no table
    def alphabeta(self, e: int = 0, nm: int = 0, alpha: int = -1, beta: int = 1 << 30) -> int:
        """Exact value by alpha-beta search without a value table.

        Only terminal statuses are cached (a property lookup, not a game
        value).  Values of open positions lie in [done + 1, m], so reaching
        either end is an exact cutoff.
        """
        raw = self.raw_status
        status = self.status
        m, full = self.m, self.full
        bits = [1 << i for i in range(m)]
        OPEN = Status.OPEN

        def search(e: int, nm: int, alpha: int, beta: int) -> int:
            st = raw.get((e, nm))
            if st is None:
                st = raw[(e, nm)] = status(e, nm)
            done = (e | nm).bit_count()
            if st is not OPEN:
                return done
            v = m
            floor = done + 1
            free = full & ~(e | nm)
            for b in bits:
                if not free & b:
                    continue
                cap = beta if beta < v else v
                w = search(e | b, nm, max(alpha, -1), cap)
                if w < cap:
                    w = max(w, search(e, nm | b, max(alpha, w), cap))
                if w < v:
                    v = w
                if v <= alpha or v == floor:
                    break
            return v

        return search(e, nm, alpha, beta)

    # -- Bob wins iff the probed set ends in the family
    def bob_wins(self, e: int = 0, nm: int = 0) -> bool:
        if self.family.kind is FamilyKind.ALL_PAIRS:
            return self.value(e, nm) == self.m
        key = self.key(e, nm) if self.memo_on else None
        if key is not None and key in self.wins:
            return self.wins[key]
        if self.status(e, nm, key) is not Status.OPEN:
            w = self.member(e, nm)
        else:
            w = all(
                self.bob_wins(e | (1 << i), nm) or self.bob_wins(e, nm | (1 << i))
                for i in _bits(self.full & ~(e | nm))
            )
        if key is not None and self._room(self.wins):
            self.wins[key] = w
        return w

    # -- extracted optimal strategies
    def alice_move(self, e: int, nm: int) -> Optional[int]:
        """Index of the lexicographically smallest probe achieving the position value."""
        target = self.value(e, nm)
        for i in range(self.m):
            b = 1 << i
            if (e | nm) & b:
                continue
            if max(self.value(e | b, nm), self.value(e, nm | b)) == target:
                return i
        return None

    def bob_answer(self, e: int, nm: int, i: int) -> bool:
        b = 1 << i
        return self.value(e | b, nm) >= self.value(e, nm | b)

    def optimal_first_probes(self) -> list:
        if self.status(0, 0) is not Status.OPEN:
            return []
        target = self.value()
        return [
            self.pairs[i]
            for i in range(self.m)
            if max(self.value(1 << i, 0), self.value(0, 1 << i)) == target
        ]


def solve(allowed: FiniteGraph, prop: Property, family: LargeFamily = ALL_PAIRS,
          memo: bool = True, pair_bound: int = DEFAULT_PAIR_BOUND) -> SolveResult:
    tree = GameTree(allowed, prop, family, memo=memo, pair_bound=pair_bound)
    value = tree.value() if memo else tree.alphabeta()
    if family.kind is FamilyKind.ALL_PAIRS:
        bob = value == tree.m
    else:
        bob = tree.bob_wins()
    firsts = tree.optimal_first_probes() if memo else []
    return SolveResult(
        winner="Bob" if bob else "Alice",
        value=value,
        strongly_elusive=value == tree.m,
        optimal_first_probes=firsts,
        allowed_pairs=tree.m,
        states=len(tree.values),
    )


def decision_tree_complexity(prop: Property, n: int) -> int:
    if n > 6:
        raise SizeBoundExceeded(f"size bound exceeded: n={n}, the complete-graph bound is 6")
    if n < 2:
        return 0
    return GameTree(FiniteGraph.complete(n), prop).value()


def play_optimal(allowed: FiniteGraph, prop: Property, family: LargeFamily = ALL_PAIRS):
    """Play the extracted optimal seeker against the extracted optimal hider; returns (winner, determined)."""
    tree = GameTree(allowed, prop, family)
    e = nm = 0
    while tree.status(e, nm) is Status.OPEN:
        i = tree.alice_move(e, nm)
        if tree.bob_answer(e, nm, i):
            e |= 1 << i
        else:
            nm |= 1 << i
    if family.kind is FamilyKind.ALL_PAIRS:
        bob = (e | nm) == tree.full
    else:
        bob = tree.member(e, nm)
    return ("Bob" if bob else "Alice"), (e | nm).bit_count()


def min_probes_against(allowed: FiniteGraph, prop: Property, hider) -> int:
    """Fewest determined pairs at termination over every seeker order against a fixed hider.

    The hider must be a pure function of (position, probe); ``hider(edges, nonedges, probe)``.
    """
    tree = GameTree(allowed, prop, pair_bound=64)
    seen: dict = {}

    def go(e: int, nm: int) -> int:
        k = (e, nm)
        if k in seen:
            return seen[k]
        if tree.status(e, nm) is not Status.OPEN:
            r = (e | nm).bit_count()
        else:
            r = tree.m
            E, N = tree.edges_of(e), tree.edges_of(nm)
            for i in _bits(tree.full & ~(e | nm)):
                b = 1 << i
                child = (e | b, nm) if hider(E, N, tree.pairs[i]) else (e, nm | b)
                r = min(r, go(*child))
        seen[k] = r
        return r

    return go(0, 0)


@dataclass
class EquivalenceReport:
    checked: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def random_graphs(n: int, count: int, seed: int = 0, density: float = 0.5) -> list:
    rng = random.Random(seed)
    pairs = [(i, j) for j in range(n) for i in range(j)]
    return [FiniteGraph(n, frozenset(p for p in pairs if rng.random() < density)) for _ in range(count)]


def verify_cycle_equivalence(max_n: int = 5, extra: Optional[list] = None) -> EquivalenceReport:
    """Bob wins the cycle game on H iff every component of H is 2-edge-connected."""
    if max_n > 6:
        raise SizeBoundExceeded(f"size bound exceeded: max_n={max_n}, bound is 6")
    report = EquivalenceReport()
    graphs = [g for v in range(1, max_n + 1) for g in graphs_up_to_isomorphism(v)]
    graphs += list(extra or [])
    for g in graphs:
        bob = solve(g, cycle()).winner == "Bob"
        if bob != all_components_two_edge_connected(g):
            report.counterexamples.append(g)
        report.checked += 1
    return report
