"""Graph properties and the tri-state terminal evaluator that ends a game."""
from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from typing import Optional

from .graph import (
    FiniteGraph,
    FinitePregraph,
    all_pairs,
    components,
    has_clique,
    has_cycle,
    has_odd_cycle,
    is_connected,
    is_scorpion_triple,
    pair,
    recognize_scorpion,
    scorpion_figure_graph,
)

DEFAULT_EXTENSION_BOUND = 20


class Kind(enum.Enum):
    CYCLE = "cycle"
    MIN_DEGREE = "dmin"
    MIN_COMPONENT = "cmin"
    CONNECTED = "connected"
    SCORPION = "scorpion"
    STAR = "star"
    CLIQUE = "clique"
    P3 = "p3"
    NOT_BIPARTITE = "notbipartite"


_PARAM_MIN = {Kind.MIN_DEGREE: 1, Kind.MIN_COMPONENT: 2, Kind.STAR: 1, Kind.CLIQUE: 3}


class Status(enum.Enum):
    FORCED_TRUE = "ForcedTrue"
    FORCED_FALSE = "ForcedFalse"
    OPEN = "Open"


class UndecidableAtBound(ValueError):
    pass


@dataclass(frozen=True)
class Property:
    kind: Kind
    param: Optional[int] = None

    def __post_init__(self):
        lo = _PARAM_MIN.get(self.kind)
        if lo is None:
            if self.param is not None:
                raise ValueError(f"{self.kind.value} takes no parameter")
        elif self.param is None or self.param < lo:
            raise ValueError(f"{self.kind.value} needs an integer parameter >= {lo}, got {self.param}")

    @property
    def monotone(self) -> bool:
        return self.kind is not Kind.SCORPION

    def __str__(self) -> str:
        return self.kind.value if self.param is None else f"{self.kind.value}:{self.param}"

    @classmethod
    def parse(cls, spec: str) -> "Property":
        name, _, arg = spec.strip().partition(":")
        try:
            kind = Kind(name)
        except ValueError:
            raise ValueError(
                f"unknown property {spec!r}; expected one of cycle, dmin:<n>, cmin:<m>, "
                "connected, scorpion, star:<n>, clique:<k>, p3, notbipartite"
            ) from None
        if kind in _PARAM_MIN:
            if not arg.isdigit():
                raise ValueError(f"property {name} needs an integer argument, e.g. {name}:2")
            return cls(kind, int(arg))
        if arg:
            raise ValueError(f"property {name} takes no argument")
        return cls(kind)


def cycle() -> Property:
    return Property(Kind.CYCLE)


def min_degree(n: int) -> Property:
    return Property(Kind.MIN_DEGREE, n)


def min_component(m: int) -> Property:
    return Property(Kind.MIN_COMPONENT, m)


def connected() -> Property:
    return Property(Kind.CONNECTED)


def scorpion() -> Property:
    return Property(Kind.SCORPION)


def star(n: int) -> Property:
    return Property(Kind.STAR, n)


def holds(prop: Property, g: FiniteGraph) -> bool:
    k = prop.kind
    if k is Kind.CYCLE:
        return has_cycle(g)
    if k is Kind.MIN_DEGREE:
        return all(d >= prop.param for d in g.degrees())
    if k is Kind.MIN_COMPONENT:
        return all(len(c) >= prop.param for c in components(g))
    if k is Kind.CONNECTED:
        return is_connected(g)
    if k is Kind.SCORPION:
        return recognize_scorpion(g) is not None
    if k is Kind.STAR:
        return max(g.degrees(), default=0) >= prop.param
    if k is Kind.CLIQUE:
        return has_clique(g, prop.param)
    if k is Kind.P3:
        return max(g.degrees(), default=0) >= 2
    if k is Kind.NOT_BIPARTITE:
        return has_odd_cycle(g)
    raise AssertionError(k)


def scorpion_triple_feasible(pg: FinitePregraph, s: int, t: int, b: int) -> bool:
    """Whether some extension of ``pg`` is a scorpion with sting s, tail t, body b."""
    if len({s, t, b}) < 3:
        return False
    allowed, E, N = pg.allowed.edges, pg.edges, pg.nonedges

    def can_be_edge(u, v):
        p = pair(u, v)
        return p in allowed and p not in N

    def can_be_nonedge(u, v):
        return pair(u, v) not in E

    for v in range(pg.n):
        if v == s:
            continue
        if v == t:
            if not can_be_edge(s, t):
                return False
        elif not can_be_nonedge(s, v):
            return False
    for v in range(pg.n):
        if v in (t, s, b):
            continue
        if not can_be_nonedge(t, v) or not can_be_edge(b, v):
            return False
    return can_be_edge(t, b)


def _scorpion_status(pg: FinitePregraph, bound: int) -> Status:
    n = pg.n
    feasible = [
        (s, t, b)
        for s, t, b in itertools.permutations(range(n), 3)
        if scorpion_triple_feasible(pg, s, t, b)
    ]
    if not feasible:
        return Status.FORCED_FALSE
    adj_allowed = pg.allowed.adjacency()
    gmin = pg.gmin()
    adj = gmin.adjacency()
    for s, t, b in feasible:
        incident = {pair(x, v) for x in (s, t, b) for v in adj_allowed[x]}
        if incident <= pg.determined and is_scorpion_triple(gmin, s, t, b, adj):
            return Status.FORCED_TRUE
    undetermined = sorted(pg.undetermined)
    if len(undetermined) > bound:
        raise UndecidableAtBound(
            f"undecidable at this bound: scorpion status needs {len(undetermined)} "
            f"undetermined pairs enumerated, bound is {bound}"
        )
    seen_true = seen_false = False
    for mask in range(1 << len(undetermined)):
        extra = [p for i, p in enumerate(undetermined) if mask >> i & 1]
        if recognize_scorpion(gmin.with_edges(extra)) is not None:
            seen_true = True
        else:
            seen_false = True
        if seen_true and seen_false:
            return Status.OPEN
    return Status.FORCED_TRUE if seen_true else Status.FORCED_FALSE


def terminal_status(prop: Property, pg: FinitePregraph, bound: int = DEFAULT_EXTENSION_BOUND) -> Status:
    if prop.kind is Kind.SCORPION:
        return _scorpion_status(pg, bound)
    if not prop.monotone:
        raise UndecidableAtBound(f"no terminal evaluator for {prop}")
    if holds(prop, pg.gmin()):
        return Status.FORCED_TRUE
    if not holds(prop, pg.gmax()):
        return Status.FORCED_FALSE
    return Status.OPEN


def brute_force_status(prop: Property, pg: FinitePregraph) -> Status:
    """Reference evaluator: enumerate every extension of the pregraph."""
    undetermined = sorted(pg.undetermined)
    gmin = pg.gmin()
    outcomes = set()
    for mask in range(1 << len(undetermined)):
        extra = [p for i, p in enumerate(undetermined) if mask >> i & 1]
        outcomes.add(holds(prop, gmin.with_edges(extra)))
        if len(outcomes) == 2:
            return Status.OPEN
    return Status.FORCED_TRUE if outcomes == {True} else Status.FORCED_FALSE


@dataclass
class MonotonicityReport:
    monotone: bool
    counterexample: Optional[tuple[FiniteGraph, FiniteGraph]] = None


def monotonicity_check(prop: Property, sample_budget: int = 200, seed: int = 0) -> MonotonicityReport:
    """Sample graphs with the property, add random edges, look for a graph that loses it."""
    rng = random.Random(seed)
    seeds = []
    if prop.kind is Kind.SCORPION:
        seeds.append(scorpion_figure_graph())
    for _ in range(sample_budget):
        n = rng.randint(1, 8)
        pairs = all_pairs(n)
        g = FiniteGraph(n, frozenset(p for p in pairs if rng.random() < rng.random()))
        seeds.append(g)
    for g in seeds:
        if not holds(prop, g):
            continue
        missing = sorted(FiniteGraph.complete(g.n).edges - g.edges)
        rng.shuffle(missing)
        for k in range(1, len(missing) + 1):
            bigger = g.with_edges(missing[:k])
            if not holds(prop, bigger):
                return MonotonicityReport(False, (g, bigger))
    return MonotonicityReport(True)
