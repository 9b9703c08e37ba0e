"""Level functions w(a, E) with witness sets W(a, E), their validators, covering sets.

A :class:`WFunction` reads the edge set only through a neighbour oracle
``nbrs(v) -> iterable``.  Both built-in functions stop reading after a
bounded number of neighbours, so they also work when neighbourhoods are
infinite lazy sets (see :mod:`evade.omega`).
"""
from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .boards import Board, FiniteExplicit, as_board
from .graph import FiniteGraph, Pair

Nbrs = Callable[[int], Iterable[int]]


@dataclass(frozen=True)
class WFunction:
    name: str
    n: int
    K: int
    M: int
    value: Callable[[int, Nbrs], int]
    witness: Callable[[int, Nbrs], frozenset]

    def __repr__(self) -> str:
        return f"WFunction({self.name})"

    def target_property(self):
        """The property 'every vertex reaches level n'."""
        from .properties import min_component, min_degree

        kind, _, arg = self.name.partition(":")
        if kind == "dmin":
            return min_degree(int(arg))
        if kind == "cmin":
            return min_component(int(arg))
        raise ValueError(f"{self.name} has no named property")


def _capped_component(a: int, nbrs: Nbrs, cap: int) -> set:
    seen = {a}
    queue = deque([a])
    while queue and len(seen) < cap:
        v = queue.popleft()
        for u in nbrs(v):
            if u not in seen:
                seen.add(u)
                queue.append(u)
                if len(seen) >= cap:
                    break
    return seen


def w_degree(m: int) -> WFunction:
    if m < 1:
        raise ValueError(f"w_degree needs m >= 1, got {m}")

    def value(a, nbrs):
        return sum(1 for _ in itertools.islice(nbrs(a), m))

    return WFunction(f"dmin:{m}", m, m, 1, value, lambda a, nbrs: frozenset({a}))


def w_component(n: int) -> WFunction:
    if n < 2:
        raise ValueError(f"w_component needs n >= 2, got {n}")

    def value(a, nbrs):
        return len(_capped_component(a, nbrs, n)) - 1

    def witness(a, nbrs):
        comp = _capped_component(a, nbrs, n)
        return frozenset(comp) if len(comp) < n else frozenset({a})

    return WFunction(f"cmin:{n}", n - 1, n - 1, n - 1, value, witness)


def parse_wfunction(spec: str) -> WFunction:
    kind, _, arg = spec.partition(":")
    if kind not in ("dmin", "cmin") or not arg.isdigit():
        raise ValueError(f"bad w-function spec {spec!r}; expected dmin:<m> or cmin:<n>")
    return w_degree(int(arg)) if kind == "dmin" else w_component(int(arg))


def edge_oracle(edges: Iterable[Pair], n: int) -> Nbrs:
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj.__getitem__


# ---------------------------------------------------------------- validation


@dataclass
class Violation:
    clause: str
    vertex: Optional[int]
    edges: tuple
    detail: str


@dataclass
class WReport:
    passed: bool = True
    checks: dict = field(default_factory=dict)
    violation: Optional[Violation] = None
    skipped: dict = field(default_factory=lambda: {"w6": "continuity is not finitely testable; skipped"})
    notes: list = field(default_factory=list)

    def count(self, clause: str, k: int = 1) -> None:
        self.checks[clause] = self.checks.get(clause, 0) + k

    def summary(self) -> str:
        if self.violation:
            v = self.violation
            return f"FAIL {v.clause} at vertex {v.vertex}: {v.detail} (edges {sorted(v.edges)})"
        parts = ", ".join(f"{c}:{k}" for c, k in sorted(self.checks.items()))
        return f"pass ({parts}); w6 skipped"


class _Stop(Exception):
    pass


def _check_config(wf: WFunction, allowed: FiniteGraph, E: frozenset, report: WReport, rng: random.Random) -> None:
    n = allowed.n
    V = range(n)

    def fail(clause, vertex, detail, edges=E):
        report.passed = False
        report.violation = Violation(clause, vertex, tuple(sorted(edges)), detail)
        raise _Stop

    nb = edge_oracle(E, n)
    val = [wf.value(a, nb) for a in V]
    W = [wf.witness(a, nb) for a in V]
    deg = [0] * n
    for u, v in E:
        deg[u] += 1
        deg[v] += 1

    for a in V:
        if deg[a] >= wf.K and val[a] != wf.n:
            fail("w2", a, f"degree {deg[a]} >= K={wf.K} but w={val[a]}")
        if a not in W[a]:
            fail("w4", a, "a is not in W(a,E)")
        if len(W[a]) > wf.M:
            fail("w4", a, f"|W(a,E)|={len(W[a])} exceeds M={wf.M}")
        if not 0 <= val[a] <= wf.n:
            fail("w4", a, f"value {val[a]} outside 0..{wf.n}")
        for b in W[a]:
            if W[b] != W[a] or val[b] != val[a]:
                fail("w4", a, f"{b} in W({a}) but W or w differ")
    report.count("w2", n)
    report.count("w4", n)

    # single-pair growth: w4 (locality), w5 (monotone), w7 (stable)
    for e in sorted(allowed.edges - E):
        E2 = E | {e}
        nb2 = edge_oracle(E2, n)
        val2 = [wf.value(a, nb2) for a in V]
        both_full = val[e[0]] == wf.n and val[e[1]] == wf.n
        for a in V:
            if val2[a] < val[a]:
                fail("w5", a, f"adding {e} lowered w from {val[a]} to {val2[a]}")
            if val2[a] > val[a] and e[0] not in W[a] and e[1] not in W[a]:
                fail("w4", a, f"adding {e} raised w but misses W(a,E)={sorted(W[a])}")
            if both_full and val2[a] != val[a]:
                fail("w7", a, f"adding {e} between two level-{wf.n} vertices changed w")
        report.count("w5", n)
        report.count("w7", n if both_full else 0)

    # w3 along a random chain ending at E: the value at the union is reached at a finite stage
    order = sorted(E)
    rng.shuffle(order)
    adj = [[] for _ in range(n)]
    best = [wf.value(a, adj.__getitem__) for a in V]
    for u, v in order:
        adj[u].append(v)
        adj[v].append(u)
        for a in V:
            best[a] = max(best[a], wf.value(a, adj.__getitem__))
    for a in V:
        if best[a] != val[a]:
            fail("w3", a, "value of the union is not attained along the chain")
    report.count("w3", n)


def _check_w1(wf: WFunction, allowed: FiniteGraph, report: WReport) -> None:
    n = allowed.n
    empty = edge_oracle((), n)
    for a in range(n):
        if wf.value(a, empty) != 0:
            report.passed = False
            report.violation = Violation("w1", a, (), f"w(a, empty) = {wf.value(a, empty)}, expected 0")
            raise _Stop
    report.count("w1", n)
    # w(a, E*) = n is only meaningful when the truncation is rich enough for level n
    if min(allowed.degrees(), default=0) >= wf.K:
        full = edge_oracle(allowed.edges, n)
        for a in range(n):
            if wf.value(a, full) != wf.n:
                report.passed = False
                report.violation = Violation("w1", a, tuple(sorted(allowed.edges)), "w(a, E*) below n")
                raise _Stop
        report.count("w1", n)
    elif "w1(ii)" not in " ".join(report.notes):
        report.notes.append("w1(ii) not applicable on truncations with a vertex of allowed degree < K")


def validate_w(wf: WFunction, allowed, sample_budget: int = 200, seed: int = 0, exhaustive: bool = False) -> WReport:
    """Check w1-w5 and w7 on edge sets inside ``allowed`` (a finite graph or ω-board truncation).

    ``exhaustive`` walks every edge subset; otherwise ``sample_budget``
    random subsets are drawn (each pair kept with a random density).
    """
    if isinstance(allowed, Board) and allowed.infinite:
        allowed = allowed.truncation(12)
    elif isinstance(allowed, Board):
        allowed = allowed.graph
    report = WReport()
    rng = random.Random(seed)
    try:
        _check_w1(wf, allowed, report)
        pairs = sorted(allowed.edges)
        if exhaustive:
            configs = (
                frozenset(p for i, p in enumerate(pairs) if mask >> i & 1)
                for mask in range(1 << len(pairs))
            )
        else:
            def sample():
                for _ in range(sample_budget):
                    dens = rng.random()
                    yield frozenset(p for p in pairs if rng.random() < dens)
            configs = sample()
        for E in configs:
            _check_config(wf, allowed, E, report, rng)
    except _Stop:
        pass
    return report


def validate_w_all_graphs(wf: WFunction, max_n: int = 5) -> WReport:
    """Exhaustive validation with K_v allowed for every v <= max_n (all edge sets)."""
    total = WReport()
    for v in range(1, max_n + 1):
        r = validate_w(wf, FiniteGraph.complete(v), exhaustive=True)
        for c, k in r.checks.items():
            total.count(c, k)
        total.notes.extend(x for x in r.notes if x not in total.notes)
        if not r.passed:
            total.passed = False
            total.violation = r.violation
            break
    return total


def level_equivalence(wf: WFunction, g: FiniteGraph) -> bool:
    """Whether 'every vertex at level n' agrees with the named property on g."""
    from .properties import holds

    nb = edge_oracle(g.edges, g.n)
    all_full = all(wf.value(a, nb) == wf.n for a in range(g.n))
    return all_full == holds(wf.target_property(), g)


# ------------------------------------------------------------ covering sets


def covering_set(allowed, excluded: Iterable[int]) -> frozenset:
    """A finite L avoiding ``excluded`` such that every vertex outside L has an allowed pair into L."""
    board = as_board(allowed)
    excluded = set(excluded)
    L = board.covering_set(excluded)
    assert not (L & excluded)
    return L


def is_covering(g: FiniteGraph, L: Iterable[int]) -> bool:
    L = set(L)
    adj = g.adjacency()
    return all(v in L or adj[v] & L for v in range(g.n))


def braided_check(allowed, trials: int = 50, seed: int = 0, window: int = 64) -> bool:
    """Finite sanity check of braidedness.

    ω-boards: sampled excluded sets inside the window, the covering set from
    :func:`covering_set` is checked against the adjacency rule on the window.
    Finite graphs: for sampled W with |W| < |V| (random sets and closed
    neighbourhoods) a covering set disjoint from W must exist; V minus W is the
    largest candidate, so testing it decides existence.
    """
    rng = random.Random(seed)
    if isinstance(allowed, FiniteGraph):
        allowed = FiniteExplicit(allowed)
    if not allowed.infinite:
        g = allowed.graph
        adj = g.adjacency()
        samples = [frozenset(adj[v] | {v}) for v in range(g.n)]
        samples += [frozenset(rng.sample(range(g.n), rng.randint(0, max(0, g.n // 2)))) for _ in range(trials)]
        for W in samples:
            if len(W) >= g.n:
                continue
            if not is_covering(g, set(range(g.n)) - W):
                return False
        return True
    g = allowed.truncation(window)
    for _ in range(trials):
        W = set(rng.sample(range((window + 1) // 2 - 1), rng.randint(0, 5)))
        L = covering_set(allowed, W)
        if L & W or max(L) >= window:
            return False
        if not is_covering(g, L):
            return False
    return True
