"""Finite graphs, pregraphs and the structural predicates the games need.

Vertices are dense integer ids ``0..n-1``.  A pair is a normalized tuple
``(u, v)`` with ``u < v``; every function that accepts a pair accepts the
endpoints in either order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

Pair = tuple[int, int]


def pair(u: int, v: int) -> Pair:
    if u == v:
        raise ValueError(f"a pair needs two distinct vertices, got {u} twice")
    return (u, v) if u < v else (v, u)


def all_pairs(n: int) -> list[Pair]:
    return list(itertools.combinations(range(n), 2))


@dataclass(frozen=True)
class FiniteGraph:
    n: int
    edges: frozenset = frozenset()

    def __post_init__(self):
        edges = frozenset(pair(*e) for e in self.edges)
        for u, v in edges:
            if v >= self.n or u < 0:
                raise ValueError(f"edge {(u, v)} outside vertex range 0..{self.n - 1}")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def complete(cls, n: int) -> "FiniteGraph":
        return cls(n, frozenset(all_pairs(n)))

    @classmethod
    def empty(cls, n: int) -> "FiniteGraph":
        return cls(n)

    @classmethod
    def path(cls, n: int) -> "FiniteGraph":
        return cls(n, frozenset((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> "FiniteGraph":
        return cls(n, frozenset(pair(i, (i + 1) % n) for i in range(n)))

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def has_edge(self, u: int, v: int) -> bool:
        return pair(u, v) in self.edges

    def with_edges(self, extra: Iterable[Pair]) -> "FiniteGraph":
        return FiniteGraph(self.n, self.edges | frozenset(pair(*e) for e in extra))

    def without_edges(self, removed: Iterable[Pair]) -> "FiniteGraph":
        return FiniteGraph(self.n, self.edges - frozenset(pair(*e) for e in removed))

    def relabel(self, perm) -> "FiniteGraph":
        return FiniteGraph(self.n, frozenset(pair(perm[u], perm[v]) for u, v in self.edges))

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class FinitePregraph:
    """An H-pregraph: confirmed edges and nonedges inside the allowed graph."""

    allowed: FiniteGraph
    edges: frozenset = frozenset()
    nonedges: frozenset = frozenset()

    def __post_init__(self):
        edges = frozenset(pair(*e) for e in self.edges)
        nonedges = frozenset(pair(*e) for e in self.nonedges)
        if edges & nonedges:
            raise ValueError(f"pairs both edge and nonedge: {sorted(edges & nonedges)}")
        stray = (edges | nonedges) - self.allowed.edges
        if stray:
            raise ValueError(f"determined pairs outside the allowed graph: {sorted(stray)}")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "nonedges", nonedges)

    @classmethod
    def empty_on(cls, allowed: FiniteGraph) -> "FinitePregraph":
        return cls(allowed)

    @property
    def n(self) -> int:
        return self.allowed.n

    @property
    def determined(self) -> frozenset:
        return self.edges | self.nonedges

    @property
    def undetermined(self) -> frozenset:
        return self.allowed.edges - self.edges - self.nonedges

    def gmin(self) -> FiniteGraph:
        return FiniteGraph(self.n, self.edges)

    def gmax(self) -> FiniteGraph:
        return FiniteGraph(self.n, self.allowed.edges - self.nonedges)

    def is_determined(self, e: Pair) -> bool:
        e = pair(*e)
        return e in self.edges or e in self.nonedges

    def answer(self, e: Pair, is_edge: bool) -> "FinitePregraph":
        e = pair(*e)
        if e not in self.allowed.edges:
            raise ValueError(f"pair {e} is not allowed")
        if self.is_determined(e):
            raise ValueError(f"pair {e} is already determined")
        if is_edge:
            return FinitePregraph(self.allowed, self.edges | {e}, self.nonedges)
        return FinitePregraph(self.allowed, self.edges, self.nonedges | {e})

    def relabel(self, perm) -> "FinitePregraph":
        return FinitePregraph(
            self.allowed.relabel(perm),
            frozenset(pair(perm[u], perm[v]) for u, v in self.edges),
            frozenset(pair(perm[u], perm[v]) for u, v in self.nonedges),
        )


# -- structural predicates ---------------------------------------------------


class UnionFind:
    def __init__(self, items: Iterable[int] = ()):
        self.parent: dict[int, int] = {}
        self.size: dict[int, int] = {}
        for x in items:
            self.add(x)

    def add(self, x: int) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self.size[x] = 1

    def find(self, x: int) -> int:
        self.add(x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True

    def connected(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)

    def copy(self) -> "UnionFind":
        uf = UnionFind()
        uf.parent = dict(self.parent)
        uf.size = dict(self.size)
        return uf


def has_cycle(g: FiniteGraph) -> bool:
    uf = UnionFind(range(g.n))
    return any(not uf.union(u, v) for u, v in g.edges)


def components(g: FiniteGraph) -> list[frozenset]:
    adj = g.adjacency()
    seen = [False] * g.n
    parts = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        stack, comp = [start], [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
                    comp.append(w)
        parts.append(frozenset(comp))
    return parts


def component_size_at_least(g: FiniteGraph, v: int, m: int) -> bool:
    if m <= 1:
        return True
    adj = g.adjacency()
    seen = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                if len(seen) >= m:
                    return True
                stack.append(w)
    return False


def is_connected(g: FiniteGraph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def bridges(g: FiniteGraph) -> list[Pair]:
    """Bridges via iterative low-link DFS."""
    adj = g.adjacency()
    order = [-1] * g.n
    low = [0] * g.n
    found = []
    counter = 0
    for root in range(g.n):
        if order[root] != -1:
            continue
        order[root] = low[root] = counter
        counter += 1
        stack = [(root, -1, iter(sorted(adj[root])))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if order[w] == -1:
                    order[w] = low[w] = counter
                    counter += 1
                    stack.append((w, u, iter(sorted(adj[w]))))
                    advanced = True
                    break
                low[u] = min(low[u], order[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[u])
                if low[u] > order[p]:
                    found.append(pair(p, u))
    return sorted(found)


def all_components_two_edge_connected(g: FiniteGraph) -> bool:
    return not bridges(g)


def is_bridge(g: FiniteGraph, e: Pair) -> bool:
    return pair(*e) in set(bridges(g))


def has_odd_cycle(g: FiniteGraph) -> bool:
    adj = g.adjacency()
    colour = [-1] * g.n
    for start in range(g.n):
        if colour[start] != -1:
            continue
        colour[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if colour[w] == -1:
                    colour[w] = 1 - colour[u]
                    stack.append(w)
                elif colour[w] == colour[u]:
                    return True
    return False


def has_clique(g: FiniteGraph, k: int) -> bool:
    adj = g.adjacency()

    def extend(clique: list[int], candidates: list[int]) -> bool:
        if len(clique) == k:
            return True
        for i, v in enumerate(candidates):
            if len(clique) + len(candidates) - i < k:
                return False
            if extend(clique + [v], [w for w in candidates[i + 1:] if w in adj[v]]):
                return True
        return False

    return extend([], list(range(g.n)))


def largest_clique_size(vertices: Iterable[int], edges: set) -> int:
    verts = sorted(set(vertices))
    best = 0

    def grow(size: int, candidates: list[int]) -> None:
        nonlocal best
        best = max(best, size)
        for i, v in enumerate(candidates):
            if size + len(candidates) - i <= best:
                return
            grow(size + 1, [w for w in candidates[i + 1:] if pair(v, w) in edges])

    grow(0, verts)
    return best


# -- scorpions ---------------------------------------------------------------


@dataclass(frozen=True)
class ScorpionWitness:
    sting: int
    tail: int
    body: int


def is_scorpion_triple(g: FiniteGraph, s: int, t: int, b: int, adj=None) -> bool:
    """Literal check of the three scorpion clauses for the triple (s, t, b)."""
    if len({s, t, b}) < 3:
        return False
    adj = adj if adj is not None else g.adjacency()
    if adj[s] != {t}:
        return False
    if adj[t] != {s, b}:
        return False
    return adj[b] == set(range(g.n)) - {s, b}


def recognize_scorpion(g: FiniteGraph) -> Optional[ScorpionWitness]:
    adj = g.adjacency()
    for s in range(g.n):
        if len(adj[s]) != 1:
            continue
        (t,) = adj[s]
        for b in adj[t] - {s}:
            if is_scorpion_triple(g, s, t, b, adj):
                return ScorpionWitness(s, t, b)
    return None


def scorpion_by_brute_force(g: FiniteGraph) -> Optional[ScorpionWitness]:
    adj = g.adjacency()
    for s, t, b in itertools.permutations(range(g.n), 3):
        if is_scorpion_triple(g, s, t, b, adj):
            return ScorpionWitness(s, t, b)
    return None


def scorpion_figure_graph() -> FiniteGraph:
    """Sting 0, tail 1, body 2, a row 3..7 joined to the body, row edges 3-4 and 5-6."""
    edges = {(0, 1), (1, 2)} | {(2, r) for r in range(3, 8)} | {(3, 4), (5, 6)}
    return FiniteGraph(8, frozenset(edges))


# -- enumeration -------------------------------------------------------------


def all_graphs(n: int) -> Iterator[FiniteGraph]:
    pairs = all_pairs(n)
    for mask in range(1 << len(pairs)):
        yield FiniteGraph(n, frozenset(p for i, p in enumerate(pairs) if mask >> i & 1))


def graphs_up_to_isomorphism(n: int) -> list[FiniteGraph]:
    from .canon import graph_certificate

    seen = {}
    for g in all_graphs(n):
        cert = graph_certificate(g)
        if cert not in seen:
            seen[cert] = g
    return list(seen.values())


# -- DOT ---------------------------------------------------------------------


def graph_to_dot(g: FiniteGraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in range(g.n)]
    lines += [f"  {u} -- {v};" for u, v in sorted(g.edges)]
    lines.append("}")
    return "\n".join(lines)


def pregraph_to_dot(pg: FinitePregraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in range(pg.n)]
    for u, v in sorted(pg.allowed.edges):
        if (u, v) in pg.edges:
            style = "solid"
        elif (u, v) in pg.nonedges:
            style = "dashed"
        else:
            style = "dotted"
        lines.append(f"  {u} -- {v} [style={style}];")
    lines.append("}")
    return "\n".join(lines)
