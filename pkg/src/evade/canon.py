"""Exact canonical keys for small pregraphs (solver memoization).

A key is the minimum, over all automorphisms of the allowed graph, of the
permuted (edge mask, nonedge mask) pair.  The automorphism group is found
by degree-refined backtracking; the minimum is taken over a precomputed
table of pair images, so one key is a single vectorized reduction.
"""
from __future__ import annotations

import numpy as np

from .graph import FiniteGraph, FinitePregraph, pair

MAX_CANONICAL_N = 8


class UnsupportedSize(ValueError):
    pass


def automorphisms(g: FiniteGraph) -> list[tuple[int, ...]]:
    if g.n > MAX_CANONICAL_N:
        raise UnsupportedSize(f"unsupported size: n={g.n} exceeds canonical bound {MAX_CANONICAL_N}")
    adj = g.adjacency()
    deg = [len(a) for a in adj]
    # refine by degree and sorted neighbour degrees
    colour = [(deg[v], tuple(sorted(deg[w] for w in adj[v]))) for v in range(g.n)]
    found = []
    image = [-1] * g.n
    used = [False] * g.n

    def extend(v: int) -> None:
        if v == g.n:
            found.append(tuple(image))
            return
        for w in range(g.n):
            if used[w] or colour[w] != colour[v]:
                continue
            if any((u in adj[v]) != (image[u] in adj[w]) for u in range(v)):
                continue
            image[v] = w
            used[w] = True
            extend(v + 1)
            used[w] = False
        image[v] = -1

    extend(0)
    return found


class CanonicalKeyer:
    """Canonical keys for pregraphs over one fixed allowed graph."""

    def __init__(self, allowed: FiniteGraph):
        self.allowed = allowed
        self.pairs = sorted(allowed.edges)
        self.index = {p: i for i, p in enumerate(self.pairs)}
        self.autos = automorphisms(allowed)
        # dest[a, i] = index of the image of pair i under automorphism a
        dest = np.array(
            [[self.index[pair(perm[u], perm[v])] for u, v in self.pairs] for perm in self.autos],
            dtype=np.uint64,
        ).reshape(len(self.autos), len(self.pairs))
        self.powers = np.left_shift(np.uint64(1), dest)
        self.shift = np.uint64(len(self.pairs))

    def mask(self, pairs) -> int:
        out = 0
        for p in pairs:
            out |= 1 << self.index[pair(*p)]
        return out

    def _permuted(self, mask: int) -> np.ndarray:
        bits = [i for i in range(mask.bit_length()) if mask >> i & 1]
        if not bits:
            return np.zeros(len(self.autos), dtype=np.uint64)
        return np.bitwise_or.reduce(self.powers[:, bits], axis=1)

    def key_masks(self, emask: int, nmask: int) -> int:
        combined = (self._permuted(emask) << self.shift) | self._permuted(nmask)
        return int(combined.min())

    def key(self, pg: FinitePregraph) -> int:
        return self.key_masks(self.mask(pg.edges), self.mask(pg.nonedges))


_KEYERS: dict = {}


def keyer_for(allowed: FiniteGraph) -> CanonicalKeyer:
    k = _KEYERS.get(allowed)
    if k is None:
        k = _KEYERS[allowed] = CanonicalKeyer(allowed)
    return k


def canonical_key(pg: FinitePregraph):
    """Equal for two pregraphs on the same allowed graph iff an automorphism maps one onto the other."""
    return (pg.allowed, keyer_for(pg.allowed).key(pg))


def graph_certificate(g: FiniteGraph) -> tuple[int, int]:
    """Isomorphism-class certificate for graphs with at most 8 vertices."""
    k = keyer_for(FiniteGraph.complete(g.n))
    return g.n, k.key_masks(k.mask(g.edges), 0)
