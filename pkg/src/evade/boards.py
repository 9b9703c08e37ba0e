"""Allowed-edge graphs: complete graph on ω, Turán graphs, the Cantor graph, finite graphs.

Every ω-board numbers its vertices 0, 1, 2, ...  Turán(k) maps vertex v to
(column v // k, class v % k); the Cantor board uses :mod:`evade.cantor`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import cantor, graph6
from .graph import FiniteGraph, Pair, pair
from .omega.natset import NatSet


class NotBraided(ValueError):
    pass


class Board:
    infinite = True
    #: vertices v, v + period, ... look alike (0 when there is no such shift)
    period = 1

    def contains(self, u: int, v: int) -> bool:
        raise NotImplementedError

    def nbr(self, v: int) -> NatSet:
        raise NotImplementedError

    def lower_degree(self, j: int) -> int:
        """|{i < j : {i, j} allowed}|."""
        return sum(1 for i in range(j) if self.contains(i, j))

    def truncation(self, n: int) -> FiniteGraph:
        """The allowed graph induced on vertices 0..n-1."""
        return FiniteGraph(n, frozenset((u, v) for v in range(n) for u in range(v) if self.contains(u, v)))

    def covering_set(self, excluded: Iterable[int]) -> frozenset:
        raise NotBraided(f"{self.spec()} has no covering-set rule")

    def spec(self) -> str:
        raise NotImplementedError

    def label(self, v: int) -> str:
        return str(v)

    def __repr__(self) -> str:
        return f"Board({self.spec()})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Board) and self.spec() == other.spec()

    def __hash__(self) -> int:
        return hash(self.spec())


class CompleteOmega(Board):
    def contains(self, u, v):
        return u != v

    def nbr(self, v):
        return NatSet.cofinite([v])

    def lower_degree(self, j):
        return j

    def covering_set(self, excluded):
        excluded = list(excluded)
        return frozenset({max(excluded) + 1 if excluded else 0})

    def spec(self):
        return "komega"


@dataclass(frozen=True, eq=False)
class Turan(Board):
    k: int

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"turan needs k >= 2, got {self.k}")

    @property
    def period(self):
        return self.k

    def contains(self, u, v):
        return u % self.k != v % self.k

    def nbr(self, v):
        c = v % self.k
        return NatSet.residues(self.k, [r for r in range(self.k) if r != c])

    def lower_degree(self, j):
        return j - j // self.k

    def covering_set(self, excluded):
        excluded = list(excluded)
        col = max(v // self.k for v in excluded) + 1 if excluded else 0
        return frozenset(col * self.k + r for r in range(self.k))

    def spec(self):
        return f"turan:{self.k}"

    def label(self, v):
        return f"({v // self.k},{v % self.k})"


class CantorBoard(Board):
    period = 0

    def contains(self, u, v):
        return cantor.comparable(u, v)

    def nbr(self, v):
        return NatSet.finite(cantor.ancestors(v)) | NatSet.subtree(v)

    def lower_degree(self, j):
        return cantor.level(j)

    def covering_set(self, excluded):
        excluded = list(excluded)
        if not excluded:
            return frozenset({0})
        length = max(cantor.level(v) for v in excluded) + 1
        return frozenset(cantor.level_range(length))

    def spec(self):
        return "cantor"

    def label(self, v):
        return repr(cantor.decode(v))


@dataclass(frozen=True, eq=False)
class FiniteExplicit(Board):
    graph: FiniteGraph
    infinite = False
    period = 0

    def contains(self, u, v):
        return u != v and pair(u, v) in self.graph.edges

    def nbr(self, v):
        return NatSet.finite(self.graph.adjacency()[v])

    def truncation(self, n=None):
        return self.graph

    def spec(self):
        return "g6:" + graph6.encode(self.graph)


def parse_board(spec: str) -> Board:
    spec = spec.strip()
    if spec == "komega":
        return CompleteOmega()
    if spec == "cantor":
        return CantorBoard()
    if spec.startswith("turan:"):
        arg = spec[len("turan:"):]
        if not arg.isdigit() or int(arg) < 2:
            raise ValueError(f"bad allowed-graph spec {spec!r}: expected turan:<k> with integer k >= 2")
        return Turan(int(arg))
    if spec.startswith("g6:"):
        try:
            return FiniteExplicit(graph6.decode(spec[3:]))
        except graph6.Graph6Error as exc:
            raise ValueError(f"bad allowed-graph spec {spec!r}: {exc}") from None
    raise ValueError(f"unknown allowed-graph spec {spec!r}; expected komega, turan:<k>, cantor or g6:<graph6>")


def as_board(allowed) -> Board:
    if isinstance(allowed, Board):
        return allowed
    if isinstance(allowed, FiniteGraph):
        return FiniteExplicit(allowed)
    if isinstance(allowed, str):
        return parse_board(allowed)
    raise TypeError(f"cannot use {allowed!r} as an allowed graph")


def allowed_pair(board: Board, p: Pair) -> bool:
    return board.contains(*p)
