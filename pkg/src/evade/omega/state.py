"""Symbolic positions of a probe game on an ω-board against a hidden template.

P (the probed pairs) is a list of symbolic regions plus a finite explicit
part.  Because the hider is oblivious, E = P ∩ hidden and N = P minus
hidden, so every neighbourhood is a :class:`NatSet` expression.
"""
from __future__ import annotations

from typing import Callable, Optional

from ..boards import Board, CantorBoard, CompleteOmega, FiniteExplicit, Turan
from ..graph import pair
from ..properties import Kind, Property, Status
from ..wfunc import WFunction, w_component, w_degree
from .natset import NatSet
from .regions import AllPairs, Comparable, Explicit, ModClassDistinct, PairSet
from .world import World

SCORPION_SEARCH_BUDGET = 200_000


def board_pairs(board: Board) -> PairSet:
    if isinstance(board, CompleteOmega):
        return AllPairs()
    if isinstance(board, Turan):
        return ModClassDistinct(board.k)
    if isinstance(board, CantorBoard):
        return Comparable()
    if isinstance(board, FiniteExplicit):
        return Explicit(board.graph.edges)
    raise TypeError(f"no pair-set view of {board.spec()}")


def property_wfunction(prop: Property) -> Optional[WFunction]:
    if prop.kind is Kind.MIN_DEGREE:
        return w_degree(prop.param)
    if prop.kind is Kind.MIN_COMPONENT:
        return w_component(prop.param)
    return None


class SymbolicState:
    def __init__(self, board: Board, hidden):
        self.board = board
        self.allowed = board_pairs(board)
        self.hidden = hidden.on_board(board)
        self.regions: list = []
        self.extra = Explicit()
        self._cache: dict = {}
        self._world: Optional[World] = None

    # ----------------------------------------------------------- updates
    def add_region(self, region: PairSet) -> None:
        self.regions.append(region)
        self._cache.clear()
        self._world = None

    def add_pair(self, p) -> None:
        self.extra.add(p)
        self._touch(p)

    def remove_pair(self, p) -> None:
        self.extra.discard(p)
        self._touch(p)

    def _touch(self, p) -> None:
        for v in p:
            for kind in "PENUG":
                self._cache.pop((kind, v), None)
        self._world = None

    def compact(self) -> None:
        """Drop explicit pairs covered by the newest region (older ones were compacted already)."""
        if not self.regions:
            return
        newest = self.regions[-1]
        for p in self.extra.pairs():
            if newest.contains(*p):
                self.extra.discard(p)
        self._cache.clear()
        self._world = None

    # ----------------------------------------------------------- membership
    def is_allowed(self, u, v) -> bool:
        return self.allowed.contains(u, v)

    def is_probed(self, u, v) -> bool:
        if self.extra.contains(u, v):
            return True
        return self.allowed.contains(u, v) and any(r.contains(u, v) for r in self.regions)

    def answer(self, u, v) -> bool:
        return self.hidden.contains(u, v)

    # ----------------------------------------------------------- neighbourhoods
    def p_nbr(self, v) -> NatSet:
        key = ("P", v)
        got = self._cache.get(key)
        if got is None:
            sym = NatSet.union_all(r.nbr(v) for r in self.regions)
            got = (sym & self.allowed.nbr(v)) | self.extra.nbr(v)
            self._cache[key] = got
        return got

    def e_nbr(self, v) -> NatSet:
        key = ("E", v)
        got = self._cache.get(key)
        if got is None:
            got = self._cache[key] = self.p_nbr(v) & self.hidden.nbr(v)
        return got

    def n_nbr(self, v) -> NatSet:
        key = ("N", v)
        got = self._cache.get(key)
        if got is None:
            got = self._cache[key] = self.p_nbr(v) - self.hidden.nbr(v)
        return got

    def u_nbr(self, v) -> NatSet:
        key = ("U", v)
        got = self._cache.get(key)
        if got is None:
            got = self._cache[key] = self.allowed.nbr(v) - self.p_nbr(v)
        return got

    def gmax_nbr(self, v) -> NatSet:
        key = ("G", v)
        got = self._cache.get(key)
        if got is None:
            got = self._cache[key] = self.allowed.nbr(v) - self.n_nbr(v)
        return got

    def deg(self, which: str, v: int, cap: int) -> int:
        s = {"P": self.p_nbr, "E": self.e_nbr, "N": self.n_nbr, "U": self.u_nbr, "G": self.gmax_nbr}[which](v)
        return s.count_upto(cap)

    # ----------------------------------------------------------- world
    def world(self) -> World:
        if self._world is None:
            parts = [self.allowed, self.hidden, self.extra] + self.regions
            self._world = World.of(parts, isinstance(self.board, CantorBoard))
        return self._world

    def world_with(self, parts) -> World:
        base = [self.allowed, self.hidden, self.extra] + self.regions + list(parts)
        return World.of(base, isinstance(self.board, CantorBoard))

    def omega_vertices(self):
        """Vertices of infinite P-degree: a sorted list, or the string "Infinite"."""
        w = self.world()
        found = [v for v in w.reps() if self.p_nbr(v).infinite]
        if any(w.is_tail(v) for v in found):
            return "Infinite"
        return found

    def undetermined_witness(self, start_window: int = 64, max_window: int = 1 << 16):
        """A concrete undetermined allowed pair, searched in doubling windows."""
        window = start_window
        v = 0
        while True:
            for v in range(v, window):
                u = self.u_nbr(v).min()
                if u is not None:
                    return pair(u, v)
            v = window
            if window >= max_window:
                return None
            window *= 2

    def all_determined(self) -> bool:
        return self.world().forall(lambda v: self.u_nbr(v).is_empty())

    # ----------------------------------------------------------- status
    def w_value(self, wf: WFunction, v: int, graph: str = "E") -> int:
        f = self.e_nbr if graph == "E" else self.gmax_nbr
        return wf.value(v, lambda x: iter(f(x)))

    def w_status(self, wf: WFunction) -> Status:
        w = self.world()
        if w.exists(lambda v: self.w_value(wf, v, "G") < wf.n) is not None:
            return Status.FORCED_FALSE
        if w.forall(lambda v: self.w_value(wf, v, "E") >= wf.n):
            return Status.FORCED_TRUE
        return Status.OPEN

    def status(self, prop: Property) -> Status:
        if prop.kind is Kind.SCORPION:
            return self.scorpion_status()
        wf = property_wfunction(prop)
        if wf is None:
            raise ValueError(f"property {prop} has no symbolic evaluator; use dmin:<m>, cmin:<n> or scorpion")
        return self.w_status(wf)

    # scorpion: sting s (degree 1, joined to t), tail t (joined to s and b), body b (joined to all but s)
    def _feasible(self, s, t, b) -> bool:
        if len({s, t, b}) < 3:
            return False
        if self.hidden_is_edge_known(s, b, True) or self.hidden_is_edge_known(s, t, False) or self.hidden_is_edge_known(t, b, False):
            return False
        if not set(self.e_nbr(s).take(2)) <= {t}:
            return False
        if not set(self.e_nbr(t).take(3)) <= {s, b}:
            return False
        return set(self.n_nbr(b).take(2)) <= {s}

    def hidden_is_edge_known(self, u, v, as_edge: bool) -> bool:
        """Is {u, v} probed with the given answer?"""
        return self.is_probed(u, v) and self.answer(u, v) == as_edge

    def _determined(self, s, t, b) -> bool:
        return all(self.u_nbr(x).is_empty() for x in (s, t, b))

    def _determined_scorpion(self, window: int) -> bool:
        """A fully determined triple has E(s) = {t}, E(t) = {s, b} and N(b) = {s}."""
        for s in range(window):
            es = self.e_nbr(s).take(2)
            if len(es) != 1:
                continue
            (t,) = es
            et = self.e_nbr(t).take(3)
            if len(et) != 2 or s not in et:
                continue
            b = et[0] if et[1] == s else et[1]
            if self.n_nbr(b).take(2) == [s] and self._determined(s, t, b):
                return True
        return False

    def scorpion_status(self) -> Status:
        if not isinstance(self.board, CompleteOmega):
            # a body needs every vertex but one as an allowed neighbour
            return Status.FORCED_FALSE
        w = self.world()
        if w.exists(lambda v: self.deg("N", v, 2) <= 1) is None:
            return Status.FORCED_FALSE
        if w.exists(lambda v: self.deg("E", v, 2) <= 1) is None:
            return Status.FORCED_FALSE
        window = w.tuple_window()
        if self._determined_scorpion(window):
            return Status.FORCED_TRUE
        stingy = {v for v in range(window) if self.deg("E", v, 2) <= 1}
        taily = {v for v in range(window) if self.deg("E", v, 3) <= 2}
        budget = SCORPION_SEARCH_BUDGET
        for b in range(window):
            if self.deg("N", b, 2) > 1:
                continue
            nb = self.n_nbr(b).take(1)
            stings = nb if nb else [s for s in self.u_nbr(b).below(window) if s in stingy]
            for s in stings:
                es = self.e_nbr(s).take(2)
                if len(es) > 1:
                    continue
                tails = es if es else [t for t in self.u_nbr(s).below(window) if t in taily]
                for t in tails:
                    budget -= 1
                    if budget < 0:
                        return Status.OPEN
                    if t != b and self._feasible(s, t, b):
                        return Status.OPEN
        return Status.FORCED_FALSE

    # ----------------------------------------------------------- sets used by seekers
    def collect(self, pred: Callable[[int], bool]) -> NatSet:
        return self.world().collect(pred)

    def snapshot(self) -> dict:
        return {
            "regions": [r.describe() for r in self.regions],
            "explicit_pairs": self.extra.size,
        }
