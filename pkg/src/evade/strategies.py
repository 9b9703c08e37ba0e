"""Hider (Bob) and seeker (Alice) strategies for single-pair play.

Hiders implement ``answer(view, probe) -> bool`` and seekers implement
``next(view) -> pair``.  Hider answers depend only on the current position;
where a hider keeps an accelerator (union-find), ``check=True`` recomputes
the answer from the position and raises if the two disagree.
"""
from __future__ import annotations

import itertools
import random
from typing import Optional

from .boards import Board, as_board, parse_board
from .graph import FiniteGraph, Pair, UnionFind, is_bridge, pair


class StrategyError(ValueError):
    pass


# -------------------------------------------------------------------- hiders


class CycleForestHider:
    """Edge iff gmin plus the probe stays acyclic."""

    name = "cycle-forest"
    deterministic = True

    def __init__(self, check: bool = False):
        self.check = check
        self.uf = UnionFind()
        self._seen = 0

    def reset(self, view):
        self.uf = UnionFind()
        self._seen = 0

    def _sync(self, view):
        # fold in edges recorded since the last call (the referee records them)
        if self._seen != len(view.edges):
            self.uf = UnionFind()
            for u, v in view.edges:
                self.uf.add(u)
                self.uf.add(v)
                self.uf.union(u, v)
            self._seen = len(view.edges)

    def answer(self, view, probe):
        u, v = probe
        self._sync(view)
        self.uf.add(u)
        self.uf.add(v)
        ans = not self.uf.connected(u, v)
        if self.check:
            comp = view.gmin_component(u)
            if ans != (v not in comp):
                raise AssertionError("cycle-forest accelerator out of sync")
        if ans:
            self.uf.union(u, v)
            self._seen += 1
        return ans


class DegreeHider:
    """Rule (a): the smaller endpoint i is at most n and still has E-degree below n.
    Rule (b): the larger endpoint j would otherwise drop below n possible lower neighbours."""

    deterministic = True

    def __init__(self, n: int):
        if n < 1:
            raise StrategyError(f"degree hider needs n >= 1, got {n}")
        self.n = n
        self.name = f"degree:{n}"
        self.last_rule: Optional[str] = None

    def rule(self, view, probe) -> Optional[str]:
        i, j = probe
        n = self.n
        if i <= n and view.deg_e(i) < n:
            return "a"
        if j <= n and view.deg_e(j) < n:
            return "a"
        if view.deg_e(j) + view.lower_undetermined(j) == n:
            return "b"
        return None

    def answer(self, view, probe):
        self.last_rule = self.rule(view, probe)
        return self.last_rule is not None


class ConnectHider:
    """Edge iff the endpoints' gmin-components are finite, distinct, and fully probed across."""

    name = "connect"
    deterministic = True

    def answer(self, view, probe):
        a, b = probe
        A = view.gmin_component(a)
        if b in A:
            return False
        B = view.gmin_component(b)
        board = view.board
        for x in A:
            for y in B:
                p = pair(x, y)
                if p != probe and board.contains(x, y) and not view.is_determined(p):
                    return False
        return True


class StarHider:
    """Edge iff both endpoints have gmin-degree below n - 1."""

    deterministic = True

    def __init__(self, n: int):
        if n < 1:
            raise StrategyError(f"star hider needs n >= 1, got {n}")
        self.n = n
        self.name = f"star:{n}"

    def answer(self, view, probe):
        i, j = probe
        return view.deg_e(i) < self.n - 1 and view.deg_e(j) < self.n - 1


class ObliviousHider:
    """Answers from a hidden graph fixed before play."""

    deterministic = True

    def __init__(self, hidden, name: Optional[str] = None):
        self.hidden = hidden
        self.name = name or "oblivious"

    def answer(self, view, probe):
        h = self.hidden
        if isinstance(h, FiniteGraph):
            u, v = probe
            if v >= h.n:
                raise StrategyError(f"probe {probe} lies outside the hidden graph on {h.n} vertices")
            return probe in h.edges
        return h.contains(*probe)


# ------------------------------------------------------------------- seekers


def _lex_pairs(view):
    """Allowed pairs in colex order (by larger endpoint, then smaller)."""
    if view.finite:
        yield from sorted(view.board.graph.edges, key=lambda p: (p[1], p[0]))
        return
    for j in itertools.count(1):
        for i in range(j):
            if view.board.contains(i, j):
                yield (i, j)


class LexSeeker:
    name = "lex"

    def reset(self, view):
        self._it = None

    def next(self, view):
        if view.finite:
            # lexicographic on finite boards
            for p in sorted(view.board.graph.edges):
                if not view.is_determined(p):
                    return p
            raise StopIteration
        if getattr(self, "_it", None) is None:
            self._it = _lex_pairs(view)
        for p in self._it:
            if not view.is_determined(p):
                return p
        raise StopIteration


class RandomSeeker:
    """Uniform over undetermined pairs; on ω-boards uniform inside a vertex window."""

    def __init__(self, seed: int, window: int = 50):
        self.seed = seed
        self.window = window
        self.name = f"random:{seed}"
        self.rng = random.Random(seed)

    def reset(self, view):
        self.rng = random.Random(self.seed)

    def next(self, view):
        if view.finite:
            options = view.undetermined()
            if not options:
                raise StopIteration
            return self.rng.choice(options)
        for _ in range(10_000):
            u, v = self.rng.sample(range(self.window), 2)
            p = pair(u, v)
            if view.board.contains(*p) and not view.is_determined(p):
                return p
        raise StopIteration


class BridgeLastSeeker:
    """Probe every allowed pair except one bridge, which is saved for last."""

    def __init__(self, bridge: Pair, allowed=None):
        self.bridge = pair(*bridge)
        self.name = f"bridge-last:{self.bridge[0]}-{self.bridge[1]}"
        if allowed is not None:
            self._validate(as_board(allowed))

    def _validate(self, board):
        if board.infinite:
            raise StrategyError("bridge-last needs a finite allowed graph")
        g = board.graph
        if self.bridge not in g.edges:
            raise StrategyError(f"{self.bridge} is not an allowed pair")
        if not is_bridge(g, self.bridge):
            raise StrategyError(f"{self.bridge} is not a bridge: it lies on a cycle of the allowed graph")

    def reset(self, view):
        self._validate(view.board)

    def next(self, view):
        for p in sorted(view.board.graph.edges):
            if p != self.bridge and not view.is_determined(p):
                return p
        if not view.is_determined(self.bridge):
            return self.bridge
        raise StopIteration


class HumanSeeker:
    """Reads probes "u v" from a text stream (interactive play)."""

    name = "human"

    def __init__(self, stream, out):
        self.stream = stream
        self.out = out

    def next(self, view):
        while True:
            self.out.write(f"turn {view.turn} probe> ")
            self.out.flush()
            line = self.stream.readline()
            if not line:
                raise StopIteration
            parts = line.replace("-", " ").split()
            if len(parts) == 2 and all(x.isdigit() for x in parts) and parts[0] != parts[1]:
                p = pair(int(parts[0]), int(parts[1]))
                if view.is_allowed(p) and not view.is_determined(p):
                    return p
            self.out.write("enter two distinct vertex ids of an undetermined allowed pair, e.g. 0 1\n")


# --------------------------------------------------------------------- specs


def parse_hider(spec: str):
    name, _, arg = spec.strip().partition(":")
    if name == "cycle-forest" and not arg:
        return CycleForestHider()
    if name == "connect" and not arg:
        return ConnectHider()
    if name in ("degree", "star"):
        if not arg.isdigit():
            raise StrategyError(f"hider {name} needs an integer argument, e.g. {name}:2")
        return DegreeHider(int(arg)) if name == "degree" else StarHider(int(arg))
    if name == "oblivious" and arg:
        return ObliviousHider(_parse_hidden(arg), name=spec)
    raise StrategyError(
        f"unknown hider {spec!r}; expected cycle-forest, degree:<n>, connect, star:<n> or oblivious:<graphspec>"
    )


def _parse_hidden(arg: str):
    if arg.startswith("g6:"):
        return parse_board(arg).graph
    from .omega.templates import parse_template

    return parse_template(arg)


def parse_seeker(spec: str, allowed=None):
    name, _, arg = spec.strip().partition(":")
    if name == "lex" and not arg:
        return LexSeeker()
    if name == "random":
        if not arg.isdigit():
            raise StrategyError("seeker random needs an integer seed, e.g. random:7")
        return RandomSeeker(int(arg))
    if name == "bridge-last":
        u, sep, v = arg.partition("-")
        if not (sep and u.isdigit() and v.isdigit()):
            raise StrategyError("seeker bridge-last needs a pair, e.g. bridge-last:2-3")
        return BridgeLastSeeker((int(u), int(v)), allowed)
    raise StrategyError(f"unknown seeker {spec!r}; expected lex, random:<seed> or bridge-last:<u>-<v>")


def assert_replay_deterministic(seeker_factory, hider_factory, config) -> None:
    """Play twice with fresh strategies and once as a replay; all three must agree."""
    from .engine import play, replay

    first = play(seeker_factory(), hider_factory(), config)
    second = play(seeker_factory(), hider_factory(), config)
    third = replay(first, hider_factory(), config)
    for other in (second, third):
        if [(m.pair, m.answer) for m in other.moves] != [(m.pair, m.answer) for m in first.moves]:
            raise AssertionError("replay produced different answers")
        if other.terminal_reason != first.terminal_reason:
            raise AssertionError("replay produced a different terminal state")
