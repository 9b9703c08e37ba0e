"""Referee for single-pair probe games, plus the families that decide the winner.

The seeker (Alice) names an undetermined allowed pair, the hider (Bob)
calls it an edge or a nonedge, and after every answer the referee asks the
property whether the position is decided.  The game also stops when the
fuel runs out; that outcome is ``Undecided``.
"""
from __future__ import annotations

import enum
import json
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Callable, Optional

from .boards import Board, FiniteExplicit, Turan, CantorBoard, as_board
from .graph import FiniteGraph, FinitePregraph, Pair, largest_clique_size, pair, pregraph_to_dot
from .properties import Kind, Property, Status, holds, terminal_status


class ProtocolViolation(RuntimeError):
    pass


class Winner(str, enum.Enum):
    ALICE = "Alice"
    BOB = "Bob"
    UNDECIDED = "Undecided"


# ------------------------------------------------------------------ families


class FamilyKind(str, enum.Enum):
    ALL_PAIRS = "allpairs"
    INFINITE_CLIQUE = "clique"
    JN = "jn"
    SMALL_COMPLEMENT = "small"


@dataclass(frozen=True)
class LargeFamily:
    kind: FamilyKind = FamilyKind.ALL_PAIRS
    n: Optional[int] = None

    def __post_init__(self):
        needs = self.kind in (FamilyKind.JN, FamilyKind.SMALL_COMPLEMENT)
        if needs and (self.n is None or self.n < 1):
            raise ValueError(f"family {self.kind.value} needs n >= 1")
        if not needs and self.n is not None:
            raise ValueError(f"family {self.kind.value} takes no parameter")

    def __str__(self) -> str:
        return self.kind.value if self.n is None else f"{self.kind.value}:{self.n}"

    @classmethod
    def parse(cls, spec: str) -> "LargeFamily":
        name, _, arg = spec.strip().partition(":")
        try:
            kind = FamilyKind(name)
        except ValueError:
            raise ValueError(f"unknown family {spec!r}; expected allpairs, clique, jn:<n> or small:<n>") from None
        if kind in (FamilyKind.JN, FamilyKind.SMALL_COMPLEMENT):
            if not arg.isdigit():
                raise ValueError(f"family {name} needs an integer argument, e.g. {name}:2")
            return cls(kind, int(arg))
        if arg:
            raise ValueError(f"family {name} takes no argument")
        return cls(kind)


ALL_PAIRS = LargeFamily()


@dataclass
class Membership:
    value: Optional[bool]
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"member": "unknown" if self.value is None else self.value, **self.detail}


def family_membership(determined, family: LargeFamily, allowed: FiniteGraph) -> Membership:
    """Whether a finite set of probed pairs lies in ``family`` (complement taken inside the allowed pairs)."""
    P = set(determined)
    if family.kind is FamilyKind.ALL_PAIRS:
        return Membership(P >= allowed.edges)
    if family.kind is FamilyKind.JN:
        # no vertex of a finite pair set has infinite degree
        return Membership(family.n <= 0, {"infinite_degree_vertices": []})
    if family.kind is FamilyKind.SMALL_COMPLEMENT:
        missing = allowed.edges - P
        B = sorted({v for p in missing for v in p})
        return Membership(len(B) <= family.n, {"B": B})
    size = largest_clique_size(range(allowed.n), P)
    return Membership(None, {"largest_determined_clique": size})


def sample_upward_closure(family: LargeFamily, allowed: FiniteGraph, trials: int = 200, seed: int = 0) -> bool:
    import random

    rng = random.Random(seed)
    pairs = sorted(allowed.edges)
    for _ in range(trials):
        P = {p for p in pairs if rng.random() < rng.random()}
        before = family_membership(P, family, allowed).value
        if before:
            bigger = P | {p for p in pairs if rng.random() < 0.3}
            if family_membership(bigger, family, allowed).value is False:
                return False
    return True


# --------------------------------------------------------------- game state


class GameView:
    """Mutable position shared by the referee and the strategies (read-only for them)."""

    def __init__(self, board: Board):
        self.board = board
        self.edges: set = set()
        self.nonedges: set = set()
        self.adj_e: dict = defaultdict(set)
        self.adj_p: dict = defaultdict(set)
        self.turn = 0

    @property
    def finite(self) -> bool:
        return not self.board.infinite

    @property
    def n(self) -> int:
        return self.board.graph.n

    def is_allowed(self, p: Pair) -> bool:
        return self.board.contains(*p)

    def is_determined(self, p: Pair) -> bool:
        return p in self.edges or p in self.nonedges

    def record(self, p: Pair, is_edge: bool) -> None:
        u, v = p
        (self.edges if is_edge else self.nonedges).add(p)
        self.adj_p[u].add(v)
        self.adj_p[v].add(u)
        if is_edge:
            self.adj_e[u].add(v)
            self.adj_e[v].add(u)
        self.turn += 1

    def deg_e(self, v: int) -> int:
        return len(self.adj_e.get(v, ()))

    def deg_p(self, v: int) -> int:
        return len(self.adj_p.get(v, ()))

    def lower_undetermined(self, j: int) -> int:
        """Undetermined allowed pairs {i, j} with i < j."""
        return self.board.lower_degree(j) - sum(1 for i in self.adj_p.get(j, ()) if i < j)

    def gmin_component(self, v: int) -> set:
        seen = {v}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for y in self.adj_e.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def touched(self) -> set:
        return set(self.adj_p)

    def pregraph(self) -> FinitePregraph:
        return FinitePregraph(self.board.graph, frozenset(self.edges), frozenset(self.nonedges))

    def undetermined(self) -> list:
        if not self.finite:
            raise ValueError("an infinite board has infinitely many undetermined pairs")
        return sorted(self.board.graph.edges - self.edges - self.nonedges)


def omega_finite_status(prop: Property, view: GameView) -> Status:
    """Terminal status on an ω-board when only finitely many pairs are determined.

    gmin is a finite graph plus infinitely many isolated vertices; gmax is the
    board minus finitely many pairs, so every vertex keeps infinite degree.
    """
    k = prop.kind
    board = view.board
    local = {Kind.CYCLE, Kind.STAR, Kind.CLIQUE, Kind.P3, Kind.NOT_BIPARTITE}
    if k in local:
        verts = sorted(view.touched())
        idx = {v: i for i, v in enumerate(verts)}
        g = FiniteGraph(len(verts), frozenset(pair(idx[u], idx[v]) for u, v in view.edges))
        if holds(prop, g):
            return Status.FORCED_TRUE
    if k is Kind.CLIQUE and isinstance(board, Turan) and prop.param > board.k:
        return Status.FORCED_FALSE
    if k is Kind.NOT_BIPARTITE and isinstance(board, Turan) and board.k == 2:
        return Status.FORCED_FALSE
    if k is Kind.SCORPION and isinstance(board, (Turan, CantorBoard)):
        # the body would need every other vertex but one as an allowed neighbour
        return Status.FORCED_FALSE
    return Status.OPEN


def status_of(prop: Property, view: GameView) -> Status:
    if view.finite:
        return terminal_status(prop, view.pregraph())
    return omega_finite_status(prop, view)


# --------------------------------------------------------------- transcripts


@dataclass
class Move:
    turn: int
    pair: Pair
    answer: str

    def to_dict(self) -> dict:
        return {"turn": self.turn, "pair": list(self.pair), "answer": self.answer}


@dataclass
class Transcript:
    board: str
    property: str
    family: str
    seeker: str = ""
    hider: str = ""
    moves: list = field(default_factory=list)
    terminal_reason: str = "FuelExhausted"
    winner: Winner = Winner.UNDECIDED
    determined_count: int = 0
    family_report: dict = field(default_factory=dict)
    batches: list = field(default_factory=list)
    flags: list = field(default_factory=list)
    final_edges: list = field(default_factory=list)
    final_nonedges: list = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {
            "board": self.board,
            "property": self.property,
            "family": self.family,
            "seeker": self.seeker,
            "hider": self.hider,
            "moves": [m.to_dict() for m in self.moves],
            "terminal_reason": self.terminal_reason,
            "winner": self.winner.value,
            "determined_count": self.determined_count,
            "family_report": self.family_report,
        }
        if self.batches:
            out["batches"] = self.batches
        if self.flags:
            out["flags"] = self.flags
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_dot(self) -> str:
        if not self.board.startswith("g6:"):
            raise ValueError("DOT export needs a finite board")
        board = as_board(self.board)
        pg = FinitePregraph(board.graph, frozenset(map(tuple, self.final_edges)), frozenset(map(tuple, self.final_nonedges)))
        return pregraph_to_dot(pg)


@dataclass
class GameConfig:
    allowed: object
    property: Property
    family: LargeFamily = ALL_PAIRS
    fuel: int = 10_000

    def __post_init__(self):
        if self.fuel < 1:
            raise ValueError(f"fuel must be >= 1, got {self.fuel}")
        self.allowed = as_board(self.allowed)


def _family_report(view: GameView, family: LargeFamily) -> Membership:
    P = view.edges | view.nonedges
    if view.finite:
        return family_membership(P, family, view.board.graph)
    if family.kind is FamilyKind.JN:
        return Membership(False, {"infinite_degree_vertices": []})
    if family.kind is FamilyKind.INFINITE_CLIQUE:
        verts = sorted(view.touched())
        return Membership(None, {"largest_determined_clique": largest_clique_size(verts, P)})
    # finitely many probed pairs on an infinite board: the complement is infinite
    return Membership(False)


def play(seeker, hider, config: GameConfig, observer: Optional[Callable] = None) -> Transcript:
    """Run one game; ``observer(view, move)`` is called after every answer."""
    board = config.allowed
    view = GameView(board)
    tr = Transcript(
        board=board.spec(),
        property=str(config.property),
        family=str(config.family),
        seeker=getattr(seeker, "name", type(seeker).__name__),
        hider=getattr(hider, "name", type(hider).__name__),
    )
    for s in (seeker, hider):
        if hasattr(s, "reset"):
            s.reset(view)
    status = status_of(config.property, view)
    while status is Status.OPEN and view.turn < config.fuel:
        turn = view.turn
        try:
            raw = seeker.next(view)
        except StopIteration:
            raise ProtocolViolation(f"turn {turn}: seeker has no move on an undecided position") from None
        p = pair(*raw)
        if not view.is_allowed(p):
            raise ProtocolViolation(f"turn {turn}: seeker probed {p}, which is not an allowed pair")
        if view.is_determined(p):
            raise ProtocolViolation(f"turn {turn}: seeker probed {p}, which is already determined")
        is_edge = bool(hider.answer(view, p))
        view.record(p, is_edge)
        move = Move(turn, p, "edge" if is_edge else "nonedge")
        tr.moves.append(move)
        if observer is not None:
            observer(view, move)
        status = status_of(config.property, view)
    tr.determined_count = len(view.edges) + len(view.nonedges)
    report = _family_report(view, config.family)
    tr.family_report = report.to_dict()
    if status is Status.OPEN:
        tr.terminal_reason = "FuelExhausted"
        tr.winner = Winner.UNDECIDED
    else:
        tr.terminal_reason = status.value
        tr.winner = Winner.BOB if report.value else Winner.ALICE
    tr.final_edges = sorted(view.edges)
    tr.final_nonedges = sorted(view.nonedges)
    return tr


class _Replay:
    name = "replay"

    def __init__(self, pairs):
        self.pairs = list(pairs)

    def next(self, view):
        return self.pairs[view.turn]


def replay(transcript: Transcript, hider, config: GameConfig) -> Transcript:
    """Re-run the probes of ``transcript`` against ``hider``."""
    return play(_Replay([m.pair for m in transcript.moves]), hider, config)
