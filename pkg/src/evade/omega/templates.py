"""Hidden graphs on ω with a finite description, used by oblivious hiders.

Spec grammar: ``<base>[;add:u-v,u-v...][;del:u-v,...]`` where base is one of

* ``empty``, ``complete``
* ``blocks:<b>``           disjoint cliques on consecutive blocks of size b
* ``modclass:<k>``          pairs whose endpoints differ mod k
* ``stars:<c>,<c>,...``     the centres are joined to everything, nothing else
* ``scorpion:<s>,<t>,<b>[,complete|empty]``  the named triple plus the
  graph on the remaining vertices (default complete)

Removals win over additions.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .. import cantor
from ..boards import Board, CantorBoard, CompleteOmega, Turan
from ..graph import pair
from .natset import NatSet
from .regions import (
    AllPairs,
    BlockCliques,
    Explicit,
    ModClassDistinct,
    NoPairs,
    PairSet,
    RegionSet,
)
from .world import World


class TemplateError(ValueError):
    pass


class ScorpionPattern(PairSet):
    def __init__(self, s: int, t: int, b: int, rest_complete: bool = True):
        if len({s, t, b}) < 3:
            raise TemplateError(f"sting, tail and body must be distinct, got {s},{t},{b}")
        self.s, self.t, self.b = s, t, b
        self.rest_complete = rest_complete

    def nbr(self, v):
        s, t, b = self.s, self.t, self.b
        if v == s:
            return NatSet.finite([t])
        if v == t:
            return NatSet.finite([s, b])
        if v == b:
            return NatSet.cofinite([s, b])
        if self.rest_complete:
            return NatSet.cofinite([s, t, v])
        return NatSet.finite([b])

    def contains(self, u, v):
        return u != v and v in self.nbr(u)

    def specials(self):
        return {self.s, self.t, self.b}

    def describe(self):
        rest = "" if self.rest_complete else ",empty"
        return f"scorpion:{self.s},{self.t},{self.b}{rest}"


class StarCenters(PairSet):
    def __init__(self, centers):
        self.centers = frozenset(centers)
        if not self.centers:
            raise TemplateError("stars needs at least one centre")

    def nbr(self, v):
        if v in self.centers:
            return NatSet.cofinite([v])
        return NatSet.finite(self.centers)

    def contains(self, u, v):
        return u != v and (u in self.centers or v in self.centers)

    def specials(self):
        return set(self.centers)

    def describe(self):
        return "stars:" + ",".join(map(str, sorted(self.centers)))


@dataclass
class HiddenTemplate:
    base: PairSet
    add: tuple = ()
    remove: tuple = ()
    spec: str = field(default="")

    def __post_init__(self):
        self.add = tuple(sorted({pair(*p) for p in self.add}))
        self.remove = tuple(sorted({pair(*p) for p in self.remove}))
        self.region = RegionSet([self.base], self.add, self.remove)
        if not self.spec:
            self.spec = _format(self.base.describe(), self.add, self.remove)

    def contains(self, u, v) -> bool:
        return self.region.contains(u, v)

    def nbr(self, v) -> NatSet:
        return self.region.nbr(v)

    def on_board(self, board: Board) -> PairSet:
        """The hidden edges that are allowed pairs of ``board``."""
        if isinstance(board, CantorBoard):
            return _cantor_restriction(self)
        return self.region

    def __str__(self) -> str:
        return self.spec


class _Restricted(PairSet):
    """A template seen through the Cantor board: finite parts are materialised."""

    def __init__(self, base: PairSet, extra: Explicit):
        self.base, self.extra = base, extra

    def contains(self, u, v):
        return cantor.comparable(u, v) and (self.base.contains(u, v) or self.extra.contains(u, v))

    def nbr(self, v):
        comp = NatSet.finite(cantor.ancestors(v)) | NatSet.subtree(v)
        return (self.base.nbr(v) | self.extra.nbr(v)) & comp

    def specials(self):
        return self.base.specials() | self.extra.specials()

    def cantor(self):
        return True

    def describe(self):
        return f"({self.base.describe()} | {self.extra.describe()}) & comparable"


def _cantor_restriction(tpl: HiddenTemplate) -> PairSet:
    base = tpl.base
    if isinstance(base, ModClassDistinct):
        raise TemplateError("modclass templates have no finite description on the Cantor board")
    if isinstance(base, BlockCliques):
        # a comparable pair inside one block needs v >= 2u + 1, so only block 0 has any
        block = [(u, v) for v in range(base.b) for u in range(v) if cantor.comparable(u, v)]
        core, extra = NoPairs(), Explicit(block)
    else:
        core, extra = base, Explicit()
    region = RegionSet([core], list(extra.pairs()) + list(tpl.add), tpl.remove)
    return _Restricted(region, Explicit())


def _format(base: str, add, remove) -> str:
    parts = [base]
    if add:
        parts.append("add:" + ",".join(f"{u}-{v}" for u, v in add))
    if remove:
        parts.append("del:" + ",".join(f"{u}-{v}" for u, v in remove))
    return ";".join(parts)


def _ints(arg: str, what: str) -> list:
    items = [x.strip() for x in arg.split(",") if x.strip()]
    if not items or not all(x.isdigit() for x in items):
        raise TemplateError(f"{what} needs comma-separated vertex ids, got {arg!r}")
    return [int(x) for x in items]


def _pairs(arg: str, what: str) -> list:
    out = []
    for item in arg.split(","):
        u, sep, v = item.strip().partition("-")
        if not (sep and u.isdigit() and v.isdigit()) or u == v:
            raise TemplateError(f"{what} expects pairs like 3-7, got {item!r}")
        out.append(pair(int(u), int(v)))
    return out


def parse_template(spec: str) -> HiddenTemplate:
    spec = spec.strip()
    head, *edits = spec.split(";")
    name, _, arg = head.partition(":")
    if name == "empty" and not arg:
        base = NoPairs()
    elif name == "complete" and not arg:
        base = AllPairs()
    elif name in ("blocks", "modclass"):
        if not arg.isdigit() or int(arg) < 2:
            raise TemplateError(f"{name} needs an integer >= 2, e.g. {name}:5")
        base = BlockCliques(int(arg)) if name == "blocks" else ModClassDistinct(int(arg))
    elif name == "stars":
        base = StarCenters(_ints(arg, "stars"))
    elif name == "scorpion":
        fields = [x.strip() for x in arg.split(",")]
        rest = True
        if fields and fields[-1] in ("complete", "empty"):
            rest = fields.pop() == "complete"
        ids = _ints(",".join(fields), "scorpion")
        if len(ids) != 3:
            raise TemplateError("scorpion needs sting,tail,body ids, e.g. scorpion:0,1,2")
        base = ScorpionPattern(*ids, rest_complete=rest)
    else:
        raise TemplateError(
            f"unknown template {spec!r}; expected empty, complete, blocks:<b>, modclass:<k>, "
            "stars:<c,...> or scorpion:<s>,<t>,<b>[,complete|empty], optionally followed by ;add:u-v,... ;del:u-v,..."
        )
    add, remove = [], []
    for e in edits:
        kind, _, arg = e.partition(":")
        if kind == "add":
            add += _pairs(arg, "add")
        elif kind == "del":
            remove += _pairs(arg, "del")
        else:
            raise TemplateError(f"unknown template edit {e!r}; expected add:u-v,... or del:u-v,...")
    return HiddenTemplate(base, tuple(add), tuple(remove), spec)


# ----------------------------------------------------------- ground truth


def _board_pairs(board: Board) -> PairSet:
    from .state import board_pairs

    return board_pairs(board)


def template_graph(tpl: HiddenTemplate, board: Board) -> PairSet:
    from .regions import Inter

    return Inter(_board_pairs(board), tpl.on_board(board))


def template_world(tpl: HiddenTemplate, board: Board) -> World:
    g = template_graph(tpl, board)
    return World.of([g], isinstance(board, CantorBoard))


def template_has_scorpion(tpl: HiddenTemplate, board: Board):
    """The scorpion triple of the hidden graph on ``board``, or None."""
    if not isinstance(board, CompleteOmega):
        return None
    g = template_graph(tpl, board)
    world = template_world(tpl, board)
    for b in world.reps():
        missing = NatSet.all() - g.nbr(b)
        if missing.infinite:
            continue
        rest = [x for x in missing.finite_elements() if x != b]
        if len(rest) != 1:
            continue
        s = rest[0]
        ns = g.nbr(s)
        if ns.infinite or len(ns) != 1:
            continue
        (t,) = ns.finite_elements()
        nt = g.nbr(t)
        if not nt.infinite and set(nt.finite_elements()) == {s, b}:
            return (s, t, b)
    return None


def template_w_truth(tpl: HiddenTemplate, board: Board, wf) -> bool:
    """Does every vertex of the hidden graph reach level ``wf.n``?"""
    g = template_graph(tpl, board)
    world = template_world(tpl, board)
    nbrs = lambda v: iter(g.nbr(v))
    return world.forall(lambda v: wf.value(v, nbrs) >= wf.n)
