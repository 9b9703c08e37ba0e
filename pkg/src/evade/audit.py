"""Per-turn invariant checks for the adaptive hiders.

Each audit plays one game and returns an :class:`AuditReport` listing every
violated invariant.  An empty ``violations`` list means the run is clean.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .boards import FiniteExplicit, parse_board
from .canon import keyer_for
from .engine import GameConfig, GameView, LargeFamily, family_membership, play
from .graph import FiniteGraph, FinitePregraph, all_pairs, pair
from .properties import Status, min_degree, star, terminal_status
from .strategies import ConnectHider, DegreeHider, RandomSeeker, StarHider


# 500 random probes over 561 pairs saturate many lower neighbourhoods, so the
# rule-(b) checks see real traffic; wider windows leave them almost idle.
AUDIT_WINDOW = 34


@dataclass
class AuditReport:
    name: str
    turns: int = 0
    violations: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations


# ---------------------------------------------------------------- degree hider


def _degree_turn_check(view: GameView, n: int, window: int, report: AuditReport) -> None:
    """deg_gmax(v) >= n for every v, via the lower-degree certificate.

    For j >= n the certificate is d_E(j) + (undetermined i < j) >= n.  For
    i < n it is d_E(i) >= min(n, d_P(i)); when d_E(i) < n the vertex still has
    infinitely many undetermined pairs, since only finitely many are probed.
    Vertices at or beyond the window are untouched, so their gmax degree is
    infinite (the symbolic tail); this is checked rather than assumed.
    """
    for v in view.touched():
        if v >= window:
            report.violations.append(f"turn {view.turn}: vertex {v} outside the window was probed")
    for j in range(window):
        if j >= n:
            if view.deg_e(j) + view.lower_undetermined(j) < n:
                report.violations.append(f"turn {view.turn}: vertex {j} has lower gmax certificate below {n}")
        elif view.deg_e(j) < min(n, view.deg_p(j)):
            report.violations.append(f"turn {view.turn}: vertex {j} < {n} lost an edge answer it was owed")


def _greedy_classes(vertices: list, conflict) -> list:
    """Colour vertices in increasing order with the least colour unused by earlier conflicts."""
    colour: dict = {}
    for v in vertices:
        used = {colour[u] for u in vertices if u < v and conflict(u, v)}
        colour[v] = next(c for c in range(len(vertices) + 1) if c not in used)
    classes: dict = {}
    for v, c in colour.items():
        classes.setdefault(c, []).append(v)
    return list(classes.values())


def degree_clique_bound(view: GameView, n: int, rule_b_edges: Iterable) -> dict:
    """The determined-clique bound at the end of a degree-hider game.

    A holds the larger endpoints of edges answered by rule (b).  When rule (b)
    fires for j, d_E(j) plus the undetermined lower pairs of j equals n, so j
    keeps at most n undetermined lower pairs from then on.  Greedy colouring
    of the undetermined pairs inside A in increasing order therefore uses at
    most n + 1 colours, and the largest class is a determined clique of size
    at least ceil(|A| / (n + 1)).  (Restricting A to vertices above the last
    rule-(a) edge gives the infinite version; on a window that set is usually
    empty, so the check runs on every rule-(b) vertex instead.)
    """
    A = sorted({max(p) for p in rule_b_edges})
    undetermined = lambda u, v: not view.is_determined(pair(u, v))
    lower_u = {j: view.lower_undetermined(j) for j in A}
    classes = _greedy_classes(A, undetermined)
    best = max(classes, key=len, default=[])
    need = math.ceil(len(A) / (n + 1)) if A else 0
    clique_ok = all(view.is_determined(pair(u, v)) for i, u in enumerate(best) for v in best[i + 1:])
    return {
        "A": A,
        "max_lower_undetermined": max(lower_u.values(), default=0),
        "colours": len(classes),
        "clique": best,
        "required": need,
        "holds": clique_ok and len(best) >= need and len(classes) <= n + 1,
    }


def degree_audit(n: int, seed: int, probes: int = 500, window: int = AUDIT_WINDOW) -> AuditReport:
    report = AuditReport(f"degree:{n} vs random:{seed}")
    hider = DegreeHider(n)
    rule_b: list = []

    def observe(view, move):
        if hider.last_rule == "b":
            rule_b.append(move.pair)
        _degree_turn_check(view, n, window, report)

    seeker = RandomSeeker(seed, window)
    cfg = GameConfig(parse_board("komega"), min_degree(n), fuel=probes)
    holder: dict = {}

    def capture(view, move):
        holder["view"] = view
        observe(view, move)

    tr = play(seeker, hider, cfg, observer=capture)
    report.turns = len(tr.moves)
    if tr.terminal_reason != "FuelExhausted":
        report.violations.append(f"game ended early: {tr.terminal_reason}")
    view = holder.get("view")
    if view is not None:
        bound = degree_clique_bound(view, n, rule_b)
        report.stats = bound
        if bound["max_lower_undetermined"] > n:
            report.violations.append(f"a vertex of A has {bound['max_lower_undetermined']} undetermined lower pairs (> {n})")
        if not bound["holds"]:
            report.violations.append(
                f"determined clique of size {len(bound['clique'])} below ceil(|A|/(n+1)) = {bound['required']}"
            )
    return report


# ---------------------------------------------------------------- connect hider


def _component_closed(view: GameView, comp: set) -> Optional[tuple]:
    members = sorted(comp)
    for i, u in enumerate(members):
        for v in members[i + 1:]:
            if view.board.contains(u, v) and not view.is_determined(pair(u, v)):
                return (u, v)
    return None


def connect_audit(seed: int, probes: int = 500, window: int = AUDIT_WINDOW, board: str = "komega") -> AuditReport:
    """[A]^2 ⊆ P for every gmin-component A after every answer.

    P only grows and components only merge, so after each move it suffices to
    check the component containing the probed pair; every other component is
    unchanged and stays closed.  A full sweep runs at the end as well.
    """
    report = AuditReport(f"connect vs random:{seed} on {board}")
    hider = ConnectHider()
    last: dict = {}

    def observe(view, move):
        last["view"] = view
        comp = view.gmin_component(move.pair[0])
        bad = _component_closed(view, comp)
        if bad:
            report.violations.append(f"turn {move.turn}: component {sorted(comp)} has undetermined pair {bad}")

    cfg = GameConfig(parse_board(board), min_degree(1), fuel=probes)
    tr = play(RandomSeeker(seed, window), hider, cfg, observer=observe)
    report.turns = len(tr.moves)
    view = last.get("view")
    if view is not None:
        seen: set = set()
        sizes = []
        for v in sorted(view.touched()):
            if v in seen:
                continue
            comp = view.gmin_component(v)
            seen |= comp
            sizes.append(len(comp))
            bad = _component_closed(view, comp)
            if bad:
                report.violations.append(f"final sweep: component {sorted(comp)} has undetermined pair {bad}")
        report.stats = {"largest_component": max(sizes, default=0), "components": len(sizes)}
    return report


# ---------------------------------------------------------------- star hider


def star_shape(view_edges, view_nonedges, m: int, n: int) -> tuple[bool, list]:
    """Is the complement of P inside [B]^2 for some |B| <= n?  Returns (ok, minimal B)."""
    P = set(view_edges) | set(view_nonedges)
    mem = family_membership(P, LargeFamily.parse(f"small:{n}"), FiniteGraph.complete(m))
    return bool(mem.value), mem.detail.get("B", [])


def star_audit_random(m: int, n: int, seed: int) -> AuditReport:
    report = AuditReport(f"star:{n} on K_{m} vs random:{seed}")
    cfg = GameConfig(FiniteExplicit(FiniteGraph.complete(m)), star(n), fuel=10 ** 6)
    tr = play(RandomSeeker(seed), StarHider(n), cfg)
    report.turns = len(tr.moves)
    ok, B = star_shape(tr.final_edges, tr.final_nonedges, m, n)
    report.stats = {"B": B, "terminal": tr.terminal_reason}
    if not ok:
        report.violations.append(f"complement of P needs B = {B}, more than {n} vertices")
    return report


def star_terminal(deg_e: list, deg_n: list, m: int, n: int) -> Optional[bool]:
    """Status of "contains K_{1,n}" on K_m from degree counts: True, False or None (open)."""
    if any(d >= n for d in deg_e):
        return True
    if all(m - 1 - d < n for d in deg_n):
        return False
    return None


def star_audit_exhaustive(m: int, n: int, canonical: bool = True, state_limit: int = 2_000_000) -> AuditReport:
    """Every seeker move order against the star hider on K_m.

    Positions are bitmask pairs; with ``canonical`` they are merged up to
    relabelling of the vertices, which the hider and the property respect.
    """
    report = AuditReport(f"star:{n} on K_{m}, all seeker orders")
    pairs = all_pairs(m)
    full = (1 << len(pairs)) - 1
    keyer = keyer_for(FiniteGraph.complete(m)) if canonical else None
    seen: set = set()
    stack = [(0, 0)]
    terminals = 0
    while stack:
        e, nm = stack.pop()
        key = keyer.key_masks(e, nm) if keyer else (e, nm)
        if key in seen:
            continue
        seen.add(key)
        if len(seen) > state_limit:
            report.violations.append(f"state limit {state_limit} reached before the search finished")
            break
        deg_e, deg_n = [0] * m, [0] * m
        for i, (u, v) in enumerate(pairs):
            if e >> i & 1:
                deg_e[u] += 1
                deg_e[v] += 1
            elif nm >> i & 1:
                deg_n[u] += 1
                deg_n[v] += 1
        if star_terminal(deg_e, deg_n, m, n) is not None:
            terminals += 1
            loose = full & ~(e | nm)
            B = sorted({x for i, p in enumerate(pairs) if loose >> i & 1 for x in p})
            if len(B) > n:
                report.violations.append(f"terminal position leaves pairs outside [B]^2 with B={B}")
            continue
        for i, (u, v) in enumerate(pairs):
            bit = 1 << i
            if (e | nm) & bit:
                continue
            if deg_e[u] < n - 1 and deg_e[v] < n - 1:
                stack.append((e | bit, nm))
            else:
                stack.append((e, nm | bit))
    report.turns = len(seen)
    report.stats = {"positions": len(seen), "terminal_positions": terminals, "canonical": canonical}
    return report
