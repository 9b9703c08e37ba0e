"""Referee for ω-board games with batched probes and limit stages.

A seeker plan is a generator.  It yields :class:`SinglePair` or
:class:`Batch` moves and receives an :class:`Outcome` for each.  A batch is
probed pair by pair in colex order up to ``prefix_bound`` concrete probes;
if neither the interrupt nor termination has happened by then, the whole
region is added symbolically, which is the limit of the enumeration.

Termination and every interrupt are monotone along a batch (answers only
add determined pairs), so the referee checks the completed position first
and only searches the concrete prefix when the completed position fires.
"""
from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional

from ..boards import Board, CompleteOmega, as_board
from ..engine import ALL_PAIRS, FamilyKind, LargeFamily, Move, ProtocolViolation, Transcript, Winner
from ..graph import Pair, pair
from ..properties import Property, Status
from ..wfunc import WFunction
from .regions import PairSet, Rect
from .state import SymbolicState
from .templates import HiddenTemplate, parse_template

DEFAULT_PREFIX_BOUND = 10_000
HARD_PREFIX_BOUND = 1 << 16
UNKNOWN_EXHAUSTED = "unknown-exhausted"


@dataclass
class SinglePair:
    pair: Pair
    label: str = ""


@dataclass
class Batch:
    region: PairSet
    interrupt: Optional[Callable[[SymbolicState], bool]] = None
    label: str = ""
    bound: Optional[int] = None


@dataclass
class Outcome:
    completed: bool = False
    interrupted: bool = False
    probes: int = 0
    answer: Optional[bool] = None


class _GameOver(Exception):
    def __init__(self, reason: str):
        self.reason = reason


@dataclass
class _Game:
    state: SymbolicState
    prop: Property
    fuel: int
    prefix_bound: int
    transcript: Transcript
    status: Status = Status.OPEN

    def spend(self, k: int = 1) -> None:
        self.fuel -= k
        if self.fuel < 0:
            raise _GameOver("FuelExhausted")

    def check(self) -> Status:
        self.status = self.state.status(self.prop)
        return self.status


def _colex(state: SymbolicState, region: PairSet):
    """Undetermined allowed pairs of ``region`` in colex order."""
    if isinstance(region, Rect):
        for side in (region.X, region.Y):
            if not side.infinite:
                return _colex_hub(state, region, side.finite_elements())
    return _colex_general(state, region)


def _colex_hub(state: SymbolicState, region: PairSet, hub: list):
    """Colex enumeration when every pair of the region meets the finite set ``hub``.

    During a batch only the batch's own probes change U, so each hub vertex's
    candidates are computed once and the per-vertex streams are merged.
    """
    def keys(x, cand):
        for y in cand:
            yield (x, y) if y < x else (y, x)

    streams = [keys(x, region.nbr(x) & state.u_nbr(x)) for x in hub]
    last = None
    for key in heapq.merge(*streams):
        if key != last:
            last = key
            yield key[1], key[0]


def _colex_general(state: SymbolicState, region: PairSet):
    world = state.world_with([region])
    top = max(world.reps())
    live = lambda v: not (region.nbr(v) & state.u_nbr(v)).is_empty()
    tail_live: dict = {}
    for b in itertools.count():
        if b > top:
            # beyond the representatives every vertex behaves like its class
            if not tail_live:
                # judge each class by a member above top: no probe has touched it yet
                tail_live = {r: live(world.fresh_member(r, top)) for r in world.tails}
                if not any(tail_live.values()):
                    return
            if not tail_live[world.rep_of(b)]:
                continue
        for a in (region.nbr(b) & state.u_nbr(b)).below(b):
            yield pair(a, b)


def _record(game: _Game, p: Pair) -> bool:
    ans = game.state.answer(*p)
    game.state.add_pair(p)
    tr = game.transcript
    tr.moves.append(Move(len(tr.moves), p, "edge" if ans else "nonedge"))
    return ans


def _truncate(game: _Game, steps: list, keep: int) -> None:
    for p in steps[keep:]:
        game.state.remove_pair(p)
    drop = len(steps) - keep
    if drop:
        del game.transcript.moves[-drop:]
    del steps[keep:]


def _first_terminal(game: _Game, steps: list) -> int:
    """Smallest prefix length whose position is terminal (the full list is terminal)."""
    lo, hi = 0, len(steps)
    st = game.state
    while hi - lo > 1:
        mid = (lo + hi) // 2
        removed = steps[mid:]
        for p in removed:
            st.remove_pair(p)
        terminal = st.status(game.prop) is not Status.OPEN
        for p in removed:
            st.add_pair(p)
        if terminal:
            hi = mid
        else:
            lo = mid
    return hi


def _run_batch(game: _Game, move: Batch) -> Outcome:
    st = game.state
    bound = move.bound if move.bound is not None else game.prefix_bound
    it = _colex(st, move.region)
    steps: list = []
    interrupted = exhausted = False
    record = {"stage": move.label, "region": move.region.describe()}
    game.transcript.batches.append(record)

    def first_firing(lo: int, hi: int) -> int:
        """Smallest prefix length in (lo, hi] at which the interrupt holds; it holds at hi."""
        while hi - lo > 1:
            mid = (lo + hi) // 2
            removed = steps[mid:]
            for p in removed:
                st.remove_pair(p)
            fires = move.interrupt(st)
            for p in removed:
                st.add_pair(p)
            if fires:
                hi = mid
            else:
                lo = mid
        return hi

    def stop_at(lo: int) -> None:
        nonlocal interrupted
        keep = first_firing(lo, len(steps))
        game.fuel += len(steps) - keep
        _truncate(game, steps, keep)
        interrupted = True

    def advance(limit: int) -> None:
        # the interrupt is monotone, so it is checked at doubling gaps and located by bisection
        nonlocal exhausted
        start = checked = len(steps)
        next_check = checked + 1
        while len(steps) < limit:
            p = next(it, None)
            if p is None:
                exhausted = True
                break
            game.spend()
            _record(game, p)
            steps.append(p)
            if move.interrupt is not None and len(steps) >= next_check:
                if move.interrupt(st):
                    stop_at(checked)
                    return
                checked = len(steps)
                next_check = checked + max(1, checked - start)
        if move.interrupt is not None and len(steps) > checked and move.interrupt(st):
            stop_at(checked)

    def finish_concrete() -> Outcome:
        record.update(concrete_probes=len(steps), completed=exhausted and not interrupted, interrupted=interrupted)
        if game.check() is not Status.OPEN:
            keep = _first_terminal(game, steps)
            _truncate(game, steps, keep)
            record["concrete_probes"] = keep
            game.check()
            raise _GameOver(game.status.value)
        return Outcome(completed=exhausted and not interrupted, interrupted=interrupted, probes=len(steps))

    try:
        advance(bound)
    except _GameOver:
        record.update(concrete_probes=len(steps), completed=False, interrupted=False)
        raise
    if interrupted or exhausted:
        return finish_concrete()

    # limit stage: add the rest of the region symbolically
    saved = st.extra.pairs()
    game.spend()
    st.add_region(move.region)
    st.compact()
    fires = move.interrupt is not None and move.interrupt(st)
    terminal = (not fires) and game.check() is not Status.OPEN
    if not fires and not terminal:
        record.update(concrete_probes=len(steps), completed=True, interrupted=False)
        return Outcome(completed=True, probes=len(steps))

    def undo() -> None:
        st.regions.pop()
        st._cache.clear()
        st._world = None
        for p in saved:
            st.extra.add(p)

    undo()
    if fires:
        # the interrupt fires at some finite step beyond the prefix: look further
        advance(HARD_PREFIX_BOUND)
        if interrupted or exhausted:
            return finish_concrete()
        record.update(concrete_probes=len(steps), completed=False, interrupted=False)
        game.transcript.flags.append(f"{UNKNOWN_EXHAUSTED}: interrupt of {move.label or 'batch'} lies beyond {HARD_PREFIX_BOUND} probes")
        raise _GameOver(UNKNOWN_EXHAUSTED)
    if game.check() is not Status.OPEN:
        return finish_concrete()
    st.add_region(move.region)
    st.compact()
    game.check()
    record.update(concrete_probes=len(steps), completed=True, interrupted=False)
    game.transcript.flags.append(
        f"limit termination after {move.label or 'batch'}: the position may already have been decided at an unseen finite step"
    )
    raise _GameOver(game.status.value)


def _run_single(game: _Game, move: SinglePair) -> Outcome:
    p = pair(*move.pair)
    st = game.state
    if not st.is_allowed(*p):
        raise ProtocolViolation(f"turn {len(game.transcript.moves)}: {p} is not an allowed pair")
    if st.is_probed(*p):
        raise ProtocolViolation(f"turn {len(game.transcript.moves)}: {p} is already determined")
    game.spend()
    ans = _record(game, p)
    if game.check() is not Status.OPEN:
        raise _GameOver(game.status.value)
    return Outcome(completed=True, probes=1, answer=ans)


# ------------------------------------------------------------------ families


def family_membership_omega(state: SymbolicState, family: LargeFamily):
    """(value, detail) with value True, False or None for unknown."""
    omega = state.omega_vertices()
    detail = {"infinite_degree_vertices": omega}
    kind = family.kind
    if kind is FamilyKind.ALL_PAIRS:
        return state.all_determined(), detail
    if kind is FamilyKind.JN:
        return (omega == "Infinite" or len(omega) >= family.n), detail
    if kind is FamilyKind.SMALL_COMPLEMENT:
        loose = state.collect(lambda v: not state.u_nbr(v).is_empty())
        if loose.infinite:
            return False, detail
        B = loose.finite_elements()
        detail["B"] = B
        return len(B) <= family.n, detail
    # an infinite clique inside P needs infinitely many vertices of infinite P-degree
    if omega != "Infinite":
        return False, detail
    if isinstance(state.board, CompleteOmega):
        loose = state.collect(lambda v: not state.u_nbr(v).is_empty())
        if not loose.infinite:
            detail["cofinite_clique_outside"] = loose.finite_elements()
            return True, detail
        for r in state.regions:
            if isinstance(r, Rect) and r.X == r.Y and r.X.infinite:
                detail["square_region"] = r.describe()
                return True, detail
    return None, detail


# ------------------------------------------------------------------- driver


def _target(target) -> Property:
    if isinstance(target, Property):
        return target
    if isinstance(target, WFunction):
        return target.target_property()
    return Property.parse(str(target))


def batch_play(seeker, hidden, allowed, target, fuel: int = 100_000, family: LargeFamily = ALL_PAIRS,
               prefix_bound: int = DEFAULT_PREFIX_BOUND) -> Transcript:
    """Play a batched seeker against an oblivious hidden template on an ω-board."""
    board: Board = as_board(allowed)
    if not board.infinite:
        raise ValueError("batch play needs an infinite board; use evade.engine.play for finite ones")
    if isinstance(hidden, str):
        hidden = parse_template(hidden)
    if not isinstance(hidden, HiddenTemplate):
        raise TypeError("the hidden graph must be a HiddenTemplate")
    if fuel < 1:
        raise ValueError(f"fuel must be >= 1, got {fuel}")
    prop = _target(target)
    state = SymbolicState(board, hidden)
    tr = Transcript(
        board=board.spec(),
        property=str(prop),
        family=str(family),
        seeker=getattr(seeker, "name", type(seeker).__name__),
        hider=f"oblivious:{hidden}",
    )
    game = _Game(state, prop, fuel, prefix_bound, tr)
    reason = None
    if game.check() is not Status.OPEN:
        reason = game.status.value
    else:
        plan = seeker.plan(state)
        outcome = None
        try:
            while True:
                try:
                    move = plan.send(outcome) if outcome is not None else next(plan)
                except StopIteration:
                    tr.flags.append(f"{UNKNOWN_EXHAUSTED}: seeker plan ended on an undecided position")
                    reason = UNKNOWN_EXHAUSTED
                    break
                if isinstance(move, Batch):
                    outcome = _run_batch(game, move)
                elif isinstance(move, SinglePair):
                    outcome = _run_single(game, move)
                else:
                    raise ProtocolViolation(f"seeker yielded {move!r}, expected SinglePair or Batch")
        except _GameOver as over:
            reason = over.reason
        finally:
            plan.close()
    _finish(tr, state, family, reason)
    return tr


def _finish(tr: Transcript, state: SymbolicState, family: LargeFamily, reason: str) -> None:
    tr.determined_count = len(tr.moves)
    tr.terminal_reason = reason
    value, detail = family_membership_omega(state, family)
    decided = reason in (Status.FORCED_TRUE.value, Status.FORCED_FALSE.value)
    if not state.all_determined():
        w = state.undetermined_witness()
        detail["undetermined_witness"] = list(w) if w else None
        if w is None:
            tr.flags.append(f"{UNKNOWN_EXHAUSTED}: no undetermined pair found below vertex {1 << 16}")
            value = None
    tr.family_report = {"member": "unknown" if value is None else value, **detail}
    tr.family_report["final_regions"] = [r.describe() for r in state.regions]
    if not decided or value is None:
        tr.winner = Winner.UNDECIDED
    else:
        tr.winner = Winner.BOB if value else Winner.ALICE
    tr.final_edges = []
    tr.final_nonedges = []
