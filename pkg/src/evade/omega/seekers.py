"""Batched seeker plans for ω-boards.

``ScorpionSeeker`` decides "the graph is a scorpion" on the complete board
while keeping at most four vertices of infinite probed degree.
``BraidedSeeker`` decides "every vertex reaches level n" for a level
function on a braided board and always leaves an allowed pair unprobed.

Both are generators driven by :func:`evade.omega.play.batch_play`; the
referee ends the game as soon as the position is decided, so a plan simply
stops yielding once its own bookkeeping says the game must be over.
"""
from __future__ import annotations

from ..boards import CompleteOmega
from ..graph import pair
from ..wfunc import WFunction, parse_wfunction
from .natset import NatSet
from .play import Batch
from .regions import AllPairs, BlockCliques, Diff, Explicit, Rect, Union, square, star


def _all_but(p) -> Diff:
    return Diff(AllPairs(), Explicit([p]))


class ScorpionSeeker:
    name = "scorpion"

    def __init__(self, max_substages: int = 2000):
        self.max_substages = max_substages
        self.log: list = []

    def plan(self, st):
        if not isinstance(st.board, CompleteOmega):
            raise ValueError("the scorpion seeker runs on the complete board komega")
        yield Batch(BlockCliques(5), label="stage1")

        low_n = lambda v: st.deg("N", v, 2) <= 1
        low_e = lambda v: st.deg("E", v, 2) <= 1
        for i in range(self.max_substages):
            B, S = st.collect(low_n), st.collect(low_e)
            if B.is_empty() or S.is_empty():
                return
            k = (B | S).min()
            in_s = k in S
            C = B if in_s else S
            if in_s:
                leaves = lambda s, k=k: s.deg("E", k, 2) >= 2
            else:
                leaves = lambda s, k=k: s.deg("N", k, 2) >= 2
            self.log.append(("substage", i, k, "S" if in_s else "B"))
            out = yield Batch(Rect(NatSet.finite([k]), C), interrupt=leaves, label=f"stage2.{i}:k={k}")
            if out.completed:
                break
        else:
            self.log.append(("gave-up", self.max_substages))
            return

        if not in_s:
            # k is a body candidate: the sting must be its unique non-neighbour in S
            stings = [s for s in st.n_nbr(k).finite_elements() if low_e(s)]
            if len(stings) != 1:
                return
            yield from self._via_sting(st, stings[0])
        else:
            bodies = [b for b in st.e_nbr(k).finite_elements() if low_n(b)]
            if not bodies:
                yield from self._via_sting(st, k)
            else:
                yield from self._via_body(st, bodies[0])

    def _finite_single(self, s: NatSet):
        if s.infinite:
            return None
        xs = s.finite_elements()
        return xs[0] if len(xs) == 1 else None

    def _via_sting(self, st, s):
        self.log.append(("sting", s))
        yield Batch(star(s), label=f"sweep:s={s}")
        t = self._finite_single(st.e_nbr(s))
        if t is None:
            return
        yield Batch(star(t), label=f"sweep:t={t}")
        b = self._finite_single(st.e_nbr(t).minus([s]))
        if b is None:
            return
        yield Batch(star(b), label=f"sweep:b={b}")

    def _via_body(self, st, b):
        self.log.append(("body", b))
        yield Batch(star(b), label=f"sweep:b={b}")
        s = self._finite_single(st.n_nbr(b))
        if s is None:
            return
        yield Batch(star(s), label=f"sweep:s={s}")
        t = self._finite_single(st.e_nbr(s))
        if t is None:
            return
        yield Batch(star(t), label=f"sweep:t={t}")


class BraidedSeeker:
    """Four-stage plan for level functions on braided boards."""

    def __init__(self, wf):
        self.wf: WFunction = parse_wfunction(wf) if isinstance(wf, str) else wf
        self.name = f"braided-w:{self.wf.name}"
        self.log: list = []

    def plan(self, st):
        wf, board = self.wf, st.board
        n = wf.n
        w = lambda v: st.w_value(wf, v)
        e_nbrs = lambda v: iter(st.e_nbr(v))

        L = sorted(board.covering_set(()))
        self.log.append(("L", L))
        # stage 1: raise every vertex of L one level at a time
        for i in range(n):
            if all(w(l) >= i + 1 for l in L):
                continue
            W = set()
            for l in L:
                W |= wf.witness(l, e_nbrs)
            out = yield Batch(
                Rect(NatSet.finite(W), NatSet.all()),
                interrupt=lambda s, i=i: all(s.w_value(wf, l) >= i + 1 for l in L),
                label=f"stage1.{i}",
            )
            if not out.interrupted:
                return

        # stage 2: fresh disjoint covering sets, then everything outside them
        N = wf.M * (wf.K + len(L)) + 1
        used = set(st.extra.adj) | set(L)
        covers = []
        for _ in range(N + 1):
            Lj = sorted(board.covering_set(used))
            covers.append(Lj)
            used |= set(Lj)
        X = sorted(set().union(*map(set, covers)))
        self.log.append(("covers", covers))
        A = NatSet.cofinite(X)
        yield Batch(square(A), label="stage2")

        B = st.collect(lambda v: v in A and w(v) >= n)
        C = st.collect(lambda v: v in A and w(v) < n)
        self.log.append(("B-infinite", B.infinite))

        if B.infinite:
            x = next((x for x in covers[N] if (board.nbr(x) & B).infinite), None)
            if x is None:
                return
            Y = NatSet.finite([v for v in X if v != x])
            yield Batch(square(Y), label="stage3.1.1:[Y]^2")
            yield Batch(Rect(C, Y), label="stage3.1.1:[C,Y]")
            high = [y for y in Y.finite_elements() if w(y) >= n]
            if high:
                yield from self._leave_one(st, high[0], L, "stage3.1.1:claim")
                return
            ells = []
            for Lj in covers[:N]:
                l = next((l for l in Lj if (board.nbr(l) & B).infinite), None)
                if l is None:
                    return
                ells.append(l)
            out = yield Batch(
                Rect(B, Y),
                interrupt=lambda s: any(s.w_value(wf, l) >= n for l in ells),
                label="stage3.1.2:[B,Y]",
            )
            if out.interrupted:
                l = next(l for l in ells if w(l) >= n)
                b = (B & st.u_nbr(l)).min()
                if b is None:
                    return
                self.log.append(("claim-3.1.2", l, b))
                yield Batch(_all_but(pair(l, b)), label="stage3.1.2:all-but")
                return
        else:
            x = covers[N][0]
            Y = NatSet.finite([v for v in X if v != x])
            yield Batch(Union([square(Y), Rect(C, Y)]), label="stage3.2.1")
            C1 = st.collect(lambda v: v in C and w(v) < n)
            if not C1.infinite:
                high = [y for y in Y.finite_elements() if w(y) >= n]
                if not high:
                    return
                yield from self._leave_one(st, high[0], L, "stage3.2.1:claim")
                return
            yield Batch(Rect(B, Y), label="stage3.2.2")

        # stage 4: everything except one pair at x
        l = next((l for l in L if board.contains(x, l)), None)
        if l is None:
            return
        self.log.append(("stage4", x, l))
        yield Batch(_all_but(pair(x, l)), label="stage4")

    def _leave_one(self, st, y, L, label):
        l = next((l for l in L if st.board.contains(y, l) and not st.is_probed(y, l)), None)
        if l is None:
            return
        self.log.append((label, y, l))
        yield Batch(_all_but(pair(y, l)), label=label)


def parse_omega_seeker(spec: str):
    spec = spec.strip()
    if spec == "scorpion":
        return ScorpionSeeker()
    if spec.startswith("braided-w:"):
        return BraidedSeeker(parse_wfunction(spec[len("braided-w:"):]))
    raise ValueError(f"unknown omega seeker {spec!r}; expected scorpion, braided-w:dmin:<m> or braided-w:cmin:<n>")
