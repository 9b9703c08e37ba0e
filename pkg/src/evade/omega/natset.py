"""Symbolic subsets of the natural numbers.

Two shapes of infinite set show up on the boards we simulate:

* eventually periodic sets (cofinite sets, residue classes, finite sets),
  stored as a residue pattern modulo ``mod`` XOR a finite set of flips;
* Cantor subtrees (strict descendants of a 0-1 string under the
  breadth-first codec), intersected with a periodic set.

A :class:`NatSet` is a finite union of such terms.  The algebra is closed
under union, intersection and complement, membership is exact, and
infinite sets enumerate lazily in increasing order.
"""
from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .. import cantor


@dataclass(frozen=True)
class Periodic:
    """``{x : (x % mod in residues) xor (x in flips)}``."""

    mod: int
    residues: frozenset
    flips: frozenset = frozenset()

    @staticmethod
    def make(mod: int, residues: Iterable[int], flips: Iterable[int] = ()) -> "Periodic":
        residues = frozenset(r % mod for r in residues)
        # shrink the modulus to the true period of the residue pattern
        for d in sorted(_divisors(mod)):
            if d == mod:
                break
            if all((r % d in {x % d for x in residues}) == (r in residues) for r in range(mod)):
                residues = frozenset(r for r in range(d) if r in residues)
                mod = d
                break
        return Periodic(mod, residues, frozenset(flips))

    def __contains__(self, x: int) -> bool:
        return (x % self.mod in self.residues) != (x in self.flips)

    @property
    def infinite(self) -> bool:
        return bool(self.residues)

    def complement(self) -> "Periodic":
        return Periodic(self.mod, frozenset(range(self.mod)) - self.residues, self.flips)

    def __and__(self, other: "Periodic") -> "Periodic":
        # finite and cofinite operands reduce to plain set algebra
        if not self.residues:
            if other.mod == 1:
                keep = self.flips - other.flips if other.residues else self.flips & other.flips
            else:
                keep = frozenset(x for x in self.flips if x in other)
            return Periodic(1, frozenset(), keep)
        if not other.residues:
            return other & self
        if self.mod == 1 and other.mod == 1:
            return Periodic(1, self.residues, self.flips | other.flips)
        m = math.lcm(self.mod, other.mod)
        residues = {r for r in range(m) if r % self.mod in self.residues and r % other.mod in other.residues}
        flips = {
            x for x in self.flips | other.flips
            if (x in self and x in other) != (x % m in residues)
        }
        return Periodic.make(m, residues, flips)

    def __or__(self, other: "Periodic") -> "Periodic":
        if not self.residues:
            if not self.flips:
                return other
            if other.mod == 1:
                flips = other.flips - self.flips if other.residues else other.flips | self.flips
                return Periodic(1, other.residues, flips)
            # toggle the missing finite elements into the other pattern
            missing = frozenset(x for x in self.flips if x not in other)
            return Periodic(other.mod, other.residues, other.flips ^ missing) if missing else other
        if not other.residues:
            return other | self
        if self.mod == 1 and other.mod == 1:
            return Periodic(1, self.residues, self.flips & other.flips)
        return (self.complement() & other.complement()).complement()

    def finite_elements(self) -> list[int]:
        assert not self.residues
        return sorted(self.flips)

    def iter_from(self, start: int = 0) -> Iterator[int]:
        if not self.residues:
            yield from (x for x in self.finite_elements() if x >= start)
            return
        for x in itertools.count(start):
            if x in self:
                yield x


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


ALL_P = Periodic(1, frozenset({0}))
NONE_P = Periodic(1, frozenset())


@dataclass(frozen=True)
class Term:
    """``per`` if ``sub`` is None, else strict descendants of ``sub`` that lie in ``per``."""

    sub: Optional[int]
    per: Periodic

    def __contains__(self, x: int) -> bool:
        if self.sub is not None and not (x != self.sub and cantor.is_prefix(self.sub, x)):
            return False
        return x in self.per

    def iter_from(self, start: int = 0) -> Iterator[int]:
        if self.sub is None:
            yield from self.per.iter_from(start)
            return
        for length in itertools.count(cantor.level(self.sub) + 1):
            r = cantor.descendants_at(self.sub, length)
            if r.stop <= start:
                continue
            for x in range(max(r.start, start), r.stop):
                if x in self.per:
                    yield x


def _meet_sub(a: Optional[int], b: Optional[int]) -> tuple[bool, Optional[int]]:
    """Intersection of two subtree constraints: (nonempty, deeper root)."""
    if a is None:
        return True, b
    if b is None:
        return True, a
    if cantor.is_prefix(a, b):
        return True, b
    if cantor.is_prefix(b, a):
        return True, a
    return False, None


class NatSet:
    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Term] = ()):
        self.terms = _normalize(terms)

    # constructors
    @staticmethod
    def finite(xs: Iterable[int]) -> "NatSet":
        return NatSet([Term(None, Periodic(1, frozenset(), frozenset(xs)))])

    @staticmethod
    def all() -> "NatSet":
        return NatSet([Term(None, ALL_P)])

    @staticmethod
    def empty() -> "NatSet":
        return NatSet()

    @staticmethod
    def cofinite(excluded: Iterable[int] = ()) -> "NatSet":
        return NatSet([Term(None, Periodic(1, frozenset({0}), frozenset(excluded)))])

    @staticmethod
    def residues(mod: int, residues: Iterable[int], excluded: Iterable[int] = (), extra: Iterable[int] = ()) -> "NatSet":
        base = Periodic.make(mod, residues)
        flips = {x for x in excluded if x in base} | {x for x in extra if x not in base}
        return NatSet([Term(None, Periodic(base.mod, base.residues, frozenset(flips)))])

    @staticmethod
    def union_all(sets: Iterable["NatSet"]) -> "NatSet":
        sets = [x for x in sets if x.terms]
        if len(sets) <= 1:
            return sets[0] if sets else NatSet()
        big = [x for x in sets if x.has_subtrees()]
        if len(big) == 1:
            fast = _add_pure(big[0], [x for x in sets if x is not big[0]])
            if fast is not None:
                return fast
        return NatSet([t for x in sets for t in x.terms])

    @staticmethod
    def subtree(root: int) -> "NatSet":
        return NatSet([Term(root, ALL_P)])

    @staticmethod
    def periodic(p: Periodic) -> "NatSet":
        return NatSet([Term(None, p)])

    # queries
    def __contains__(self, x: int) -> bool:
        return any(x in t for t in self.terms)

    @property
    def infinite(self) -> bool:
        return any(t.per.infinite for t in self.terms)

    def __len__(self) -> int:
        if self.infinite:
            raise OverflowError("infinite NatSet has no length")
        return len(self.finite_elements())

    def size_class(self):
        """``("finite", k)`` or ``("infinite", None)``."""
        if self.infinite:
            return ("infinite", None)
        return ("finite", len(self.finite_elements()))

    def finite_elements(self) -> list[int]:
        if self.infinite:
            raise OverflowError("set is infinite")
        out = set()
        for t in self.terms:
            out.update(t.per.finite_elements())
        return sorted(out)

    def __iter__(self) -> Iterator[int]:
        return self.iter_from(0)

    def iter_from(self, start: int = 0) -> Iterator[int]:
        last = None
        for x in heapq.merge(*(t.iter_from(start) for t in self.terms)):
            if x != last:
                yield x
                last = x

    def take(self, k: int, start: int = 0) -> list[int]:
        return list(itertools.islice(self.iter_from(start), k))

    def count_upto(self, cap: int) -> int:
        return len(self.take(cap))

    def min(self) -> Optional[int]:
        got = self.take(1)
        return got[0] if got else None

    def is_empty(self) -> bool:
        return not self.terms

    def below(self, bound: int) -> list[int]:
        return list(itertools.takewhile(lambda x: x < bound, self))

    # structure summaries used to pick representative vertices
    def period(self) -> int:
        return math.lcm(1, *(t.per.mod for t in self.terms))

    def specials(self) -> set:
        """Irregular points: flipped elements and subtree roots."""
        out = set()
        for t in self.terms:
            out.update(t.per.flips)
            if t.sub is not None:
                out.add(t.sub)
        return out

    def has_subtrees(self) -> bool:
        return any(t.sub is not None for t in self.terms)

    # algebra
    def __or__(self, other: "NatSet") -> "NatSet":
        return NatSet(self.terms + other.terms)

    def __and__(self, other: "NatSet") -> "NatSet":
        out = []
        for a in self.terms:
            for b in other.terms:
                ok, sub = _meet_sub(a.sub, b.sub)
                if ok:
                    out.append(Term(sub, a.per & b.per))
        return NatSet(out)

    def complement(self) -> "NatSet":
        result = NatSet.all()
        for t in self.terms:
            result = result & _term_complement(t)
        return result

    def __sub__(self, other: "NatSet") -> "NatSet":
        if not other.terms:
            return self
        if not other.infinite:
            drop = set(other.finite_elements())
            return self & NatSet.cofinite(drop)
        terms = list(self.terms)
        for b in other.terms:
            terms = [piece for a in terms for piece in _term_minus(a, b)]
        return NatSet(terms)

    def minus(self, xs: Iterable[int]) -> "NatSet":
        xs = list(xs)
        return self & NatSet.cofinite(xs) if xs else self

    def plus(self, xs: Iterable[int]) -> "NatSet":
        xs = list(xs)
        return self | NatSet.finite(xs) if xs else self

    def __eq__(self, other) -> bool:
        return isinstance(other, NatSet) and set(self.terms) == set(other.terms)

    def __hash__(self):
        return hash(frozenset(self.terms))

    def __repr__(self) -> str:
        if not self.infinite:
            return "NatSet({" + format_ints(self.finite_elements()) + "})"
        parts = []
        for t in self.terms:
            p = t.per
            base = f"mod{p.mod}{sorted(p.residues)}" + ("^{" + format_ints(p.flips) + "}" if p.flips else "")
            parts.append(base if t.sub is None else f"desc({cantor.decode(t.sub)!r})&{base}")
        return "NatSet(" + " | ".join(parts) + ")"


def format_ints(xs) -> str:
    """Sorted ints with runs of three or more written as ``a..b``."""
    xs = sorted(xs)
    out, i = [], 0
    while i < len(xs):
        j = i
        while j + 1 < len(xs) and xs[j + 1] == xs[j] + 1:
            j += 1
        if j - i >= 2:
            out.append(f"{xs[i]}..{xs[j]}")
        else:
            out.extend(str(x) for x in xs[i:j + 1])
        i = j + 1
    return ",".join(out)


def _split_below(top: Optional[int], s: int, per: Periodic) -> list:
    """Members of ``per`` under ``top`` (everything if None) that are not strict descendants of s."""
    path = cantor.ancestors(s) + [s]
    if top is not None:
        path = path[path.index(top):]
    out = [Term(None, Periodic(1, frozenset(), frozenset(x for x in path[1 if top is not None else 0:] if x in per)))]
    for anc, nxt in zip(path, path[1:]):
        sib = cantor.child(anc, 1) if nxt == cantor.child(anc, 0) else cantor.child(anc, 0)
        if sib in per:
            out.append(Term(None, Periodic(1, frozenset(), frozenset({sib}))))
        out.append(Term(sib, per))
    return out


def _term_minus(a: Term, b: Term) -> list:
    if not a.per.infinite:
        keep = [x for x in a.per.flips if x in a and x not in b]
        return [Term(None, Periodic(1, frozenset(), frozenset(keep)))] if keep else []
    if b.sub is None:
        return [Term(a.sub, a.per & b.per.complement())]
    if a.sub is not None and cantor.is_prefix(b.sub, a.sub):
        # a lies wholly inside b's subtree
        return [Term(a.sub, a.per & b.per.complement())]
    if a.sub is not None and not cantor.is_prefix(a.sub, b.sub):
        return [a]
    # b's subtree sits strictly inside a's range
    return _split_below(a.sub, b.sub, a.per) + [Term(b.sub, a.per & b.per.complement())]


def _term_complement(t: Term) -> NatSet:
    if t.sub is None:
        return NatSet([Term(None, t.per.complement())])
    s = t.sub
    # outside the strict subtree: s, its prefixes, and every sibling branch on the way down
    path = cantor.ancestors(s) + [s]
    pieces = [Term(None, Periodic(1, frozenset(), frozenset(path)))]
    for anc in path[:-1]:
        nxt = path[path.index(anc) + 1]
        sib = cantor.child(anc, 1) if nxt == cantor.child(anc, 0) else cantor.child(anc, 0)
        pieces.append(Term(None, Periodic(1, frozenset(), frozenset({sib}))))
        pieces.append(Term(sib, ALL_P))
    pieces.append(Term(s, t.per.complement()))
    return NatSet(pieces)


def _add_pure(big: "NatSet", small: list) -> Optional["NatSet"]:
    """big | small when the small sets have no subtree terms, or None.

    Merging siblings depends on the pure part only through the subtree roots,
    so if no root changes membership the subtree terms of big stay normal.
    """
    old = NONE_P
    subs = []
    for t in big.terms:
        if t.sub is None:
            old = t.per
        else:
            subs.append(t)
    pure = old
    for x in small:
        for t in x.terms:
            pure = pure | t.per
    if pure == old:
        return big
    if pure == ALL_P or any((t.sub in pure) != (t.sub in old) for t in subs):
        return None
    out = NatSet.__new__(NatSet)
    out.terms = (Term(None, pure),) + tuple(subs)
    return out


def _compress_subtrees(by_sub: dict, pure: Periodic) -> None:
    """Merge sibling subtrees into their parent and drop subtrees nested in a wider one."""
    changed = True
    while changed:
        changed = False
        for sub in list(by_sub):
            per = by_sub[sub]
            anc = sub
            while anc:
                anc = (anc - 1) >> 1
                wide = by_sub.get(anc)
                if wide is not None and (wide | per) == wide:
                    del by_sub[sub]
                    changed = True
                    break
        # deepest pairs first, so a merged parent can merge again in the same pass
        heap = [-k for k in by_sub if k % 2 == 1 and k + 1 in by_sub]
        heapq.heapify(heap)
        while heap:
            left = -heapq.heappop(heap)
            right = left + 1
            per = by_sub.get(left)
            if per is None or by_sub.get(right) != per:
                continue
            # strict descendants of the parent = both children plus their subtrees
            if any(x in per and x not in pure for x in (left, right)):
                continue
            parent = (left - 1) >> 1
            del by_sub[left], by_sub[right]
            prev = by_sub.get(parent)
            by_sub[parent] = per if prev is None else prev | per
            changed = True
            if parent:
                sib_left = parent if parent % 2 == 1 else parent - 1
                if sib_left in by_sub and sib_left + 1 in by_sub:
                    heapq.heappush(heap, -sib_left)


def _normalize(terms: Iterable[Term]) -> tuple:
    terms = tuple(terms)
    if len(terms) == 1 and terms[0].sub is None:
        t = terms[0]
        return terms if (t.per.residues or t.per.flips) else ()
    pure = NONE_P
    by_sub: dict[int, Periodic] = {}
    for t in terms:
        if t.sub is None:
            pure = pure | t.per
        elif not t.per.infinite:
            # finite part of a subtree: keep only members of the subtree
            keep = cantor.strict_descendants_among(t.sub, t.per.flips)
            if keep:
                pure = pure | Periodic(1, frozenset(), frozenset(keep))
        else:
            prev = by_sub.get(t.sub)
            by_sub[t.sub] = t.per if prev is None else prev | t.per
    if len(by_sub) > 1:
        _compress_subtrees(by_sub, pure)
    out = []
    if pure.residues or pure.flips:
        out.append(Term(None, pure))
    # a subtree term adds nothing once the pure part covers everything
    if pure != ALL_P or not pure.residues:
        for sub in sorted(by_sub):
            per = by_sub[sub]
            out.append(Term(sub, per))
    return tuple(out)
