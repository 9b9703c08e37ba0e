"""Integer codec for finite 0-1 strings.

Strings are numbered breadth-first: "" -> 0, "0" -> 1, "1" -> 2, "00" -> 3, ...
A string of length L with binary value b has id ``2**L - 1 + b``, so every
level occupies one contiguous block of ids and deeper levels come later.
"""
from __future__ import annotations


def encode(s: str) -> int:
    if any(c not in "01" for c in s):
        raise ValueError(f"not a 0-1 string: {s!r}")
    return (1 << len(s)) - 1 + (int(s, 2) if s else 0)


def decode(v: int) -> str:
    length = level(v)
    if length == 0:
        return ""
    return format(v + 1 - (1 << length), f"0{length}b")


def level(v: int) -> int:
    return (v + 1).bit_length() - 1


def value(v: int) -> int:
    return v + 1 - (1 << level(v))


def level_range(length: int) -> range:
    start = (1 << length) - 1
    return range(start, start + (1 << length))


def is_prefix(u: int, v: int) -> bool:
    """True iff string u is a (not necessarily proper) prefix of string v."""
    lu, lv = level(u), level(v)
    return lu <= lv and value(v) >> (lv - lu) == value(u)


def comparable(u: int, v: int) -> bool:
    return u != v and (is_prefix(u, v) or is_prefix(v, u))


def ancestors(v: int) -> list[int]:
    """Proper prefixes of v, shortest first."""
    lv, bv = level(v), value(v)
    return [(1 << i) - 1 + (bv >> (lv - i)) for i in range(lv)]


def child(v: int, bit: int) -> int:
    return 2 * v + 1 + bit


def descendants_at(v: int, length: int) -> range:
    lv = level(v)
    if length < lv:
        return range(0)
    width = 1 << (length - lv)
    start = (1 << length) - 1 + value(v) * width
    return range(start, start + width)


def parent(v: int) -> int:
    if v == 0:
        raise ValueError("the empty string has no parent")
    return (v - 1) // 2


def strict_descendants_among(v: int, xs) -> list[int]:
    """The members of ``xs`` that strictly extend string v."""
    head = v + 1
    hb = head.bit_length()
    return [x for x in xs if x > v and (x + 1) >> ((x + 1).bit_length() - hb) == head]
