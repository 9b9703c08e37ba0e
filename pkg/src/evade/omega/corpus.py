"""Seeded corpora of hidden templates with their ground truth.

Every entry is checked against the template itself before it is returned,
so a generator bug shows up as an error here rather than as a bad label.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from ..boards import parse_board
from ..wfunc import parse_wfunction
from .templates import parse_template, template_has_scorpion, template_w_truth


@dataclass(frozen=True)
class CorpusEntry:
    spec: str
    truth: bool
    kind: str


def _edge_list(pairs) -> str:
    return ",".join(f"{u}-{v}" for u, v in pairs)


def _with_edits(base: str, add, remove) -> str:
    spec = base
    if add:
        spec += ";add:" + _edge_list(add)
    if remove:
        spec += ";del:" + _edge_list(remove)
    return spec


def _random_pairs(rng: random.Random, pool: list, k: int) -> list:
    out = set()
    while len(out) < k:
        u, v = sorted(rng.sample(pool, 2))
        out.add((u, v))
    return sorted(out)


def _scorpion_base(rng: random.Random):
    s, t, b = rng.sample(range(16), 3)
    rest = rng.choice(["complete", "empty"])
    return s, t, b, rest, f"scorpion:{s},{t},{b},{rest}"


def _has_scorpion(spec: str) -> bool:
    return template_has_scorpion(parse_template(spec), parse_board("komega")) is not None


def scorpion_corpus(seed: int = 0, size: int = 50) -> list:
    """Half scorpions with edits away from the triple, half non-scorpions."""
    rng = random.Random(seed)
    half = size // 2
    out: list = []
    while len(out) < half:
        s, t, b, _, base = _scorpion_base(rng)
        # pairs avoiding the triple never touch the sting, tail or body conditions
        pool = [v for v in range(24) if v not in (s, t, b)]
        add = _random_pairs(rng, pool, rng.randint(0, 3))
        remove = _random_pairs(rng, pool, rng.randint(0, 3))
        spec = _with_edits(base, add, [p for p in remove if p not in add])
        out.append(CorpusEntry(spec, True, "scorpion"))

    negatives = ["complete", "empty", "blocks:2", "blocks:3", "blocks:5", "modclass:2", "modclass:3", "stars:0", "stars:3,7"]
    entries = [CorpusEntry(x, False, "plain") for x in negatives]
    while len(entries) < size - half:
        s, t, b, rest, base = _scorpion_base(rng)
        x = next(v for v in range(20) if v not in (s, t, b))
        edit = rng.choice(["sting-body", "sting-tail", "tail-body", "tail-extra", "body-extra"])
        if edit == "sting-body":
            spec = _with_edits(base, [tuple(sorted((s, b)))], [])
        elif edit == "sting-tail":
            spec = _with_edits(base, [], [tuple(sorted((s, t)))])
        elif edit == "tail-body":
            spec = _with_edits(base, [], [tuple(sorted((t, b)))])
        elif edit == "tail-extra":
            spec = _with_edits(base, [tuple(sorted((t, x)))], [])
        else:
            spec = _with_edits(base, [], [tuple(sorted((b, x)))])
        # a broken triple can leave another scorpion behind; keep only true negatives
        if not _has_scorpion(spec):
            entries.append(CorpusEntry(spec, False, f"broken:{edit}"))
    out += entries
    for e in out:
        if _has_scorpion(e.spec) != e.truth:
            raise AssertionError(f"corpus label for {e.spec} disagrees with the template")
    return out


_BRAIDED_FIXED = ["complete", "empty", "blocks:2", "blocks:3", "blocks:5", "stars:0", "complete;del:0-1,0-2"]


def braided_corpus(board: str, wf: str, seed: int = 0, size: int = 10) -> list:
    """Templates for the level-function seeker; modclass is left out on the Cantor board."""
    rng = random.Random(f"{seed}:{board}:{wf}")
    b = parse_board(board)
    w = parse_wfunction(wf)
    specs = list(_BRAIDED_FIXED)
    cantor = board == "cantor"
    while len(specs) < size:
        pick = rng.choice(["stars", "edits"] if cantor else ["stars", "edits", "modclass"])
        if pick == "stars":
            cs = sorted(rng.sample(range(8), rng.randint(1, 3)))
            specs.append(f"stars:{','.join(map(str, cs))}")
        elif pick == "modclass":
            specs.append(f"modclass:{rng.randint(2, 4)}")
        else:
            base = rng.choice(["complete", "blocks:3", "blocks:4"])
            edits = _random_pairs(rng, list(range(12)), rng.randint(1, 4))
            specs.append(_with_edits(base, [], edits))
        specs = list(dict.fromkeys(specs))
    return [CorpusEntry(s, template_w_truth(parse_template(s), b, w), "braided") for s in specs[:size]]
