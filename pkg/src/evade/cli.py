"""Command-line front end.

    evade solve --h g6:B_ --property cycle
    evade play --h komega --seeker random:7 --hider degree:2 --fuel 500 --json
    evade omega --h cantor --seeker braided-w:cmin:3 --hidden blocks:5
    evade verify --suite cycle-equivalence --max-n 5
    evade enumerate --g6 graphs.g6 --property connected
    evade export --h g6:DQc --format dot

Human-readable text by default; ``--json`` prints machine records with sorted
keys and no timestamps, so the same argv gives byte-identical output.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import graph6
from .boards import FiniteExplicit, parse_board
from .engine import GameConfig, LargeFamily, ProtocolViolation, play
from .graph import FiniteGraph, graph_to_dot
from .properties import Property
from .solver import SizeBoundExceeded, solve
from .strategies import HumanSeeker, StrategyError, parse_hider, parse_seeker


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _finite_graph(spec: str) -> FiniteGraph:
    """g6:<graph6>, or kn:<n> / cycle:<n> / path:<n> / empty:<n> for the named families."""
    name, _, arg = spec.partition(":")
    if name == "g6":
        try:
            return graph6.decode(arg)
        except graph6.Graph6Error as exc:
            raise UsageError(f"--h {spec!r}: {exc}") from None
    builders = {"kn": FiniteGraph.complete, "cycle": FiniteGraph.cycle, "path": FiniteGraph.path, "empty": FiniteGraph.empty}
    if name in builders:
        if not arg.isdigit():
            raise UsageError(f"--h {spec!r}: expected {name}:<n> with an integer n")
        return builders[name](int(arg))
    raise UsageError(f"--h {spec!r}: expected g6:<graph6>, kn:<n>, cycle:<n>, path:<n> or empty:<n>")


def _board(spec: str):
    if spec in ("komega", "cantor") or spec.startswith("turan:"):
        try:
            return parse_board(spec)
        except ValueError as exc:
            raise UsageError(f"--h: {exc}") from None
    return FiniteExplicit(_finite_graph(spec))


def _property(spec: str) -> Property:
    try:
        return Property.parse(spec)
    except ValueError as exc:
        raise UsageError(f"--property: {exc}") from None


def _family(spec: str) -> LargeFamily:
    try:
        return LargeFamily.parse(spec)
    except ValueError as exc:
        raise UsageError(f"--family: {exc}") from None


# ------------------------------------------------------------------ commands


def cmd_solve(args, out) -> int:
    g = _finite_graph(args.h)
    res = solve(g, _property(args.property), _family(args.family), memo=not args.no_memo)
    rec = {"h": args.h, "property": args.property, "family": args.family, **res.to_dict()}
    if args.json:
        out.write(_dump(rec) + "\n")
    else:
        out.write(f"graph      {args.h} ({g.n} vertices, {res.allowed_pairs} allowed pairs)\n")
        out.write(f"property   {args.property}   family {args.family}\n")
        out.write(f"winner     {res.winner}\n")
        out.write(f"value      {res.value} determined pairs under optimal play\n")
        out.write(f"strongly elusive: {'yes' if res.strongly_elusive else 'no'}\n")
        firsts = " ".join(f"{u}-{v}" for u, v in res.optimal_first_probes) or "-"
        out.write(f"optimal first probes: {firsts}\n")
    return 0


_DEFAULT_PROPERTY = {"degree": "dmin:{}", "star": "star:{}", "connect": "dmin:1", "cycle-forest": "cycle"}


def _play_property(args) -> Property:
    if args.property:
        return _property(args.property)
    name, _, arg = args.hider.partition(":")
    template = _DEFAULT_PROPERTY.get(name, "cycle")
    return _property(template.format(arg))


def cmd_play(args, out) -> int:
    board = _board(args.h)
    try:
        hider = parse_hider(args.hider)
    except StrategyError as exc:
        raise UsageError(f"--hider: {exc}") from None
    prop = _play_property(args)
    try:
        if args.seeker == "human":
            seeker = HumanSeeker(sys.stdin, out)
        else:
            seeker = parse_seeker(args.seeker, getattr(board, "graph", None))
    except StrategyError as exc:
        raise UsageError(f"--seeker: {exc}; or human") from None
    cfg = GameConfig(board, prop, _family(args.family), fuel=args.fuel)

    def observe(view, move):
        # one record per turn, so long games stream instead of buffering
        if args.json:
            out.write(_dump({"record": "move", **move.to_dict()}) + "\n")
        else:
            u, v = move.pair
            out.write(f"turn {move.turn:5d}  {u}-{v}  {move.answer}\n")

    tr = play(seeker, hider, cfg, observer=observe)
    summary = tr.to_dict()
    summary.pop("moves")
    if args.json:
        out.write(_dump({"record": "summary", **summary}) + "\n")
    else:
        out.write(f"{tr.terminal_reason} after {len(tr.moves)} probes; winner {tr.winner.value}\n")
    return 0


def cmd_omega(args, out) -> int:
    from .omega.play import DEFAULT_PREFIX_BOUND, batch_play
    from .omega.seekers import parse_omega_seeker
    from .omega.templates import TemplateError

    if args.h not in ("komega", "cantor") and not args.h.startswith("turan:"):
        raise UsageError(f"--h {args.h!r}: the omega engine runs on komega, turan:<k> or cantor")
    board = _board(args.h)
    try:
        seeker = parse_omega_seeker(args.seeker)
    except ValueError as exc:
        raise UsageError(f"--seeker: {exc}") from None
    if args.seeker == "scorpion":
        target, family = "scorpion", _family(args.family or "jn:5")
    else:
        target, family = seeker.wf, _family(args.family or "allpairs")
    try:
        tr = batch_play(seeker, args.hidden, board, target, fuel=args.fuel, family=family,
                        prefix_bound=DEFAULT_PREFIX_BOUND if args.prefix_bound is None else args.prefix_bound)
    except TemplateError as exc:
        raise UsageError(f"--hidden: {exc}") from None
    if args.json:
        for b in tr.batches:
            out.write(_dump({"record": "batch", **b}) + "\n")
        rec = tr.to_dict()
        rec.pop("moves")
        rec.pop("batches", None)
        rec["probes"] = len(tr.moves)
        out.write(_dump({"record": "summary", **rec}) + "\n")
    else:
        for b in tr.batches:
            state = "completed" if b.get("completed") else "interrupted" if b.get("interrupted") else "stopped"
            out.write(f"{b['stage']:28s} {state:11s} concrete probes {b.get('concrete_probes', 0)}\n")
        out.write(f"{tr.terminal_reason} after {len(tr.moves)} concrete probes; winner {tr.winner.value}\n")
        out.write(f"infinite-degree vertices: {tr.family_report.get('infinite_degree_vertices')}\n")
        w = tr.family_report.get("undetermined_witness")
        if w:
            out.write(f"undetermined allowed pair: {w[0]}-{w[1]}\n")
        for f in tr.flags:
            out.write(f"note: {f}\n")
    return 0


def cmd_verify(args, out) -> int:
    from .acceptance import SUITES, run_suite

    kw = {}
    if args.max_n is not None:
        if args.suite not in ("cycle-equivalence", "adversary-optimality", "determinacy", "w-validators", "graph6-roundtrip"):
            raise UsageError(f"--max-n applies to cycle-equivalence, adversary-optimality, determinacy, w-validators and graph6-roundtrip, not {args.suite}")
        kw["max_n"] = args.max_n
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"--suite {args.suite!r}: expected all or one of {', '.join(SUITES)}")
    results = run_suite(args.suite, **kw)
    for r in results:
        out.write((_dump(r.to_dict()) if args.json else r.line()) + "\n")
    return 0 if all(r.ok for r in results) else 1


def cmd_enumerate(args, out) -> int:
    prop = _property(args.property)
    family = _family(args.family)
    try:
        fh = open(args.g6)
    except OSError as exc:
        raise UsageError(f"--g6 {args.g6!r}: {exc.strerror}") from None
    status = 0
    with fh:
        for lineno, line in enumerate(fh, 1):
            text = line.strip()
            if not text or text.startswith(">>graph6<<") and len(text) == 10:
                continue
            try:
                g = graph6.decode(text)
                res = solve(g, prop, family)
                rec = {"line": lineno, "g6": text, **res.to_dict()}
            except (graph6.Graph6Error, SizeBoundExceeded) as exc:
                rec = {"line": lineno, "g6": text, "error": str(exc)}
                status = 1
            if args.json:
                out.write(_dump(rec) + "\n")
            elif "error" in rec:
                out.write(f"{lineno:5d} {text:12s} error: {rec['error']}\n")
            else:
                out.write(f"{lineno:5d} {text:12s} winner {rec['winner']:5s} value {rec['value']}/{rec['allowed_pairs']}\n")
            out.flush()
    return status


def cmd_export(args, out) -> int:
    g = _finite_graph(args.h)
    if args.format == "g6":
        out.write(graph6.encode(g) + "\n")
    elif args.format == "dot":
        dot = graph_to_dot(g)
        out.write(dot if dot.endswith("\n") else dot + "\n")
    else:
        out.write(_dump({"n": g.n, "edges": sorted(map(list, g.edges))}) + "\n")
    return 0


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="evade", description="Edge-probe games on finite and infinite boards.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("solve", help="exact winner and value of a finite game")
    s.add_argument("--h", required=True, help="allowed graph: g6:<graph6>, kn:<n>, cycle:<n>, path:<n>, empty:<n>")
    s.add_argument("--property", required=True, help="cycle, dmin:<n>, cmin:<m>, connected, scorpion, star:<n>, clique:<k>, p3, notbipartite")
    s.add_argument("--family", default="allpairs", help="allpairs, clique, jn:<n> or small:<n>")
    s.add_argument("--no-memo", action="store_true", help="plain alpha-beta without a position table")
    s.add_argument("--json", action="store_true")
    s.set_defaults(run=cmd_solve)

    s = sub.add_parser("play", help="play a seeker against a hider")
    s.add_argument("--h", required=True, help="komega, turan:<k>, cantor or a finite graph spec")
    s.add_argument("--seeker", required=True, help="lex, random:<seed>, bridge-last:<u>-<v> or human")
    s.add_argument("--hider", required=True, help="cycle-forest, degree:<n>, connect, star:<n>, oblivious:<graphspec>")
    s.add_argument("--property", help="defaults to the hider's own property")
    s.add_argument("--family", default="allpairs")
    s.add_argument("--fuel", type=int, default=10_000)
    s.add_argument("--json", action="store_true")
    s.set_defaults(run=cmd_play)

    s = sub.add_parser("omega", help="batched seekers against template hidden graphs on ω-boards")
    s.add_argument("--h", required=True, help="komega, turan:<k> or cantor")
    s.add_argument("--seeker", required=True, help="scorpion, braided-w:dmin:<n> or braided-w:cmin:<m>")
    s.add_argument("--hidden", required=True, help="template, e.g. blocks:5 or scorpion:0,1,2;add:3-4")
    s.add_argument("--fuel", type=int, default=100_000)
    s.add_argument("--family", help="defaults to jn:5 for scorpion and allpairs otherwise")
    s.add_argument("--prefix-bound", type=int, help="concrete probes per batch before the limit stage")
    s.add_argument("--json", action="store_true")
    s.set_defaults(run=cmd_omega)

    s = sub.add_parser("verify", help="run acceptance checks")
    s.add_argument("--suite", default="all")
    s.add_argument("--max-n", type=int)
    s.add_argument("--json", action="store_true")
    s.set_defaults(run=cmd_verify)

    s = sub.add_parser("enumerate", help="solve every graph in a graph6 file")
    s.add_argument("--g6", required=True, help="file with one graph6 string per line")
    s.add_argument("--property", required=True)
    s.add_argument("--family", default="allpairs")
    s.add_argument("--json", action="store_true")
    s.set_defaults(run=cmd_enumerate)

    s = sub.add_parser("export", help="write a finite graph as graph6, dot or json")
    s.add_argument("--h", required=True)
    s.add_argument("--format", choices=("g6", "dot", "json"), default="g6")
    s.set_defaults(run=cmd_export)
    return p


def run(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "fuel", 1) < 1:
            raise UsageError(f"--fuel must be a positive integer, got {args.fuel}")
        bound = getattr(args, "prefix_bound", None)
        if bound is not None and bound < 1:
            raise UsageError(f"--prefix-bound must be a positive integer, got {args.prefix_bound}")
        return args.run(args, out)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except (SizeBoundExceeded, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    except ProtocolViolation as exc:
        err.write(f"error: {exc}\n")
        return 1


def main(argv: Optional[list] = None) -> None:
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
