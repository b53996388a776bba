"""Command-line frontend.

Exit codes: 0 decided (either verdict), 2 invalid input, 3 internal error.
Verdicts go to stdout; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .automaton import export_dot
from .brute import DEFAULT_DEPTH_CAP, brute_member
from .errors import InputError, InternalError, ValidationError
from .gog import GraphOfGroups, check_cycle_type, is_trivial, validate
from .raag import SimpleGraph, compile_gog, find_chordless_cycle, is_chordal
from .saturation import DEFAULT_MAX_ROUNDS, run
from .words import parse_word, power

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 2, 3


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None


def load_spec(path: str) -> tuple[GraphOfGroups, dict]:
    doc = _load_json(path)
    G = validate(doc)
    translation = doc.get("translation", {}) if isinstance(doc, dict) else {}
    return G, translation


def parse_cycle(G: GraphOfGroups, text: str, translation: Optional[dict] = None):
    """Parse a query word; names found in ``translation`` expand to their words."""
    if not isinstance(text, str):
        raise InputError(f"query words must be strings, got {text!r}")
    if translation:
        letters = ()
        for token in text.split():
            name, _, exp = token.partition("^")
            if name in translation and name not in G.table:
                try:
                    n = int(exp) if exp else 1
                except ValueError:
                    raise InputError(f"malformed exponent in {token!r}") from None
                letters += power(parse_word(translation[name], G.table), n)
            else:
                letters += parse_word(token, G.table)
        return check_cycle_type(G, letters)
    return check_cycle_type(G, parse_word(text, G.table))


def load_query(path: str, G: GraphOfGroups, translation: dict):
    doc = _load_json(path)
    if not isinstance(doc, dict) or "element" not in doc:
        raise InputError(f"{path}: query needs 'subgroup' and 'element'")
    K = [parse_cycle(G, w, translation) for w in doc.get("subgroup", [])]
    return K, parse_cycle(G, doc["element"], translation)


def cmd_check(args) -> int:
    G, _ = load_spec(args.spec)
    print("OK")
    print(f"vertices: {len(G.groups)} ({', '.join(f'{v}:{g.kind}' for v, g in G.groups.items())})")
    print(f"edges: {len(G.edges)} ({', '.join(f'{e.name}:rank{e.rank}' for e in G.edges.values())})")
    print(f"basepoint: {G.basepoint}")
    return EXIT_OK


def cmd_member(args) -> int:
    G, translation = load_spec(args.spec)
    K, g = load_query(args.query, G, translation)
    on_round = None
    if args.dot:
        os.makedirs(args.dot, exist_ok=True)

        def on_round(n, A):
            with open(os.path.join(args.dot, f"round_{n:04d}.dot"), "w", encoding="utf-8") as fh:
                fh.write(export_dot(A, name=f"round_{n:04d}"))

    S = run(G, K, g, max_rounds=args.max_rounds, on_round=on_round)
    if args.trace:
        for line in S.trace:
            print(line, file=sys.stderr)
        print(f"rounds: {S.rounds}, edges: {len(S.automaton.edges) // 2}", file=sys.stderr)
    print(S.verdict)
    return EXIT_OK


def cmd_wordprob(args) -> int:
    G, translation = load_spec(args.spec)
    c = parse_cycle(G, args.word, translation)
    print("TRIVIAL" if is_trivial(G, c) else "NONTRIVIAL")
    return EXIT_OK


def cmd_raag(args) -> int:
    graph = SimpleGraph.from_json(_load_json(args.graph))
    if is_chordal(graph) is None:
        cycle = find_chordless_cycle(graph)
        raise InputError(f"graph is not chordal; chordless cycle: {', '.join(cycle)}")
    spec, translation = compile_gog(graph)
    spec["translation"] = translation
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(spec, fh, indent=2)
        fh.write("\n")
    print(f"wrote {args.out}: {len(spec['vertices'])} vertices, {len(spec['edges'])} edges",
          file=sys.stderr)
    return EXIT_OK


def cmd_brute_member(args) -> int:
    G, translation = load_spec(args.spec)
    K, g = load_query(args.query, G, translation)
    print(brute_member(G, K, g, depth=args.depth))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gwp", description="Subgroup membership in graphs of groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a graph-of-groups spec")
    p.add_argument("spec")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("member", help="decide element membership in a subgroup")
    p.add_argument("spec")
    p.add_argument("query")
    p.add_argument("--trace", action="store_true", help="step log on stderr")
    p.add_argument("--dot", metavar="DIR", help="write round_NNNN.dot snapshots")
    p.add_argument("--max-rounds", type=int, default=DEFAULT_MAX_ROUNDS)
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("wordprob", help="decide whether a word is trivial")
    p.add_argument("spec")
    p.add_argument("word")
    p.set_defaults(func=cmd_wordprob)

    p = sub.add_parser("raag", help="compile a chordal graph's RAAG to a spec")
    p.add_argument("graph")
    p.add_argument("out")
    p.set_defaults(func=cmd_raag)

    p = sub.add_parser("brute-member", help="bounded brute-force witness search")
    p.add_argument("spec")
    p.add_argument("query")
    p.add_argument("--depth", type=int, default=6)
    p.set_defaults(func=cmd_brute_member)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if hasattr(args, "depth") and not 0 <= args.depth <= DEFAULT_DEPTH_CAP:
        print(f"error: --depth must be between 0 and {DEFAULT_DEPTH_CAP}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except ValidationError as exc:
        for v in exc.violations:
            print(f"error: {v}", file=sys.stderr)
        return EXIT_INPUT
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
