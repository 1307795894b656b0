"""Command-line interface.

Exit codes: 0 yes/success, 1 no (not reducible / not a member), 2 usage or
input error, 3 resource cap exceeded or the two membership deciders disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .category import (
    Prim,
    format_category,
    parse_category,
    parse_category_string,
    primitives,
)
from .cfg import cyk_member, format_cfg, is_gnf2, parse_cfg, parse_word, to_gnf2
from .encoder import encode_grammar, encoding_for
from .errors import BudgetExceeded, CatgramError, NotGnf2
from .gadgets import GadgetPrims, build_u, build_w, build_x, build_y, build_z, build_z_prime
from .reduction import brute_force_derivable, build_chart, reduction_trees
from .render import tree_to_latex, tree_to_text

EXIT_YES, EXIT_NO, EXIT_ERROR, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _strip_comments(text: str) -> str:
    return "\n".join(line.split("#", 1)[0] for line in text.splitlines())


def _sorted_cats(cats):
    return sorted(cats, key=lambda c: (len(format_category(c)), format_category(c)))


# ---------------------------------------------------------------- reduce


def cmd_reduce(args, out) -> int:
    if args.file:
        text = _strip_comments(_read(args.file))
    elif args.string:
        text = args.string
    else:
        raise UsageError("give a category string or --file")
    items = parse_category_string(text, allow_reserved=args.internal)
    target = parse_category(args.target, allow_reserved=args.internal) if args.target else None
    if target is None and not args.all:
        raise UsageError("give --target or --all")

    if args.oracle:
        derivable = brute_force_derivable(items, max_len=len(items), cap=args.cap)
        chart = None
    else:
        chart = build_chart(items)
        derivable = chart.derivable()

    status = EXIT_YES
    if target is not None:
        yes = target in derivable
        print("yes" if yes else "no", file=out)
        status = EXIT_YES if yes else EXIT_NO
    if args.all:
        for c in _sorted_cats(derivable):
            print(format_category(c), file=out)
        if target is None:
            status = EXIT_YES if derivable else EXIT_NO
    if args.trees and target is not None and target in derivable:
        trees = reduction_trees(items, target, limit=args.trees, chart=chart)
        render = tree_to_latex if args.format == "latex" else tree_to_text
        for n, t in enumerate(trees, 1):
            print(f"% tree {n}" if args.format == "latex" else f"-- tree {n}", file=out)
            print(render(t), file=out)
    return status


# ---------------------------------------------------------------- gnf


def cmd_gnf(args, out) -> int:
    g = parse_cfg(_read(args.grammar))
    g2 = to_gnf2(g)
    text = format_cfg(g2)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        print(f"rules: {len(g2.rules)}", file=out)
    else:
        out.write(text)
        print(f"rules: {len(g2.rules)}", file=sys.stderr)
    return EXIT_YES


# ---------------------------------------------------------------- encode


def cmd_encode(args, out) -> int:
    g = parse_cfg(_read(args.grammar))
    if args.assume_gnf2:
        if not is_gnf2(g):
            raise NotGnf2("--assume-gnf2 given but the grammar is not in 2-GNF")
    else:
        g = to_gnf2(g)
    enc = encode_grammar(g)
    bundle = json.dumps(enc.bundle(), indent=2, ensure_ascii=False) + "\n"
    summary = out
    if args.output:
        Path(args.output).write_text(bundle, encoding="utf-8")
    else:
        out.write(bundle)
        summary = sys.stderr
    print(f"|Omega| = {len(enc.uca.alphabet)}", file=summary)
    for a, syms in enc.h.map.items():
        print(f"|h({a})| = {len(syms)}", file=summary)
    print(f"primitives = {len(enc.uca.primitives)}", file=summary)
    return EXIT_YES


# ---------------------------------------------------------------- member


def cmd_member(args, out) -> int:
    g = parse_cfg(_read(args.grammar))
    words = [parse_word(w, chars=args.chars) for w in args.words]
    for w in words:
        if not w:
            raise UsageError("words must be non-empty")
        unknown = [a for a in w if a not in g.terminals]
        if unknown:
            raise UsageError(f"unknown terminal(s) {', '.join(unknown)} in word {' '.join(w)!r}")

    by_cyk = [cyk_member(g, w) for w in words] if args.via in ("cyk", "both") else None
    by_enc = None
    if args.via in ("encoding", "both"):
        if args.assume_gnf2 and not is_gnf2(g):
            raise NotGnf2("--assume-gnf2 given but the grammar is not in 2-GNF")
        by_enc = encoding_for(g).accepts_all(words)

    status = EXIT_YES
    for i, w in enumerate(words):
        shown = " ".join(w)
        if args.via == "both" and by_cyk[i] != by_enc[i]:
            print(f"MISMATCH {shown}: cyk={by_cyk[i]} encoding={by_enc[i]}", file=out)
            status = EXIT_CAP
            continue
        verdict = (by_cyk or by_enc)[i]
        print(f"{'accept' if verdict else 'reject'} {shown}", file=out)
        if not verdict and status == EXIT_YES:
            status = EXIT_NO
    return status


# ---------------------------------------------------------------- gadget


def cmd_gadget(args, out) -> int:
    def cat(text, flag):
        if not text:
            raise UsageError(f"gadget {args.kind} needs {flag}")
        return parse_category(text)

    prims = GadgetPrims.fresh()
    kind = args.kind
    if kind == "x":
        g = build_x(cat(args.a, "--a"), Prim(args.t) if args.t else prims.t)
    elif kind == "y":
        g = build_y(Prim(args.t) if args.t else prims.t, cat(args.b, "--b"))
    elif kind == "w":
        if not args.cats:
            raise UsageError("gadget w needs --cats")
        g = build_w([parse_category(c) for c in args.cats.split(",")])
    else:
        builder = {"z": build_z, "zprime": build_z_prime, "u": build_u}[kind]
        g = builder(cat(args.a, "--a"), cat(args.b, "--b"), prims)

    for c in g.items:
        print(f"{format_category(c)};", file=out)
    fresh = sorted({p for p in _prims_of(g.items) if p.origin == "auxiliary"}, key=lambda p: p.name)
    print(f"# {len(g.items)} items", file=out)
    if fresh:
        print("# fresh: " + " ".join(p.name for p in fresh), file=out)
    if any(p.origin == "sentinel" for p in _prims_of(g.items)):
        print("# sentinels: _l _r", file=out)
    return EXIT_YES


def _prims_of(items):
    return primitives(list(items))


# ---------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--chars", action="store_true", help="read words as contiguous characters")
    common.add_argument("--trees", type=int, default=0, metavar="N", help="render up to N reduction trees")
    common.add_argument("--all", action="store_true", help="print every derivable single category")
    common.add_argument("--format", choices=["text", "latex"], default="text")
    common.add_argument("--assume-gnf2", action="store_true", help="do not convert the grammar to 2-GNF")
    common.add_argument("--cap", type=int, default=10**7, metavar="N", help="brute-force search cap")

    parser = argparse.ArgumentParser(prog="catgram", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", parents=[common], help="decide reducibility of a category string")
    p.add_argument("string", nargs="?", help="categories separated by ';'")
    p.add_argument("-f", "--file", help="read the category string from a file")
    p.add_argument("--target", help="target category")
    p.add_argument("--internal", action="store_true", help="accept reserved '_' primitive names")
    p.add_argument("--oracle", action="store_true", help="use the exhaustive search instead of CYK")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("gnf", parents=[common], help="convert a grammar to 2-GNF")
    p.add_argument("grammar")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gnf)

    p = sub.add_parser("encode", parents=[common], help="build the unique-assignment encoding")
    p.add_argument("grammar")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("member", parents=[common], help="decide membership of words")
    p.add_argument("grammar")
    p.add_argument("words", nargs="+")
    p.add_argument("--via", choices=["cyk", "encoding", "both"], default="both")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("gadget", parents=[common], help="print a gadget category string")
    p.add_argument("kind", choices=["x", "y", "z", "zprime", "u", "w"])
    p.add_argument("--a", help="first category")
    p.add_argument("--b", help="second category")
    p.add_argument("--t", help="name of the fresh primitive t (x and y only)")
    p.add_argument("--cats", help="comma-separated categories (w only)")
    p.set_defaults(func=cmd_gadget)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_YES
    if getattr(args, "trees", 0) < 0 or getattr(args, "cap", 1) < 1:
        print("error: --trees must be >= 0 and --cap >= 1", file=sys.stderr)
        return EXIT_ERROR
    try:
        return args.func(args, out)
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except (CatgramError, UsageError, OSError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
