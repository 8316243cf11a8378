"""Command-line entry point: ``csdepth <subcommand> ...``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import matroid as core
from .decomposition import RANK_CAP, SIZE_CAP, csd_search
from .depth import KINDS, csd_gf2_quotient, depth
from .io import read_matroid
from .matroid import InputError, ParseError, ResourceError, elements_of, mask_of
from .tamed import TamedExtension, distribute, format_extension
from .verify import MUTATIONS, RULES, SUITES, build_corpus, run_suite, summary_table

EXIT_OK, EXIT_PARSE, EXIT_RESOURCE, EXIT_COUNTEREXAMPLE = 0, 2, 3, 4


def _parse_ids(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise InputError(f"cannot parse element list {text!r}") from None


def _search(args, m):
    report = csd_search(m, getattr(args, "depth_cap", None),
                        rank_cap=args.rank_cap, size_cap=args.size_cap)
    if report.decomposition is None:
        raise ResourceError(f"no decomposition of depth <= {args.depth_cap}")
    return report


def cmd_rank(args, out) -> int:
    m = read_matroid(args.file)
    print(m.rank(mask_of(_parse_ids(args.set))), file=out)
    return EXIT_OK


def cmd_depth(args, out) -> int:
    m = read_matroid(args.file)
    print(depth(m, args.kind, memo=not args.no_memo, cap=args.enum_cap), file=out)
    return EXIT_OK


def cmd_csd(args, out) -> int:
    m = read_matroid(args.file)
    if args.method == "quotient":
        print(csd_gf2_quotient(m), file=out)
        return EXIT_OK
    report = csd_search(m, args.depth_cap, rank_cap=args.rank_cap, size_cap=args.size_cap)
    print("none" if report.depth is None else report.depth, file=out)
    print(f"trees examined: {report.trees_examined}", file=out)
    print(f"assignments examined: {report.assignments_examined}", file=out)
    return EXIT_OK


def cmd_decompose(args, out) -> int:
    m = read_matroid(args.file)
    d = _search(args, m).decomposition
    print(f"depth {d.depth}", file=out)
    print(f"parent {' '.join(map(str, d.tree.parent))}", file=out)
    print(f"assignment {' '.join(map(str, d.assignment))}", file=out)
    if args.dot:
        Path(args.dot).write_text(d.to_dot(), encoding="utf-8")
    return EXIT_OK


def cmd_extend(args, out) -> int:
    m = read_matroid(args.file)
    d = _search(args, m).decomposition
    ext = TamedExtension(m, d)
    text = format_extension(ext)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"extension: {ext.n} elements, rank {ext.matroid_rank}, written to {args.out}",
              file=out)
    else:
        out.write(text)
    return EXIT_OK


def _extended_mask(ext: TamedExtension, text: str) -> int:
    mask = 0
    for tok in filter(None, (t.strip() for t in text.split(","))):
        if tok == "E(T)":
            mask |= ext.edges_mask
        elif tok.startswith("e"):
            v = int(tok[1:])
            if v not in ext.taming.edge_pos:
                raise InputError(f"{tok} is not an edge of the decomposition tree")
            mask |= 1 << ext.edge_element(v)
        else:
            e = int(tok)
            if not 0 <= e < ext.base.n:
                raise InputError(f"element {e} out of range")
            mask |= 1 << e
    return mask


def cmd_tamed(args, out) -> int:
    m = read_matroid(args.file)
    d = _search(args, m).decomposition
    ext = TamedExtension(m, d)
    try:
        x = _extended_mask(ext, args.set)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    t = ext.taming
    xm, xe = x & m.full, x >> m.n
    ledger = distribute(d.tree, t.assigned(xm, xe), RULES)
    independent = m.is_independent(xm)
    print(f"tree parent {' '.join(map(str, d.tree.parent))}", file=out)
    print("vertex parent assigned kept", file=out)
    for v in d.tree.preorder:
        kept = "-" if v == d.tree.root else ledger.kept[v]
        print(f"{v} {d.tree.parent[v]} {ledger.assigned[v]} {kept}", file=out)
    print(f"root surplus {ledger.root_surplus}", file=out)
    print(f"matroid part independent: {'yes' if independent else 'no'}", file=out)
    verdict = independent and ledger.root_surplus == 0
    print(f"verdict {'tamed' if verdict else 'not tamed'}", file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    suites = SUITES if args.suite == "all" else tuple(args.suite.split(","))
    corpus = build_corpus(args.seed, gf2_members=args.gf2_members)
    rules = MUTATIONS[args.mutation] if args.mutation else RULES
    failures = []

    def show(rep):
        print(rep.line(), file=out)
        if not rep.passed:
            failures.append(rep)

    reports = run_suite(corpus, suites, rules, on_report=show)
    print(summary_table(reports), file=out)
    if failures and args.witness_dir:
        for i, rep in enumerate(failures):
            stem = f"{i:03d}-{rep.theorem}"
            for p in rep.counterexample.write(args.witness_dir, stem):
                print(f"witness written: {p}", file=out)
    return EXIT_COUNTEREXAMPLE if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    caps = argparse.ArgumentParser(add_help=False)
    caps.add_argument("--enum-cap", type=int, default=core.ENUM_CAP,
                      help="largest ground set for subset enumeration (default %(default)s)")
    caps.add_argument("--rank-cap", type=int, default=RANK_CAP,
                      help="largest rank for decomposition search (default %(default)s)")
    caps.add_argument("--size-cap", type=int, default=SIZE_CAP,
                      help="largest ground set for decomposition search (default %(default)s)")
    caps.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="csdepth", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", parents=[caps], help="rank of a set of elements")
    p.add_argument("file")
    p.add_argument("--set", default="", help="comma-separated element ids")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("depth", parents=[caps], help="recursive depth parameter")
    p.add_argument("file")
    p.add_argument("--kind", choices=KINDS, default="cd")
    p.add_argument("--no-memo", action="store_true")
    p.set_defaults(func=cmd_depth)

    p = sub.add_parser("csd", parents=[caps], help="contraction*-depth")
    p.add_argument("file")
    p.add_argument("--depth-cap", type=int)
    p.add_argument("--method", choices=("search", "quotient"), default="search")
    p.set_defaults(func=cmd_csd)

    p = sub.add_parser("decompose", parents=[caps], help="optimal contraction*-decomposition")
    p.add_argument("file")
    p.add_argument("--dot")
    p.add_argument("--depth-cap", type=int)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("extend", parents=[caps], help="extension matroid of tamed sets")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("tamed", parents=[caps], help="token ledger and tamedness of a set")
    p.add_argument("file")
    p.add_argument("--set", default="",
                   help="comma list of element ids, eV for the edge above vertex V, or E(T)")
    p.set_defaults(func=cmd_tamed)

    p = sub.add_parser("verify", parents=[caps], help="run the theorem harness")
    p.add_argument("--suite", default="all",
                   help=f"'all' or comma list of {', '.join(SUITES)}")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--gf2-members", type=int, default=16)
    p.add_argument("--mutation", choices=sorted(MUTATIONS))
    p.add_argument("--witness-dir")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    previous_cap, core.ENUM_CAP = core.ENUM_CAP, args.enum_cap
    try:
        if args.command == "verify" and args.suite != "all":
            bad = set(args.suite.split(",")) - set(SUITES)
            if bad:
                raise InputError(f"unknown suites {sorted(bad)}")
        return args.func(args, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    finally:
        core.ENUM_CAP = previous_cap


if __name__ == "__main__":
    sys.exit(main())
