"""Command-line front end: build trees, replay op scripts, fuzz, report space.

Scripts are line-oriented: ``insert <y> <l> <r>``, ``delete <x>``, and
``q <name> <args...>`` for the navigation queries; ``#`` starts a
comment.  Query output is one line per query, ``<name> <args> =
<answer>``, with NONE printed for navigation that falls off the tree.
Replays are deterministic: the same script yields byte-identical output.
"""

import argparse
import random
import sys

from .config import TreeConfig
from .difftest import random_tree_bits, run_fuzz
from .tree_interface import DynamicTree, parse_bp

QUERIES = {
    "depth": 1,
    "height": 1,
    "num_descendants": 1,
    "parent": 1,
    "lca": 2,
    "level_ancestor": 2,
    "level_next": 1,
    "level_prev": 1,
    "level_lmost": 1,
    "level_rmost": 1,
    "degree": 1,
    "child_rank": 1,
    "child_select": 2,
    "first_child": 1,
    "last_child": 1,
    "next_sibling": 1,
    "prev_sibling": 1,
    "close": 1,
}


def _config_from_args(args) -> TreeConfig:
    amin, _, amax = args.arity.partition(":")
    return TreeConfig(
        leaf_bits=args.leaf_bits,
        arity_min=int(amin),
        arity_max=int(amax or amin),
        capacity=args.capacity,
    )


def _add_config_flags(p):
    p.add_argument("--capacity", type=int, default=2**32,
                   help="nominal node capacity; fixes the heavy-degree threshold")
    p.add_argument("--leaf-bits", type=int, default=512, help="max bits per leaf block")
    p.add_argument("--arity", default="4:16", help="internal node arity as MIN:MAX")


def _read_bp(args):
    if args.bp_file:
        with open(args.bp_file) as fh:
            return fh.read()
    return args.bp or ""


def run_script(tree, lines, out, abort_on_error=False):
    """Execute script lines against a tree; returns the exit code."""
    status = 0
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        cmd = parts[0]
        try:
            if cmd == "insert":
                if len(parts) != 4:
                    raise ValueError("insert takes: y l r")
                tree.insert_node(int(parts[1]), int(parts[2]), int(parts[3]))
            elif cmd == "delete":
                if len(parts) != 2:
                    raise ValueError("delete takes: x")
                tree.delete_node(int(parts[1]))
            elif cmd == "q":
                if len(parts) < 2 or parts[1] not in QUERIES:
                    raise ValueError(f"unknown query {parts[1] if len(parts) > 1 else ''!r}")
                name = parts[1]
                arity = QUERIES[name]
                q_args = [int(a) for a in parts[2:]]
                if len(q_args) != arity:
                    raise ValueError(f"{name} takes {arity} argument(s)")
                ans = getattr(tree, name)(*q_args)
                shown = "NONE" if ans is None else ans
                out.write(f"{name} {' '.join(parts[2:])} = {shown}\n")
            else:
                raise ValueError(f"unknown command {cmd!r}")
        except (ValueError, IndexError) as exc:
            status = 1
            out.write(f"error line {lineno}: {exc}\n")
            if abort_on_error:
                return status
    return status


def cmd_build(args):
    try:
        bits = parse_bp(_read_bp(args))
    except ValueError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    DynamicTree.from_bp(bits, _config_from_args(args))
    print(f"n={len(bits) // 2}")
    return 0


def cmd_exec(args):
    try:
        bits = parse_bp(_read_bp(args))
    except ValueError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    tree = DynamicTree.from_bp(bits, _config_from_args(args))
    if args.script == "-":
        lines = sys.stdin.readlines()
    else:
        with open(args.script) as fh:
            lines = fh.readlines()
    return run_script(tree, lines, sys.stdout, abort_on_error=args.abort_on_error)


def cmd_fuzz(args):
    cfg = _config_from_args(args)
    report = run_fuzz(args.seed, args.ops, cfg, check_every=args.check_every)
    if report.ok:
        print(f"fuzz ok: ops={report.ops} seed={args.seed} node_checks={report.queries}")
        return 0
    name, got, want = report.mismatch
    print(f"MISMATCH after {report.ops} ops: {name}: got {got}, want {want}")
    print("# reproduction script:")
    sys.stdout.write(report.script)
    if args.repro:
        with open(args.repro, "w") as fh:
            fh.write(report.script)
        print(f"# written to {args.repro}")
    return 1


def cmd_stats(args):
    cfg = _config_from_args(args)
    if args.random:
        bits = random_tree_bits(random.Random(args.seed), args.random)
    else:
        try:
            bits = parse_bp(_read_bp(args))
        except ValueError as exc:
            print(f"parse error: {exc}", file=sys.stderr)
            return 2
    tree = DynamicTree.from_bp(bits, cfg)
    rng = random.Random(args.seed)
    nodes = tree.nodes()
    for _ in range(min(args.sample_queries, 10 * len(nodes)) if nodes else 0):
        x = rng.choice(nodes)
        kind = rng.randrange(3)
        if kind == 0:
            tree.degree(x)
        elif kind == 1:
            tree.level_next(x)
        else:
            tree.parent(x)
    report = tree.space_report()
    print(f"nodes={report['nodes']}")
    for name in sorted(report["classes"]):
        print(f"bits[{name}]={report['classes'][name]}")
    print(f"total_bits={report['total_bits']}")
    print(f"bits_per_node={report['bits_per_node']:.3f}")
    ctr = tree.pt.counters
    print(f"hist_visits={dict(sorted(ctr.hist_visits.items()))}")
    print(f"hist_logk_searches={dict(sorted(ctr.hist_logk.items()))}")
    return 0


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="dynbp",
        description="dynamic ordinal trees over balanced parentheses",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="parse a parentheses string and report the node count")
    p.add_argument("bp", nargs="?", help="parentheses text ('()' or '01')")
    p.add_argument("--bp-file", help="read the parentheses text from a file")
    _add_config_flags(p)
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("exec", help="replay an op script against a tree")
    p.add_argument("script", help="script path, or - for stdin")
    p.add_argument("--bp", help="initial parentheses text (default: empty tree)")
    p.add_argument("--bp-file", help="read the initial parentheses text from a file")
    p.add_argument("--abort-on-error", action="store_true",
                   help="stop at the first failing script line")
    _add_config_flags(p)
    p.set_defaults(fn=cmd_exec)

    p = sub.add_parser("fuzz", help="randomized differential test against the oracle tree")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ops", type=int, default=200)
    p.add_argument("--check-every", type=int, default=25)
    p.add_argument("--repro", help="also write the reproduction script here")
    _add_config_flags(p)
    p.set_defaults(fn=cmd_fuzz)

    p = sub.add_parser("stats", help="space and instrumentation report")
    p.add_argument("bp", nargs="?", help="parentheses text")
    p.add_argument("--bp-file", help="read the parentheses text from a file")
    p.add_argument("--random", type=int, metavar="N", help="use a random N-node tree instead")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sample-queries", type=int, default=0,
                   help="run this many random queries to fill the histograms")
    _add_config_flags(p)
    p.set_defaults(fn=cmd_stats)

    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
