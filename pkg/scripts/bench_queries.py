#!/usr/bin/env python3
"""Time the navigation queries across tree sizes and show descent costs.

Also prints, for each size, the per-query histograms of internal-node
visits and log-arity searches: descents stay within the three-leg visit
bound and resolve at most one log-arity search regardless of size,
which is the structural source of the speedup.
"""

import argparse
import random
import time

from dynbp.difftest import random_tree_bits
from dynbp.tree_interface import DynamicTree


def bench(n, seed, queries):
    rng = random.Random(seed)
    bits = random_tree_bits(rng, n)
    t0 = time.perf_counter()
    tree = DynamicTree.from_bp(bits)
    build = time.perf_counter() - t0
    nodes = tree.nodes()
    kinds = {
        "depth": lambda x: tree.depth(x),
        "parent": lambda x: tree.parent(x),
        "degree": lambda x: tree.degree(x),
        "height": lambda x: tree.height(x),
        "level_next": lambda x: tree.level_next(x),
        "level_ancestor": lambda x: tree.level_ancestor(x, 1),
        "child_rank": lambda x: tree.child_rank(x) if tree.parent(x) else 0,
        "lca": lambda x: tree.lca(x, rng.choice(nodes)),
    }
    print(f"n={n} |P|={2 * n} height={tree.pt.height} build={build:.2f}s")
    tree.pt.counters.hist_visits.clear()
    tree.pt.counters.hist_logk.clear()
    for name, fn in kinds.items():
        sample = [rng.choice(nodes) for _ in range(queries)]
        t0 = time.perf_counter()
        for x in sample:
            fn(x)
        dt = (time.perf_counter() - t0) / queries
        print(f"  {name:<16} {dt * 1e6:8.1f} us/query")
    print(f"  visit histogram       {dict(sorted(tree.pt.counters.hist_visits.items()))}")
    print(f"  log-arity histogram   {dict(sorted(tree.pt.counters.hist_logk.items()))}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="1000,10000,100000")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--queries", type=int, default=2000)
    args = ap.parse_args()
    for n in (int(s) for s in args.sizes.split(",")):
        bench(n, args.seed, args.queries)


if __name__ == "__main__":
    main()
