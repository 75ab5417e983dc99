#!/usr/bin/env python3
"""Report bits per node by structure class across tree sizes."""

import argparse
import random

from dynbp.difftest import random_tree_bits
from dynbp.tree_interface import DynamicTree


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="1000,10000,100000")
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    classes = None
    rows = []
    for n in sizes:
        bits = random_tree_bits(random.Random(args.seed), n)
        tree = DynamicTree.from_bp(bits)
        rep = tree.space_report()
        if classes is None:
            classes = sorted(rep["classes"])
        rows.append((n, rep))
    header = f"{'n':>8} " + " ".join(f"{c:>16}" for c in classes) + f" {'total':>10}"
    print(header)
    for n, rep in rows:
        cells = " ".join(f"{rep['classes'][c] / n:16.3f}" for c in classes)
        print(f"{n:>8} {cells} {rep['bits_per_node']:10.3f}")
    print("(bits per node)")


if __name__ == "__main__":
    main()
