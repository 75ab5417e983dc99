"""Differential workloads: the block-tree structure against the oracle.

Drives random insert/delete workloads over a :class:`DynamicTree` and an
:class:`OracleTree` in lockstep, comparing the full navigation-query set
and the heavy-index bookkeeping.  On a mismatch the op log is replayed
and greedily minimised into a reproduction script in the CLI grammar.
"""

import random

from .config import TreeConfig
from .oracle import OracleTree
from .tree_interface import DynamicTree

__all__ = [
    "Workload",
    "run_fuzz",
    "FuzzReport",
    "compare_trees",
    "minimize_ops",
    "random_tree_bits",
]


def random_tree_bits(rng, n):
    """Parentheses bits of a random n-node tree (uniform random attachment)."""
    if n <= 0:
        return []
    children = [[]]
    for v in range(1, n):
        p = rng.randrange(v)
        children.append([])
        children[p].insert(rng.randint(0, len(children[p])), v)
    bits = []
    stack = [(0, False)]
    while stack:
        v, closing = stack.pop()
        if closing:
            bits.append(0)
            continue
        bits.append(1)
        stack.append((v, True))
        for ch in reversed(children[v]):
            stack.append((ch, False))
    return bits


def compare_node(dt, ot, x, rng):
    """First mismatching (query, got, want) for node x, or None."""
    pairs = [
        ("depth", lambda: dt.depth(x), lambda: ot.depth(x)),
        ("height", lambda: dt.height(x), lambda: ot.height(x)),
        ("num_descendants", lambda: dt.num_descendants(x), lambda: ot.num_descendants(x)),
        ("parent", lambda: dt.parent(x), lambda: ot.parent(x)),
        ("degree", lambda: dt.degree(x), lambda: ot.degree(x)),
        ("first_child", lambda: dt.first_child(x), lambda: ot.first_child(x)),
        ("last_child", lambda: dt.last_child(x), lambda: ot.last_child(x)),
        ("next_sibling", lambda: dt.next_sibling(x), lambda: ot.next_sibling(x)),
        ("prev_sibling", lambda: dt.prev_sibling(x), lambda: ot.prev_sibling(x)),
        ("level_next", lambda: dt.level_next(x), lambda: ot.level_next(x)),
        ("level_prev", lambda: dt.level_prev(x), lambda: ot.level_prev(x)),
    ]
    for name, got_f, want_f in pairs:
        got = got_f()
        want = want_f()
        if got != want:
            return (f"{name} {x}", got, want)
    if ot.parent(x) is not None:
        got, want = dt.child_rank(x), ot.child_rank(x)
        if got != want:
            return (f"child_rank {x}", got, want)
    dep = ot.depth(x)
    i = rng.randint(0, dep)
    got, want = dt.level_ancestor(x, i), ot.level_ancestor(x, i)
    if got != want:
        return (f"level_ancestor {x} {i}", got, want)
    deg = ot.degree(x)
    if deg:
        i = rng.randint(1, deg)
        got, want = dt.child_select(x, i), ot.child_select(x, i)
        if got != want:
            return (f"child_select {x} {i}", got, want)
    return None


def compare_trees(dt, ot, rng, node_sample=None):
    """First mismatch over sampled nodes, all depths, lca pairs, heavy marks."""
    if dt.n != ot.count:
        return ("node_count", dt.n, ot.count)
    if dt.bp_string() != ot.bp_string():
        return ("bp", dt.bp_string(), ot.bp_string())
    nodes = ot.node_positions()
    if not nodes:
        return None
    sample = nodes if node_sample is None else rng.sample(nodes, min(node_sample, len(nodes)))
    for x in sample:
        bad = compare_node(dt, ot, x, rng)
        if bad:
            return bad
        y = rng.choice(nodes)
        got, want = dt.lca(x, y), ot.lca(x, y)
        if got != want:
            return (f"lca {x} {y}", got, want)
    max_d = max(ot.depth(x) for x in nodes)
    for d in range(1, max_d + 2):
        got, want = dt.level_lmost(d), ot.level_lmost(d)
        if got != want:
            return (f"level_lmost {d}", got, want)
        got, want = dt.level_rmost(d), ot.level_rmost(d)
        if got != want:
            return (f"level_rmost {d}", got, want)
    bad = check_heavy_index(dt, ot)
    if bad:
        return bad
    return None


def check_heavy_index(dt, ot):
    """Heavy marks and stored degrees against oracle degrees."""
    D = dt.heavy.threshold
    want_heavy = [x for x in ot.node_positions() if ot.degree(x) >= D]
    got_heavy = dt.heavy.heavy_positions()
    if got_heavy != want_heavy:
        return ("heavy_positions", got_heavy, want_heavy)
    want_deg = [ot.degree(x) for x in want_heavy]
    got_deg = dt.heavy.degrees.values()
    if got_deg != want_deg:
        return ("heavy_degrees", got_deg, want_deg)
    return None


class Workload:
    """Random paired edits over the structure and the oracle."""

    def __init__(self, config: TreeConfig = None, seed=0):
        self.cfg = config if config is not None else TreeConfig()
        self.rng = random.Random(seed)
        self.dt = DynamicTree(self.cfg)
        self.ot = OracleTree()
        self.ops = []

    def apply(self, op):
        kind = op[0]
        if kind == "insert":
            _, y, l, r = op
            self.dt.insert_node(y, l, r)
            self.ot.insert_node(y, l, r)
        else:
            _, x = op
            self.dt.delete_node(x)
            self.ot.delete_node(x)
        self.ops.append(op)

    def random_op(self, grow_bias=0.75):
        rng = self.rng
        n = self.dt.n
        if n == 0:
            return ("insert", 0, 1, 0)
        nodes = self.ot.node_positions()
        if rng.random() < grow_bias:
            y = rng.choice(nodes)
            deg = self.ot.degree(y)
            l = rng.randint(1, deg + 1)
            if l <= deg and rng.random() < 0.35:
                r = rng.randint(l, deg)  # adopt a non-empty child range
            else:
                r = l - 1
            return ("insert", y, l, r)
        if n == 1:
            return ("delete", 1)
        x = rng.choice([v for v in nodes if v != 1])
        return ("delete", x)

    def step(self, grow_bias=0.75):
        self.apply(self.random_op(grow_bias))


def ops_to_script(ops):
    lines = []
    for op in ops:
        if op[0] == "insert":
            lines.append(f"insert {op[1]} {op[2]} {op[3]}")
        else:
            lines.append(f"delete {op[1]}")
    return "\n".join(lines) + "\n" if lines else ""


def _replay_fails(ops, cfg, check_rng_seed):
    dt = DynamicTree(cfg)
    ot = OracleTree()
    for op in ops:
        try:
            if op[0] == "insert":
                dt.insert_node(op[1], op[2], op[3])
                ot.insert_node(op[1], op[2], op[3])
            else:
                dt.delete_node(op[1])
                ot.delete_node(op[1])
        except ValueError:
            return False  # op invalid against this shorter history
    rng = random.Random(check_rng_seed)
    return compare_trees(dt, ot, rng) is not None


def minimize_ops(ops, cfg, check_rng_seed=0, max_rounds=2):
    """Greedy op-dropping while the replay still mismatches."""
    ops = list(ops)
    for _ in range(max_rounds):
        shrunk = False
        i = 0
        while i < len(ops):
            cand = ops[:i] + ops[i + 1 :]
            if _replay_fails(cand, cfg, check_rng_seed):
                ops = cand
                shrunk = True
            else:
                i += 1
        if not shrunk:
            break
    return ops


class FuzzReport:
    def __init__(self, ok, ops, queries, mismatch=None, script=None):
        self.ok = ok
        self.ops = ops
        self.queries = queries
        self.mismatch = mismatch
        self.script = script


def run_fuzz(seed, n_ops, config: TreeConfig = None, check_every=25, grow_bias=0.75):
    """Mixed workload with periodic full-query comparison."""
    cfg = config if config is not None else TreeConfig()
    w = Workload(cfg, seed)
    queries = 0
    for step in range(n_ops):
        w.step(grow_bias)
        if (step + 1) % check_every == 0 or step + 1 == n_ops:
            bad = compare_trees(w.dt, w.ot, w.rng)
            queries += w.dt.n
            if bad:
                small = minimize_ops(w.ops, cfg, check_rng_seed=seed)
                return FuzzReport(False, step + 1, queries, bad, ops_to_script(small))
    return FuzzReport(True, n_ops, queries)
