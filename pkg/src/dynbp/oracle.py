"""Ground-truth implementations used for differential testing.

:class:`BaseOracle` evaluates block/base queries by literal scans over
numpy prefix arrays.  :class:`OracleTree` keeps an explicit
children-list tree, regenerates its parentheses string on demand, and
answers every navigation query by direct traversal.  Both favour
clarity over speed.
"""

import numpy as np

from .bp_kernel import WeightFn, weight_of_bit

__all__ = ["BaseOracle", "OracleTree"]


class BaseOracle:
    """Literal-scan evaluation of base queries over a bit string."""

    def __init__(self, bits):
        self.bits = list(bits)
        n = len(self.bits)
        self.n = n
        arr = np.array(self.bits, dtype=np.int64)
        self.prefixes = {}
        for f in WeightFn:
            w0 = weight_of_bit(f, 0)
            w1 = weight_of_bit(f, 1)
            vals = np.where(arr == 1, w1, w0) if n else np.zeros(0, dtype=np.int64)
            pre = np.zeros(n + 1, dtype=np.int64)
            if n:
                np.cumsum(vals, out=pre[1:])
            self.prefixes[f] = pre

    def sum(self, f, i, j):
        pre = self.prefixes[f]
        return int(pre[j] - pre[i - 1])

    def fwd_search_geq(self, f, i, d):
        """Min j >= i with sum(f, i, j) >= d, or None."""
        pre = self.prefixes[f]
        target = d + pre[i - 1]
        tail = pre[i:]
        hits = tail >= target
        if not hits.any():
            return None
        return i + int(np.argmax(hits))

    def bwd_search_geq(self, f, i, d):
        """Max j <= i with sum(f, j, i) >= d, or None."""
        pre = self.prefixes[f]
        bound = pre[i] - d
        head = pre[: i]  # prefix values at positions 0 .. i-1 (j-1 candidates)
        hits = head <= bound
        if not hits.any():
            return None
        q = i - 1 - int(np.argmax(hits[::-1]))
        return q + 1

    def fwd_array(self, f, i, d):
        """Min j >= i with prefix(f, j) >= d, or None."""
        pre = self.prefixes[f]
        tail = pre[i:]
        hits = tail >= d
        if not hits.any():
            return None
        return i + int(np.argmax(hits))

    def bwd_array(self, f, p, c):
        """Max q in [1, p] with prefix(f, q) >= c, or None."""
        pre = self.prefixes[f]
        head = pre[1 : p + 1]
        hits = head >= c
        if not hits.any():
            return None
        return p - int(np.argmax(hits[::-1]))

    def min_family(self, i, j, f=WeightFn.PI):
        """(min, argmin, count) of prefix sums over positions i..j."""
        pre = self.prefixes[f]
        seg = pre[i : j + 1]
        m = int(seg.min())
        where = np.nonzero(seg == m)[0]
        return m, i + int(where[0]), len(where)

    def min_select(self, i, j, d, f=WeightFn.PI):
        pre = self.prefixes[f]
        seg = pre[i : j + 1]
        m = seg.min()
        where = np.nonzero(seg == m)[0]
        if d > len(where):
            raise ValueError("selection index exceeds count")
        return i + int(where[d - 1])

    def max_family(self, i, j, f=WeightFn.PI):
        pre = self.prefixes[f]
        seg = pre[i : j + 1]
        m = int(seg.max())
        return m, i + int(np.argmax(seg == m))


class _Node:
    __slots__ = ("children", "parent")

    def __init__(self):
        self.children = []
        self.parent = None


class OracleTree:
    """Explicit ordinal tree; every query is answered by traversal.

    Nodes are addressed the same way as in the succinct structure: by
    the 1-based position of their opening parenthesis in the
    regenerated string.
    """

    def __init__(self):
        self.root = None
        self.count = 0
        self._dirty = True
        self._bits = []
        self._node_at = {}
        self._pos_of = {}
        self._depth = {}
        self._close = {}
        self._levels = []

    @classmethod
    def from_bp(cls, bits):
        t = cls()
        stack = []
        for b in bits:
            if b:
                node = _Node()
                if stack:
                    node.parent = stack[-1]
                    stack[-1].children.append(node)
                elif t.root is None:
                    t.root = node
                else:
                    raise ValueError("input encodes a forest, not a single tree")
                stack.append(node)
                t.count += 1
            else:
                if not stack:
                    raise ValueError("unbalanced input")
                stack.pop()
        if stack:
            raise ValueError("unbalanced input")
        t._dirty = True
        return t

    # -- regeneration ---------------------------------------------------

    def _refresh(self):
        if not self._dirty:
            return
        bits = []
        node_at = {}
        pos_of = {}
        depth = {}
        close = {}
        levels = []
        if self.root is not None:
            stack = [(self.root, 1, False)]
            while stack:
                node, dep, closing = stack.pop()
                if closing:
                    bits.append(0)
                    close[pos_of[node]] = len(bits)
                    continue
                bits.append(1)
                pos = len(bits)
                node_at[pos] = node
                pos_of[node] = pos
                depth[pos] = dep
                while len(levels) < dep:
                    levels.append([])
                levels[dep - 1].append(pos)
                stack.append((node, dep, True))
                for ch in reversed(node.children):
                    stack.append((ch, dep + 1, False))
        self._bits = bits
        self._node_at = node_at
        self._pos_of = pos_of
        self._depth = depth
        self._close = close
        self._levels = levels
        self._dirty = False

    def bp_bits(self):
        self._refresh()
        return list(self._bits)

    def bp_string(self):
        return "".join("1" if b else "0" for b in self.bp_bits())

    def node_positions(self):
        self._refresh()
        return sorted(self._node_at)

    def _node(self, x):
        self._refresh()
        node = self._node_at.get(x)
        if node is None:
            raise ValueError(f"{x} is not a node position")
        return node

    # -- queries ----------------------------------------------------------

    def depth(self, x):
        self._node(x)
        return self._depth[x]

    def close(self, x):
        self._node(x)
        return self._close[x]

    def height(self, x):
        node = self._node(x)

        def h(v):
            if not v.children:
                return 0
            return 1 + max(h(c) for c in v.children)

        return h(node)

    def num_descendants(self, x):
        node = self._node(x)

        def size(v):
            return 1 + sum(size(c) for c in v.children)

        return size(node) - 1

    def parent(self, x):
        node = self._node(x)
        if node.parent is None:
            return None
        return self._pos_of[node.parent]

    def degree(self, x):
        return len(self._node(x).children)

    def child_rank(self, x):
        node = self._node(x)
        if node.parent is None:
            raise ValueError("root has no siblings")
        return node.parent.children.index(node) + 1

    def child_select(self, y, i):
        node = self._node(y)
        if not 1 <= i <= len(node.children):
            raise ValueError("child index out of range")
        return self._pos_of[node.children[i - 1]]

    def first_child(self, x):
        node = self._node(x)
        return self._pos_of[node.children[0]] if node.children else None

    def last_child(self, x):
        node = self._node(x)
        return self._pos_of[node.children[-1]] if node.children else None

    def next_sibling(self, x):
        node = self._node(x)
        if node.parent is None:
            return None
        sibs = node.parent.children
        i = sibs.index(node)
        return self._pos_of[sibs[i + 1]] if i + 1 < len(sibs) else None

    def prev_sibling(self, x):
        node = self._node(x)
        if node.parent is None:
            return None
        sibs = node.parent.children
        i = sibs.index(node)
        return self._pos_of[sibs[i - 1]] if i > 0 else None

    def lca(self, x, y):
        a = self._node(x)
        b = self._node(y)
        seen = set()
        while a is not None:
            seen.add(id(a))
            a = a.parent
        while id(b) not in seen:
            b = b.parent
        return self._pos_of[b]

    def level_ancestor(self, x, i):
        node = self._node(x)
        if i < 0:
            raise ValueError("ancestor distance must be non-negative")
        for _ in range(i):
            node = node.parent
            if node is None:
                return None
        return self._pos_of[node]

    def _level(self, d):
        self._refresh()
        if d < 1 or d > len(self._levels):
            return []
        return self._levels[d - 1]

    def level_next(self, x):
        d = self.depth(x)
        level = self._level(d)
        i = level.index(x)
        return level[i + 1] if i + 1 < len(level) else None

    def level_prev(self, x):
        d = self.depth(x)
        level = self._level(d)
        i = level.index(x)
        return level[i - 1] if i > 0 else None

    def level_lmost(self, d):
        level = self._level(d)
        return level[0] if level else None

    def level_rmost(self, d):
        level = self._level(d)
        return level[-1] if level else None

    # -- updates ----------------------------------------------------------

    def insert_node(self, y, l, r):
        """New node adopting children l..r of y (r = l - 1 adopts none)."""
        if y is None or y == 0:
            if self.root is not None:
                raise ValueError("tree is not empty")
            self.root = _Node()
            self.count = 1
            self._dirty = True
            return 1
        parent = self._node(y)
        deg = len(parent.children)
        if not (1 <= l <= deg + 1 and l - 1 <= r <= deg):
            raise ValueError("invalid child range")
        node = _Node()
        node.parent = parent
        adopted = parent.children[l - 1 : r]
        for ch in adopted:
            ch.parent = node
        node.children = adopted
        parent.children[l - 1 : r] = [node]
        self.count += 1
        self._dirty = True
        self._refresh()
        return self._pos_of[node]

    def delete_node(self, x):
        node = self._node(x)
        parent = node.parent
        if parent is None:
            if node.children:
                raise ValueError("cannot delete a root that has children")
            self.root = None
            self.count = 0
            self._dirty = True
            return
        i = parent.children.index(node)
        for ch in node.children:
            ch.parent = parent
        parent.children[i : i + 1] = node.children
        self.count -= 1
        self._dirty = True
