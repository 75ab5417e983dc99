"""Public ordinal-tree API over the parentheses block tree.

A node is identified by the 1-based position of its opening parenthesis
(``P[x] == 1``).  Navigation that falls off the tree returns None;
malformed arguments raise ValueError.  The root has depth 1.

Degrees of "heavy" nodes (at least ``heavy_threshold`` children) are
kept explicitly: a bit string B over positions marks heavy openers
(stored in its own rank/select block tree) and C lists their degrees in
position order, so degree queries on heavy nodes never re-count, while
light nodes use the capped counting path.
"""

from .bp_kernel import WeightFn
from .config import DEFAULT_CONFIG, TreeConfig
from .minmax_tree import MinMaxTree

__all__ = ["DynamicTree", "HeavyDegreeIndex", "parse_bp"]

PI = WeightFn.PI
PI_PRIME = WeightFn.PI_PRIME


def parse_bp(text):
    """Bits of a balanced single-tree parentheses string.

    Accepts the "()" and "01" alphabets (whitespace ignored).  Raises
    ValueError naming the first violating position.
    """
    bits = []
    for ch in text:
        if ch in "1(":
            bits.append(1)
        elif ch in "0)":
            bits.append(0)
        elif ch.isspace():
            continue
        else:
            raise ValueError(f"invalid character {ch!r} at position {len(bits) + 1}")
    depth = 0
    for pos, b in enumerate(bits, 1):
        depth += 1 if b else -1
        if depth < 0:
            raise ValueError(f"unbalanced: too many closes at position {pos}")
        if depth == 0 and pos != len(bits):
            raise ValueError(f"not a single tree: root closes at position {pos}")
    if depth != 0:
        raise ValueError(f"unbalanced: {depth} unclosed opens at position {len(bits)}")
    return bits


class _ChunkedIntSeq:
    """Short dynamic integer sequence in order-statistics chunks."""

    _TARGET = 32

    def __init__(self):
        self.chunks = []
        self.total = 0

    def __len__(self):
        return self.total

    def _locate(self, r):
        for ci, ch in enumerate(self.chunks):
            if r <= len(ch):
                return ci, r
            r -= len(ch)
        raise IndexError("rank out of range")

    def get(self, r):
        ci, off = self._locate(r)
        return self.chunks[ci][off - 1]

    def set(self, r, v):
        ci, off = self._locate(r)
        self.chunks[ci][off - 1] = v

    def insert(self, r, v):
        """Insert v so that it becomes the r-th entry."""
        if not 1 <= r <= self.total + 1:
            raise IndexError("rank out of range")
        if not self.chunks:
            self.chunks.append([v])
            self.total = 1
            return
        ci = 0
        for ci, ch in enumerate(self.chunks):
            if r <= len(ch) + (1 if ci == len(self.chunks) - 1 else 0):
                break
            r -= len(ch)
        ch = self.chunks[ci]
        ch.insert(r - 1, v)
        self.total += 1
        if len(ch) > 2 * self._TARGET:
            h = len(ch) // 2
            self.chunks[ci : ci + 1] = [ch[:h], ch[h:]]

    def delete(self, r):
        ci, off = self._locate(r)
        ch = self.chunks[ci]
        del ch[off - 1]
        self.total -= 1
        if not ch:
            del self.chunks[ci]

    def values(self):
        out = []
        for ch in self.chunks:
            out.extend(ch)
        return out

    def space_bits(self):
        return self.total * 64 + len(self.chunks) * 64


class HeavyDegreeIndex:
    """Marker bits plus explicit degrees for heavy nodes."""

    def __init__(self, config):
        self.threshold = config.heavy_threshold
        self.marks = MinMaxTree([], config, rank_select_only=True)
        self.degrees = _ChunkedIntSeq()

    def is_heavy_position(self, x):
        return self.marks.get_bit(x) == 1

    def stored_degree(self, x):
        return self.degrees.get(self.marks.rank1(x))

    def heavy_positions(self):
        out = []
        j = 1
        while True:
            p = self.marks.select1(j)
            if p is None:
                return out
            out.append(p)
            j += 1

    def insert_positions(self, a, b, z_degree):
        """Mirror a node insertion at opener a / closer b in the marks."""
        heavy = z_degree >= self.threshold
        self.marks.insert_bits(a, [1 if heavy else 0])
        self.marks.insert_bits(b, [0])
        if heavy:
            self.degrees.insert(self.marks.rank1(a), z_degree)

    def delete_positions(self, a, b):
        """Remove the opener/closer pair (a < b) from the marks."""
        if self.marks.get_bit(a):
            self.degrees.delete(self.marks.rank1(a))
        self.marks.delete_bits(b, 1)
        self.marks.delete_bits(a, 1)

    def update_degree(self, x, old_degree, new_degree):
        was = old_degree >= self.threshold
        now = new_degree >= self.threshold
        if was and now:
            self.degrees.set(self.marks.rank1(x), new_degree)
        elif was and not now:
            self.degrees.delete(self.marks.rank1(x))
            self.marks.set_bit(x, 0)
        elif now and not was:
            self.marks.set_bit(x, 1)
            self.degrees.insert(self.marks.rank1(x), new_degree)

    def space_bits(self):
        parts = self.marks.space_bits()
        return sum(parts.values()) + self.degrees.space_bits()


class DynamicTree:
    """Dynamic ordinal tree addressed through its parentheses string."""

    def __init__(self, config: TreeConfig = None):
        self.cfg = config if config is not None else DEFAULT_CONFIG
        self.pt = MinMaxTree([], self.cfg)
        self.heavy = HeavyDegreeIndex(self.cfg)
        self.n = 0

    @classmethod
    def from_bp(cls, text, config: TreeConfig = None):
        tree = cls(config)
        bits = parse_bp(text) if isinstance(text, str) else list(text)
        if not bits:
            return tree
        tree.pt = MinMaxTree(bits, tree.cfg)
        tree.heavy = HeavyDegreeIndex(tree.cfg)
        tree.heavy.marks = MinMaxTree([0] * len(bits), tree.cfg, rank_select_only=True)
        tree.n = len(bits) // 2
        for x in tree.nodes():
            deg = tree._count_degree(x, capped=False)
            if deg >= tree.heavy.threshold:
                tree.heavy.marks.set_bit(x, 1)
                tree.heavy.degrees.insert(tree.heavy.marks.rank1(x), deg)
        return tree

    # -- basics ---------------------------------------------------------------

    @property
    def size_bits(self):
        return self.pt.size

    def bp_string(self):
        return "".join("1" if b else "0" for b in self.pt.bits())

    def nodes(self):
        return [i + 1 for i, b in enumerate(self.pt.bits()) if b]

    def is_node(self, x):
        return isinstance(x, int) and 1 <= x <= self.pt.size and self.pt.get_bit(x) == 1

    def _require_node(self, x):
        if not self.is_node(x):
            raise ValueError(f"{x} is not a node position")

    def close(self, x):
        self._require_node(x)
        return self.pt.fwd_search_geq(PI_PRIME, x + 1, 1)

    def _open_of_close(self, c):
        return self.pt.bwd_search_geq(PI, c - 1, 1)

    # -- Table queries -----------------------------------------------------------

    def depth(self, x):
        self._require_node(x)
        return self.pt.prefix(PI, x)

    def height(self, x):
        self._require_node(x)
        mx, _ = self.pt.max_family(x, self.close(x))
        return mx - self.pt.prefix(PI, x)

    def num_descendants(self, x):
        return (self.close(x) - x + 1) // 2 - 1

    def parent(self, x):
        self._require_node(x)
        return self.pt.bwd_search_geq(PI, x, 2)

    def level_ancestor(self, x, i):
        self._require_node(x)
        if i < 0:
            raise ValueError("ancestor distance must be non-negative")
        if i == 0:
            return x
        return self.pt.bwd_search_geq(PI, x, i + 1)

    def lca(self, x, y):
        self._require_node(x)
        self._require_node(y)
        if x > y:
            x, y = y, x
        if y <= self.close(x):
            return x
        r = self.pt.min_select(x, y, 1)
        return self.pt.bwd_search_geq(PI, r + 1, 2)

    def level_next(self, x):
        c = self.close(x)
        if c >= self.pt.size:
            return None
        return self.pt.fwd_search_geq(PI, c + 1, 1)

    def level_prev(self, x):
        self._require_node(x)
        if x == 1:
            return None
        j = self.pt.bwd_search_geq(PI_PRIME, x - 1, 1)
        if j is None or j <= 1:
            return None
        return self.pt.bwd_search_geq(PI, j - 1, 1)

    def level_lmost(self, d):
        if d < 1 or self.n == 0:
            return None
        return self.pt.fwd_search_geq(PI, 1, d)

    def level_rmost(self, d):
        if d < 1 or self.n == 0:
            return None
        j = self.pt.bwd_search_geq(PI_PRIME, self.pt.size, d)
        if j is None:
            return None
        return self.pt.bwd_search_geq(PI, j - 1, 1)

    def degree(self, x):
        self._require_node(x)
        if self.pt.get_bit(x + 1) == 0:
            return 0
        if self.heavy.is_heavy_position(x):
            return self.heavy.stored_degree(x)
        return self._count_degree(x, capped=True)

    def _count_degree(self, x, capped):
        c = self.close(x)
        if c == x + 1:
            return 0
        return self.pt.min_family(x + 1, c - 1, capped=capped).count

    def child_rank(self, x):
        p = self.parent(x)
        if p is None:
            raise ValueError("the root has no siblings")
        if x == p + 1:
            return 1
        return self.pt.min_family(p + 1, x - 1).count + 1

    def child_select(self, y, i):
        deg = self.degree(y)
        if not 1 <= i <= deg:
            raise ValueError(f"child index {i} out of range (degree {deg})")
        if i == 1:
            return y + 1
        return self.pt.min_select(y + 1, self.close(y) - 1, i - 1) + 1

    def first_child(self, x):
        self._require_node(x)
        return x + 1 if self.pt.get_bit(x + 1) == 1 else None

    def last_child(self, x):
        self._require_node(x)
        if self.pt.get_bit(x + 1) == 0:
            return None
        return self._open_of_close(self.close(x) - 1)

    def next_sibling(self, x):
        c = self.close(x)
        if c >= self.pt.size or self.pt.get_bit(c + 1) == 0:
            return None
        return c + 1

    def prev_sibling(self, x):
        self._require_node(x)
        if x == 1 or self.pt.get_bit(x - 1) == 1:
            return None
        return self._open_of_close(x - 1)

    # -- updates -----------------------------------------------------------------

    def insert_node(self, y, l, r):
        """Insert a node under y adopting its children l..r (r = l-1: none).

        Returns the new node's position.  With an empty tree, y may be
        None or 0 to create the root (l = 1, r = 0).
        """
        if y in (None, 0):
            if self.n:
                raise ValueError("tree is not empty; specify a parent")
            if (l, r) != (1, 0):
                raise ValueError("the first node cannot adopt children")
            self.pt.insert_bits(1, [1, 0])
            self.heavy.marks.insert_bits(1, [0])
            self.heavy.marks.insert_bits(2, [0])
            self.n = 1
            return 1
        self._require_node(y)
        deg = self.degree(y)
        if not (1 <= l <= deg + 1 and l - 1 <= r <= deg):
            raise ValueError(f"invalid child range ({l}, {r}) for degree {deg}")
        a = self.close(y) if l == deg + 1 else self.child_select(y, l)
        b = a - 1 if r < l else self.close(self.child_select(y, r))
        deg_z = r - l + 1
        self.pt.insert_bits(a, [1])
        self.pt.insert_bits(b + 2, [0])
        self.heavy.insert_positions(a, b + 2, deg_z)
        self.heavy.update_degree(y, deg, deg - deg_z + 1)
        self.n += 1
        return a

    def delete_node(self, x):
        """Remove x; its children become children of x's parent."""
        self._require_node(x)
        p = self.parent(x)
        if p is None:
            if self.n > 1:
                raise ValueError("cannot delete a root that has children")
            self.pt.delete_bits(1, 2)
            self.heavy.marks.delete_bits(1, 2)
            self.n = 0
            return
        deg_x = self.degree(x)
        deg_p = self.degree(p)
        c = self.close(x)
        self.heavy.delete_positions(x, c)
        self.pt.delete_bits(c, 1)
        self.pt.delete_bits(x, 1)
        self.heavy.update_degree(p, deg_p, deg_p + deg_x - 1)
        self.n -= 1

    # -- reporting ---------------------------------------------------------------

    def space_report(self):
        classes = dict(self.pt.space_bits())
        classes["heavy_index"] = self.heavy.space_bits()
        total = sum(classes.values())
        report = {
            "classes": classes,
            "total_bits": total,
            "nodes": self.n,
            "bits_per_node": total / self.n if self.n else float("inf"),
        }
        return report
