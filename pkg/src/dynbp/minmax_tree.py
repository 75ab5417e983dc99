"""B-tree of bit blocks with per-node summaries for base queries.

The bit string is split into leaf blocks kept in a B-tree.  Every
internal node stores, per child: sizes, per-function offset arrays, the
prefix-max/min arrays (searchable signed sums over their differences
plus Cartesian traces) used by forward descents, the mirrored
suffix-max/min machinery used by backward descents, and per-child
minimum counts with a capped copy for degree-style queries.

Forward and backward threshold searches descend the tree visiting
O(height) nodes; per query at most one child-array search is resolved
through a Cartesian trace (the "log-arity-class" step, counted by the
instrumentation), every other internal step is constant-class table or
partial-sums work.

Positions are 1-based.  "Not found" is None.
"""

from .bp_kernel import BitBlock, WeightFn, get_chunk_table, weight_of_bit
from .cartesian import (
    cart_argext,
    cart_first_reach,
    cart_last_reach,
    decode_cartesian,
    encode_cartesian,
)
from .config import DEFAULT_CONFIG
from .partial_sums import RangeAddArray, SearchableSignedSums, SmallNonNegSums

__all__ = ["MinMaxTree", "QueryCounters", "MinFamilyResult"]

PI = WeightFn.PI
PI_PRIME = WeightFn.PI_PRIME
PHI = WeightFn.PHI
PSI = WeightFn.PSI

_WORD = 64  # accounting width for one stored integer


def _diffs(values):
    return [values[i] - (values[i - 1] if i else 0) for i in range(len(values))]


def _child_aggs(node):
    """(size, pi_sum, phi_sum, pre_max, pre_min, min_count, suf_max, suf_min)."""
    if isinstance(node, BitBlock):
        return (node.nbits,) + node.summary()
    return (
        node.size,
        node.pi_sum,
        node.phi_sum,
        node.pre_max,
        node.pre_min,
        node.min_count,
        node.suf_max,
        node.suf_min,
    )


def _node_size(node):
    return node.nbits if isinstance(node, BitBlock) else node.size


def _child_fsum(node, f):
    if isinstance(node, BitBlock):
        return node.fsum(f)
    if f == PI:
        return node.pi_sum
    if f == PI_PRIME:
        return -node.pi_sum
    if f == PHI:
        return node.phi_sum
    return node.size - node.phi_sum


class QueryCounters:
    """Per-query instrumentation, plus cumulative histograms."""

    __slots__ = ("visits", "logk_searches", "exact_min_sums", "capped_min_sums",
                 "hist_visits", "hist_logk")

    def __init__(self):
        self.hist_visits = {}
        self.hist_logk = {}
        self.reset()

    def reset(self):
        self.visits = 0
        self.logk_searches = 0
        self.exact_min_sums = 0
        self.capped_min_sums = 0

    def record(self):
        self.hist_visits[self.visits] = self.hist_visits.get(self.visits, 0) + 1
        h = self.logk_searches
        self.hist_logk[h] = self.hist_logk.get(h, 0) + 1


class _Inner:
    """Internal node: child list plus the local summary structures."""

    __slots__ = (
        "children", "cfg", "rs_only",
        "S", "e_pi", "e_phi", "e_psi",
        "maxfwd", "minfwd", "maxbwd", "minbwd", "m_arr",
        "cart_max", "cart_min", "cart_bmax", "cart_bmin",
        "_dec_max", "_dec_min", "_dec_bmax", "_dec_bmin",
        "n", "nhat",
        "size", "pi_sum", "phi_sum",
        "pre_max", "pre_min", "suf_max", "suf_min", "min_count",
    )

    def __init__(self, children, cfg, rs_only=False):
        self.children = children
        self.cfg = cfg
        self.rs_only = rs_only
        self.rebuild()

    # -- construction ---------------------------------------------------

    def rebuild(self):
        cfg = self.cfg
        aggs = [_child_aggs(ch) for ch in self.children]
        k = len(aggs)
        sizes = [a[0] for a in aggs]
        self.S = SmallNonNegSums(sizes, cap=cfg.arity_max)
        pi_pref = [0]
        phi_pref = [0]
        size_pref = [0]
        for a in aggs:
            pi_pref.append(pi_pref[-1] + a[1])
            phi_pref.append(phi_pref[-1] + a[2])
            size_pref.append(size_pref[-1] + a[0])
        self.size = size_pref[-1]
        self.pi_sum = pi_pref[-1]
        self.phi_sum = phi_pref[-1]
        self.e_phi = RangeAddArray(phi_pref[:k])
        if self.rs_only:
            self.e_psi = None
            self.e_pi = None
            self.maxfwd = self.minfwd = self.maxbwd = self.minbwd = None
            self.m_arr = None
            self.cart_max = self.cart_min = self.cart_bmax = self.cart_bmin = 0
            self._dec_max = self._dec_min = self._dec_bmax = self._dec_bmin = None
            self.n = self.nhat = None
            self.pre_max = self.pre_min = self.suf_max = self.suf_min = 0
            self.min_count = 0
            return
        self.e_psi = RangeAddArray([size_pref[i] - phi_pref[i] for i in range(k)])
        self.e_pi = RangeAddArray(pi_pref[:k])
        total_pi = pi_pref[-1]
        M = [pi_pref[i] + aggs[i][3] for i in range(k)]
        m = [pi_pref[i] + aggs[i][4] for i in range(k)]
        # suffix offsets: pi weight of everything after child i
        V = [total_pi - pi_pref[i + 1] + aggs[i][6] for i in range(k)]
        U = [total_pi - pi_pref[i + 1] + aggs[i][7] for i in range(k)]
        self.maxfwd = SearchableSignedSums(_diffs(M))
        self.minfwd = SearchableSignedSums(_diffs([-x for x in m]))
        self.maxbwd = SearchableSignedSums(_diffs(V[::-1]))
        self.minbwd = SearchableSignedSums(_diffs([-x for x in U[::-1]]))
        self.m_arr = RangeAddArray(m)
        self.cart_max = encode_cartesian(M, True)
        self.cart_min = encode_cartesian(m, False)
        self.cart_bmax = encode_cartesian(V, True)
        self.cart_bmin = encode_cartesian(U, False)
        self._dec_max = self._dec_min = self._dec_bmax = self._dec_bmin = None
        self.n = [a[5] for a in aggs]
        D = cfg.heavy_threshold
        self.nhat = [x if x < D else D for x in self.n]
        self.pre_max = max(M)
        self.pre_min = min(m)
        self.suf_max = max(V)
        self.suf_min = min(U)
        self.min_count = sum(self.n[i] for i in range(k) if m[i] == self.pre_min)

    # -- value accessors ------------------------------------------------

    @property
    def arity(self):
        return len(self.children)

    def M_val(self, t):
        return self.maxfwd.values()[t]

    def m_val(self, t):
        return self.m_arr.values[t - 1]

    def V_val(self, t):
        return self.maxbwd.values()[len(self.children) + 1 - t]

    def U_val(self, t):
        return -self.minbwd.values()[len(self.children) + 1 - t]

    def offset(self, f, t):
        """Last entry of f over children before child t (0 for t == 1)."""
        if f == PI:
            return self.e_pi.values[t - 1]
        if f == PI_PRIME:
            return -self.e_pi.values[t - 1]
        if f == PHI:
            return self.e_phi.values[t - 1]
        return self.e_psi.values[t - 1]

    def roffset(self, f, t):
        """f-weight of everything after child t."""
        total = self.pi_sum if f == PI else -self.pi_sum
        off = self.e_pi.values[t - 1]
        child = _child_fsum(self.children[t - 1], PI)
        if f == PI:
            return total - off - child
        return total + off + child

    def dec_max(self):
        d = self._dec_max
        if d is None:
            d = self._dec_max = decode_cartesian(self.cart_max, len(self.children))
        return d

    def dec_min(self):
        d = self._dec_min
        if d is None:
            d = self._dec_min = decode_cartesian(self.cart_min, len(self.children))
        return d

    def dec_bmax(self):
        d = self._dec_bmax
        if d is None:
            d = self._dec_bmax = decode_cartesian(self.cart_bmax, len(self.children))
        return d

    def dec_bmin(self):
        d = self._dec_bmin
        if d is None:
            d = self._dec_bmin = decode_cartesian(self.cart_bmin, len(self.children))
        return d

    # -- per-node search steps -------------------------------------------

    def range_max_value(self, f, a, b):
        """Max over children a..b of the block maxima of f (prefix form)."""
        if f == PI:
            return self.M_val(cart_argext(self.dec_max(), a, b))
        if f == PI_PRIME:
            return -self.m_val(cart_argext(self.dec_min(), a, b))
        # phi/psi prefix maxima are block-final values: monotone, take b.
        return self.offset(f, b) + _child_fsum(self.children[b - 1], f)

    def spine_first_geq(self, f, d):
        """Min t with block max of f >= d (full-range spine search)."""
        if f == PI:
            assert d >= 1, "forward spine search needs a positive threshold"
            return self.maxfwd.search(d)
        if f == PI_PRIME:
            assert d >= 1, "forward spine search needs a positive threshold"
            return self.minfwd.search(d)
        return self.mono_first_geq(f, 1, d)

    def mono_first_geq(self, f, a, d):
        """First t >= a whose block-final f value reaches d (phi/psi)."""
        k = len(self.children)
        e = self.e_phi.values if f == PHI else self.e_psi.values
        for t in range(a, k):
            if e[t] >= d:  # block-final value of child t is e[t+1 - 1]
                return t
        end = e[k - 1] + _child_fsum(self.children[k - 1], f)
        if end >= d:
            return k
        return None

    def cart_first_geq(self, f, a, d):
        """Min t >= a with block max of f >= d, via the Cartesian trace."""
        k = len(self.children)
        if f == PI:
            t = cart_first_reach(self.dec_max(), a, k, lambda p: self.M_val(p) >= d)
        else:
            t = cart_first_reach(self.dec_min(), a, k, lambda p: self.m_val(p) <= -d)
        return t or None

    def range_bwd_max_value(self, f, a, b):
        """Max over children a..b of the block suffix maxima of f."""
        if f == PI:
            return self.V_val(cart_argext(self.dec_bmax(), a, b))
        return -self.U_val(cart_argext(self.dec_bmin(), a, b))

    def spine_last_geq(self, f, c):
        """Max t with suffix block max of f >= c (full-range spine search)."""
        k = len(self.children)
        assert c >= 1, "backward spine search needs a positive threshold"
        if f == PI:
            r = self.maxbwd.search(c)
        else:
            r = self.minbwd.search(c)
        return None if r is None else k + 1 - r

    def cart_last_geq(self, f, b, c):
        """Max t <= b with suffix block max of f >= c, via Cartesian trace."""
        if f == PI:
            t = cart_last_reach(self.dec_bmax(), 1, b, lambda p: self.V_val(p) >= c)
        else:
            t = cart_last_reach(self.dec_bmin(), 1, b, lambda p: self.U_val(p) <= -c)
        return t or None

    # -- single-character maintenance --------------------------------------

    def apply_splice(self, t, bit, sign, pre, post):
        """Update local structures after one +-1 bit edit inside child t.

        pre/post are the child's (pre_max, pre_min, suf_max, suf_min,
        min_count) aggregates around the edit.
        """
        k = len(self.children)
        self.S.update(t, sign)
        b_pi = sign * (1 if bit else -1)
        b_phi = sign * (1 if bit else 0)
        b_psi = sign - b_phi
        if t < k and b_phi:
            self.e_phi.suffix_add(t + 1, b_phi)
        self.size += sign
        self.phi_sum += b_phi
        if self.rs_only:
            return
        if t < k and b_psi:
            self.e_psi.suffix_add(t + 1, b_psi)
        if t < k and b_pi:
            self.e_pi.suffix_add(t + 1, b_pi)
        self.pi_sum += b_pi
        d_pmax = post[0] - pre[0]
        d_pmin = post[1] - pre[1]
        d_smax = post[2] - pre[2]
        d_smin = post[3] - pre[3]
        self._sss_adjust(self.maxfwd, t, d_pmax)
        self._sss_adjust(self.minfwd, t, -d_pmin)
        if t < k:
            self._sss_adjust(self.maxfwd, t + 1, b_pi - d_pmax)
            self._sss_adjust(self.minfwd, t + 1, -b_pi + d_pmin)
        if d_pmin:
            self.m_arr.point_add(t, d_pmin)
        if t < k and b_pi:
            self.m_arr.suffix_add(t + 1, b_pi)
        # suffix arrays: children before t gain the edit's weight in their
        # trailing context; child t's own suffix extremes move by +-1.
        rt = k + 1 - t
        self._sss_adjust(self.maxbwd, rt, d_smax)
        self._sss_adjust(self.minbwd, rt, -d_smin)
        if t > 1:
            self._sss_adjust(self.maxbwd, rt + 1, b_pi - d_smax)
            self._sss_adjust(self.minbwd, rt + 1, -b_pi + d_smin)
        self.n[t - 1] = post[4]
        D = self.cfg.heavy_threshold
        self.nhat[t - 1] = post[4] if post[4] < D else D
        self._rebuild_carts()
        mvals = self.maxfwd.values()
        self.pre_max = max(mvals[1:])
        self.pre_min = min(self.m_arr.values)
        bvals = self.maxbwd.values()
        self.suf_max = max(bvals[1:])
        self.suf_min = -max(self.minbwd.values()[1:])
        pm = self.pre_min
        marr = self.m_arr.values
        self.min_count = sum(self.n[i] for i in range(k) if marr[i] == pm)

    @staticmethod
    def _sss_adjust(sss, idx, delta):
        if delta > 0:
            for _ in range(delta):
                sss.update(idx, 1)
        elif delta < 0:
            for _ in range(-delta):
                sss.update(idx, -1)

    def _rebuild_carts(self):
        k = len(self.children)
        M = self.maxfwd.values()[1:]
        m = self.m_arr.values
        V = self.maxbwd.values()[1:][::-1]
        U = [-x for x in self.minbwd.values()[1:]][::-1]
        self.cart_max = encode_cartesian(M, True)
        self.cart_min = encode_cartesian(m, False)
        self.cart_bmax = encode_cartesian(V, True)
        self.cart_bmin = encode_cartesian(U, False)
        self._dec_max = self._dec_min = self._dec_bmax = self._dec_bmin = None

    # -- accounting -------------------------------------------------------

    def space_bits(self):
        k = len(self.children)
        out = {"sizes": (k + 1) * _WORD, "offsets": 0, "search": 0,
               "cartesian": 0, "min_counts": 0}
        out["offsets"] += 2 * k * _WORD  # e_phi: diffs + cache
        if not self.rs_only:
            out["offsets"] += 3 * 2 * k * _WORD  # e_psi, e_pi, m_arr
            kk = max(k, 1)
            dhat_bits = k * max(1, (kk + 1).bit_length())
            per_sss = 2 * k * _WORD + k + 2 * k * _WORD + dhat_bits + _WORD
            out["search"] += 4 * per_sss
            out["cartesian"] += 4 * 2 * k
            D = self.cfg.heavy_threshold
            out["min_counts"] += k * _WORD + k * max(1, (D + 1).bit_length())
        return out


class MinFamilyResult:
    """Minimum value, first position, and count over a queried range.

    ``select(d)`` resolves the d-th attaining position with a fresh
    descent; resolve results before mutating the tree.
    """

    __slots__ = ("min", "count", "_tree", "_i", "_j", "_argmin")

    def __init__(self, tree, i, j, mn, count):
        self.min = mn
        self.count = count
        self._tree = tree
        self._i = i
        self._j = j
        self._argmin = None

    @property
    def argmin(self):
        a = self._argmin
        if a is None:
            a = self._argmin = self._tree.min_select(self._i, self._j, 1)
        return a

    def select(self, d):
        if d == 1 and self._argmin is not None:
            return self._argmin
        if not 1 <= d <= self.count:
            raise ValueError(f"selection index {d} exceeds count {self.count}")
        return self._tree.min_select(self._i, self._j, d)

    def __iter__(self):
        return iter((self.min, self.argmin, self.count))


class MinMaxTree:
    """Dynamic bit sequence with base queries over all weight functions."""

    def __init__(self, bits=(), config=None, rank_select_only=False):
        self.cfg = config if config is not None else DEFAULT_CONFIG
        self.rs_only = rank_select_only
        self.table = get_chunk_table(self.cfg.chunk_bits)
        self.counters = QueryCounters()
        self._build(list(bits))

    # -- construction ------------------------------------------------------

    def _build(self, bits):
        cfg = self.cfg
        n = len(bits)
        if n <= cfg.leaf_bits:
            self.root = BitBlock.from_bits(bits, self.table)
            self.height = 1
            return
        target = 3 * cfg.leaf_bits // 4
        nblocks = max(1, (n + target - 1) // target)
        base, extra = divmod(n, nblocks)
        level = []
        pos = 0
        for i in range(nblocks):
            ln = base + (1 if i < extra else 0)
            level.append(BitBlock.from_bits(bits[pos : pos + ln], self.table))
            pos += ln
        height = 1
        mid = (cfg.arity_min + cfg.arity_max) // 2
        while len(level) > 1:
            cnt = len(level)
            ngroups = max(1, (cnt + mid - 1) // mid)
            if ngroups > 1 and cnt / ngroups < cfg.arity_min:
                ngroups = max(1, cnt // cfg.arity_min)
            gbase, gextra = divmod(cnt, ngroups)
            nxt = []
            pos = 0
            for i in range(ngroups):
                gl = gbase + (1 if i < gextra else 0)
                nxt.append(_Inner(level[pos : pos + gl], cfg, self.rs_only))
                pos += gl
            level = nxt
            height += 1
        self.root = level[0]
        self.height = height

    @property
    def size(self):
        return _node_size(self.root)

    def bits(self):
        out = []

        def walk(node):
            if isinstance(node, BitBlock):
                out.extend(node.bits())
            else:
                for ch in node.children:
                    walk(ch)

        walk(self.root)
        return out

    # -- point access -------------------------------------------------------

    def get_bit(self, p):
        if not 1 <= p <= self.size:
            raise IndexError(f"position {p} out of range")
        node = self.root
        while not isinstance(node, BitBlock):
            t = node.S.search(p)
            p -= node.S.sum(t - 1)
            node = node.children[t - 1]
        return node.get(p)

    def prefix(self, f, p):
        """Sum of f over positions 1..p (0 for p == 0)."""
        if not 0 <= p <= self.size:
            raise IndexError(f"position {p} out of range")
        if p == 0:
            return 0
        node = self.root
        acc = 0
        while not isinstance(node, BitBlock):
            t = node.S.search(p)
            p -= node.S.sum(t - 1)
            acc += node.offset(f, t)
            node = node.children[t - 1]
        return acc + node.prefix(f, p)

    def sum_f(self, f, i, j):
        if not (1 <= i <= j + 1 and j <= self.size):
            raise IndexError(f"range [{i}, {j}] out of bounds")
        if j < i:
            return 0
        return self.prefix(f, j) - self.prefix(f, i - 1)

    def total(self, f):
        return self.prefix(f, self.size) if self.size else 0

    # -- forward search -------------------------------------------------------

    def fwd_search_geq(self, f, i, d):
        """Min j >= i with sum(f, i, j) >= d, or None."""
        if not 1 <= i <= self.size + 1:
            raise IndexError(f"start {i} out of range")
        if i > self.size:
            return None
        if d <= 0:
            # One step always contributes at least -1; d == 0 reduces to a
            # threshold-1 search just past a negative first step.
            if d < 0 or weight_of_bit(f, self.get_bit(i)) >= 0:
                return i
            return self.fwd_search_geq(f, i + 1, 1)
        self.counters.reset()
        res = self._fwd(self.root, i, d + self.prefix(f, i - 1), f)
        self.counters.record()
        return res

    def _fwd(self, node, i, d, f):
        """Min local j >= i with prefix(f, j) >= d within node, or None."""
        if isinstance(node, BitBlock):
            entry = node.prefix(f, i - 1)
            return node.fwd_search_geq(f, i, d, entry)
        ctr = self.counters
        ctr.visits += 1
        k = len(node.children)
        if i == 1:
            t = 0
        else:
            t = node.S.search(i)
            s = node.S.sum(t - 1)
            j2 = self._fwd(node.children[t - 1], i - s, d - node.offset(f, t), f)
            if j2 is not None:
                return j2 + s
        if t + 1 > k:
            return None
        if node.range_max_value(f, t + 1, k) < d:
            return None
        if i == 1:
            t2 = node.spine_first_geq(f, d)
        elif f in (PHI, PSI):
            t2 = node.mono_first_geq(f, t + 1, d)
        else:
            t2 = node.cart_first_geq(f, t + 1, d)
            ctr.logk_searches += 1
        assert t2 is not None and t2 >= t + 1
        return self._fwd(node.children[t2 - 1], 1, d - node.offset(f, t2), f) + node.S.sum(t2 - 1)

    # -- backward search -------------------------------------------------------

    def bwd_search_geq(self, f, i, d):
        """Max j <= i with sum(f, j, i) >= d, or None (f in {PI, PI_PRIME})."""
        if f not in (PI, PI_PRIME):
            raise ValueError("backward search supports the excess weightings only")
        if not 0 <= i <= self.size:
            raise IndexError(f"start {i} out of range")
        if i == 0:
            return None
        if d <= 0:
            if d < 0 or weight_of_bit(f, self.get_bit(i)) >= 0:
                return i
            return self.bwd_search_geq(f, i - 1, 1) if i > 1 else None
        # sum(f, j, i) = tail(j) - tail(i + 1) over suffix sums to |P|.
        self.counters.reset()
        c = d + self.total(f) - self.prefix(f, i)
        res = self._bwd(self.root, i, c, f)
        self.counters.record()
        return res

    def _bwd(self, node, p, c, f):
        """Max local j <= p with sum(f, j, end-of-node) >= c, or None."""
        if isinstance(node, BitBlock):
            tail = node.fsum(f) - node.prefix(f, p)
            return node.bwd_search_geq(f, p, c, tail)
        ctr = self.counters
        ctr.visits += 1
        k = len(node.children)
        if p == node.size:
            t = k + 1
        else:
            t = node.S.search(p)
            s = node.S.sum(t - 1)
            j2 = self._bwd(node.children[t - 1], p - s, c - node.roffset(f, t), f)
            if j2 is not None:
                return j2 + s
        if t - 1 < 1:
            return None
        if node.range_bwd_max_value(f, 1, t - 1) < c:
            return None
        if p == node.size:
            t2 = node.spine_last_geq(f, c)
        else:
            t2 = node.cart_last_geq(f, t - 1, c)
            ctr.logk_searches += 1
        assert t2 is not None and t2 <= t - 1
        child = node.children[t2 - 1]
        return self._bwd(child, _node_size(child), c - node.roffset(f, t2), f) + node.S.sum(t2 - 1)

    # -- min/max families -------------------------------------------------------

    def min_family(self, i, j, capped=False):
        """Minimum of excess prefix sums over [i, j] with count and argmin."""
        if not 1 <= i <= j <= self.size:
            raise IndexError(f"range [{i}, {j}] out of bounds")
        self.counters.reset()
        mn, cnt = self._min_count(self.root, i, j, capped)
        self.counters.record()
        return MinFamilyResult(self, i, j, mn, cnt)

    def min_select(self, i, j, d):
        """d-th position in [i, j] attaining the range minimum excess."""
        if not 1 <= i <= j <= self.size:
            raise IndexError(f"range [{i}, {j}] out of bounds")
        mn, cnt = self._min_count(self.root, i, j, False)
        if not 1 <= d <= cnt:
            raise ValueError(f"selection index {d} out of range (count {cnt})")
        pos, rem = self._select_value(self.root, i, j, d, mn)
        assert pos is not None and rem == 0
        return pos

    def max_family(self, i, j):
        """(max, argmax) of excess prefix sums over [i, j]."""
        if not 1 <= i <= j <= self.size:
            raise IndexError(f"range [{i}, {j}] out of bounds")
        self.counters.reset()
        mx = self._max_value(self.root, i, j)
        pos = self._find_first_eq(self.root, i, j, mx)
        self.counters.record()
        assert pos is not None
        return mx, pos

    def _min_count(self, node, i, j, capped):
        """(min, count) of local excess prefixes over [i, j] within node."""
        if isinstance(node, BitBlock):
            entry = node.prefix(PI, i - 1)
            mn, _arg, cnt = node.min_family(PI, i, j, entry)
            return mn, cnt
        self.counters.visits += 1
        S = node.S
        t = S.search(i)
        t2 = S.search(j)
        s = S.sum(t - 1)
        s2 = S.sum(t2 - 1)
        if t == t2:
            mn, cnt = self._min_count(node.children[t - 1], i - s, j - s, capped)
            return mn + node.offset(PI, t), cnt
        INF = float("inf")
        if i - s > 1:
            m1, n1 = self._min_count(
                node.children[t - 1], i - s, S.entries[t - 1], capped
            )
            m1 += node.offset(PI, t)
        else:
            m1, n1 = INF, 0
            t -= 1
        if j - s2 < S.entries[t2 - 1]:
            m3, n3 = self._min_count(node.children[t2 - 1], 1, j - s2, capped)
            m3 += node.offset(PI, t2)
        else:
            m3, n3 = INF, 0
            t2 += 1
        if t + 1 <= t2 - 1:
            m2 = node.m_val(cart_argext(node.dec_min(), t + 1, t2 - 1))
            n2 = self._min_sum_children(node, t + 1, t2 - 1, m2, capped)
        else:
            m2, n2 = INF, 0
        mn = min(m1, m2, m3)
        cnt = (n1 if m1 == mn else 0) + (n2 if m2 == mn else 0) + (n3 if m3 == mn else 0)
        return mn, cnt

    def _min_sum_children(self, node, a, b, target, capped):
        """Sum child min-counts over children in [a, b] whose block min
        equals target (the capped path consults the clipped counts)."""
        marr = node.m_arr.values
        if capped:
            self.counters.capped_min_sums += 1
            nh = node.nhat
            return sum(nh[p] for p in range(a - 1, b) if marr[p] == target)
        self.counters.exact_min_sums += 1
        nn = node.n
        return sum(nn[p] for p in range(a - 1, b) if marr[p] == target)

    def _select_value(self, node, i, j, d, target):
        """d-th position in [i, j] with local excess prefix == target.

        Returns (pos, 0) or (None, remaining) with target matches in the
        range consumed from d.
        """
        if isinstance(node, BitBlock):
            entry = node.prefix(PI, i - 1)
            return node.select_value(PI, i, j, d, target, entry)
        S = node.S
        t = S.search(i)
        t2 = S.search(j)
        s = S.sum(t - 1)
        s2 = S.sum(t2 - 1)
        if t == t2:
            pos, d = self._select_value(
                node.children[t - 1], i - s, j - s, d, target - node.offset(PI, t)
            )
            return (None, d) if pos is None else (pos + s, 0)
        if i - s > 1:
            pos, d = self._select_value(
                node.children[t - 1], i - s, S.entries[t - 1], d,
                target - node.offset(PI, t),
            )
            if pos is not None:
                return pos + s, 0
        else:
            t -= 1
        has_right = j - s2 < S.entries[t2 - 1]
        if not has_right:
            t2 += 1
        marr = node.m_arr.values
        nn = node.n
        for p in range(t + 1, t2):
            if marr[p - 1] == target:
                cc = nn[p - 1]
                if d <= cc:
                    child = node.children[p - 1]
                    pos, d = self._select_value(
                        child, 1, _node_size(child), d, target - node.offset(PI, p)
                    )
                    assert pos is not None
                    return pos + S.sum(p - 1), 0
                d -= cc
        if has_right:
            pos, d = self._select_value(
                node.children[t2 - 1], 1, j - s2, d, target - node.offset(PI, t2)
            )
            if pos is not None:
                return pos + s2, 0
        return None, d

    def _max_value(self, node, i, j):
        if isinstance(node, BitBlock):
            entry = node.prefix(PI, i - 1)
            mx, _arg = node.max_family(PI, i, j, entry)
            return mx
        self.counters.visits += 1
        S = node.S
        t = S.search(i)
        t2 = S.search(j)
        s = S.sum(t - 1)
        s2 = S.sum(t2 - 1)
        if t == t2:
            return self._max_value(node.children[t - 1], i - s, j - s) + node.offset(PI, t)
        NEG = float("-inf")
        if i - s > 1:
            m1 = self._max_value(node.children[t - 1], i - s, S.entries[t - 1])
            m1 += node.offset(PI, t)
        else:
            m1 = NEG
            t -= 1
        if j - s2 < S.entries[t2 - 1]:
            m3 = self._max_value(node.children[t2 - 1], 1, j - s2) + node.offset(PI, t2)
        else:
            m3 = NEG
            t2 += 1
        m2 = node.M_val(cart_argext(node.dec_max(), t + 1, t2 - 1)) if t + 1 <= t2 - 1 else NEG
        return max(m1, m2, m3)

    def _find_first_eq(self, node, i, j, target):
        """First position in [i, j] with local excess prefix == target."""
        if isinstance(node, BitBlock):
            entry = node.prefix(PI, i - 1)
            return node.find_first_eq(PI, i, j, target, entry)
        S = node.S
        t = S.search(i)
        t2 = S.search(j)
        s = S.sum(t - 1)
        s2 = S.sum(t2 - 1)
        if t == t2:
            pos = self._find_first_eq(
                node.children[t - 1], i - s, j - s, target - node.offset(PI, t)
            )
            return None if pos is None else pos + s
        if i - s > 1:
            pos = self._find_first_eq(
                node.children[t - 1], i - s, S.entries[t - 1], target - node.offset(PI, t)
            )
            if pos is not None:
                return pos + s
        else:
            t -= 1
        has_right = j - s2 < S.entries[t2 - 1]
        if not has_right:
            t2 += 1
        for p in range(t + 1, t2):
            local = target - node.offset(PI, p)
            child = node.children[p - 1]
            aggs = _child_aggs(child)
            if aggs[4] <= local <= aggs[3]:
                pos = self._find_first_eq(child, 1, aggs[0], local)
                if pos is not None:
                    return pos + S.sum(p - 1)
        if has_right:
            pos = self._find_first_eq(
                node.children[t2 - 1], 1, j - s2, target - node.offset(PI, t2)
            )
            if pos is not None:
                return pos + s2
        return None

    # -- updates -----------------------------------------------------------

    def insert_bits(self, pos, bits):
        """Insert 1-2 bits so the first lands at position pos."""
        if isinstance(bits, str):
            bits = [1 if ch in "1(" else 0 for ch in bits]
        if not 1 <= len(bits) <= 2:
            raise ValueError("insert supports one or two bits")
        if not 1 <= pos <= self.size + 1:
            raise IndexError(f"insert position {pos} out of range")
        for off, b in enumerate(bits):
            self._insert_one(pos + off, b)

    def delete_bits(self, pos, count=1):
        if not 1 <= count <= 2:
            raise ValueError("delete supports one or two bits")
        if not 1 <= pos <= self.size - count + 1:
            raise IndexError(f"delete position {pos} out of range")
        for _ in range(count):
            self._delete_one(pos)

    def set_bit(self, pos, bit):
        if self.get_bit(pos) != bit:
            self._delete_one(pos)
            self._insert_one(pos, bit)

    def _insert_one(self, pos, bit):
        repl = self._insert_rec(self.root, pos, bit)
        if repl is not None:
            self.root = _Inner(repl, self.cfg, self.rs_only)
            self.height += 1

    def _insert_rec(self, node, pos, bit):
        """Insert; returns replacement node list on structural change."""
        cfg = self.cfg
        if isinstance(node, BitBlock):
            node.insert_bit(pos, bit)
            if node.nbits > cfg.leaf_bits:
                return list(node.split())
            return None
        t = node.S.search(pos)
        if t is None:
            t = len(node.children)
        s = node.S.sum(t - 1)
        child = node.children[t - 1]
        pre = self._agg5(child)
        repl = self._insert_rec(child, pos - s, bit)
        if repl is None:
            node.apply_splice(t, bit, 1, pre, self._agg5(child))
            return None
        node.children[t - 1 : t] = repl
        if len(node.children) > cfg.arity_max:
            half = len(node.children) // 2
            left = _Inner(node.children[:half], cfg, self.rs_only)
            right = _Inner(node.children[half:], cfg, self.rs_only)
            return [left, right]
        node.rebuild()
        return None

    def _delete_one(self, pos):
        root = self.root
        if isinstance(root, BitBlock):
            root.delete_bit(pos)
            return
        self._delete_rec(root, pos)
        if not isinstance(self.root, BitBlock) and len(self.root.children) == 1:
            self.root = self.root.children[0]
            self.height -= 1

    def _delete_rec(self, node, pos):
        """Delete inside an inner node; returns (bit, node_underfull)."""
        cfg = self.cfg
        t = node.S.search(pos)
        s = node.S.sum(t - 1)
        child = node.children[t - 1]
        pre = self._agg5(child)
        if isinstance(child, BitBlock):
            bit = child.get(pos - s)
            child.delete_bit(pos - s)
            child_under = child.nbits < cfg.leaf_min_bits
        else:
            bit, child_under = self._delete_rec(child, pos - s)
        if child_under:
            self._fix_child(node, t - 1)
            node.rebuild()
        else:
            node.apply_splice(t, bit, -1, pre, self._agg5(child))
        return bit, len(node.children) < cfg.arity_min

    def _fix_child(self, node, idx):
        """Merge or rebalance an underfull child with a sibling."""
        cfg = self.cfg
        sib = idx - 1 if idx > 0 else idx + 1
        lo, hi = min(idx, sib), max(idx, sib)
        a, b = node.children[lo], node.children[hi]
        if isinstance(a, BitBlock):
            merged = BitBlock.join(a, b)
            if merged.nbits <= cfg.leaf_bits:
                node.children[lo : hi + 1] = [merged]
            else:
                node.children[lo : hi + 1] = list(merged.split())
        else:
            combined = a.children + b.children
            if len(combined) <= cfg.arity_max:
                node.children[lo : hi + 1] = [_Inner(combined, cfg, self.rs_only)]
            else:
                half = len(combined) // 2
                node.children[lo : hi + 1] = [
                    _Inner(combined[:half], cfg, self.rs_only),
                    _Inner(combined[half:], cfg, self.rs_only),
                ]

    @staticmethod
    def _agg5(node):
        a = _child_aggs(node)
        return (a[3], a[4], a[6], a[7], a[5])

    # -- rank/select over bits ------------------------------------------------

    def rank1(self, p):
        return self.prefix(PHI, p)

    def select1(self, j):
        if j <= 0:
            raise ValueError("select index must be positive")
        if self.size == 0:
            return None
        return self.fwd_search_geq(PHI, 1, j)

    # -- diagnostics ------------------------------------------------------------

    def _check_structures(self):
        """Assert every node's local structures equal a from-scratch rebuild.

        Searchable-sum shadows are checked through their contract (marker
        string and gap array exact, shadow zero-set matching) rather than
        bit-for-bit, since the saturating shadow may lawfully drift.
        """

        def check_sss(sss):
            prefix = sss.base.prefix
            imask = 0
            best = 0
            records = []
            for idx in range(1, len(prefix)):
                if prefix[idx] > best:
                    best = prefix[idx]
                    imask |= 1 << (idx - 1)
                    records.append(prefix[idx])
            assert sss.imask == imask
            gaps = [records[q] - (records[q - 1] if q else 0) for q in range(len(records))]
            assert sss.zp.entries == gaps
            k = sss.base.k
            d = sss.semantic_d()
            for q in range(k):
                assert 0 <= sss.dhat[q] <= k
                assert (sss.dhat[q] == 0) == (d[q] == 0)

        leaf_depths = set()

        def walk(node, depth, is_root):
            if isinstance(node, BitBlock):
                leaf_depths.add(depth)
                assert node.nbits <= self.cfg.leaf_bits
                if not is_root:
                    assert node.nbits >= self.cfg.leaf_min_bits
                return
            k = len(node.children)
            assert k <= self.cfg.arity_max
            if not is_root:
                assert k >= self.cfg.arity_min
            else:
                assert k >= 2
            fresh = _Inner(node.children, self.cfg, self.rs_only)
            assert node.S.entries == fresh.S.entries
            assert node.e_phi.values == fresh.e_phi.values
            assert node.size == fresh.size
            assert node.phi_sum == fresh.phi_sum
            if not self.rs_only:
                assert node.e_psi.values == fresh.e_psi.values
                assert node.e_pi.values == fresh.e_pi.values
                assert node.maxfwd.values() == fresh.maxfwd.values()
                assert node.minfwd.values() == fresh.minfwd.values()
                assert node.maxbwd.values() == fresh.maxbwd.values()
                assert node.minbwd.values() == fresh.minbwd.values()
                assert node.m_arr.values == fresh.m_arr.values
                for sss in (node.maxfwd, node.minfwd, node.maxbwd, node.minbwd):
                    check_sss(sss)
                assert node.cart_max == fresh.cart_max
                assert node.cart_min == fresh.cart_min
                assert node.cart_bmax == fresh.cart_bmax
                assert node.cart_bmin == fresh.cart_bmin
                assert node.n == fresh.n
                assert node.nhat == fresh.nhat
                assert (node.pi_sum, node.pre_max, node.pre_min) == (
                    fresh.pi_sum, fresh.pre_max, fresh.pre_min)
                assert (node.suf_max, node.suf_min, node.min_count) == (
                    fresh.suf_max, fresh.suf_min, fresh.min_count)
            for ch in node.children:
                walk(ch, depth + 1, False)

        walk(self.root, 1, True)
        assert len(leaf_depths) == 1
        assert leaf_depths == {self.height}

    # -- space accounting ---------------------------------------------------------

    def space_bits(self):
        """Accounted bits per structure class.

        Leaf content is charged at its bit length; all-zero leaves are
        charged only their summary overhead, standing in for the
        zero-order-entropy compression of sparse bit strings.
        """
        classes = {"blocks": 0, "block_summaries": 0, "sizes": 0, "offsets": 0,
                   "search": 0, "cartesian": 0, "min_counts": 0}

        summary_words = 2 if self.rs_only else 8

        def walk(node):
            if isinstance(node, BitBlock):
                if node.word:
                    classes["blocks"] += node.nbits
                classes["block_summaries"] += summary_words * _WORD
                return
            for key, bits in node.space_bits().items():
                classes[key] += bits
            for ch in node.children:
                walk(ch)

        walk(self.root)
        return classes
