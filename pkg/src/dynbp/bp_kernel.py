"""Block-level evaluation of base queries over a bit segment.

A :class:`BitBlock` holds a contiguous piece of the parentheses string
(1 = open, 0 = close) packed into an int, and answers sums, threshold
searches and prefix-min/max families for any of the four weight
functions by scanning fixed-width chunks through universal lookup
tables (:class:`ChunkTable`).

Positions inside a block are 1-based.  Query results expressed over
"running prefix sums" take an ``entry`` argument: the running sum in
force just before the first queried position.
"""

from enum import IntEnum

__all__ = ["WeightFn", "ChunkTable", "BitBlock", "weight_of_bit"]


class WeightFn(IntEnum):
    """Weight assigned to each parenthesis bit."""

    PI = 0        # open -> +1, close -> -1 (excess)
    PI_PRIME = 1  # open -> -1, close -> +1
    PHI = 2       # open -> 1, close -> 0 (rank of opens)
    PSI = 3       # open -> 0, close -> 1 (rank of closes)


# _BIT_WEIGHT[f][bit]
_BIT_WEIGHT = (
    (-1, 1),
    (1, -1),
    (0, 1),
    (1, 0),
)


def weight_of_bit(f: WeightFn, bit: int) -> int:
    return _BIT_WEIGHT[f][bit]


class ChunkTable:
    """Per-chunk lookup tables for all four weight functions.

    For every c-bit chunk value (bit 1 = least significant) and every
    function f the tables hold: total sum, maximum and minimum prefix
    sum, the number of prefixes attaining that minimum, and the first
    position whose prefix sum reaches a threshold v (0 <= v <= c;
    0 marks "never").  Entries are brute-force evaluations over all
    2^c chunks.
    """

    def __init__(self, chunk_bits: int = 8):
        if chunk_bits not in (8, 16):
            raise ValueError("chunk_bits must be 8 or 16")
        self.c = c = chunk_bits
        size = 1 << c
        self.sums = []
        self.max_prefix = []
        self.min_prefix = []
        self.min_count = []
        self.first_reach = []
        for f in range(4):
            w0, w1 = _BIT_WEIGHT[f]
            sums = [0] * size
            maxp = [0] * size
            minp = [0] * size
            cntm = [0] * size
            reach = [None] * size
            for val in range(size):
                acc = 0
                mx = -c - 1
                mn = c + 1
                cnt = 0
                first = [0] * (c + 1)
                v = val
                for _ in range(c):
                    acc += w1 if v & 1 else w0
                    v >>= 1
                    if acc > mx:
                        mx = acc
                    if acc < mn:
                        mn = acc
                        cnt = 1
                    elif acc == mn:
                        cnt += 1
                for t in range(0, c + 1):
                    pos = 0
                    acc2 = 0
                    v = val
                    for p in range(1, c + 1):
                        acc2 += w1 if v & 1 else w0
                        v >>= 1
                        if acc2 >= t:
                            pos = p
                            break
                    first[t] = pos
                sums[val] = acc
                maxp[val] = mx
                minp[val] = mn
                cntm[val] = cnt
                reach[val] = tuple(first)
            self.sums.append(sums)
            self.max_prefix.append(maxp)
            self.min_prefix.append(minp)
            self.min_count.append(cntm)
            self.first_reach.append(reach)


_TABLE_CACHE = {}


def get_chunk_table(chunk_bits: int = 8) -> ChunkTable:
    tbl = _TABLE_CACHE.get(chunk_bits)
    if tbl is None:
        tbl = _TABLE_CACHE[chunk_bits] = ChunkTable(chunk_bits)
    return tbl


class BitBlock:
    """A leaf-resident segment of the parentheses string.

    Bits are packed into ``word`` with position p at bit p-1.  The chunk
    view and the per-function summaries are rebuilt lazily after splices.
    """

    __slots__ = ("word", "nbits", "table", "_chunks", "_summary")

    def __init__(self, word: int = 0, nbits: int = 0, table: ChunkTable = None):
        self.word = word
        self.nbits = nbits
        self.table = table if table is not None else get_chunk_table()
        self._chunks = None
        self._summary = None

    @classmethod
    def from_bits(cls, bits, table: ChunkTable = None):
        word = 0
        n = 0
        for b in bits:
            if b:
                word |= 1 << n
            n += 1
        return cls(word, n, table)

    def bits(self):
        w = self.word
        return [(w >> i) & 1 for i in range(self.nbits)]

    def get(self, p: int) -> int:
        if not 1 <= p <= self.nbits:
            raise IndexError(f"bit {p} out of range [1, {self.nbits}]")
        return (self.word >> (p - 1)) & 1

    # -- chunk view ---------------------------------------------------

    def chunks(self):
        ch = self._chunks
        if ch is None:
            c = self.table.c
            mask = (1 << c) - 1
            w = self.word
            ch = []
            for _ in range((self.nbits + c - 1) // c):
                ch.append(w & mask)
                w >>= c
            self._chunks = ch
        return ch

    # -- cached summaries ----------------------------------------------

    def summary(self):
        """Cached per-block aggregates, all for the excess weighting:

        (pi_sum, phi_sum, pre_max, pre_min, min_count, suf_max, suf_min)

        Prefix extremes are over prefix sums at positions 1..nbits,
        suffix extremes over the sums of non-empty suffixes; min_count
        counts prefix positions attaining pre_min.  An empty block
        reports zeros.
        """
        s = self._summary
        if s is None:
            if self.nbits == 0:
                s = (0, 0, 0, 0, 0, 0, 0)
            else:
                pi_sum = self.sum(WeightFn.PI, 1, self.nbits)
                pre_max, pre_min, cnt = self._min_max_scan(WeightFn.PI, 1, self.nbits, 0)
                # Suffix sums are pi_sum - prefix(q-1) for q in 1..nbits.
                if self.nbits > 1:
                    head_max, head_min, _ = self._min_max_scan(
                        WeightFn.PI, 1, self.nbits - 1, 0
                    )
                else:
                    head_max = head_min = 0
                s = (
                    pi_sum,
                    self.sum(WeightFn.PHI, 1, self.nbits),
                    pre_max,
                    pre_min,
                    cnt,
                    pi_sum - min(0, head_min),
                    pi_sum - max(0, head_max),
                )
            self._summary = s
        return s

    @property
    def pi_sum(self):
        return self.summary()[0]

    @property
    def phi_sum(self):
        return self.summary()[1]

    @property
    def pi_max(self):
        return self.summary()[2]

    @property
    def pi_min(self):
        return self.summary()[3]

    @property
    def pi_min_count(self):
        return self.summary()[4]

    @property
    def pi_suf_max(self):
        return self.summary()[5]

    @property
    def pi_suf_min(self):
        return self.summary()[6]

    def fsum(self, f: WeightFn) -> int:
        s = self.summary()
        if f == WeightFn.PI:
            return s[0]
        if f == WeightFn.PI_PRIME:
            return -s[0]
        if f == WeightFn.PHI:
            return s[1]
        return self.nbits - s[1]

    # -- queries --------------------------------------------------------

    def sum(self, f: WeightFn, i: int, j: int) -> int:
        """Sum of f over positions i..j (0 when j == i - 1)."""
        if not (1 <= i <= j + 1 and j <= self.nbits):
            raise IndexError(f"range [{i}, {j}] out of block of {self.nbits} bits")
        if j < i:
            return 0
        return self._prefix(f, j) - self._prefix(f, i - 1)

    def prefix(self, f: WeightFn, p: int) -> int:
        """Sum of f over positions 1..p; prefix(0) == 0."""
        if not 0 <= p <= self.nbits:
            raise IndexError(f"prefix position {p} out of range")
        return self._prefix(f, p)

    def _prefix(self, f, p):
        c = self.table.c
        sums = self.table.sums[f]
        chunks = self.chunks()
        full, rest = divmod(p, c)
        acc = 0
        for ci in range(full):
            acc += sums[chunks[ci]]
        if rest:
            w0, w1 = _BIT_WEIGHT[f]
            v = chunks[full]
            for _ in range(rest):
                acc += w1 if v & 1 else w0
                v >>= 1
        return acc

    def fwd_search_geq(self, f: WeightFn, i: int, d: int, entry: int = 0):
        """Min j >= i with entry + sum(f, i, j) >= d, or None."""
        if not 1 <= i <= self.nbits:
            raise IndexError(f"start {i} out of range")
        c = self.table.c
        tbl = self.table
        sums = tbl.sums[f]
        maxp = tbl.max_prefix[f]
        reach = tbl.first_reach[f]
        w0, w1 = _BIT_WEIGHT[f]
        chunks = self.chunks()
        acc = entry
        p = i
        # finish the chunk containing i bit by bit
        ci = (i - 1) // c
        stop = min((ci + 1) * c, self.nbits)
        v = chunks[ci] >> ((i - 1) % c)
        while p <= stop:
            acc += w1 if v & 1 else w0
            if acc >= d:
                return p
            v >>= 1
            p += 1
        # whole chunks via tables
        ci += 1
        nfull = self.nbits // c
        while ci < nfull:
            need = d - acc
            if need <= maxp[chunks[ci]]:
                if need <= 0:
                    return p  # first position of the chunk already qualifies
                return p - 1 + reach[chunks[ci]][need]
            acc += sums[chunks[ci]]
            p += c
            ci += 1
        # trailing partial chunk
        if p <= self.nbits:
            v = chunks[ci]
            while p <= self.nbits:
                acc += w1 if v & 1 else w0
                if acc >= d:
                    return p
                v >>= 1
                p += 1
        return None

    def bwd_search_geq(self, f: WeightFn, i: int, d: int, exit: int = 0):
        """Max j <= i with sum(f, j, i) + exit >= d, or None.

        ``exit`` is the running suffix context after position i.
        """
        if not 1 <= i <= self.nbits:
            raise IndexError(f"start {i} out of range")
        # sum(j, i) = prefix(i) - prefix(j - 1); scan prefixes right to left.
        target = d - exit
        pre_i = self._prefix(f, i)
        # want max j <= i with pre_i - prefix(j-1) >= target
        q = self.last_prefix_leq(f, i - 1, pre_i - target)
        if q is None:
            return None
        return q + 1

    def last_prefix_leq(self, f: WeightFn, p: int, bound: int):
        """Max q in [0, p] with prefix(f, q) <= bound, or None."""
        if p < 0:
            return None
        c = self.table.c
        tbl = self.table
        sums = tbl.sums[f]
        minp = tbl.min_prefix[f]
        w0, w1 = _BIT_WEIGHT[f]
        chunks = self.chunks()
        nfull = p // c
        # prefix values at chunk boundaries
        boundary = [0] * (nfull + 1)
        acc = 0
        for ci in range(nfull):
            acc += sums[chunks[ci]]
            boundary[ci + 1] = acc
        # tail positions (nfull*c, p]
        rest = p - nfull * c
        best = None
        if rest:
            accv = boundary[nfull]
            v = chunks[nfull]
            for off in range(1, rest + 1):
                accv += w1 if v & 1 else w0
                v >>= 1
                if accv <= bound:
                    best = nfull * c + off
            if best is not None:
                return best
        for ci in range(nfull - 1, -1, -1):
            base = boundary[ci]
            if base + minp[chunks[ci]] <= bound:
                accv = base
                v = chunks[ci]
                for off in range(1, c + 1):
                    accv += w1 if v & 1 else w0
                    v >>= 1
                    if accv <= bound:
                        best = ci * c + off
                return best
        if 0 <= bound:
            return 0
        return None

    def last_prefix_geq(self, f: WeightFn, p: int, bound: int):
        """Max q in [1, p] with prefix(f, q) >= bound, or None."""
        if p < 1:
            return None
        c = self.table.c
        tbl = self.table
        sums = tbl.sums[f]
        maxp = tbl.max_prefix[f]
        w0, w1 = _BIT_WEIGHT[f]
        chunks = self.chunks()
        nfull = p // c
        boundary = [0] * (nfull + 1)
        acc = 0
        for ci in range(nfull):
            acc += sums[chunks[ci]]
            boundary[ci + 1] = acc
        rest = p - nfull * c
        if rest:
            accv = boundary[nfull]
            v = chunks[nfull]
            best = None
            for off in range(1, rest + 1):
                accv += w1 if v & 1 else w0
                v >>= 1
                if accv >= bound:
                    best = nfull * c + off
            if best is not None:
                return best
        for ci in range(nfull - 1, -1, -1):
            base = boundary[ci]
            if base + maxp[chunks[ci]] >= bound:
                accv = base
                v = chunks[ci]
                best = None
                for off in range(1, c + 1):
                    accv += w1 if v & 1 else w0
                    v >>= 1
                    if accv >= bound:
                        best = ci * c + off
                return best
        return None

    def min_family(self, f: WeightFn, i: int, j: int, entry: int = 0):
        """(min, argmin, count) of running sums entry + sum(f, i, k), i<=k<=j."""
        if not 1 <= i <= j <= self.nbits:
            raise IndexError(f"range [{i}, {j}] out of block")
        mn, _mx, cnt, arg = self._scan_extremes(f, i, j, entry, want_min=True)
        return mn, arg, cnt

    def max_family(self, f: WeightFn, i: int, j: int, entry: int = 0):
        """(max, argmax) of running sums over i..j."""
        if not 1 <= i <= j <= self.nbits:
            raise IndexError(f"range [{i}, {j}] out of block")
        _mn, mx, _cnt, arg = self._scan_extremes(f, i, j, entry, want_min=False)
        return mx, arg

    def _min_max_scan(self, f, i, j, entry):
        mn, mx, cnt, _arg = self._scan_extremes(f, i, j, entry, want_min=True)
        return mx, mn, cnt

    def _scan_extremes(self, f, i, j, entry, want_min):
        c = self.table.c
        tbl = self.table
        sums = tbl.sums[f]
        minp = tbl.min_prefix[f]
        maxp = tbl.max_prefix[f]
        cntm = tbl.min_count[f]
        w0, w1 = _BIT_WEIGHT[f]
        chunks = self.chunks()
        INF = float("inf")
        best_min = INF
        best_max = -INF
        cnt = 0
        arg = None
        arg_chunk = None
        arg_chunk_entry = 0
        acc = entry
        p = i
        ci = (i - 1) // c
        # head: bitwise to the chunk boundary (or j)
        stop = min((ci + 1) * c, j)
        v = chunks[ci] >> ((i - 1) % c)
        while p <= stop:
            acc += w1 if v & 1 else w0
            if acc < best_min:
                best_min = acc
                cnt = 1
                if want_min:
                    arg = p
                    arg_chunk = None
            elif acc == best_min:
                cnt += 1
            if acc > best_max:
                best_max = acc
                if not want_min:
                    arg = p
                    arg_chunk = None
            v >>= 1
            p += 1
        ci += 1
        # whole chunks
        while p + c - 1 <= j:
            ch = chunks[ci]
            m = acc + minp[ch]
            if m < best_min:
                best_min = m
                cnt = cntm[ch]
                if want_min:
                    arg = None
                    arg_chunk = ci
                    arg_chunk_entry = acc
            elif m == best_min:
                cnt += cntm[ch]
            mxv = acc + maxp[ch]
            if mxv > best_max:
                best_max = mxv
                if not want_min:
                    arg = None
                    arg_chunk = ci
                    arg_chunk_entry = acc
            acc += sums[ch]
            p += c
            ci += 1
        # tail
        if p <= j:
            v = chunks[ci]
            while p <= j:
                acc += w1 if v & 1 else w0
                if acc < best_min:
                    best_min = acc
                    cnt = 1
                    if want_min:
                        arg = p
                        arg_chunk = None
                elif acc == best_min:
                    cnt += 1
                if acc > best_max:
                    best_max = acc
                    if not want_min:
                        arg = p
                        arg_chunk = None
                v >>= 1
                p += 1
        if arg is None and arg_chunk is not None:
            # resolve the first attaining position inside the winning chunk
            target = best_min if want_min else best_max
            accv = arg_chunk_entry
            v = chunks[arg_chunk]
            base = arg_chunk * c
            for off in range(1, c + 1):
                accv += w1 if v & 1 else w0
                v >>= 1
                if accv == target:
                    arg = base + off
                    break
        return best_min, best_max, cnt, arg

    def find_first_eq(self, f: WeightFn, i: int, j: int, target: int, entry: int = 0):
        """First position in [i, j] whose running sum equals target, or None."""
        if not 1 <= i <= j <= self.nbits:
            raise IndexError(f"range [{i}, {j}] out of block")
        c = self.table.c
        tbl = self.table
        sums = tbl.sums[f]
        minp = tbl.min_prefix[f]
        maxp = tbl.max_prefix[f]
        w0, w1 = _BIT_WEIGHT[f]
        chunks = self.chunks()
        acc = entry
        p = i
        ci = (i - 1) // c
        stop = min((ci + 1) * c, j)
        v = chunks[ci] >> ((i - 1) % c)
        while p <= stop:
            acc += w1 if v & 1 else w0
            if acc == target:
                return p
            v >>= 1
            p += 1
        ci += 1
        while p + c - 1 <= j:
            ch = chunks[ci]
            if acc + minp[ch] <= target <= acc + maxp[ch]:
                accv = acc
                v = ch
                for off in range(1, c + 1):
                    accv += w1 if v & 1 else w0
                    v >>= 1
                    if accv == target:
                        return p - 1 + off
            acc += sums[ch]
            p += c
            ci += 1
        if p <= j:
            v = chunks[ci]
            while p <= j:
                acc += w1 if v & 1 else w0
                if acc == target:
                    return p
                v >>= 1
                p += 1
        return None

    def select_value(self, f: WeightFn, i: int, j: int, d: int, target: int, entry: int = 0):
        """d-th position in [i, j] whose running sum equals target.

        Returns (position, 0) when found, else (None, remaining) where
        ``remaining`` is d minus the number of matches in the range.
        Within the queried range target must not exceed any running sum
        (it is the range minimum there), so whole chunks contribute
        either zero or their full min-count.
        """
        if not 1 <= i <= j <= self.nbits:
            raise IndexError(f"range [{i}, {j}] out of block")
        c = self.table.c
        tbl = self.table
        sums = tbl.sums[f]
        minp = tbl.min_prefix[f]
        cntm = tbl.min_count[f]
        w0, w1 = _BIT_WEIGHT[f]
        chunks = self.chunks()
        acc = entry
        p = i
        ci = (i - 1) // c
        stop = min((ci + 1) * c, j)
        v = chunks[ci] >> ((i - 1) % c)
        while p <= stop:
            acc += w1 if v & 1 else w0
            if acc == target:
                d -= 1
                if d == 0:
                    return p, 0
            v >>= 1
            p += 1
        ci += 1
        while p + c - 1 <= j:
            ch = chunks[ci]
            if acc + minp[ch] == target:
                cc = cntm[ch]
                if d <= cc:
                    accv = acc
                    v = ch
                    off = 0
                    while True:
                        accv += w1 if v & 1 else w0
                        v >>= 1
                        off += 1
                        if accv == target:
                            d -= 1
                            if d == 0:
                                return p - 1 + off, 0
                else:
                    d -= cc
            acc += sums[ch]
            p += c
            ci += 1
        if p <= j:
            v = chunks[ci]
            while p <= j:
                acc += w1 if v & 1 else w0
                if acc == target:
                    d -= 1
                    if d == 0:
                        return p, 0
                v >>= 1
                p += 1
        return None, d

    # -- splices ---------------------------------------------------------

    def _invalidate(self):
        self._chunks = None
        self._summary = None

    def insert_bit(self, p: int, bit: int):
        """Insert a bit so that it becomes position p (1 <= p <= nbits+1)."""
        if not 1 <= p <= self.nbits + 1:
            raise IndexError(f"insert position {p} out of range")
        q = p - 1
        low = self.word & ((1 << q) - 1)
        high = self.word >> q
        self.word = low | ((bit & 1) << q) | (high << (q + 1))
        self.nbits += 1
        self._invalidate()

    def delete_bit(self, p: int):
        if not 1 <= p <= self.nbits:
            raise IndexError(f"delete position {p} out of range")
        q = p - 1
        low = self.word & ((1 << q) - 1)
        high = self.word >> (q + 1)
        self.word = low | (high << q)
        self.nbits -= 1
        self._invalidate()

    def split(self):
        """Split into two halves; returns (left, right)."""
        h = self.nbits // 2
        left = BitBlock(self.word & ((1 << h) - 1), h, self.table)
        right = BitBlock(self.word >> h, self.nbits - h, self.table)
        return left, right

    @staticmethod
    def join(a: "BitBlock", b: "BitBlock") -> "BitBlock":
        return BitBlock(a.word | (b.word << a.nbits), a.nbits + b.nbits, a.table)

    def __repr__(self):
        return f"BitBlock(nbits={self.nbits})"
