"""Small dynamic partial-sums structures sized for one internal tree node.

Four structures over short arrays (k entries, k capped by the node-arity
bound, one machine word by default):

* :class:`SmallNonNegSums` -- non-negative entries with prefix sum,
  threshold search, point update, and entry merge/divide.
* :class:`SmallSignedPrefixSums` -- signed entries with prefix sum and
  point update.
* :class:`RangeAddArray` -- signed array addressed through a difference
  array, supporting suffix addition.
* :class:`SearchableSignedSums` -- signed entries supporting threshold
  search for positive thresholds under +-1 updates, maintained through
  the strict prefix-maxima marker string I, the record-gap array Z', and
  a saturating shadow array d_hat repaired one slot per update.

All indices are 1-based.  Entry counts are small, so internal fallbacks
are linear scans behind O(1)-contract interfaces; layouts are kept flat
so chunked/table-driven paths could replace them without API change.
"""

from bisect import bisect_left

__all__ = [
    "SmallNonNegSums",
    "SmallSignedPrefixSums",
    "RangeAddArray",
    "SearchableSignedSums",
    "rank1",
    "select1",
    "next1",
    "prev1",
]


# ---------------------------------------------------------------------------
# Word-level bit helpers for the k-bit marker string I (bit i of ``mask``
# is 1 << (i - 1)).
# ---------------------------------------------------------------------------

def rank1(mask: int, i: int) -> int:
    """Number of set bits among positions 1..i."""
    if i <= 0:
        return 0
    return (mask & ((1 << i) - 1)).bit_count()


def select1(mask: int, j: int) -> int:
    """Position of the j-th set bit (1-based); raises if there is none."""
    if j <= 0:
        raise ValueError("select index must be positive")
    m = mask
    for _ in range(j - 1):
        m &= m - 1
    if m == 0:
        raise ValueError("not enough set bits")
    return (m & -m).bit_length()


def next1(mask: int, i: int, k: int) -> int:
    """Minimum position j >= i with bit j set, or k + 1 if none."""
    m = mask >> (i - 1)
    if m == 0:
        return k + 1
    return i - 1 + (m & -m).bit_length()


def prev1(mask: int, i: int) -> int:
    """Maximum position j <= i with bit j set, or 0 if none."""
    if i <= 0:
        return 0
    return (mask & ((1 << i) - 1)).bit_length()


# ---------------------------------------------------------------------------
# Non-negative partial sums (prefix sum / search / update / merge / divide)
# ---------------------------------------------------------------------------

class SmallNonNegSums:
    """Prefix sums over a short array of non-negative integers."""

    __slots__ = ("entries", "prefix", "cap")

    def __init__(self, entries=(), cap=64):
        entries = list(entries)
        if len(entries) > cap:
            raise ValueError("entry count exceeds capacity")
        if any(v < 0 for v in entries):
            raise ValueError("entries must be non-negative")
        self.entries = entries
        self.cap = cap
        self._rebuild()

    def _rebuild(self):
        prefix = [0]
        acc = 0
        for v in self.entries:
            acc += v
            prefix.append(acc)
        self.prefix = prefix

    @property
    def k(self) -> int:
        return len(self.entries)

    def sum(self, i: int) -> int:
        """Sum of the first i entries; sum(0) == 0."""
        if not 0 <= i <= len(self.entries):
            raise IndexError(f"index {i} out of range [0, {len(self.entries)}]")
        return self.prefix[i]

    def total(self) -> int:
        return self.prefix[-1]

    def search(self, d: int):
        """Minimum i with sum(i) >= d, or None if the total is below d."""
        if d <= 0:
            raise ValueError("search threshold must be positive")
        if self.prefix[-1] < d:
            return None
        return bisect_left(self.prefix, d, 1)

    def update(self, i: int, delta: int):
        if not 1 <= i <= len(self.entries):
            raise IndexError(f"index {i} out of range")
        if self.entries[i - 1] + delta < 0:
            raise ValueError("update would make an entry negative")
        self.entries[i - 1] += delta
        prefix = self.prefix
        for j in range(i, len(prefix)):
            prefix[j] += delta

    def merge(self, i: int):
        """Replace entries i and i+1 by their sum."""
        if not 1 <= i < len(self.entries):
            raise IndexError("merge needs a right neighbour")
        self.entries[i - 1] += self.entries[i]
        del self.entries[i]
        del self.prefix[i]

    def divide(self, i: int, t: int):
        """Replace entry i by the two entries t and entry - t."""
        if not 1 <= i <= len(self.entries):
            raise IndexError(f"index {i} out of range")
        v = self.entries[i - 1]
        if not 0 <= t <= v:
            raise ValueError("split value out of range")
        if len(self.entries) + 1 > self.cap:
            raise ValueError("capacity exceeded")
        self.entries[i - 1 : i] = [t, v - t]
        self.prefix.insert(i, self.prefix[i - 1] + t)

    # Sentinel-boundary forms of divide/merge used by SearchableSignedSums
    # when the affected record is the implicit Y[k+1] = +inf sentinel.
    def append(self, v: int):
        if v < 0:
            raise ValueError("entries must be non-negative")
        if len(self.entries) + 1 > self.cap:
            raise ValueError("capacity exceeded")
        self.entries.append(v)
        self.prefix.append(self.prefix[-1] + v)

    def pop(self):
        if not self.entries:
            raise IndexError("pop from empty structure")
        self.entries.pop()
        self.prefix.pop()

    def __repr__(self):
        return f"SmallNonNegSums({self.entries})"


# ---------------------------------------------------------------------------
# Signed prefix sums (sum / update only)
# ---------------------------------------------------------------------------

class SmallSignedPrefixSums:
    """Prefix sums over a short array of signed integers."""

    __slots__ = ("entries", "prefix")

    def __init__(self, entries=()):
        self.entries = list(entries)
        prefix = [0]
        acc = 0
        for v in self.entries:
            acc += v
            prefix.append(acc)
        self.prefix = prefix

    @property
    def k(self) -> int:
        return len(self.entries)

    def sum(self, i: int) -> int:
        if not 0 <= i <= len(self.entries):
            raise IndexError(f"index {i} out of range [0, {len(self.entries)}]")
        return self.prefix[i]

    def update(self, i: int, delta: int):
        if not 1 <= i <= len(self.entries):
            raise IndexError(f"index {i} out of range")
        self.entries[i - 1] += delta
        prefix = self.prefix
        for j in range(i, len(prefix)):
            prefix[j] += delta

    def __repr__(self):
        return f"SmallSignedPrefixSums({self.entries})"


# ---------------------------------------------------------------------------
# Suffix-add array (difference-array representation)
# ---------------------------------------------------------------------------

class RangeAddArray:
    """Signed array Y[1..k] supporting get(i) and suffix addition.

    Stored as the difference array Z[i] = Y[i] - Y[i-1]; a materialised
    value list is kept alongside so reads are O(1).
    """

    __slots__ = ("diffs", "values")

    def __init__(self, values=()):
        values = list(values)
        self.values = values
        self.diffs = [values[i] - (values[i - 1] if i else 0) for i in range(len(values))]

    @property
    def k(self) -> int:
        return len(self.values)

    def get(self, i: int) -> int:
        if not 1 <= i <= len(self.values):
            raise IndexError(f"index {i} out of range")
        return self.values[i - 1]

    def suffix_add(self, i: int, delta: int):
        """Add delta to entries i..k."""
        if not 1 <= i <= len(self.values):
            raise IndexError(f"index {i} out of range")
        self.diffs[i - 1] += delta
        values = self.values
        for j in range(i - 1, len(values)):
            values[j] += delta

    def point_add(self, i: int, delta: int):
        """Add delta to entry i only (two suffix additions)."""
        self.suffix_add(i, delta)
        if i < len(self.values):
            self.suffix_add(i + 1, -delta)

    def __repr__(self):
        return f"RangeAddArray({self.values})"


# ---------------------------------------------------------------------------
# Searchable signed sums
# ---------------------------------------------------------------------------

class SearchableSignedSums:
    """Signed prefix sums with threshold search for thresholds d >= 1.

    Alongside the base array Z it maintains, under +-1 point updates:

    * ``imask``  -- the marker string I, I[i] = 1 iff Y[i] > max(Y[0..i-1])
      where Y[i] = sum(Z, i) and Y[0] = 0 (strict running records);
    * ``zp``     -- gaps between successive record values of Y, so that the
      prefix sums of ``zp`` enumerate the record values in order;
    * ``dhat``   -- shadow of D[i] = Y[prev1(I, i)] - Y[i], exact in its
      zeroes only: updates saturate at k and one slot per update (the
      rotating index ``alpha``) is restored to min(k, D[alpha]).

    search(d) resolves to a search on the non-negative gaps followed by a
    select on I.
    """

    __slots__ = ("base", "imask", "zp", "dhat", "alpha")

    def __init__(self, entries=()):
        self.base = SmallSignedPrefixSums(entries)
        k = self.base.k
        imask, records = self._scan_records(self.base.prefix)
        self.imask = imask
        self.zp = SmallNonNegSums(
            [records[i] - (records[i - 1] if i else 0) for i in range(len(records))],
            cap=max(k, 1),
        )
        self.dhat = self._exact_dhat()
        self.alpha = 1

    @staticmethod
    def _scan_records(prefix):
        """Marker mask and record values recomputed from a prefix list."""
        imask = 0
        records = []
        best = 0
        for i in range(1, len(prefix)):
            if prefix[i] > best:
                best = prefix[i]
                imask |= 1 << (i - 1)
                records.append(prefix[i])
        return imask, records

    def _exact_dhat(self):
        k = self.base.k
        prefix = self.base.prefix
        imask = self.imask
        return [min(k, prefix[prev1(imask, i)] - prefix[i]) for i in range(1, k + 1)]

    @property
    def k(self) -> int:
        return self.base.k

    def sum(self, i: int) -> int:
        return self.base.sum(i)

    def values(self):
        """Prefix-sum list Y[0..k] (read-only view of the cache)."""
        return self.base.prefix

    def search(self, d: int):
        """Minimum i with sum(i) >= d, or None; requires d >= 1."""
        if d <= 0:
            raise ValueError("search threshold must be positive")
        j = self.zp.search(d)
        if j is None:
            return None
        return select1(self.imask, j)

    def semantic_d(self):
        """The exact array D[i] = Y[prev1(I, i)] - Y[i] (for checking)."""
        prefix = self.base.prefix
        imask = self.imask
        return [prefix[prev1(imask, i)] - prefix[i] for i in range(1, self.base.k + 1)]

    def update(self, i: int, delta: int):
        if delta not in (-1, 1):
            raise ValueError("update delta must be +1 or -1")
        k = self.base.k
        if not 1 <= i <= k:
            raise IndexError(f"index {i} out of range")
        self.base.update(i, delta)
        imask = self.imask
        j = next1(imask, i, k)
        if j <= k:
            i2 = rank1(imask, j)
            self.zp.update(i2, delta)
        else:
            i2 = rank1(imask, k) + 1  # implicit +inf sentinel record

        dhat = self.dhat
        if i < j and delta == 1:
            # A tie with the governing record becomes a new record.  l is
            # found through dhat; its zeroes coincide with D's.
            l = k + 1
            for p in range(i, k + 1):
                if dhat[p - 1] == 0:
                    l = p
                    break
            for p in range(i, min(l, k + 1)):
                dhat[p - 1] -= 1
            if l != j:
                self.imask |= 1 << (l - 1)
                if j <= k:
                    self.zp.divide(i2, 1)
                else:
                    self.zp.append(1)
        elif delta == -1:
            if i < j:
                hi = min(j - 1, k)
                for p in range(i, hi + 1):
                    if dhat[p - 1] < k:
                        dhat[p - 1] += 1
            # The record at j dies when its gap reaches zero.  This can
            # also happen with i == j (the update hits the record itself).
            if j <= k and self.zp.entries[i2 - 1] == 0:
                self.imask &= ~(1 << (j - 1))
                if i2 < self.zp.k:
                    self.zp.merge(i2)
                else:
                    self.zp.pop()

        # Rotating exact repair keeps dhat's zero set equal to D's.
        a = self.alpha
        if a <= k:
            prefix = self.base.prefix
            dhat[a - 1] = min(k, prefix[prev1(self.imask, a)] - prefix[a])
        self.alpha = a + 1 if a < k else 1

    def __repr__(self):
        return f"SearchableSignedSums({self.base.entries})"
