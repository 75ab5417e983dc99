import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from dynbp.partial_sums import (
    RangeAddArray,
    SearchableSignedSums,
    SmallNonNegSums,
    SmallSignedPrefixSums,
    next1,
    prev1,
    rank1,
    select1,
)

# The running example used throughout: signed entries whose prefix sums are
# [2, 0, -1, 2, 1, 2, 3, 0, 5].
EXAMPLE_Z = [2, -2, -1, 3, -1, 1, 1, -3, 5]


def scan_state(entries):
    """Recompute (Y, imask, records, D) from scratch."""
    y = [0]
    for v in entries:
        y.append(y[-1] + v)
    imask = 0
    records = []
    best = 0
    for i in range(1, len(y)):
        if y[i] > best:
            best = y[i]
            imask |= 1 << (i - 1)
            records.append(y[i])
    d = []
    for i in range(1, len(y)):
        d.append(y[prev1(imask, i)] - y[i])
    return y, imask, records, d


def mask_to_list(mask, k):
    return [(mask >> i) & 1 for i in range(k)]


# ---------------------------------------------------------------------------
# bit helpers
# ---------------------------------------------------------------------------

def test_bit_helpers():
    mask = 0b101000101  # bits 1, 3, 7, 9
    assert rank1(mask, 0) == 0
    assert rank1(mask, 3) == 2
    assert rank1(mask, 9) == 4
    assert select1(mask, 1) == 1
    assert select1(mask, 3) == 7
    assert next1(mask, 2, 9) == 3
    assert next1(mask, 8, 9) == 9
    assert next1(0, 1, 5) == 6
    assert prev1(mask, 6) == 3
    assert prev1(mask, 1) == 1
    assert prev1(0b100, 2) == 0
    with pytest.raises(ValueError):
        select1(mask, 5)


# ---------------------------------------------------------------------------
# SmallNonNegSums
# ---------------------------------------------------------------------------

class TestSmallNonNegSums:
    def test_sum(self):
        s = SmallNonNegSums([2, 1, 2])
        assert s.sum(2) == 3
        assert s.sum(0) == 0
        assert SmallNonNegSums([3, 0, 4]).sum(3) == 7
        with pytest.raises(IndexError):
            s.sum(4)

    def test_search(self):
        s = SmallNonNegSums([2, 1, 2])
        assert s.search(3) == 2
        assert s.search(6) is None
        assert s.search(1) == 1
        with pytest.raises(ValueError):
            s.search(0)

    def test_update(self):
        s = SmallNonNegSums([2, 1, 2])
        s.update(2, 1)
        assert s.entries == [2, 2, 2]
        s = SmallNonNegSums([2, 1, 2])
        s.update(3, -2)
        assert s.entries == [2, 1, 0]
        with pytest.raises(ValueError):
            SmallNonNegSums([2, 1, 2]).update(1, -3)

    def test_merge(self):
        s = SmallNonNegSums([2, 1, 1, 2])
        s.merge(2)
        assert s.entries == [2, 2, 2]
        with pytest.raises(IndexError):
            SmallNonNegSums([5]).merge(1)
        s = SmallNonNegSums([0, 7])
        s.merge(1)
        assert s.entries == [7]
        assert s.sum(1) == 7

    def test_divide(self):
        s = SmallNonNegSums([2, 2, 2])
        s.divide(2, 1)
        assert s.entries == [2, 1, 1, 2]
        s = SmallNonNegSums([4])
        s.divide(1, 0)
        assert s.entries == [0, 4]
        s = SmallNonNegSums([4])
        s.divide(1, 4)
        assert s.entries == [4, 0]
        with pytest.raises(ValueError):
            SmallNonNegSums([4]).divide(1, 5)
        with pytest.raises(ValueError):
            SmallNonNegSums([1, 1], cap=2).divide(1, 0)

    def test_merge_prefix_stability(self):
        s = SmallNonNegSums([2, 1, 1, 2])
        before = [s.sum(i) for i in range(2)]
        s.merge(2)
        assert [s.sum(i) for i in range(2)] == before

    @given(
        st.lists(st.integers(0, 9), min_size=1, max_size=64),
        st.data(),
    )
    def test_random_ops_match_scan(self, entries, data):
        s = SmallNonNegSums(entries, cap=80)
        ref = list(entries)
        for _ in range(20):
            op = data.draw(st.sampled_from(["sum", "search", "update", "merge", "divide"]))
            if op == "sum":
                i = data.draw(st.integers(0, len(ref)))
                assert s.sum(i) == sum(ref[:i])
            elif op == "search":
                d = data.draw(st.integers(1, max(1, sum(ref) + 2)))
                acc = 0
                want = None
                for i, v in enumerate(ref, 1):
                    acc += v
                    if acc >= d:
                        want = i
                        break
                assert s.search(d) == want
            elif op == "update":
                i = data.draw(st.integers(1, len(ref)))
                delta = data.draw(st.integers(-ref[i - 1], 5))
                s.update(i, delta)
                ref[i - 1] += delta
            elif op == "merge" and len(ref) >= 2:
                i = data.draw(st.integers(1, len(ref) - 1))
                s.merge(i)
                ref[i - 1 : i + 1] = [ref[i - 1] + ref[i]]
            elif op == "divide" and len(ref) < 80:
                i = data.draw(st.integers(1, len(ref)))
                t = data.draw(st.integers(0, ref[i - 1]))
                s.divide(i, t)
                ref[i - 1 : i] = [t, ref[i - 1] - t]
        assert s.entries == ref

    @given(st.lists(st.integers(0, 9), min_size=2, max_size=16), st.integers(1, 15))
    def test_merge_divide_round_trip(self, entries, i):
        if i >= len(entries):
            i = len(entries) - 1
        s = SmallNonNegSums(entries, cap=32)
        left = entries[i - 1]
        s.merge(i)
        s.divide(i, left)
        assert s.entries == entries


# ---------------------------------------------------------------------------
# SmallSignedPrefixSums
# ---------------------------------------------------------------------------

class TestSmallSignedPrefixSums:
    def test_example_sums(self):
        s = SmallSignedPrefixSums(EXAMPLE_Z)
        assert s.sum(3) == -1
        assert s.sum(0) == 0
        s.update(2, 1)
        assert s.sum(9) == 6

    @given(
        st.lists(st.integers(-9, 9), min_size=1, max_size=64),
        st.lists(st.tuples(st.integers(0, 63), st.integers(-4, 4)), max_size=30),
    )
    def test_random_updates_match_scan(self, entries, updates):
        s = SmallSignedPrefixSums(entries)
        ref = list(entries)
        for pos, delta in updates:
            i = pos % len(ref) + 1
            s.update(i, delta)
            ref[i - 1] += delta
        for i in range(len(ref) + 1):
            assert s.sum(i) == sum(ref[:i])


# ---------------------------------------------------------------------------
# RangeAddArray
# ---------------------------------------------------------------------------

class TestRangeAddArray:
    def test_examples(self):
        a = RangeAddArray([0, 0, 0])
        a.suffix_add(2, 5)
        assert [a.get(i) for i in (1, 2, 3)] == [0, 5, 5]
        a = RangeAddArray([0, 0, 0])
        a.suffix_add(1, -1)
        a.suffix_add(3, 1)
        assert [a.get(i) for i in (1, 2, 3)] == [-1, -1, 0]
        assert RangeAddArray([4]).get(1) == 4

    @given(
        st.lists(st.integers(-5, 5), min_size=1, max_size=32),
        st.lists(st.tuples(st.integers(0, 31), st.integers(-3, 3)), max_size=25),
    )
    def test_random_suffix_adds_match_scan(self, values, ops):
        a = RangeAddArray(values)
        ref = list(values)
        for pos, delta in ops:
            i = pos % len(ref) + 1
            a.suffix_add(i, delta)
            for j in range(i - 1, len(ref)):
                ref[j] += delta
        assert a.values == ref


# ---------------------------------------------------------------------------
# SearchableSignedSums
# ---------------------------------------------------------------------------

def assert_coherent(s):
    """Maintained I/Z' match a from-scratch scan; dhat zeroes match D's."""
    y, imask, records, d = scan_state(s.base.entries)
    assert s.imask == imask
    gaps = [records[i] - (records[i - 1] if i else 0) for i in range(len(records))]
    assert s.zp.entries == gaps
    k = s.k
    for i in range(1, k + 1):
        assert 0 <= s.dhat[i - 1] <= k
        assert (s.dhat[i - 1] == 0) == (d[i - 1] == 0), (
            f"dhat zero-set mismatch at {i}: dhat={s.dhat}, d={d}"
        )


class TestSearchableSignedSums:
    def test_initial_example_state(self):
        s = SearchableSignedSums(EXAMPLE_Z)
        assert mask_to_list(s.imask, 9) == [1, 0, 0, 0, 0, 0, 1, 0, 1]
        assert s.semantic_d() == [0, 2, 3, 0, 1, 0, 0, 3, 0]
        assert s.zp.entries == [2, 1, 2]
        assert s.sum(7) == 3
        assert s.sum(0) == 0
        assert s.sum(9) == 5

    def test_update_example(self):
        s = SearchableSignedSums(EXAMPLE_Z)
        s.update(2, 1)
        assert mask_to_list(s.imask, 9) == [1, 0, 0, 1, 0, 0, 1, 0, 1]
        assert s.semantic_d() == [0, 1, 2, 0, 1, 0, 0, 3, 0]
        assert s.zp.entries == [2, 1, 1, 2]
        # First prefix sum is unchanged by an update at index 2.
        assert s.sum(1) == 2
        assert_coherent(s)

    def test_update_inverse_pair(self):
        s = SearchableSignedSums(EXAMPLE_Z)
        s.update(2, 1)
        s.update(2, -1)
        ref = SearchableSignedSums(EXAMPLE_Z)
        assert s.imask == ref.imask
        assert s.zp.entries == ref.zp.entries
        assert s.semantic_d() == ref.semantic_d()
        assert_coherent(s)

    def test_search_examples(self):
        s = SearchableSignedSums(EXAMPLE_Z)
        assert s.search(3) == 7
        assert s.search(1) == 1
        assert s.search(6) is None
        with pytest.raises(ValueError):
            s.search(0)

    def test_search_matches_scan_after_update(self):
        s = SearchableSignedSums(EXAMPLE_Z)
        s.update(2, 1)
        y = s.values()
        top = max(y[1:])
        for d in range(1, top + 1):
            want = next(i for i in range(1, s.k + 1) if y[i] >= d)
            assert s.search(d) == want

    def test_record_dies_under_update_at_record(self):
        # Updating the record itself can retire it; the gap array must
        # shrink in step.
        s = SearchableSignedSums([2, 1])
        s.update(2, -1)
        assert_coherent(s)
        assert s.zp.entries == [2]
        assert mask_to_list(s.imask, 2) == [1, 0]

    def test_trailing_record_append_and_pop(self):
        # No record at or after the update point: a tie promotes through
        # the sentinel path.
        s = SearchableSignedSums([3, -1, 1])  # Y = [3, 2, 3]; records: {1}
        s.update(2, 1)  # Y = [3, 3, 4]; position 3 becomes a record
        assert_coherent(s)
        s.update(2, -1)
        assert_coherent(s)

    def test_delta_validation(self):
        s = SearchableSignedSums(EXAMPLE_Z)
        with pytest.raises(ValueError):
            s.update(1, 2)

    @given(
        st.lists(st.integers(-6, 6), min_size=1, max_size=24),
        st.lists(st.tuples(st.integers(0, 63), st.booleans()), min_size=1, max_size=60),
    )
    @settings(max_examples=200)
    def test_fuzz_updates_coherent(self, entries, ops):
        s = SearchableSignedSums(entries)
        for pos, up in ops:
            i = pos % s.k + 1
            s.update(i, 1 if up else -1)
            assert_coherent(s)
        # search agrees with a linear scan for every feasible threshold
        y = s.values()
        top = max(y[1:])
        for d in range(1, top + 1):
            want = next(i for i in range(1, s.k + 1) if y[i] >= d)
            assert s.search(d) == want
        if top < 1:
            assert s.search(1) is None

    @given(
        st.lists(st.integers(-6, 6), min_size=1, max_size=16),
        st.lists(st.tuples(st.integers(0, 63), st.booleans()), max_size=40),
    )
    @settings(max_examples=100)
    def test_search_monotone(self, entries, ops):
        s = SearchableSignedSums(entries)
        for pos, up in ops:
            s.update(pos % s.k + 1, 1 if up else -1)
        y = s.values()
        top = max(y[1:])
        prev = 0
        for d in range(1, top + 1):
            got = s.search(d)
            assert got is not None and got >= prev
            prev = got
