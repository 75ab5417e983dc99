import random

import pytest

from dynbp.bp_kernel import BitBlock, WeightFn, get_chunk_table, weight_of_bit
from dynbp.oracle import BaseOracle

ALL_F = list(WeightFn)


def bits_of(s):
    return [1 if ch in "1(" else 0 for ch in s]


def test_weight_definitions():
    assert [weight_of_bit(WeightFn.PI, b) for b in (1, 0)] == [1, -1]
    assert [weight_of_bit(WeightFn.PI_PRIME, b) for b in (1, 0)] == [-1, 1]
    assert [weight_of_bit(WeightFn.PHI, b) for b in (1, 0)] == [1, 0]
    assert [weight_of_bit(WeightFn.PSI, b) for b in (1, 0)] == [0, 1]
    for b in (0, 1):
        assert weight_of_bit(WeightFn.PI, b) + weight_of_bit(WeightFn.PI_PRIME, b) == 0
        assert weight_of_bit(WeightFn.PHI, b) + weight_of_bit(WeightFn.PSI, b) == 1


def test_chunk_table_matches_brute_force():
    tbl = get_chunk_table(8)
    rng = random.Random(7)
    samples = list(range(0, 256))
    for f in ALL_F:
        w0, w1 = weight_of_bit(f, 0), weight_of_bit(f, 1)
        for val in samples:
            acc = 0
            mn, mx, cnt = 99, -99, 0
            prefixes = []
            for p in range(8):
                acc += w1 if (val >> p) & 1 else w0
                prefixes.append(acc)
                if acc < mn:
                    mn, cnt = acc, 1
                elif acc == mn:
                    cnt += 1
                mx = max(mx, acc)
            assert tbl.sums[f][val] == acc
            assert tbl.max_prefix[f][val] == mx
            assert tbl.min_prefix[f][val] == mn
            assert tbl.min_count[f][val] == cnt
            for t in rng.sample(range(0, 9), 4):
                want = next((p + 1 for p in range(8) if prefixes[p] >= t), 0)
                assert tbl.first_reach[f][val][t] == want


class TestBlockQueries:
    def test_sum_examples(self):
        b = BitBlock.from_bits(bits_of("110100"))
        assert b.sum(WeightFn.PI, 1, 6) == 0
        assert b.sum(WeightFn.PHI, 1, 6) == 3
        assert b.sum(WeightFn.PI, 2, 4) == 1
        assert b.sum(WeightFn.PI, 3, 2) == 0  # empty range
        with pytest.raises(IndexError):
            b.sum(WeightFn.PI, 1, 7)

    def test_fwd_examples(self):
        b = BitBlock.from_bits(bits_of("110100"))
        assert b.fwd_search_geq(WeightFn.PI, 1, 2, 0) == 2
        assert BitBlock.from_bits(bits_of("10")).fwd_search_geq(WeightFn.PI, 1, 1, 0) == 1
        assert b.fwd_search_geq(WeightFn.PI, 5, 2, 2) is None

    def test_bwd_examples(self):
        b = BitBlock.from_bits(bits_of("110100"))
        assert b.bwd_search_geq(WeightFn.PI, 6, 1) is None
        b2 = BitBlock.from_bits(bits_of("1100"))
        assert b2.bwd_search_geq(WeightFn.PI, 2, 2) == 1

    def test_min_family_examples(self):
        b = BitBlock.from_bits(bits_of("110100"))
        entry = b.prefix(WeightFn.PI, 1)
        mn, arg, cnt = b.min_family(WeightFn.PI, 2, 5, entry)
        assert (mn, arg, cnt) == (1, 3, 2)
        pos, rem = b.select_value(WeightFn.PI, 2, 5, 2, 1, entry)
        assert (pos, rem) == (5, 0)
        mn, arg, cnt = b.min_family(WeightFn.PI, 4, 4, b.prefix(WeightFn.PI, 3))
        assert (mn, arg, cnt) == (2, 4, 1)
        mn, arg, cnt = b.min_family(WeightFn.PI, 1, 6)
        assert (mn, arg, cnt) == (0, 6, 1)

    def test_max_family_examples(self):
        b = BitBlock.from_bits(bits_of("110100"))
        assert b.max_family(WeightFn.PI, 1, 6) == (2, 2)
        assert b.max_family(WeightFn.PI, 3, 3, b.prefix(WeightFn.PI, 2)) == (1, 3)
        assert b.max_family(WeightFn.PI, 3, 6, b.prefix(WeightFn.PI, 2)) == (2, 4)


def test_randomized_against_scan_oracle():
    rng = random.Random(12345)
    cases = 0
    for trial in range(60):
        n = rng.randint(1, 700)
        bits = [rng.randint(0, 1) for _ in range(n)]
        blk = BitBlock.from_bits(bits)
        ora = BaseOracle(bits)
        pre = {f: [ora.sum(f, 1, p) if p else 0 for p in range(n + 1)] for f in ALL_F}
        for _ in range(60):
            f = rng.choice(ALL_F)
            i = rng.randint(1, n)
            j = rng.randint(i, n)
            assert blk.sum(f, i, j) == ora.sum(f, i, j)
            d = rng.randint(-2, 8)
            want = ora.fwd_search_geq(f, i, d)
            got = blk.fwd_search_geq(f, i, d + pre[f][i - 1], pre[f][i - 1])
            assert got == want, (f, i, d, bits)
            if f in (WeightFn.PI, WeightFn.PI_PRIME):
                want = ora.bwd_search_geq(f, i, max(d, 0) + 1)
                got = blk.bwd_search_geq(f, i, max(d, 0) + 1)
                assert got == want
            entry = pre[WeightFn.PI][i - 1]
            mn, arg, cnt = blk.min_family(WeightFn.PI, i, j, entry)
            assert (mn, arg, cnt) == ora.min_family(i, j)
            assert blk.max_family(WeightFn.PI, i, j, entry) == ora.max_family(i, j)
            dd = rng.randint(1, cnt)
            pos, rem = blk.select_value(WeightFn.PI, i, j, dd, mn, entry)
            assert rem == 0 and pos == ora.min_select(i, j, dd)
            cases += 1
    assert cases == 3600


def test_splice_summaries_match_rebuild():
    rng = random.Random(99)
    bits = [rng.randint(0, 1) for _ in range(100)]
    blk = BitBlock.from_bits(bits)
    for _ in range(300):
        if rng.random() < 0.6 or len(bits) < 4:
            p = rng.randint(1, len(bits) + 1)
            b = rng.randint(0, 1)
            blk.insert_bit(p, b)
            bits.insert(p - 1, b)
        else:
            p = rng.randint(1, len(bits))
            blk.delete_bit(p)
            del bits[p - 1]
        fresh = BitBlock.from_bits(bits)
        assert blk.bits() == bits
        assert blk.summary() == fresh.summary()


def test_split_join_round_trip():
    rng = random.Random(5)
    bits = [rng.randint(0, 1) for _ in range(333)]
    blk = BitBlock.from_bits(bits)
    left, right = blk.split()
    assert left.bits() + right.bits() == bits
    joined = BitBlock.join(left, right)
    assert joined.bits() == bits
    assert joined.summary() == blk.summary()


def test_chunk16_table_smoke():
    tbl = get_chunk_table(16)
    rng = random.Random(3)
    for f in ALL_F:
        w0, w1 = weight_of_bit(f, 0), weight_of_bit(f, 1)
        for val in rng.sample(range(65536), 200):
            acc = 0
            mn = 99
            cnt = 0
            for p in range(16):
                acc += w1 if (val >> p) & 1 else w0
                if acc < mn:
                    mn, cnt = acc, 1
                elif acc == mn:
                    cnt += 1
            assert tbl.sums[f][val] == acc
            assert tbl.min_prefix[f][val] == mn
            assert tbl.min_count[f][val] == cnt
    b = BitBlock.from_bits(bits_of("110100"), table=tbl)
    assert b.sum(WeightFn.PI, 1, 6) == 0
    assert b.fwd_search_geq(WeightFn.PI, 1, 2, 0) == 2
