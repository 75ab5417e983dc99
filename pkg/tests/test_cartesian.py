import random

from hypothesis import given
import hypothesis.strategies as st

from dynbp.cartesian import (
    cart_argext,
    cart_first_reach,
    cart_last_reach,
    decode_cartesian,
    encode_cartesian,
)


def brute_argmax(vals, a, b):
    best = a
    for p in range(a, b + 1):
        if vals[p] > vals[best]:
            best = p
    return best


def brute_argmin(vals, a, b):
    best = a
    for p in range(a, b + 1):
        if vals[p] < vals[best]:
            best = p
    return best


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=24))
def test_argext_matches_scan(values):
    k = len(values)
    vals = [0] + values  # 1-based
    for is_max in (True, False):
        word = encode_cartesian(values, is_max)
        assert word.bit_count() == k
        assert word.bit_length() <= 2 * k
        dec = decode_cartesian(word, k)
        for a in range(1, k + 1):
            for b in range(a, k + 1):
                want = brute_argmax(vals, a, b) if is_max else brute_argmin(vals, a, b)
                assert cart_argext(dec, a, b) == want


@given(
    st.lists(st.integers(-4, 4), min_size=1, max_size=16),
    st.integers(-5, 5),
)
def test_reach_searches_match_scan(values, d):
    k = len(values)
    vals = [0] + values
    word = encode_cartesian(values, True)
    dec = decode_cartesian(word, k)
    for a in range(1, k + 1):
        for b in range(a, k + 1):
            want_first = next((p for p in range(a, b + 1) if vals[p] >= d), 0)
            want_last = next((p for p in range(b, a - 1, -1) if vals[p] >= d), 0)
            assert cart_first_reach(dec, a, b, lambda p: vals[p] >= d) == want_first
            assert cart_last_reach(dec, a, b, lambda p: vals[p] >= d) == want_last
    word = encode_cartesian(values, False)
    dec = decode_cartesian(word, k)
    for a in range(1, k + 1):
        for b in range(a, k + 1):
            want_first = next((p for p in range(a, b + 1) if vals[p] <= d), 0)
            assert cart_first_reach(dec, a, b, lambda p: vals[p] <= d) == want_first


def test_decode_distinguishes_tie_direction():
    # [5, 5] and [5, 4] share max-Cartesian topology; argext still gives
    # the leftmost maximum for both.
    for values in ([5, 5], [5, 4]):
        dec = decode_cartesian(encode_cartesian(values, True), 2)
        assert cart_argext(dec, 1, 2) == 1
    dec = decode_cartesian(encode_cartesian([4, 5], True), 2)
    assert cart_argext(dec, 1, 2) == 2


def test_random_large_arrays():
    rng = random.Random(11)
    for _ in range(50):
        k = rng.randint(1, 64)
        values = [rng.randint(-30, 30) for _ in range(k)]
        vals = [0] + values
        dec = decode_cartesian(encode_cartesian(values, True), k)
        for _ in range(20):
            a = rng.randint(1, k)
            b = rng.randint(a, k)
            assert cart_argext(dec, a, b) == brute_argmax(vals, a, b)
