"""Modular arithmetic vs wide-integer oracles."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ckkslab import zq

from oracles import oracle_mulmod, oracle_ntt_prime

MODULI = [
    zq.gen_ntt_prime(50, 1 << 12),
    zq.gen_ntt_prime(59, 1 << 12),
    zq.gen_ntt_prime(59, 1 << 13),
]


def test_vec_mulmod_against_wide_int_oracle_million_cases():
    rng = np.random.default_rng(7)
    total = 0
    mismatches = 0
    for q in MODULI:
        m = 1_000_000 // len(MODULI) + 1
        a = rng.integers(0, q, size=m, dtype=np.uint64)
        b = rng.integers(0, q, size=m, dtype=np.uint64)
        got = zq.vec_mulmod(a, b, q)
        want = (a.astype(object) * b.astype(object)) % q
        mismatches += int(np.count_nonzero(got.astype(object) != want))
        total += m
    assert total >= 1_000_000
    assert mismatches == 0


def test_vec_mulmod_extremes():
    for q in MODULI:
        edge = np.array([0, 1, q - 1, q - 2, q // 2], dtype=np.uint64)
        a, b = np.meshgrid(edge, edge)
        a, b = a.ravel(), b.ravel()
        got = zq.vec_mulmod(a, b, q)
        for x, y, g in zip(a, b, got):
            assert int(g) == oracle_mulmod(int(x), int(y), q)


def test_vec_addsub_against_oracle():
    rng = np.random.default_rng(3)
    for q in MODULI:
        a = rng.integers(0, q, size=5000, dtype=np.uint64)
        b = rng.integers(0, q, size=5000, dtype=np.uint64)
        assert np.all(zq.vec_addmod(a, b, q).astype(object) == (a.astype(object) + b) % q)
        assert np.all(zq.vec_submod(a, b, q).astype(object) == (a.astype(object) - b) % q)
        assert np.all(zq.vec_negmod(a, q).astype(object) == (-a.astype(object)) % q)


@given(st.integers(0, (1 << 59) - 1), st.integers(0, (1 << 59) - 1))
@settings(max_examples=300, deadline=None)
def test_shoup_matches_generic(x, y):
    q = MODULI[1]
    x, y = x % q, y % q
    assert zq.shoup_mul(x, y, zq.shoup_precompute(y, q), q) == oracle_mulmod(x, y, q)


@given(st.lists(st.integers(0, (1 << 59) - 1), min_size=0, max_size=64))
@settings(max_examples=200, deadline=None)
def test_lazy_sum_matches_plain_sum(vals):
    q = MODULI[1]
    vals = [v % q for v in vals]
    assert zq.lazy_sum(vals, q) == sum(vals) % q


@given(st.integers(1, (1 << 59) - 1))
@settings(max_examples=100, deadline=None)
def test_inverse_roundtrip(a):
    q = MODULI[2]
    a = a % q or 1
    assert zq.mul_mod(a, zq.inv_mod(a, q), q) == 1


@pytest.mark.parametrize("bits,logn", [(30, 6), (40, 10), (50, 12), (59, 13)])
def test_gen_ntt_prime_matches_oracle(bits, logn):
    n = 1 << logn
    p = zq.gen_ntt_prime(bits, n)
    assert p == oracle_ntt_prime(bits, n)
    assert p % (2 * n) == 1
    assert p.bit_length() == bits


def test_gen_ntt_prime_exclusion_gives_next_prime():
    n = 1 << 10
    first = zq.gen_ntt_prime(45, n)
    second = zq.gen_ntt_prime(45, n, exclude=(first,))
    assert second == oracle_ntt_prime(45, n, exclude=(first,))
    assert second > first


def test_prime_chain_is_distinct_and_ntt_friendly():
    chain, special = zq.gen_prime_chain(1 << 12, 59, 50, 6, 59, 3)
    allp = chain + special
    assert len(set(allp)) == len(allp)
    for p in allp:
        assert p % (1 << 13) == 1


def test_primitive_root_order():
    n = 1 << 10
    q = zq.gen_ntt_prime(45, n)
    psi = zq.primitive_root_2n(q, n)
    assert pow(psi, n, q) == q - 1
    assert pow(psi, 2 * n, q) == 1
