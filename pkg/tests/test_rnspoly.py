"""RNS polynomial layer vs schoolbook and big-integer oracles."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ckkslab import rnspoly, zq
from ckkslab.rnspoly import RnsPoly

from oracles import (
    oracle_automorph_coeff,
    oracle_centered_bc,
    oracle_crt_lift,
    oracle_fast_bc,
    oracle_moddown,
    oracle_moddown_value,
    oracle_negacyclic,
)

Q8 = zq.gen_ntt_prime(30, 8)
Q8B = zq.gen_ntt_prime(30, 8, exclude=(Q8,))
Q64 = zq.gen_ntt_prime(40, 64)


def rand_poly(rng, n, q):
    return rng.integers(0, q, size=n, dtype=np.uint64)


def test_ntt_multiplication_matches_schoolbook_n8_exhaustive_random():
    rng = np.random.default_rng(11)
    for _ in range(50):
        a = rand_poly(rng, 8, Q8)
        b = rand_poly(rng, 8, Q8)
        got = rnspoly.negacyclic_mul(a, b, Q8)
        want = oracle_negacyclic([int(x) for x in a], [int(x) for x in b], Q8)
        assert [int(x) for x in got] == want


def test_ntt_multiplication_edge_values():
    top = np.full(8, Q8 - 1, dtype=np.uint64)
    got = rnspoly.negacyclic_mul(top, top, Q8)
    want = oracle_negacyclic([Q8 - 1] * 8, [Q8 - 1] * 8, Q8)
    assert [int(x) for x in got] == want


@given(st.integers(0, 2**32))
@settings(max_examples=60, deadline=None)
def test_ntt_roundtrip(seed):
    rng = np.random.default_rng(seed)
    a = rand_poly(rng, 64, Q64)
    ctx = rnspoly.get_ctx(Q64, 64)
    assert np.array_equal(ctx.intt(ctx.ntt(a)), a)


def test_automorph_coeff_matches_oracle():
    rng = np.random.default_rng(5)
    a = rand_poly(rng, 8, Q8)
    poly = RnsPoly((Q8,), a[None, :].copy(), "coeff")
    for t in (3, 5, 7, 9, 15):
        got = poly.automorph(t)
        want = oracle_automorph_coeff([int(x) for x in a], t, Q8)
        assert [int(x) for x in got.data[0]] == want


def test_automorph_eval_agrees_with_coeff_path():
    rng = np.random.default_rng(6)
    a = rand_poly(rng, 64, Q64)
    poly = RnsPoly((Q64,), a[None, :].copy(), "coeff")
    for t in (5, 25, 2 * 64 - 1, 77):
        via_coeff = poly.automorph(t).to_eval()
        via_eval = poly.to_eval().automorph(t)
        assert np.array_equal(via_coeff.data, via_eval.data)


def test_automorph_eval_permutation_is_prime_independent():
    n = 8
    ctx1 = rnspoly.get_ctx(Q8, n)
    ctx2 = rnspoly.get_ctx(Q8B, n)
    for t in (3, 5, 15):
        p1 = np.array([ctx1.point_exponents()[i] for i in range(n)])
        p2 = np.array([ctx2.point_exponents()[i] for i in range(n)])
        assert np.array_equal(p1, p2)
        rnspoly._AUTO_EVAL_CACHE.clear()
        perm1 = rnspoly.automorph_eval_perm(n, t, ctx1).copy()
        rnspoly._AUTO_EVAL_CACHE.clear()
        perm2 = rnspoly.automorph_eval_perm(n, t, ctx2).copy()
        assert np.array_equal(perm1, perm2)


def _chain(n, count, bits0=40, bits=32):
    mods = [zq.gen_ntt_prime(bits0, n)]
    for _ in range(count - 1):
        mods.append(zq.gen_ntt_prime(bits, n, exclude=tuple(mods)))
    return tuple(mods)


def test_fast_basis_conversion_matches_big_int_oracle():
    n = 16
    src = _chain(n, 4)
    dst = tuple(zq.gen_ntt_prime(34 + i, n, exclude=src) for i in range(3))
    rng = np.random.default_rng(17)
    data = np.stack([rand_poly(rng, n, q) for q in src])
    x = RnsPoly(src, data, "coeff")
    got = rnspoly.bc_convert(x, dst)
    for c in range(n):
        res = [int(data[i, c]) for i in range(len(src))]
        want = oracle_fast_bc(res, list(src), list(dst))
        assert [int(got.data[j, c]) for j in range(len(dst))] == want


def test_centered_basis_conversion_matches_big_int_oracle():
    n = 16
    src = _chain(n, 5)
    dst = tuple(zq.gen_ntt_prime(34 + i, n, exclude=src) for i in range(3))
    rng = np.random.default_rng(19)
    data = np.stack([rand_poly(rng, n, q) for q in src])
    x = RnsPoly(src, data, "coeff")
    got = rnspoly.bc_convert_centered(x, dst)
    for c in range(n):
        res = [int(data[i, c]) for i in range(len(src))]
        want = oracle_centered_bc(res, list(src), list(dst))
        assert [int(got.data[j, c]) for j in range(len(dst))] == want


def test_moddown_matches_oracle_limbwise_and_value():
    n = 16
    mods = _chain(n, 6)
    keep = 3
    rng = np.random.default_rng(23)
    data = np.stack([rand_poly(rng, n, q) for q in mods])
    x = RnsPoly(mods, data, "coeff")
    got = rnspoly.moddown_coeff(x, keep)
    big_p = 1
    for p in mods[keep:]:
        big_p *= p
    for c in range(n):
        res = [int(data[i, c]) for i in range(len(mods))]
        want = oracle_moddown(res, list(mods), keep)
        assert [int(got.data[j, c]) for j in range(keep)] == want
        # semantic check: the result is exactly round(x / P)
        lifted = oracle_crt_lift([int(got.data[j, c]) for j in range(keep)],
                                 list(mods[:keep]))
        x_val = oracle_crt_lift(res, list(mods))
        big_q = 1
        for p in mods[:keep]:
            big_q *= p
        assert lifted == oracle_moddown_value(x_val, list(mods), keep) % big_q


def test_rescale_is_single_limb_moddown():
    n = 16
    mods = _chain(n, 4)
    rng = np.random.default_rng(29)
    data = np.stack([rand_poly(rng, n, q) for q in mods])
    x = RnsPoly(mods, data, "coeff")
    a = rnspoly.rescale_coeff(x)
    b = rnspoly.moddown_coeff(x, len(mods) - 1)
    assert a.moduli == b.moduli
    assert np.array_equal(a.data, b.data)


def test_modup_preserves_value_mod_new_primes():
    n = 16
    src = _chain(n, 3)
    extra = tuple(zq.gen_ntt_prime(36 + i, n, exclude=src) for i in range(2))
    rng = np.random.default_rng(31)
    data = np.stack([rand_poly(rng, n, q) for q in src])
    x = RnsPoly(src, data, "coeff")
    up = rnspoly.modup_coeff(x, extra)
    assert up.moduli == src + extra
    big_q = 1
    for q in src:
        big_q *= q
    for c in range(n):
        res = [int(data[i, c]) for i in range(len(src))]
        want = oracle_fast_bc(res, list(src), list(extra))
        got = [int(up.data[len(src) + j, c]) for j in range(len(extra))]
        assert got == want
        # value is x + u*Q for small u: exact residues already checked,
        # confirm the implied lift stays close to the original value
        x_val = oracle_crt_lift(res, list(src))
        x_tilde = 0
        for r, q in zip(res, src):
            hat = big_q // q
            x_tilde += (r * pow(hat, -1, q) % q) * hat
        assert (x_tilde - x_val) % big_q == 0
        assert 0 <= x_tilde < len(src) * big_q


@given(st.integers(0, 2**32))
@settings(max_examples=25, deadline=None)
def test_poly_ring_ops_roundtrip(seed):
    rng = np.random.default_rng(seed)
    n = 32
    mods = _chain(n, 2)
    a = RnsPoly(mods, np.stack([rand_poly(rng, n, q) for q in mods]), "coeff")
    b = RnsPoly(mods, np.stack([rand_poly(rng, n, q) for q in mods]), "coeff")
    # (a+b)-b == a, and eval-domain mult commutes
    assert np.array_equal(a.add(b).sub(b).data, a.data)
    ae, be = a.to_eval(), b.to_eval()
    assert np.array_equal(ae.mul(be).data, be.mul(ae).data)
    assert np.array_equal(ae.to_coeff().data, a.data)
