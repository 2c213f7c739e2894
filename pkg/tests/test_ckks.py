"""Homomorphic-operation correctness against plaintext references."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ckkslab import ckks, serialize

TWO = 2.0


@pytest.fixture(scope="module")
def setup12():
    p = ckks.make_params(logn=12, limbs=6, dnum=2, delta_bits=50, seed=3)
    keys = ckks.keygen(p, rotations=(1, -1, 3, -3), need_conj=True)
    return p, keys


@pytest.fixture(scope="module")
def setup13():
    p = ckks.make_params(logn=13, limbs=4, dnum=2, delta_bits=50, seed=5)
    keys = ckks.keygen(p, rotations=(2,), need_conj=False)
    return p, keys


def _vec(p, rng, scale=1.0):
    return scale * (rng.normal(size=p.slots) + 1j * rng.normal(size=p.slots))


def test_encode_decode_roundtrip(setup12):
    p, _ = setup12
    rng = np.random.default_rng(1)
    z = _vec(p, rng)
    pt = ckks.encode(p, z, p.delta, p.chain)
    back = ckks.decode(p, pt, p.delta)
    assert np.max(np.abs(back - z)) < TWO ** -20


@pytest.mark.parametrize("which", ["12", "13"])
def test_encrypt_decrypt_roundtrip(setup12, setup13, which):
    p, keys = setup12 if which == "12" else setup13
    rng = np.random.default_rng(2)
    z = _vec(p, rng)
    ct = ckks.encrypt(p, keys, z, rng=rng)
    assert np.max(np.abs(ckks.decrypt(p, keys, ct) - z)) < TWO ** -20


def test_add_sub_ptadd(setup12):
    p, keys = setup12
    rng = np.random.default_rng(3)
    z1, z2 = _vec(p, rng), _vec(p, rng)
    ct1 = ckks.encrypt(p, keys, z1, rng=rng)
    ct2 = ckks.encrypt(p, keys, z2, rng=rng)
    assert np.max(np.abs(ckks.decrypt(p, keys, ckks.add(ct1, ct2)) - (z1 + z2))) < TWO ** -18
    assert np.max(np.abs(ckks.decrypt(p, keys, ckks.sub(ct1, ct2)) - (z1 - z2))) < TWO ** -18
    pt = ckks.encode(p, z2, p.delta, ct1.a.moduli)
    assert np.max(np.abs(ckks.decrypt(p, keys, ckks.pt_add(ct1, pt)) - (z1 + z2))) < TWO ** -18


def _rel_err(got, want):
    return np.max(np.abs(got - want)) / max(1.0, np.max(np.abs(want)))


def test_mult_vs_plaintext(setup12):
    p, keys = setup12
    rng = np.random.default_rng(4)
    z1, z2 = _vec(p, rng), _vec(p, rng)
    ct1 = ckks.encrypt(p, keys, z1, rng=rng)
    ct2 = ckks.encrypt(p, keys, z2, rng=rng)
    out = ckks.mult(p, keys, ct1, ct2)
    assert out.limbs == ct1.limbs - 1
    assert _rel_err(ckks.decrypt(p, keys, out), z1 * z2) < TWO ** -12


def test_pt_mult_vs_plaintext(setup12):
    p, keys = setup12
    rng = np.random.default_rng(5)
    z1, z2 = _vec(p, rng), _vec(p, rng)
    ct = ckks.encrypt(p, keys, z1, rng=rng)
    pt = ckks.encode(p, z2, p.delta, ct.a.moduli)
    out = ckks.pt_mult(ct, pt, p.delta)
    assert _rel_err(ckks.decrypt(p, keys, out), z1 * z2) < TWO ** -12


@pytest.mark.parametrize("r", [1, -1, 3])
def test_rotate_vs_plaintext(setup12, r):
    p, keys = setup12
    rng = np.random.default_rng(6)
    z = _vec(p, rng)
    ct = ckks.encrypt(p, keys, z, rng=rng)
    out = ckks.rotate(p, keys, ct, r)
    assert _rel_err(ckks.decrypt(p, keys, out), np.roll(z, r)) < TWO ** -12


def test_conjugate_vs_plaintext(setup12):
    p, keys = setup12
    rng = np.random.default_rng(7)
    z = _vec(p, rng)
    ct = ckks.encrypt(p, keys, z, rng=rng)
    out = ckks.conjugate(p, keys, ct)
    assert _rel_err(ckks.decrypt(p, keys, out), np.conj(z)) < TWO ** -12


def test_hrotate_matches_plaintext_and_rotate_bitwise(setup12):
    p, keys = setup12
    rng = np.random.default_rng(8)
    z = _vec(p, rng)
    ct = ckks.encrypt(p, keys, z, rng=rng)
    rots = (1, -1, 3, -3)
    outs = ckks.hrotate(p, keys, ct, rots)
    for r, out in zip(rots, outs):
        assert _rel_err(ckks.decrypt(p, keys, out), np.roll(z, r)) < TWO ** -12
        single = ckks.rotate(p, keys, ct, r)
        assert np.array_equal(out.a.data, single.a.data)
        assert np.array_equal(out.b.data, single.b.data)


def test_new_mult_agrees_with_mult_100(setup12):
    p, keys = setup12
    rng = np.random.default_rng(10)
    worst = 0.0
    for _ in range(100):
        z1, z2 = _vec(p, rng), _vec(p, rng)
        ct1 = ckks.encrypt(p, keys, z1, rng=rng)
        ct2 = ckks.encrypt(p, keys, z2, rng=rng)
        d1 = ckks.decrypt(p, keys, ckks.mult(p, keys, ct1, ct2))
        d2 = ckks.decrypt(p, keys, ckks.new_mult(p, keys, ct1, ct2))
        worst = max(worst, float(np.max(np.abs(d1 - d2))))
    assert worst < TWO ** -25, worst


def test_compressed_key_bit_identical_to_expanded(setup12):
    p, keys = setup12
    rng = np.random.default_rng(11)
    z = _vec(p, rng)
    ct = ckks.encrypt(p, keys, z, rng=rng)
    assert keys.rot[1].compressed
    full = ckks.KeySet(p, keys.s, keys.relin,
                       rot={1: keys.rot[1].expand()}, conj=keys.conj)
    assert not full.rot[1].compressed
    a_cmp = ckks.rotate(p, keys, ct, 1)
    a_full = ckks.rotate(p, full, ct, 1)
    assert np.array_equal(a_cmp.a.data, a_full.a.data)
    assert np.array_equal(a_cmp.b.data, a_full.b.data)


def test_compressed_key_is_smaller(setup12):
    p, keys = setup12
    key = keys.rot[1]
    assert key.byte_size() < key.expand().byte_size() * 0.51


def test_pt_matvec_vs_dense(setup12):
    p, keys = setup12
    rng = np.random.default_rng(12)
    z = _vec(p, rng)
    ct = ckks.encrypt(p, keys, z, rng=rng)
    raised = p.raised_moduli(ct.limbs)
    d0 = rng.normal(size=p.slots)
    d1 = rng.normal(size=p.slots)
    d3 = rng.normal(size=p.slots)
    diags = {o: ckks.encode(p, d, p.delta, raised)
             for o, d in ((0, d0), (1, d1), (3, d3))}
    out = ckks.pt_matvec(p, keys, ct, diags, p.delta)
    want = d0 * z + d1 * np.roll(z, -1) + d3 * np.roll(z, -3)
    assert out.limbs == ct.limbs - 1
    assert _rel_err(ckks.decrypt(p, keys, out), want) < TWO ** -12


def test_rescale_tracks_scale(setup12):
    p, keys = setup12
    rng = np.random.default_rng(13)
    z = _vec(p, rng)
    ct = ckks.encrypt(p, keys, z, rng=rng)
    q_last = ct.a.moduli[-1]
    hi = ckks.const_mult_int(ct, q_last)     # message scale becomes delta*q_last
    hi.delta = ct.delta * q_last
    out = ckks.rescale(hi)
    assert out.limbs == ct.limbs - 1
    assert abs(out.delta / p.delta - 1) < 1e-12
    assert np.max(np.abs(ckks.decrypt(p, keys, out) - z)) < TWO ** -18


def test_raise_modulus_overflow_poly_is_small(setup12):
    p, keys = setup12
    rng = np.random.default_rng(14)
    z = _vec(p, rng)
    ct = ckks.drop_limbs(ckks.encrypt(p, keys, z, rng=rng), 1)
    up = ckks.raise_modulus(p, ct, p.limbs)
    from ckkslab.rnspoly import RnsPoly
    mods = up.a.moduli
    s_cut = RnsPoly(mods, keys.s.data[:len(mods)], "eval")
    phase = up.b.add(up.a.mul(s_cut)).to_coeff()
    q0, q1 = mods[0], mods[1]
    big = q0 * q1
    lift = (phase.data[0].astype(object) * ((big // q0) * pow(big // q0, -1, q0))
            + phase.data[1].astype(object) * ((big // q1) * pow(big // q1, -1, q1))) % big
    centered = np.where(lift > big // 2, lift - big, lift)
    k = np.array([round(int(v) / q0) for v in centered], dtype=float)
    sigma = np.sqrt(2 * p.n_ring / 3 / 12)
    assert np.max(np.abs(k)) < 8 * sigma
    # and the sub-q0 residue is the message (scale delta), not junk
    m_resid = np.array([int(v) - round(int(v) / q0) * q0 for v in centered], dtype=float)
    assert np.max(np.abs(m_resid)) < q0 / 4


def test_serialize_roundtrips(setup12):
    p, keys = setup12
    rng = np.random.default_rng(15)
    z = _vec(p, rng)
    ct = ckks.encrypt(p, keys, z, rng=rng)
    ct2 = serialize.ciphertext_from_bytes(serialize.ciphertext_to_bytes(ct))
    assert np.array_equal(ct.a.data, ct2.a.data)
    assert np.array_equal(ct.b.data, ct2.b.data)
    assert ct.delta == ct2.delta
    pt = ckks.encode(p, z, p.delta, p.chain)
    pt2 = serialize.poly_from_bytes(serialize.poly_to_bytes(pt))
    assert pt.moduli == pt2.moduli and pt.rep == pt2.rep
    assert np.array_equal(pt.data, pt2.data)
    for key in (keys.relin, keys.rot[1]):
        k2 = serialize.switching_key_from_bytes(serialize.switching_key_to_bytes(key))
        assert np.array_equal(key.b, k2.b)
        assert (key.a is None) == (k2.a is None)
        if key.a is not None:
            assert np.array_equal(key.a, k2.a)
        assert key.seed == k2.seed
    # decrypting the round-tripped ciphertext still works
    assert np.max(np.abs(ckks.decrypt(p, keys, ct2) - z)) < TWO ** -20


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2 ** 31 - 1))
def test_encode_linear_property(seed):
    p = ckks.make_params(logn=10, limbs=3, dnum=1, delta_bits=40, seed=2)
    rng = np.random.default_rng(seed)
    z1 = rng.normal(size=p.slots) + 1j * rng.normal(size=p.slots)
    z2 = rng.normal(size=p.slots) + 1j * rng.normal(size=p.slots)
    pt1 = ckks.encode(p, z1, p.delta, p.chain)
    pt2 = ckks.encode(p, z2, p.delta, p.chain)
    both = ckks.decode(p, pt1.add(pt2), p.delta)
    assert np.max(np.abs(both - (z1 + z2))) < TWO ** -18
