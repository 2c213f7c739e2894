"""CKKS core: parameters, encoding, keys, and the homomorphic API.

Ciphertexts are pairs (a, b) in evaluation representation with
dec(ct) = b + a*s. All key switching uses the hybrid digit
decomposition: the a-polynomial is split into dnum digits, each digit is
extended to the raised basis (chain + special primes), and the inner
product with the switching key is divided back down by the special-prime
product P.

Conventions that matter for interop with the rest of the package:
rotate(ct, 1) decodes to a right-rotation of the slot vector and is the
automorphism X -> X^(5^-1 mod 2N); conjugation is X -> X^(2N-1).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from . import rnspoly, zq
from .rnspoly import RnsPoly
from .zq import U64, vec_addmod, vec_mulmod, vec_submod

SIGMA = 3.2  # encryption noise width


# ---------------------------------------------------------------- params

@dataclass(frozen=True)
class CkksParams:
    logn: int
    chain: tuple[int, ...]       # q0 then rescale primes; len = top limb count
    special: tuple[int, ...]     # raised-basis primes, len = alpha + 1
    dnum: int
    delta: float
    seed: int

    @property
    def n_ring(self) -> int:
        return 1 << self.logn

    @property
    def slots(self) -> int:
        return self.n_ring // 2

    @property
    def limbs(self) -> int:
        return len(self.chain)

    @property
    def alpha(self) -> int:
        return -(-self.limbs // self.dnum)

    def digit_spans(self, limbs: int) -> list[tuple[int, int]]:
        """[start, end) limb ranges of each key-switch digit at a level."""
        spans = []
        a = self.alpha
        for j in range(0, limbs, a):
            spans.append((j, min(j + a, limbs)))
        return spans

    def raised_moduli(self, limbs: int) -> tuple[int, ...]:
        return self.chain[:limbs] + self.special


_PARAMS_CACHE: dict[tuple, CkksParams] = {}


def make_params(logn: int, limbs: int, dnum: int, delta_bits: int = 50,
                q0_bits: int = 59, special_bits: int = 59, seed: int = 1) -> CkksParams:
    key = (logn, limbs, dnum, delta_bits, q0_bits, special_bits, seed)
    if key not in _PARAMS_CACHE:
        alpha = -(-limbs // dnum)
        chain, special = zq.gen_prime_chain(
            1 << logn, q0_bits, delta_bits, limbs - 1, special_bits, alpha + 1)
        _PARAMS_CACHE[key] = CkksParams(
            logn, tuple(chain), tuple(special), dnum, float(2 ** delta_bits), seed)
    return _PARAMS_CACHE[key]


# -------------------------------------------------------------- encoding

def _embed_order(params: CkksParams) -> np.ndarray:
    """Position of root 5^j in the length-2N FFT index space."""
    two_n = 2 * params.n_ring
    idx = np.empty(params.slots, dtype=np.int64)
    e = 1
    for j in range(params.slots):
        idx[j] = e
        e = e * 5 % two_n
    return idx


_EMBED_CACHE: dict[int, np.ndarray] = {}


def _embed_idx(params: CkksParams) -> np.ndarray:
    if params.logn not in _EMBED_CACHE:
        _EMBED_CACHE[params.logn] = _embed_order(params)
    return _EMBED_CACHE[params.logn]


def encode_coeffs(params: CkksParams, z: np.ndarray) -> np.ndarray:
    """Real coefficient vector whose slot decoding equals z (unscaled)."""
    n = params.n_ring
    w = np.zeros(2 * n, dtype=complex)
    idx = _embed_idx(params)
    w[idx] = z
    w[(2 * n - idx) % (2 * n)] = np.conj(z)
    m = np.fft.fft(w)[:n] / n
    assert np.max(np.abs(m.imag)) < 1e-6 * max(1.0, float(np.max(np.abs(m.real))))
    return m.real


def decode_coeffs(params: CkksParams, m: np.ndarray) -> np.ndarray:
    n = params.n_ring
    pad = np.zeros(2 * n, dtype=complex)
    pad[:n] = m
    vals = np.fft.ifft(pad) * 2 * n
    return vals[_embed_idx(params)]


def _reduce_int_coeffs(coeffs: np.ndarray, moduli: tuple[int, ...]) -> np.ndarray:
    """Centered integer coefficients into each RNS limb."""
    out = np.empty((len(moduli), len(coeffs)), dtype=U64)
    neg = coeffs < 0
    absc = np.abs(coeffs).astype(np.uint64)
    for i, q in enumerate(moduli):
        row = absc % U64(q)
        out[i] = np.where(neg, (U64(q) - row) % U64(q), row)
    return out


def encode(params: CkksParams, z: np.ndarray, delta: float,
           moduli: tuple[int, ...]) -> RnsPoly:
    """Plaintext polynomial in eval rep at a given scale and basis."""
    z = np.asarray(z, dtype=complex)
    if z.size != params.slots:
        full = np.zeros(params.slots, dtype=complex)
        full[:z.size] = z
        z = full
    m = np.round(encode_coeffs(params, z) * delta)
    assert float(np.max(np.abs(m))) < 2 ** 62, "message too large for the chain"
    return RnsPoly(moduli, _reduce_int_coeffs(m.astype(np.int64), moduli), "coeff").to_eval()


def decode(params: CkksParams, pt: RnsPoly, delta: float) -> np.ndarray:
    coeff = pt.to_coeff()
    # lift through the double-width CRT on the first two limbs; messages
    # decoded in tests stay far below q0*q1 so two limbs suffice
    mods = coeff.moduli[:2] if len(coeff.moduli) >= 2 else coeff.moduli
    big_q = 1
    for q in mods:
        big_q *= q
    lifted = np.zeros(params.n_ring, dtype=object)
    for i, q in enumerate(mods):
        hat = big_q // q
        co = (int(hat) * int(pow(hat, -1, q))) % big_q
        lifted = (lifted + coeff.data[i].astype(object) * co) % big_q
    centered = np.where(lifted > big_q // 2, lifted - big_q, lifted)
    vals = centered.astype(float)
    return decode_coeffs(params, vals / delta)


# ------------------------------------------------------------------ keys

def _xof_uniform(seed: bytes, tag: bytes, q: int, n: int) -> np.ndarray:
    """n uniform values below q from shake256(seed || tag), via rejection."""
    bound = (1 << 64) // q * q
    out = np.empty(n, dtype=U64)
    have = 0
    length = 8 * (n + n // 8 + 16)
    offset = 0
    xof = hashlib.shake_256(seed + tag)
    while have < n:
        raw = np.frombuffer(xof.digest(offset + length)[offset:], dtype="<u8")
        offset += length
        keep = raw[raw < bound]
        take = min(n - have, keep.size)
        out[have:have + take] = keep[:take] % U64(q)
        have += take
        length = 8 * (n - have + 16)
    return out


@dataclass
class SwitchingKey:
    """Hybrid key-switch key: one (a, b) row pair per digit, full basis.

    When compressed, the a-rows are absent and regenerated limb-by-limb
    from the seed; expand() materializes them for the full-key path.
    """

    moduli: tuple[int, ...]      # chain + special, top level
    b: np.ndarray                # (dnum, len(moduli), n)
    seed: bytes | None = None    # set iff compressed
    a: np.ndarray | None = None  # set iff expanded

    def a_row(self, digit: int, limb: int, n: int) -> np.ndarray:
        if self.a is not None:
            return self.a[digit, limb]
        q = self.moduli[limb]
        return _xof_uniform(self.seed, b"ksk%d:%d" % (digit, limb), q, n)

    def expand(self) -> "SwitchingKey":
        if self.a is not None:
            return self
        dn, lm, n = self.b.shape
        a = np.empty_like(self.b)
        for j in range(dn):
            for i in range(lm):
                a[j, i] = self.a_row(j, i, n)
        return SwitchingKey(self.moduli, self.b, seed=None, a=a)

    @property
    def compressed(self) -> bool:
        return self.a is None

    def byte_size(self) -> int:
        sz = self.b.nbytes + (0 if self.seed is None else len(self.seed))
        if self.a is not None:
            sz += self.a.nbytes
        return sz


@dataclass
class KeySet:
    params: CkksParams
    s: RnsPoly                          # secret, eval rep, full basis
    relin: SwitchingKey
    rot: dict[int, SwitchingKey] = field(default_factory=dict)
    conj: SwitchingKey | None = None


def _gauss_poly(rng: np.random.Generator, moduli: tuple[int, ...], n: int) -> RnsPoly:
    e = np.round(rng.normal(0.0, SIGMA, size=n)).astype(np.int64)
    return RnsPoly(moduli, _reduce_int_coeffs(e, moduli), "coeff").to_eval()


def _uniform_poly(rng: np.random.Generator, moduli: tuple[int, ...], n: int) -> RnsPoly:
    data = np.stack([rng.integers(0, q, size=n, dtype=np.uint64) for q in moduli])
    return RnsPoly(moduli, data, "eval")


def _gadget_scalars(params: CkksParams, digit: int) -> list[int]:
    """g_j = (Q/D_j) * [(Q/D_j)^-1]_{D_j} mod each full-basis prime.

    The per-prime identity (1 on D_j's primes, 0 elsewhere within the
    chain) holds at every level, so one key serves all levels.
    """
    spans = params.digit_spans(params.limbs)
    lo, hi = spans[digit]
    big_q = 1
    for q in params.chain:
        big_q *= q
    d_j = 1
    for q in params.chain[lo:hi]:
        d_j *= q
    quo = big_q // d_j
    g = quo * pow(quo, -1, d_j)
    big_p = 1
    for p in params.special:
        big_p *= p
    full = params.chain + params.special
    return [g * big_p % q for q in full]


def _make_switching_key(params: CkksParams, rng: np.random.Generator, s: RnsPoly,
                        source: RnsPoly, seed: bytes, compressed: bool) -> SwitchingKey:
    """Key rows b_j = -a_j s + e_j + P g_j source over the full basis."""
    full = params.chain + params.special
    n = params.n_ring
    dn = len(params.digit_spans(params.limbs))
    b = np.empty((dn, len(full), n), dtype=U64)
    for j in range(dn):
        gj = _gadget_scalars(params, j)
        e = _gauss_poly(rng, full, n)
        for i, q in enumerate(full):
            a_row = _xof_uniform(seed, b"ksk%d:%d" % (j, i), q, n)
            row = vec_submod(e.data[i], vec_mulmod(a_row, s.data[i], q), q)
            b[j, i] = vec_addmod(
                row, vec_mulmod(source.data[i], U64(gj[i]), q), q)
    key = SwitchingKey(tuple(full), b, seed=seed)
    return key if compressed else key.expand()


def keygen(params: CkksParams, rotations: tuple[int, ...] = (),
           need_conj: bool = False) -> KeySet:
    """Secret plus relin/rotation/conjugation switching keys.

    Rotation and conjugation keys are kept PRNG-compressed (seed plus
    b-rows); the relinearization key is expanded since it is used by
    every multiplication.
    """
    rng = np.random.default_rng(params.seed)
    n = params.n_ring
    full = params.chain + params.special
    sec = np.asarray(rng.integers(-1, 2, size=n), dtype=np.int64)
    s = RnsPoly(full, _reduce_int_coeffs(sec, full), "coeff").to_eval()
    s2 = s.mul(s)
    seed_root = params.seed.to_bytes(8, "little")
    relin = _make_switching_key(
        params, rng, s, s2, b"relin" + seed_root, compressed=False)
    ks = KeySet(params, s, relin)
    two_n = 2 * n
    for r in rotations:
        t = pow(5, -r, two_n)
        ks.rot[r] = _make_switching_key(
            params, rng, s, s.automorph(t),
            b"rot%d" % (r % two_n) + seed_root, compressed=True)
    if need_conj:
        ks.conj = _make_switching_key(
            params, rng, s, s.automorph(two_n - 1),
            b"conj" + seed_root, compressed=True)
    return ks


# ------------------------------------------------------------ ciphertext

@dataclass
class Ciphertext:
    a: RnsPoly
    b: RnsPoly
    delta: float

    @property
    def limbs(self) -> int:
        return len(self.a.moduli)

    def copy(self) -> "Ciphertext":
        return Ciphertext(self.a.copy(), self.b.copy(), self.delta)


def encrypt(params: CkksParams, keys: KeySet, z: np.ndarray, delta: float | None = None,
            limbs: int | None = None, rng: np.random.Generator | None = None) -> Ciphertext:
    delta = params.delta if delta is None else delta
    limbs = params.limbs if limbs is None else limbs
    rng = np.random.default_rng(params.seed + 77) if rng is None else rng
    mods = params.chain[:limbs]
    n = params.n_ring
    pt = encode(params, z, delta, mods)
    a = _uniform_poly(rng, mods, n)
    e = _gauss_poly(rng, mods, n)
    s_cut = RnsPoly(mods, keys.s.data[:limbs], "eval")
    b = pt.add(e).sub(a.mul(s_cut))
    return Ciphertext(a, b, delta)


def decrypt(params: CkksParams, keys: KeySet, ct: Ciphertext) -> np.ndarray:
    mods = ct.a.moduli
    s_cut = RnsPoly(mods, keys.s.data[:len(mods)], "eval")
    return decode(params, ct.b.add(ct.a.mul(s_cut)), ct.delta)


# ---------------------------------------------------- level / rep helpers

def _ntt_rows(data: np.ndarray, moduli: tuple[int, ...], n: int, inverse: bool) -> np.ndarray:
    out = np.empty_like(data)
    for i, q in enumerate(moduli):
        ctx = rnspoly.get_ctx(q, n)
        out[i] = ctx.intt(data[i]) if inverse else ctx.ntt(data[i])
    return out


def drop_limbs(ct: Ciphertext, limbs: int) -> Ciphertext:
    """Restrict to the first `limbs` chain limbs (no rescaling)."""
    assert limbs <= ct.limbs
    mods = ct.a.moduli[:limbs]
    return Ciphertext(RnsPoly(mods, ct.a.data[:limbs].copy(), "eval"),
                      RnsPoly(mods, ct.b.data[:limbs].copy(), "eval"), ct.delta)


def _rescale_poly(x: RnsPoly) -> RnsPoly:
    """Drop the trailing limb of an eval-rep poly, dividing by its prime."""
    n = x.n
    mods = x.moduli
    keep = mods[:-1]
    q_last = mods[-1]
    last = rnspoly.get_ctx(q_last, n).intt(x.data[-1])
    tail = RnsPoly((q_last,), last[None, :], "coeff")
    conv = rnspoly.bc_convert_centered(tail, keep)
    conv.data = _ntt_rows(conv.data, keep, n, inverse=False)
    out = np.empty((len(keep), n), dtype=U64)
    for i, q in enumerate(keep):
        diff = vec_submod(x.data[i], conv.data[i], q)
        out[i] = zq.vec_mulmod_scalar(diff, zq.inv_mod(q_last % q, q), q)
    return RnsPoly(keep, out, "eval")


def rescale(ct: Ciphertext) -> Ciphertext:
    q_last = ct.a.moduli[-1]
    return Ciphertext(_rescale_poly(ct.a), _rescale_poly(ct.b), ct.delta / q_last)


def _moddown_poly(x: RnsPoly, keep: tuple[int, ...], drop_rows: np.ndarray,
                  drop_mods: tuple[int, ...]) -> RnsPoly:
    """Divide an eval-rep poly by prod(drop_mods); drop_rows is eval data.

    Uses the centered conversion: the plain one leaves a +-u*P slack that
    the division turns into integer-unit noise on the a-component, which
    decryption then multiplies by the secret.
    """
    n = x.n
    coeff = _ntt_rows(drop_rows, drop_mods, n, inverse=True)
    conv = rnspoly.bc_convert_centered(RnsPoly(drop_mods, coeff, "coeff"), keep)
    conv.data = _ntt_rows(conv.data, keep, n, inverse=False)
    big_p = 1
    for p in drop_mods:
        big_p *= p
    out = np.empty((len(keep), n), dtype=U64)
    for i, q in enumerate(keep):
        diff = vec_submod(x.data[i], conv.data[i], q)
        out[i] = zq.vec_mulmod_scalar(diff, zq.inv_mod(big_p % q, q), q)
    return RnsPoly(keep, out, "eval")


# ----------------------------------------------------------- key switching

def _decomp_modup(params: CkksParams, a: RnsPoly) -> list[RnsPoly]:
    """Digits of `a` extended to the raised basis, eval rep throughout."""
    limbs = len(a.moduli)
    raised = params.raised_moduli(limbs)
    n = a.n
    digits = []
    for lo, hi in params.digit_spans(limbs):
        own = a.moduli[lo:hi]
        coeff = _ntt_rows(a.data[lo:hi], own, n, inverse=True)
        others = tuple(m for m in raised if m not in own)
        conv = rnspoly.bc_convert(RnsPoly(own, coeff, "coeff"), others)
        conv.data = _ntt_rows(conv.data, others, n, inverse=False)
        data = np.empty((len(raised), n), dtype=U64)
        pos = {m: i for i, m in enumerate(others)}
        for i, m in enumerate(raised):
            if m in pos:
                data[i] = conv.data[pos[m]]
            else:
                data[i] = a.data[lo + own.index(m)]
        digits.append(RnsPoly(raised, data, "eval"))
    return digits


def _key_rows(params: CkksParams, key: SwitchingKey, limbs: int):
    """Indices of the raised-basis rows inside the full-basis key arrays."""
    top = params.limbs
    return list(range(limbs)) + list(range(top, top + len(params.special)))


def _kskip(params: CkksParams, digits: list[RnsPoly], key: SwitchingKey
           ) -> tuple[RnsPoly, RnsPoly]:
    """Inner product of digits with the key rows, on the raised basis."""
    raised = digits[0].moduli
    limbs = len(raised) - len(params.special)
    rows = _key_rows(params, key, limbs)
    n = digits[0].n
    u = np.zeros((len(raised), n), dtype=U64)
    v = np.zeros((len(raised), n), dtype=U64)
    for j, d in enumerate(digits):
        for i, q in enumerate(raised):
            krow = rows[i]
            a_row = key.a[j, krow] if key.a is not None else key.a_row(j, krow, n)
            u[i] = vec_addmod(u[i], vec_mulmod(d.data[i], a_row, q), q)
            v[i] = vec_addmod(v[i], vec_mulmod(d.data[i], key.b[j, krow], q), q)
    return RnsPoly(raised, u, "eval"), RnsPoly(raised, v, "eval")


def _moddown_pair(params: CkksParams, u: RnsPoly, v: RnsPoly, keep_limbs: int
                  ) -> tuple[RnsPoly, RnsPoly]:
    raised = u.moduli
    keep = raised[:keep_limbs]
    drop = raised[keep_limbs:]
    du = _moddown_poly(u, keep, u.data[keep_limbs:], drop)
    dv = _moddown_poly(v, keep, v.data[keep_limbs:], drop)
    return du, dv


def pmodup(params: CkksParams, x: RnsPoly) -> RnsPoly:
    """Multiply by [P]_Q and extend with zero special limbs (eval rep)."""
    mods = x.moduli
    raised = params.raised_moduli(len(mods))
    big_p = 1
    for p in params.special:
        big_p *= p
    n = x.n
    data = np.zeros((len(raised), n), dtype=U64)
    for i, q in enumerate(mods):
        data[i] = zq.vec_mulmod_scalar(x.data[i], big_p % q, q)
    return RnsPoly(raised, data, "eval")


# ------------------------------------------------------------- public API

def add(ct1: Ciphertext, ct2: Ciphertext) -> Ciphertext:
    # scales may disagree up to prime/2^50 drift; the mismatch acts as
    # relative noise ~2^-25 and stays far under op tolerances
    assert abs(ct1.delta / ct2.delta - 1) < 2e-6
    return Ciphertext(ct1.a.add(ct2.a), ct1.b.add(ct2.b), ct1.delta)


def sub(ct1: Ciphertext, ct2: Ciphertext) -> Ciphertext:
    assert abs(ct1.delta / ct2.delta - 1) < 2e-6
    return Ciphertext(ct1.a.sub(ct2.a), ct1.b.sub(ct2.b), ct1.delta)


def negate(ct: Ciphertext) -> Ciphertext:
    return Ciphertext(ct.a.neg(), ct.b.neg(), ct.delta)


def pt_add(ct: Ciphertext, pt: RnsPoly) -> Ciphertext:
    return Ciphertext(ct.a.copy(), ct.b.add(pt), ct.delta)


def pt_mult(ct: Ciphertext, pt: RnsPoly, pt_delta: float) -> Ciphertext:
    q_last = ct.a.moduli[-1]
    out = Ciphertext(_rescale_poly(ct.a.mul(pt)), _rescale_poly(ct.b.mul(pt)),
                     ct.delta * pt_delta / q_last)
    return out


def pt_combo(params: CkksParams, terms: list[tuple[Ciphertext, float | np.ndarray]],
             const: float = 0.0) -> Ciphertext:
    """sum_j c_j * ct_j + const with one shared rescale.

    Each coefficient -- a slot constant or a full slot vector -- is encoded
    at scale S / ct_j.delta for a single pre-rescale scale S, so ciphertexts
    with different delta histories combine scale-exactly; per-term encoding
    error is ~2^-51 absolute.
    """
    assert terms
    lim = min(ct.limbs for ct, _ in terms)
    mods = terms[0][0].a.moduli[:lim]
    s_pre = params.delta * terms[0][0].delta
    n = params.n_ring
    acc_a = RnsPoly(mods, np.zeros((lim, n), dtype=U64), "eval")
    acc_b = RnsPoly(mods, np.zeros((lim, n), dtype=U64), "eval")
    for ct, c in terms:
        ct = drop_limbs(ct, lim)
        if isinstance(c, np.ndarray):
            pt = encode(params, c, s_pre / ct.delta, mods)
        else:
            pt = encode_const(params, c, s_pre / ct.delta, mods)
        acc_a = acc_a.add(ct.a.mul(pt))
        acc_b = acc_b.add(ct.b.mul(pt))
    if const:
        acc_b = acc_b.add(encode_const(params, const, s_pre, mods))
    return Ciphertext(_rescale_poly(acc_a), _rescale_poly(acc_b),
                      s_pre / mods[-1])


def const_mult_int(ct: Ciphertext, c: int) -> Ciphertext:
    """Multiply by a small exact integer; no rescale, no scale change."""
    scal = [c % q for q in ct.a.moduli]
    return Ciphertext(ct.a.mul_scalars(scal), ct.b.mul_scalars(scal), ct.delta)


def encode_const(params: CkksParams, c: float, delta: float,
                 moduli: tuple[int, ...]) -> RnsPoly:
    """Slot-constant plaintext: a single degree-0 coefficient round(c*delta)."""
    v = round(c * delta)
    data = np.zeros((len(moduli), params.n_ring), dtype=U64)
    for i, q in enumerate(moduli):
        data[i, 0] = v % q
    return RnsPoly(moduli, data, "coeff").to_eval()


def const_add(params: CkksParams, ct: Ciphertext, c: float) -> Ciphertext:
    return pt_add(ct, encode_const(params, c, ct.delta, ct.a.moduli))


_MONO_CACHE: dict[tuple, RnsPoly] = {}


def monomial(params: CkksParams, k: int, moduli: tuple[int, ...]) -> RnsPoly:
    """X^k as an eval-rep plaintext (exact, unscaled)."""
    key = (params.logn, k, moduli)
    if key not in _MONO_CACHE:
        data = np.zeros((len(moduli), params.n_ring), dtype=U64)
        for i in range(len(moduli)):
            data[i, k] = 1
        _MONO_CACHE[key] = RnsPoly(moduli, data, "coeff").to_eval()
    return _MONO_CACHE[key]


def mult_monomial(params: CkksParams, ct: Ciphertext, k: int) -> Ciphertext:
    """Multiply by X^k: exact, depth-free (slot-wise unit-modulus factor)."""
    mono = monomial(params, k, ct.a.moduli)
    return Ciphertext(ct.a.mul(mono), ct.b.mul(mono), ct.delta)


def mult(params: CkksParams, keys: KeySet, ct1: Ciphertext, ct2: Ciphertext) -> Ciphertext:
    """Tensor, relinearize, then rescale (the classic pipeline)."""
    a3 = ct1.a.mul(ct2.a)
    b3 = ct1.a.mul(ct2.b).add(ct2.a.mul(ct1.b))
    c3 = ct1.b.mul(ct2.b)
    digits = _decomp_modup(params, a3)
    u_hat, v_hat = _kskip(params, digits, keys.relin)
    u, v = _moddown_pair(params, u_hat, v_hat, len(a3.moduli))
    out = Ciphertext(b3.add(u), c3.add(v), ct1.delta * ct2.delta)
    return rescale(out)


def new_mult(params: CkksParams, keys: KeySet, ct1: Ciphertext, ct2: Ciphertext,
             *, value_mult: int = 1, const: float = 0.0,
             addend: Ciphertext | None = None, addend_sign: int = 1) -> Ciphertext:
    """Multiplication with the relinearization ModDown merged into the
    rescale: one division by P*q_last instead of /P then /q_last.

    The pre-division domain sits at scale delta1*delta2, which makes exact
    fused variants nearly free:
      value_mult  integer factor on the product value,
      const       slot constant added at the product scale,
      addend      ciphertext folded in after an integer scale lift
                  round(delta1*delta2 / addend.delta) (relative rounding
                  ~2^-51; the lift cancels in the q_last division).
    Fusing keeps every addition scale-exact, so prime drift in the chain
    never leaks into slot values.
    """
    lim = min(ct1.limbs, ct2.limbs)
    ct1, ct2 = drop_limbs(ct1, lim), drop_limbs(ct2, lim)
    a3 = ct1.a.mul(ct2.a)
    b3 = ct1.a.mul(ct2.b).add(ct2.a.mul(ct1.b))
    c3 = ct1.b.mul(ct2.b)
    if value_mult != 1:
        scal = [value_mult % q for q in a3.moduli]
        a3, b3, c3 = a3.mul_scalars(scal), b3.mul_scalars(scal), c3.mul_scalars(scal)
    prod_delta = ct1.delta * ct2.delta
    if addend is not None:
        assert addend.limbs >= lim
        ad = drop_limbs(addend, lim)
        ratio = prod_delta / ad.delta
        assert ratio > 2.0 ** 40  # integer lift must dwarf its rounding
        lift = addend_sign * round(ratio)
        scal = [lift % q for q in ad.a.moduli]
        b3 = b3.add(ad.a.mul_scalars(scal))
        c3 = c3.add(ad.b.mul_scalars(scal))
    if const:
        c3 = c3.add(encode_const(params, const, prod_delta, c3.moduli))
    digits = _decomp_modup(params, a3)
    u_hat, v_hat = _kskip(params, digits, keys.relin)
    u_hat = u_hat.add(pmodup(params, b3))
    v_hat = v_hat.add(pmodup(params, c3))
    keep = lim - 1
    raised = u_hat.moduli
    # divide by P * q_last: dropped rows are the last chain limb plus specials
    drop_rows = np.concatenate([u_hat.data[keep:keep + 1], u_hat.data[lim:]])
    drop_mods = (raised[keep],) + raised[lim:]
    a_out = _moddown_poly(u_hat, raised[:keep], drop_rows, drop_mods)
    drop_rows = np.concatenate([v_hat.data[keep:keep + 1], v_hat.data[lim:]])
    b_out = _moddown_poly(v_hat, raised[:keep], drop_rows, drop_mods)
    q_last = raised[keep]
    return Ciphertext(a_out, b_out, prod_delta / q_last)


def hrotate(params: CkksParams, keys: KeySet, ct: Ciphertext,
            rotations: tuple[int, ...]) -> list[Ciphertext]:
    """Rotations sharing one hoisted decompose-and-raise of ct.a."""
    two_n = 2 * params.n_ring
    digits = _decomp_modup(params, ct.a)
    outs = []
    for r in rotations:
        t = pow(5, -r, two_n)
        rot_digits = [d.automorph(t) for d in digits]
        u_hat, v_hat = _kskip(params, rot_digits, keys.rot[r])
        u, v = _moddown_pair(params, u_hat, v_hat, ct.limbs)
        outs.append(Ciphertext(u, v.add(ct.b.automorph(t)), ct.delta))
    return outs


def rotate(params: CkksParams, keys: KeySet, ct: Ciphertext, r: int) -> Ciphertext:
    return hrotate(params, keys, ct, (r,))[0]


def conjugate(params: CkksParams, keys: KeySet, ct: Ciphertext) -> Ciphertext:
    two_n = 2 * params.n_ring
    t = two_n - 1
    a_rot, b_rot = ct.a.automorph(t), ct.b.automorph(t)
    digits = _decomp_modup(params, a_rot)
    u_hat, v_hat = _kskip(params, digits, keys.conj)
    u, v = _moddown_pair(params, u_hat, v_hat, ct.limbs)
    return Ciphertext(u, v.add(b_rot), ct.delta)


def pt_matvec(params: CkksParams, keys: KeySet, ct: Ciphertext,
              diags: dict[int, RnsPoly], diag_delta: float) -> Ciphertext:
    """Plaintext matrix times encrypted vector, double-hoisted.

    diags maps rotation offset -> diagonal pre-encoded on the raised
    basis at this level. All products accumulate on the raised basis;
    one ModDown pair divides by P*q_last at the end (the diagonal scale
    is consumed by the q_last division).
    """
    two_n = 2 * params.n_ring
    limbs = ct.limbs
    raised = params.raised_moduli(limbs)
    digits = _decomp_modup(params, ct.a)
    acc_u = RnsPoly.zeros(raised, params.n_ring, "eval")
    acc_v = RnsPoly.zeros(raised, params.n_ring, "eval")
    for off, m_hat in sorted(diags.items()):
        assert m_hat.moduli == raised
        if off % params.slots == 0:
            acc_u = acc_u.add(m_hat.mul(pmodup(params, ct.a)))
            acc_v = acc_v.add(m_hat.mul(pmodup(params, ct.b)))
            continue
        r = -off  # left rotation by `off` brings slot i+off to slot i
        t = pow(5, -r, two_n)
        rot_digits = [d.automorph(t) for d in digits]
        u_hat, v_hat = _kskip(params, rot_digits, keys.rot[r])
        b_hat = pmodup(params, ct.b.automorph(t))
        acc_u = acc_u.add(m_hat.mul(u_hat))
        acc_v = acc_v.add(m_hat.mul(v_hat.add(b_hat)))
    keep = limbs - 1
    drop_rows = np.concatenate([acc_u.data[keep:keep + 1], acc_u.data[limbs:]])
    drop_mods = (raised[keep],) + raised[limbs:]
    a_out = _moddown_poly(acc_u, raised[:keep], drop_rows, drop_mods)
    drop_rows = np.concatenate([acc_v.data[keep:keep + 1], acc_v.data[limbs:]])
    b_out = _moddown_poly(acc_v, raised[:keep], drop_rows, drop_mods)
    q_last = raised[keep]
    return Ciphertext(a_out, b_out, ct.delta * diag_delta / q_last)


def raise_modulus(params: CkksParams, ct: Ciphertext, limbs: int) -> Ciphertext:
    """Basis extension of both polynomials (the bootstrap entry).

    Extends with the centered lift, so the raised plaintext is
    m + k*q_in with k distributed like round((b + a*s)/q_in) -- the
    polynomial the sine evaluation later removes.
    """
    assert ct.limbs < limbs
    src = ct.a.moduli
    extra = params.chain[ct.limbs:limbs]
    n = params.n_ring

    def up(x: RnsPoly) -> RnsPoly:
        coeff = _ntt_rows(x.data, src, n, inverse=True)
        conv = rnspoly.bc_convert_centered(RnsPoly(src, coeff, "coeff"), extra)
        conv.data = _ntt_rows(conv.data, extra, n, inverse=False)
        return RnsPoly(src + extra, np.concatenate([x.data, conv.data]), "eval")

    return Ciphertext(up(ct.a), up(ct.b), ct.delta)
