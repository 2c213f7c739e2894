"""RNS polynomial layer: negacyclic NTT, automorphisms, basis conversion.

A polynomial lives in Z_q[X]/(X^n + 1) for each modulus in its basis,
stored as a (limbs, n) uint64 array. Representation is tracked
explicitly: "coeff" or "eval". Basis-management routines (conversion,
mod-up/down, rescale, digit decomposition) operate on coefficient
representation only; callers sequence the NTTs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import zq
from .zq import U64, vec_addmod, vec_submod, vec_mulmod, vec_mulmod_scalar

_CTX_CACHE: dict[tuple[int, int], "NttContext"] = {}
_AUTO_EVAL_CACHE: dict[tuple[int, int], np.ndarray] = {}
_AUTO_COEFF_CACHE: dict[tuple[int, int], tuple[np.ndarray, np.ndarray]] = {}


class NttContext:
    """Twiddle tables for one (modulus, ring degree) pair.

    Forward transform is decimation-in-time with bit-reversed twiddles
    (natural input, bit-reversed output); inverse is the matching
    Gentleman-Sande ladder. The 2n-th root powers are folded in, so the
    transform is negacyclic: pointwise products correspond to
    multiplication mod X^n + 1.
    """

    def __init__(self, q: int, n: int):
        self.q = q
        self.n = n
        psi = zq.primitive_root_2n(q, n)
        self.psi = psi
        logn = n.bit_length() - 1
        br = _bit_reverse_table(logn)
        pw = _powers(psi, n, q)
        ipw = _powers(zq.inv_mod(psi, q), n, q)
        self.tw = pw[br]     # tw[m+i] drives stage m of the forward pass
        self.itw = ipw[br]
        self.n_inv = U64(zq.inv_mod(n, q))
        self._exps: np.ndarray | None = None

    def ntt(self, a: np.ndarray) -> np.ndarray:
        a = a.copy()
        q, n = self.q, self.n
        t = n
        m = 1
        while m < n:
            t //= 2
            blk = a.reshape(m, 2 * t)
            s = self.tw[m:2 * m, None]
            u = blk[:, :t].copy()
            v = vec_mulmod(blk[:, t:], s, q)
            blk[:, :t] = vec_addmod(u, v, q)
            blk[:, t:] = vec_submod(u, v, q)
            m *= 2
        return a

    def intt(self, a: np.ndarray) -> np.ndarray:
        a = a.copy()
        q, n = self.q, self.n
        t = 1
        m = n
        while m > 1:
            h = m // 2
            blk = a.reshape(h, 2 * t)
            s = self.itw[h:2 * h, None]
            u = blk[:, :t].copy()
            v = blk[:, t:].copy()
            blk[:, :t] = vec_addmod(u, v, q)
            blk[:, t:] = vec_mulmod(vec_submod(u, v, q), s, q)
            t *= 2
            m = h
        return vec_mulmod(a, self.n_inv, q)

    def point_exponents(self) -> np.ndarray:
        """exps[i] = k such that eval slot i holds the value at psi^k.

        Derived empirically from NTT(X): slot i of the transform of the
        monomial X is exactly psi^{e_i}. Used to build automorphism
        permutations; the exponent pattern depends only on n, not on q.
        """
        if self._exps is None:
            mono = np.zeros(self.n, dtype=U64)
            mono[1] = 1
            pts = self.ntt(mono)
            dlog = {}
            acc = 1
            for k in range(2 * self.n):
                dlog[acc] = k
                acc = acc * self.psi % self.q
            self._exps = np.array([dlog[int(v)] for v in pts], dtype=np.int64)
        return self._exps


def get_ctx(q: int, n: int) -> NttContext:
    key = (q, n)
    if key not in _CTX_CACHE:
        _CTX_CACHE[key] = NttContext(q, n)
    return _CTX_CACHE[key]


def _bit_reverse_table(bits: int) -> np.ndarray:
    n = 1 << bits
    t = np.zeros(n, dtype=np.int64)
    for i in range(n):
        t[i] = int(format(i, f"0{bits}b")[::-1], 2) if bits else 0
    return t


def _powers(base: int, count: int, q: int) -> np.ndarray:
    out = np.zeros(count, dtype=U64)
    acc = 1
    for i in range(count):
        out[i] = acc
        acc = acc * base % q
    return out


# ----------------------------------------------------------- automorphism

def automorph_eval_perm(n: int, t: int, ctx: NttContext) -> np.ndarray:
    """Slot permutation implementing x(X) -> x(X^t) in eval representation."""
    key = (n, t % (2 * n))
    if key not in _AUTO_EVAL_CACHE:
        exps = ctx.point_exponents()
        pos = {int(e): i for i, e in enumerate(exps)}
        perm = np.array([pos[int(e) * t % (2 * n)] for e in exps], dtype=np.int64)
        _AUTO_EVAL_CACHE[key] = perm
    return _AUTO_EVAL_CACHE[key]


def automorph_coeff_map(n: int, t: int) -> tuple[np.ndarray, np.ndarray]:
    """(index, sign) arrays: X^i maps to sign * X^{index} under X -> X^t."""
    key = (n, t % (2 * n))
    if key not in _AUTO_COEFF_CACHE:
        idx = np.zeros(n, dtype=np.int64)
        neg = np.zeros(n, dtype=bool)
        for i in range(n):
            k = i * t % (2 * n)
            idx[i] = k % n
            neg[i] = k >= n
        _AUTO_COEFF_CACHE[key] = (idx, neg)
    return _AUTO_COEFF_CACHE[key]


# ---------------------------------------------------------------- RnsPoly

@dataclass
class RnsPoly:
    """Polynomial over an RNS basis. data has shape (len(moduli), n)."""

    moduli: tuple[int, ...]
    data: np.ndarray
    rep: str  # "coeff" | "eval"

    @property
    def n(self) -> int:
        return self.data.shape[1]

    @classmethod
    def zeros(cls, moduli: tuple[int, ...], n: int, rep: str) -> "RnsPoly":
        return cls(moduli, np.zeros((len(moduli), n), dtype=U64), rep)

    def copy(self) -> "RnsPoly":
        return RnsPoly(self.moduli, self.data.copy(), self.rep)

    def _check(self, other: "RnsPoly") -> None:
        assert self.moduli == other.moduli and self.rep == other.rep

    def add(self, other: "RnsPoly") -> "RnsPoly":
        self._check(other)
        out = np.empty_like(self.data)
        for i, q in enumerate(self.moduli):
            out[i] = vec_addmod(self.data[i], other.data[i], q)
        return RnsPoly(self.moduli, out, self.rep)

    def sub(self, other: "RnsPoly") -> "RnsPoly":
        self._check(other)
        out = np.empty_like(self.data)
        for i, q in enumerate(self.moduli):
            out[i] = vec_submod(self.data[i], other.data[i], q)
        return RnsPoly(self.moduli, out, self.rep)

    def neg(self) -> "RnsPoly":
        out = np.empty_like(self.data)
        for i, q in enumerate(self.moduli):
            out[i] = zq.vec_negmod(self.data[i], q)
        return RnsPoly(self.moduli, out, self.rep)

    def mul(self, other: "RnsPoly") -> "RnsPoly":
        """Pointwise product; both operands must be in eval rep."""
        self._check(other)
        assert self.rep == "eval"
        out = np.empty_like(self.data)
        for i, q in enumerate(self.moduli):
            out[i] = vec_mulmod(self.data[i], other.data[i], q)
        return RnsPoly(self.moduli, out, self.rep)

    def mul_scalars(self, scalars: list[int]) -> "RnsPoly":
        """Multiply limb i by scalars[i] (already reduced mod moduli[i])."""
        out = np.empty_like(self.data)
        for i, q in enumerate(self.moduli):
            out[i] = vec_mulmod_scalar(self.data[i], scalars[i], q)
        return RnsPoly(self.moduli, out, self.rep)

    def to_eval(self) -> "RnsPoly":
        if self.rep == "eval":
            return self.copy()
        out = np.empty_like(self.data)
        for i, q in enumerate(self.moduli):
            out[i] = get_ctx(q, self.n).ntt(self.data[i])
        return RnsPoly(self.moduli, out, "eval")

    def to_coeff(self) -> "RnsPoly":
        if self.rep == "coeff":
            return self.copy()
        out = np.empty_like(self.data)
        for i, q in enumerate(self.moduli):
            out[i] = get_ctx(q, self.n).intt(self.data[i])
        return RnsPoly(self.moduli, out, "coeff")

    def automorph(self, t: int) -> "RnsPoly":
        out = np.empty_like(self.data)
        if self.rep == "eval":
            perm = automorph_eval_perm(self.n, t, get_ctx(self.moduli[0], self.n))
            out[:] = self.data[:, perm]
        else:
            idx, neg = automorph_coeff_map(self.n, t)
            for i, q in enumerate(self.moduli):
                row = np.zeros(self.n, dtype=U64)
                vals = np.where(neg, zq.vec_negmod(self.data[i], q), self.data[i])
                row[idx] = vals
                out[i] = row
        return RnsPoly(self.moduli, out, self.rep)


# --------------------------------------------------------- basis plumbing

_BC_CACHE: dict[tuple, tuple[list[int], np.ndarray]] = {}


def _bc_tables(src: tuple[int, ...], dst: tuple[int, ...]):
    """(ihat, table): ihat[i] = (Q/q_i)^-1 mod q_i, table[i,j] = Q/q_i mod p_j."""
    key = (src, dst)
    if key not in _BC_CACHE:
        big_q = 1
        for q in src:
            big_q *= q
        ihat = [zq.inv_mod(big_q // q % q, q) for q in src]
        table = np.zeros((len(src), len(dst)), dtype=U64)
        for i, q in enumerate(src):
            for j, p in enumerate(dst):
                table[i, j] = big_q // q % p
        _BC_CACHE[key] = (ihat, table)
    return _BC_CACHE[key]


def bc_convert(x: RnsPoly, dst: tuple[int, ...]) -> RnsPoly:
    """Fast approximate basis conversion (coeff rep).

    Returns y with y = x + u*Q exactly for some small integer poly u
    (|u| < len(src)); the caller's algorithm absorbs the u*Q slack.
    """
    assert x.rep == "coeff"
    src = x.moduli
    ihat, table = _bc_tables(src, dst)
    v = np.empty_like(x.data)
    for i, q in enumerate(src):
        v[i] = vec_mulmod_scalar(x.data[i], ihat[i], q)
    # accumulate reduced products in raw uint64; safe while s * max_p < 2^64
    assert len(src) * max(dst) < (1 << 64)
    out = np.zeros((len(dst), x.n), dtype=U64)
    for j, p in enumerate(dst):
        acc = np.zeros(x.n, dtype=U64)
        for i in range(len(src)):
            acc = zq.lazy_accumulate(acc, vec_mulmod_scalar(v[i], int(table[i, j]), p))
        out[j] = zq.vec_reduce(acc, p)
    return RnsPoly(dst, out, "coeff")


_BC_CENTER_CACHE: dict[tuple, tuple[np.ndarray, list[int]]] = {}


def _bc_center_tables(src: tuple[int, ...], dst: tuple[int, ...]):
    """(w, qmod): w[i] = 1/q_i as float64, qmod[j] = Q mod p_j."""
    key = (src, dst)
    if key not in _BC_CENTER_CACHE:
        big_q = 1
        for q in src:
            big_q *= q
        w = np.array([1.0 / q for q in src], dtype=np.float64)
        qmod = [big_q % p for p in dst]
        _BC_CENTER_CACHE[key] = (w, qmod)
    return _BC_CENTER_CACHE[key]


def bc_convert_centered(x: RnsPoly, dst: tuple[int, ...]) -> RnsPoly:
    """Basis conversion returning the centered representative (coeff rep).

    Same congruences as bc_convert, but the u*Q wrap term is recovered with
    a float64 estimate of sum(v_i/q_i) and subtracted, so the result equals
    [x]_Q centered in [-Q/2, Q/2).  The estimate carries ~len(src)*2^-53 of
    absolute error, so a coefficient can round to a neighbouring multiple
    of Q only when it sits within ~Q*2^-47 of a boundary; callers treat
    that as part of the (tiny) conversion noise.
    """
    assert x.rep == "coeff"
    src = x.moduli
    ihat, table = _bc_tables(src, dst)
    w, qmod = _bc_center_tables(src, dst)
    v = np.empty_like(x.data)
    est = np.zeros(x.n, dtype=np.float64)
    for i, q in enumerate(src):
        v[i] = vec_mulmod_scalar(x.data[i], ihat[i], q)
        est += v[i] * w[i]
    k = np.round(est).astype(U64)
    assert len(src) * max(dst) < (1 << 64)
    out = np.zeros((len(dst), x.n), dtype=U64)
    for j, p in enumerate(dst):
        acc = np.zeros(x.n, dtype=U64)
        for i in range(len(src)):
            acc = zq.lazy_accumulate(acc, vec_mulmod_scalar(v[i], int(table[i, j]), p))
        red = zq.vec_reduce(acc, p)
        out[j] = vec_submod(red, vec_mulmod_scalar(k, qmod[j], p), p)
    return RnsPoly(dst, out, "coeff")


def modup_coeff(x: RnsPoly, extra: tuple[int, ...]) -> RnsPoly:
    """Extend the basis of x by `extra` moduli (coeff rep, fast BC)."""
    conv = bc_convert(x, extra)
    data = np.concatenate([x.data, conv.data], axis=0)
    return RnsPoly(x.moduli + extra, data, "coeff")


def moddown_coeff(x: RnsPoly, keep: int) -> RnsPoly:
    """Divide by the product of the trailing limbs, keeping `keep` limbs.

    y = round(x / P), computed limb-wise as (x - BC([x]_P)) * P^-1 mod q_j
    with the centered conversion, so the division rounds to nearest.
    """
    assert x.rep == "coeff"
    drop = x.moduli[keep:]
    base = x.moduli[:keep]
    tail = RnsPoly(drop, x.data[keep:], "coeff")
    conv = bc_convert_centered(tail, base)
    big_p = 1
    for p in drop:
        big_p *= p
    out = np.empty((keep, x.n), dtype=U64)
    for j, q in enumerate(base):
        diff = vec_submod(x.data[j], conv.data[j], q)
        out[j] = vec_mulmod_scalar(diff, zq.inv_mod(big_p % q, q), q)
    return RnsPoly(base, out, "coeff")


def rescale_coeff(x: RnsPoly) -> RnsPoly:
    """Drop the last limb and divide by its modulus (coeff rep)."""
    return moddown_coeff(x, len(x.moduli) - 1)


def negacyclic_mul(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    """Product in Z_q[X]/(X^n+1) via NTT; single-limb convenience."""
    ctx = get_ctx(q, len(a))
    return ctx.intt(vec_mulmod(ctx.ntt(a), ctx.ntt(b), q))
