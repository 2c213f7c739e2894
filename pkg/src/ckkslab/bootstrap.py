"""Bootstrapping: modulus raising, homomorphic DFT, and sine evaluation.

The slot<->coefficient conversions factor the n x n decoding matrix
V[j,c] = zeta^(5^j * c) (zeta a primitive 4n-th root) into sparse
radix stages. Stage u (split order, radices r_1..r_t) acts on blocks of
B_u = n/(r_1..r_{u-1}) slots with stride S_u = B_u/r_u; it carries
2*r_u - 1 nonzero diagonals, except the u=1 stage whose offsets wrap
mod n and collapse to r_1. The digit-reversal permutation between the
coefficient order and the stage order is never materialized: the
pointwise sine evaluation between the two conversions is order-blind,
so coeff->slot emits permuted slots and slot->coeff accepts them.

Sine pipeline: conjugation splits the packed real/imag halves, a
degree-63 Chebyshev approximation of cos(2*pi*B'*w) is evaluated by a
baby-step/giant-step tree, and `doublings` double-angle steps stretch
it back to the full argument; the constant quarter-turn shift baked in
before evaluation turns the final cosine into the sine that removes
the q0-multiple overflow polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev as C

from . import ckks
from .ckks import Ciphertext, CkksParams, KeySet
from .rnspoly import RnsPoly

# ------------------------------------------------------------ stage math


def stage_structure(n: int, radices: tuple[int, ...]) -> list[tuple[int, int, int]]:
    """(radix, stride, block) per stage in split order."""
    out = []
    b = n
    for r in radices:
        assert b % r == 0
        out.append((r, b // r, b))
        b //= r
    assert b == 1, "radices must multiply to the slot count"
    return out


def digit_reversal(n: int, radices: tuple[int, ...]) -> np.ndarray:
    """pi[j] = coefficient held by slot j after the staged transform.

    Write j in mixed radix along the split order, digit d_u carrying
    weight n/(r_1*...*r_u); the staged transform moves that digit to
    weight r_1*...*r_{u-1} (digits swap ends, each keeping its own base).
    """
    pi = np.zeros(n, dtype=np.int64)
    for j in range(n):
        stride, weight, acc = n, 1, 0
        for r in radices:
            stride //= r
            acc += ((j // stride) % r) * weight
            weight *= r
        pi[j] = acc
    return pi


def _pow5(count: int, modulus: int) -> np.ndarray:
    out = np.empty(count, dtype=np.int64)
    e = 1
    for i in range(count):
        out[i] = e
        e = e * 5 % modulus
    return out


def stage_diagonals(n: int, radices: tuple[int, ...], u: int,
                    inverse: bool) -> dict[int, np.ndarray]:
    """Nonzero diagonals of stage u (0-based split order) as complex vectors.

    Forward stages compose (last split applied first) to the decoding
    matrix times the digit-reversal; inverse stages are their exact
    per-block matrix inverses.
    """
    r, s, b = stage_structure(n, radices)[u]
    wrap = b == n
    four_b = 4 * b
    pow5 = _pow5(b, four_b)
    idx = np.arange(n)
    loc = idx % b
    m_of = loc % s
    blockpos = loc // s

    def root(expo: np.ndarray) -> np.ndarray:
        return np.exp(2j * np.pi * (expo % four_b) / four_b)

    deltas = range(r) if wrap else range(-(r - 1), r)
    diags: dict[int, np.ndarray] = {}
    if not inverse:
        # out[m + S h] = sum_e zeta^(5^(m+Sh) e) in[m + S e]; offset S(e-h)
        h = blockpos
        for delta in deltas:
            e = (h + delta) % r if wrap else h + delta
            valid = (e >= 0) & (e < r)
            if not np.any(valid):
                continue
            off = (s * delta) % n
            d = np.where(valid, root(pow5[loc] * np.clip(e, 0, r - 1)), 0.0)
            diags[off] = d
        return diags

    # inverse: per-m block matrices F[m][h,e] = zeta^(5^(m+Sh) e), inverted
    mm = np.arange(s)
    hh = np.arange(r)
    ee = np.arange(r)
    expo = pow5[(mm[:, None, None] + s * hh[None, :, None])] * ee[None, None, :]
    fmat = np.exp(2j * np.pi * (expo % four_b) / four_b)
    gmat = np.linalg.inv(fmat)          # (s, r, r): G[m][e, h]
    e_of = blockpos
    for delta in deltas:
        h = (e_of + delta) % r if wrap else e_of + delta
        valid = (h >= 0) & (h < r)
        if not np.any(valid):
            continue
        off = (s * delta) % n
        vals = gmat[m_of, e_of, np.clip(h, 0, r - 1)]
        diags[off] = np.where(valid, vals, 0.0)
    return diags


def stage_diag_counts(radices: tuple[int, ...], inverse: bool) -> list[int]:
    """Diagonal counts in execution order (coeff->slot when inverse)."""
    t = len(radices)
    counts = [radices[0]] + [2 * radices[u] - 1 for u in range(1, t)]
    # split order u=1..t; coeff->slot executes u ascending, slot->coeff descending
    return counts if inverse else counts[::-1]


def apply_stage_plain(diags: dict[int, np.ndarray], x: np.ndarray) -> np.ndarray:
    """Reference slot-space application of one stage."""
    n = x.size
    out = np.zeros(n, dtype=complex)
    for off, d in diags.items():
        out += d * np.roll(x, -off)
    return out


# ------------------------------------------------------------ sine pieces


def cheb_cos_coeffs(bprime: float, degree: int) -> np.ndarray:
    """Chebyshev series of cos(2*pi*bprime*w) on [-1, 1]."""
    grid = np.cos(np.pi * (np.arange(4 * degree) + 0.5) / (4 * degree))
    vals = np.cos(2 * np.pi * bprime * grid)
    coeffs = C.chebfit(grid, vals, degree)
    err = float(np.max(np.abs(C.chebval(grid, coeffs) - vals)))
    assert err < 2.0 ** -40, err
    return coeffs


class _ChebEvaluator:
    """Baby-step/giant-step Chebyshev evaluation over ciphertexts.

    Every addition is fused into a pre-rescale domain (new_mult's addend /
    const arguments, pt_combo's shared rescale), keeping all combinations
    scale-exact; plain add() of separately rescaled nodes would leak the
    chain's prime drift into the values, which the doubling passes then
    amplify fourfold each.
    """

    def __init__(self, params: CkksParams, keys: KeySet, ct_w: Ciphertext,
                 degree: int):
        self.params, self.keys = params, keys
        self.t: dict[int, Ciphertext] = {1: ct_w}
        for k in (2, 4, 8, 16, 32):
            if k <= degree:
                self.t[k] = self._double(self.t[k // 2])
        for k in (3, 5, 6, 7):
            if k <= min(degree, 7):
                a, b = (2, 1) if k == 3 else (4, k - 4)
                # T_{a+b} = 2 T_a T_b - T_{|a-b|}
                self.t[k] = ckks.new_mult(params, keys, self.t[a], self.t[b],
                                          value_mult=2,
                                          addend=self.t[abs(2 * a - k)],
                                          addend_sign=-1)

    def _double(self, ct: Ciphertext) -> Ciphertext:
        return ckks.new_mult(self.params, self.keys, ct, ct,
                             value_mult=2, const=-1.0)

    def run(self, coeffs: np.ndarray) -> Ciphertext:
        return self._eval(np.asarray(coeffs, dtype=float))

    def _eval(self, coeffs: np.ndarray) -> Ciphertext:
        deg = len(coeffs) - 1
        if deg <= 7:
            terms = [(self.t[j], float(coeffs[j])) for j in range(1, deg + 1)
                     if abs(coeffs[j]) > 1e-300]
            return ckks.pt_combo(self.params, terms, float(coeffs[0]))
        giant = 8
        while giant * 2 <= deg:
            giant *= 2
        tg = np.zeros(giant + 1)
        tg[giant] = 1.0
        quo, rem = C.chebdiv(coeffs, tg)
        q_ct = self._eval(quo)
        r_ct = self._eval(rem)
        return ckks.new_mult(self.params, self.keys, q_ct, self.t[giant],
                             addend=r_ct, addend_sign=1)


# ------------------------------------------------------------------ plan


@dataclass
class MatvecStage:
    diags: dict[int, RnsPoly]
    diag_delta: float
    entry_limbs: int


@dataclass
class BootstrapPlan:
    params: CkksParams
    radices: tuple[int, ...]
    doublings: int
    k_bound: int
    degree: int
    cheb: np.ndarray
    bprime: float
    const_shift: float
    cts: list[MatvecStage]
    stc: list[MatvecStage]
    input_limbs: int
    output_limbs: int
    rotations: tuple[int, ...]


def _encode_stage(params: CkksParams, diags: dict[int, np.ndarray],
                  entry_limbs: int, delta: float) -> MatvecStage:
    raised = params.raised_moduli(entry_limbs)
    enc = {off: ckks.encode(params, d, delta, raised) for off, d in diags.items()}
    return MatvecStage(enc, delta, entry_limbs)


def make_bootstrap_plan(params: CkksParams, radices: tuple[int, ...],
                        doublings: int = 5, k_bound: int = 160,
                        degree: int = 63, input_limbs: int = 1) -> BootstrapPlan:
    n = params.slots
    t = len(radices)
    top = params.limbs
    q0 = params.chain[0]
    delta = params.delta
    # +1: the baby-step coefficient multiply spends a limb of its own
    pe_depth = (degree + 1).bit_length() - 1 + 1 + doublings
    pe_out = top - t - pe_depth
    out_limbs = pe_out - t
    assert out_limbs > input_limbs, "chain too short for this plan"

    bprime = (k_bound + 1) / 2.0 ** doublings
    fold_cts = delta / (2.0 * q0 * 2.0 ** doublings * bprime)
    fold_stc = q0 / (2.0 * np.pi * delta)
    c_cts = fold_cts ** (1.0 / t)
    c_stc = fold_stc ** (1.0 / t)

    rotations: set[int] = set()
    cts_stages, stc_stages = [], []
    for i, u in enumerate(range(t)):          # coeff->slot: split order ascending
        diags = stage_diagonals(n, radices, u, inverse=True)
        diags = {o: d * c_cts for o, d in diags.items()}
        cts_stages.append(_encode_stage(params, diags, top - i, delta))
        rotations |= {-o for o in diags if o % n != 0}
    stc_top = pe_out
    for i, u in enumerate(range(t - 1, -1, -1)):   # slot->coeff: descending
        diags = stage_diagonals(n, radices, u, inverse=False)
        diags = {o: d * c_stc for o, d in diags.items()}
        stc_stages.append(_encode_stage(params, diags, stc_top - i, delta))
        rotations |= {-o for o in diags if o % n != 0}

    return BootstrapPlan(
        params=params, radices=tuple(radices), doublings=doublings,
        k_bound=k_bound, degree=degree,
        cheb=cheb_cos_coeffs(bprime, degree), bprime=bprime,
        const_shift=-1.0 / (4.0 * 2.0 ** doublings * bprime),
        cts=cts_stages, stc=stc_stages,
        input_limbs=input_limbs, output_limbs=out_limbs,
        rotations=tuple(sorted(rotations)))


# ---------------------------------------------------------------- driver


def _sine_eval(params: CkksParams, keys: KeySet, plan: BootstrapPlan,
               ct: Ciphertext) -> Ciphertext:
    ct_w = ckks.const_add(params, ct, plan.const_shift)
    ev = _ChebEvaluator(params, keys, ct_w, plan.degree)
    out = ev.run(plan.cheb)
    for _ in range(plan.doublings):
        out = ev._double(out)
    return out


def bootstrap(params: CkksParams, keys: KeySet, plan: BootstrapPlan,
              ct: Ciphertext) -> Ciphertext:
    """Refresh a ciphertext at plan.input_limbs up to plan.output_limbs."""
    assert ct.limbs >= plan.input_limbs
    half = params.n_ring // 2
    # The fold constants assume the message sits at exactly params.delta.
    # A drifted scale couples to the q0-multiple overflow term (the cosine
    # argument gains pi*I*eps, amplified ~G*sqrt(n) by slot->coeff), so
    # reinterpret the input at the nominal scale instead; that only shifts
    # the payload by eps relative.
    eps = ct.delta / params.delta - 1
    assert abs(eps) < 1e-4, eps
    ct = Ciphertext(ct.a, ct.b, params.delta)
    ct = ckks.drop_limbs(ct, plan.input_limbs)
    ct = ckks.raise_modulus(params, ct, params.limbs)

    for stage in plan.cts:
        assert ct.limbs == stage.entry_limbs, (ct.limbs, stage.entry_limbs)
        ct = ckks.pt_matvec(params, keys, ct, stage.diags, stage.diag_delta)

    cj = ckks.conjugate(params, keys, ct)
    lo = ckks.add(ct, cj)
    hi = ckks.negate(ckks.mult_monomial(params, ckks.sub(ct, cj), half))

    lo = _sine_eval(params, keys, plan, lo)
    hi = _sine_eval(params, keys, plan, hi)
    out = ckks.add(lo, ckks.mult_monomial(params, hi, half))

    for stage in plan.stc:
        assert out.limbs == stage.entry_limbs, (out.limbs, stage.entry_limbs)
        out = ckks.pt_matvec(params, keys, out, stage.diags, stage.diag_delta)

    assert out.limbs == plan.output_limbs
    return out
