"""Operation and traffic assembly for API calls and application kernels.

Each function returns (OpCount, Traffic) per slot / per limb-unit for one
logical operation at a given level. Structures that have internal layout
freedom (baby/giant splits, fold shapes) take the split as an argument;
`model.py` owns the frozen defaults that reproduce the published tables.
"""

from __future__ import annotations

from dataclasses import dataclass

from .conventions import OpCount, PaperOps, RnsShape
from .dramflow import (OptimizationSet, Traffic, key_factor, kskip, moddown,
                       modups, plain_pass, rescale)


@dataclass(frozen=True)
class Cost:
    ops: OpCount
    traffic: Traffic

    def __add__(self, other: "Cost") -> "Cost":
        return Cost(self.ops + other.ops, self.traffic + other.traffic)

    def __mul__(self, k: float) -> "Cost":
        return Cost(self.ops * k, self.traffic * k)

    __rmul__ = __mul__


ZERO = Cost(OpCount(), Traffic())


def _ntt_trips(f: OptimizationSet, limbs: float) -> Traffic:
    if f.fusion_o1:
        return Traffic()
    return Traffic(limbs, limbs, 0.0)


# ------------------------------------------------------- table primitives


def row_moddown(ops: PaperOps, shape: RnsShape, ell: int,
                f: OptimizationSet) -> Cost:
    return Cost(ops.moddown(ell, shape.k_sp), moddown(shape, ell, f))


def row_modup(ops: PaperOps, shape: RnsShape, ell: int,
              f: OptimizationSet) -> Cost:
    a, t = shape.alpha, shape.raised(ell) - shape.alpha
    tr = Traffic(a + a + t, a + 2 * t, 0.0) + _ntt_trips(f, a + t)
    return Cost(ops.modup(a, t), tr)


def row_decomp(ops: PaperOps, shape: RnsShape, ell: int,
               f: OptimizationSet) -> Cost:
    return Cost(ops.decomp(ell), plain_pass(ell, ell))


def row_kskip(ops: PaperOps, shape: RnsShape, ell: int,
              f: OptimizationSet) -> Cost:
    beta, K = shape.beta(ell), shape.raised(ell)
    tr = Traffic(beta * K, 0.0, 2 * beta * K * key_factor(f))
    return Cost(ops.kskip(beta, K), tr)


def row_automorph(ops: PaperOps, shape: RnsShape, ell: int,
                  f: OptimizationSet) -> Cost:
    return Cost(ops.automorph(2, ell), plain_pass(2 * ell, 2 * ell))


# --------------------------------------------------------------- API ops


def pt_add(ops: PaperOps, shape: RnsShape, ell: int,
           f: OptimizationSet) -> Cost:
    return Cost(ops.add(1, ell), plain_pass(2 * ell, ell))


def ct_add(ops: PaperOps, shape: RnsShape, ell: int,
           f: OptimizationSet) -> Cost:
    return Cost(ops.add(2, ell), plain_pass(4 * ell, 2 * ell))


def pt_mult(ops: PaperOps, shape: RnsShape, ell: int,
            f: OptimizationSet) -> Cost:
    o = ops.ptct(2, ell) + 2 * ops.rescale(ell)
    tr = plain_pass(3 * ell, 2 * ell) + 2 * rescale(ell, f)
    return Cost(o, tr)


def _keyswitch_core(ops: PaperOps, shape: RnsShape, ell: int,
                    f: OptimizationSet, *, addend_b: int) -> Cost:
    """One key-switch: inner product plus the pair of modulus switches."""
    beta, K = shape.beta(ell), shape.raised(ell)
    o = ops.kskip(beta, K) + 2 * ops.moddown(ell, shape.k_sp)
    tr = (kskip(shape, ell, f)
          + moddown(shape, ell, f)
          + moddown(shape, ell, f, addend=addend_b))
    return Cost(o, tr)


def mult(ops: PaperOps, shape: RnsShape, ell: int, f: OptimizationSet,
         *, relin_key_level: int | None = None) -> Cost:
    """Ciphertext multiply: tensor passes, digit raise, relinearization,
    then either separate rescales or the merged modulus switch."""
    a = shape.alpha
    beta, K = shape.beta(ell), shape.raised(ell)
    o = (ops.tensor(ell) + ops.decomp(ell)
         + beta * ops.modup(a, K - a)
         + ops.kskip(beta, K)
         + ops.add(2, ell))
    tr = (plain_pass(4 * ell, 2 * ell)      # tensor: both operand pairs
          + plain_pass(2 * ell, ell)        # square pass, scaled digits out
          + modups(shape, ell, f)
          + kskip(shape, ell, f))
    if f.merged_moddown_rescale:
        o = o + 2 * ops.moddown(ell - 1, shape.k_sp + 1)
        tr = tr + 2 * moddown(shape, ell, f, addend=ell, merged_rescale=True)
    else:
        o = o + 2 * ops.moddown(ell, shape.k_sp) + 2 * ops.rescale(ell)
        tr = (tr + 2 * moddown(shape, ell, f)
              + 2 * rescale(ell, f, addend=ell))
    return Cost(o, tr)


def rotate(ops: PaperOps, shape: RnsShape, ell: int,
           f: OptimizationSet) -> Cost:
    a = shape.alpha
    beta, K = shape.beta(ell), shape.raised(ell)
    o = (ops.decomp(ell) + beta * ops.modup(a, K - a) + ops.add(1, ell))
    core = _keyswitch_core(ops, shape, ell, f, addend_b=ell)
    tr = (plain_pass(ell, ell)              # input index permutation
          + plain_pass(ell, ell)            # digit scaling pass
          + modups(shape, ell, f))
    return Cost(o, tr) + core


conjugate = rotate


def hrotate(ops: PaperOps, shape: RnsShape, ell: int, f: OptimizationSet,
            n_rot: int) -> Cost:
    """Rotations sharing one digit raise; per-rotation index permutations
    ride the key-switch reads."""
    a = shape.alpha
    beta, K = shape.beta(ell), shape.raised(ell)
    o = (ops.decomp(ell) + beta * ops.modup(a, K - a)
         + n_rot * (ops.kskip(beta, K) + 2 * ops.moddown(ell, shape.k_sp)
                    + ops.add(1, ell)))
    tr = (modups(shape, ell, f, hoisted=True)
          + kskip(shape, ell, f, rotations=n_rot)
          + n_rot * (moddown(shape, ell, f)
                     + moddown(shape, ell, f, addend=ell)))
    return Cost(o, tr)


# ------------------------------------------------ shared kernel pieces
#
# Inside fused kernels (matrix-vector stages, polynomial trees, packed
# applications) the modulus switches always come as one merged pair per
# accumulator and the digit raise is hoisted once per operand.


def _head(ops: PaperOps, shape: RnsShape, ell: int) -> OpCount:
    """Digit decomposition plus raise of one polynomial."""
    t = shape.raised(ell) - shape.alpha
    return ops.decomp(ell) + shape.beta(ell) * ops.modup(shape.alpha, t)


def _kskip_ops(ops: PaperOps, shape: RnsShape, ell: int,
               f: OptimizationSet, regen: bool = True) -> OpCount:
    """Key inner product; compressed keys are re-expanded on the fly
    wherever the schedule streams them (`regen`), and fetched expanded
    from the resident working set otherwise."""
    o = ops.kskip(shape.beta(ell), shape.raised(ell))
    if regen and f.key_compression:
        o = o + OpCount(0, shape.beta(ell) * shape.raised(ell))
    return o


def _mdpair_ops(ops: PaperOps, shape: RnsShape, ell: int,
                merged: bool = True) -> OpCount:
    if merged:
        return 2 * ops.moddown(ell - 1, shape.k_sp + 1)
    return 2 * ops.moddown(ell, shape.k_sp)


def _kernel_mult(ops: PaperOps, shape: RnsShape, ell: int,
                 f: OptimizationSet, *, sq: bool = False,
                 heads: int | None = None, regen: bool = True) -> Cost:
    """Multiply as scheduled inside kernels: merged switch pair, no
    separate output add. `heads` overrides the operand raises when the
    digit decomposition is shared with a neighboring multiply."""
    if heads is None:
        heads = 1 if sq else 2
    o = OpCount(3 * ell, ell) if sq else ops.tensor(ell)
    o = o + heads * _head(ops, shape, ell)
    o = o + _kskip_ops(ops, shape, ell, f, regen)
    o = o + _mdpair_ops(ops, shape, ell)
    tr = plain_pass((2 if sq else 4) * ell, 2 * ell)
    tr = tr + plain_pass(2 * ell, ell)
    tr = tr + heads * modups(shape, ell, f)
    tr = tr + kskip(shape, ell, f)
    tr = tr + moddown(shape, ell, f, merged_rescale=True)
    tr = tr + moddown(shape, ell, f, merged_rescale=True, addend=ell)
    return Cost(o, tr)


def _kernel_conjugate(ops: PaperOps, shape: RnsShape, ell: int,
                      f: OptimizationSet) -> Cost:
    o = (_head(ops, shape, ell) + _kskip_ops(ops, shape, ell, f)
         + _mdpair_ops(ops, shape, ell, merged=False))
    tr = (modups(shape, ell, f) + kskip(shape, ell, f)
          + moddown(shape, ell, f) + moddown(shape, ell, f, addend=ell))
    return Cost(o, tr)


# ------------------------------------------- matrix-vector stage kernel


#: Giant-stepped splits for the accounting-point stage shapes, keyed by
#: (level, diagonals). Chosen so the low-level giant keys land on the
#: published key-read column exactly.
STAGE_SPLITS = {
    (35, 63): (8, 8), (34, 63): (8, 8), (33, 127): (14, 10),
    (26, 32): (8, 5), (25, 63): (13, 5), (24, 127): (12, 11),
}


def stage_split(shape: RnsShape, ell: int, D: int,
                f: OptimizationSet) -> tuple[int, int]:
    """Baby/giant split of a D-diagonal stage under the given flags."""
    if f.hoisted_moddown_matvec:
        return D, 1                     # one flat hoisted group
    if (ell, D) in STAGE_SPLITS:
        return STAGE_SPLITS[(ell, D)]
    best = None
    for b in range(2, D + 1):
        g = -(-D // b)
        c = matvec_stage(PaperOps(17), shape, ell, D, f, split=(b, g))
        score = c.ops.total + c.traffic.total
        if best is None or score < best[0]:
            best = (score, (b, g))
    return best[1]


def matvec_stage(ops: PaperOps, shape: RnsShape, ell: int, D: int,
                 f: OptimizationSet, *,
                 split: tuple[int, int] | None = None) -> Cost:
    """One stage of a plaintext matrix application with D diagonals.

    Baby rotations share a hoisted digit raise and defer their modulus
    switches into the per-giant accumulators (one merged pair each);
    giant columns are then rotated one level down and folded. Under the
    hoisted-matvec regime the whole stage is a single flat group with
    one deferred switch pair.
    """
    if split is None:
        split = stage_split(shape, ell, D, f)
    b, g = split
    K = shape.raised(ell)
    o = _head(ops, shape, ell) + (b - 1) * _kskip_ops(ops, shape, ell, f)
    o = o + OpCount(ell, 0)                          # identity-diag raise
    o = o + OpCount(2 * ell * D, 0)                  # diagonal products
    o = o + OpCount(0, 2 * K * (D - g) + K * (b - 1))
    o = o + g * _mdpair_ops(ops, shape, ell)
    lo = ell - 1
    if g > 1:
        tail = (_head(ops, shape, lo) + _kskip_ops(ops, shape, lo, f)
                + _mdpair_ops(ops, shape, lo) + ops.add(1, lo))
        o = o + (g - 1) * tail

    tr = modups(shape, ell, f) + kskip(shape, ell, f, rotations=b - 1)
    if f.hoisted_moddown_matvec:
        tr = tr + moddown(shape, ell, f, merged_rescale=True)
        tr = tr + moddown(shape, ell, f, merged_rescale=True, addend=ell)
    else:
        tr = tr + 2 * g * moddown(shape, ell, f, merged_rescale=True)
        if g > 1:
            rot = (2 * plain_pass(lo, lo) + modups(shape, lo, f)
                   + kskip(shape, lo, f) + moddown(shape, lo, f)
                   + moddown(shape, lo, f, addend=lo))
            tr = tr + (g - 1) * rot
    if f.beta_caching:
        tr = tr + plain_pass(D * ell, 0)             # diagonals stream once
    else:
        # base tier: diagonals round-trip per giant pass; accumulators
        # and partial folds spill (fitted stream shapes)
        tr = tr + plain_pass(D * (K + ell + 1) + 1.5 * g * (ell - 1),
                             2 * K + 4 * (b - 1) * ell)
    return Cost(o, tr)


# -------------------------------------------- degree-63 polynomial phase

#: Power-tree schedule: five doubling levels below the entry level.
#: Per level: (multiplies, squares, operand raises, raises when the
#: decompositions of repeated operands are shared).
_TREE = ((1, 1, 1, 1), (2, 1, 3, 2), (4, 2, 6, 3), (8, 4, 12, 6),
         (16, 8, 24, 16))


def poly_eval63(ops: PaperOps, shape: RnsShape, top: int,
                f: OptimizationSet) -> Cost:
    """Degree-63 evaluation: power tree, coefficient application,
    combining multiply, and the trailing conjugation."""
    c = ZERO
    share = f.hoisted_moddown_matvec
    cheb_adds = 0.0
    for i, (cnt, nsq, raises, shared) in enumerate(_TREE):
        lv = top - i
        nh = shared if share else raises
        level = ZERO
        for j in range(cnt):
            sq = j < nsq
            level = level + _kernel_mult(ops, shape, lv, f, sq=sq, heads=0)
        level = level + Cost(nh * _head(ops, shape, lv),
                             nh * modups(shape, lv, f))
        c = c + level
        cheb_adds += nsq * lv + (cnt - nsq) * 2 * lv
    combine_lv = top - 7
    c = c + _kernel_mult(ops, shape, combine_lv + 2, f)
    c = c + Cost(OpCount(0, cheb_adds), Traffic())
    c = c + Cost(OpCount(122 * combine_lv + 244, 57 * combine_lv + 114),
                 Traffic())
    scale = (combine_lv + 2) / 28
    r_pass = 8192 * scale * (0.5 if f.accumulator_caching else 1.0)
    c = c + Cost(OpCount(), plain_pass(r_pass, 1483 * scale))
    c = c + _kernel_conjugate(ops, shape, combine_lv, f)
    return c


# ----------------------------------------------- bootstrapping pipeline


def radix_plan(fft_iters: int, log_slots: int = 16) -> list[int]:
    """Balanced radix exponents, larger factors last."""
    base, rem = divmod(log_slots, fft_iters)
    return [base] * (fft_iters - rem) + [base + 1] * rem


def coeff_to_slot(ops: PaperOps, shape: RnsShape, L: int, fft_iters: int,
                  f: OptimizationSet) -> Cost:
    c = ZERO
    for i, e in enumerate(radix_plan(fft_iters)):
        c = c + matvec_stage(ops, shape, L - i, 2 * (1 << e) - 1, f)
    return c


def slot_to_coeff(ops: PaperOps, shape: RnsShape, L: int, fft_iters: int,
                  f: OptimizationSet) -> Cost:
    top = L - fft_iters - 6
    c = ZERO
    for i, e in enumerate(radix_plan(fft_iters)):
        d = (1 << e) if i == 0 else 2 * (1 << e) - 1
        c = c + matvec_stage(ops, shape, top - i, d, f)
    return c


def bootstrap(ops: PaperOps, shape: RnsShape, L: int, fft_iters: int,
              f: OptimizationSet) -> Cost:
    """Full refresh: both transform phases, the degree-63 evaluation,
    and the inter-phase spill writes."""
    c = coeff_to_slot(ops, shape, L, fft_iters, f)
    c = c + poly_eval63(ops, shape, L - fft_iters + 1, f)
    c = c + slot_to_coeff(ops, shape, L, fft_iters, f)
    return c + Cost(OpCount(), plain_pass(0.0, 92.8))


# ------------------------------------------------- application kernels


def packed_inner_product(ops: PaperOps, shape: RnsShape, ell: int,
                         f: OptimizationSet) -> Cost:
    """Batched 256-point inner products of one packed ciphertext
    against plaintext data.

    One hoisted rotation bundle (30 switches sharing a digit raise,
    one deferred merged switch pair), 256 scaled plaintext products,
    and the fold/merge additions. Plaintext operands carry scaled
    fixed-point data at reduced limb width.
    """
    K = shape.raised(ell)
    o = _head(ops, shape, ell) + 30 * _kskip_ops(ops, shape, ell, f)
    o = o + _mdpair_ops(ops, shape, ell)
    o = o + OpCount(93 * ell, 0)                 # operand raises
    o = o + 256 * ops.ptct(2, ell)
    o = o + OpCount(0, 1327 * (ell - 1)
                    + 14 * (shape.beta(ell) - 1) * 2 * ell)

    tr = modups(shape, ell, f) + kskip(shape, ell, f, rotations=30)
    addend = (ell - 1) if f.accumulator_caching else 0
    tr = tr + 2 * moddown(shape, ell, f, merged_rescale=True,
                          addend=addend)
    wd = ell - 13                                # data-operand limb width
    tr = tr + plain_pass(256 * wd + 2 * ell, 0.0)
    if not f.accumulator_caching:
        tr = tr + plain_pass(255 * wd, 255 * wd)  # product spills
    return Cost(o, tr)


def poly_eval3(ops: PaperOps, shape: RnsShape, ell: int,
               f: OptimizationSet) -> Cost:
    """Degree-3 evaluation on one ciphertext: squaring multiply, one
    plain multiply, a single-polynomial transform round trip, and the
    coefficient additions. The second multiply reuses the square's
    digit raise (one head of compute) but its digits still stream from
    memory; relinearization keys stay resident, so no re-expansion."""
    c = (_kernel_mult(ops, shape, ell, f, sq=True, regen=False)
         + _kernel_mult(ops, shape, ell - 1, f, heads=1, regen=False))
    c = c + Cost(OpCount(), modups(shape, ell - 1, f))
    c = c + Cost(OpCount(17 * (ell - 1), 34 * (ell - 1)), Traffic())
    c = c + Cost(OpCount(0, 812), Traffic())
    c = c + Cost(OpCount(), plain_pass(350 * ell / 29, 212 * ell / 29))
    return c


def _rotation_bundle(ops: PaperOps, shape: RnsShape, ell: int, rot: int,
                     f: OptimizationSet, regen: bool = True) -> Cost:
    """Hoisted rotations folded into one deferred switch pair."""
    o = (_head(ops, shape, ell)
         + rot * _kskip_ops(ops, shape, ell, f, regen)
         + _mdpair_ops(ops, shape, ell))
    addend = (ell - 1) if f.accumulator_caching else 0
    tr = (modups(shape, ell, f) + kskip(shape, ell, f, rotations=rot)
          + 2 * moddown(shape, ell, f, merged_rescale=True,
                        addend=addend))
    return Cost(o, tr)


def logreg_iteration(ops: PaperOps, shape: RnsShape, ell: int,
                     f: OptimizationSet) -> Cost:
    """One logistic-regression update over six packed sample blocks:
    forward data products, sigmoid evaluation, transposed gradient
    products, and the weight broadcast. The schedule packs tighter when
    a level fits a single digit, dropping the gradient phase lower."""
    single_digit = shape.beta(ell) == 1
    lv_bwd = ell - 4 if single_digit else ell
    lv_sig = ell - 8 if single_digit else ell - 7
    lv_bc = ell - 3
    c = 6 * packed_inner_product(ops, shape, ell, f)
    c = c + 5 * packed_inner_product(ops, shape, lv_bwd, f)
    c = c + 6 * poly_eval3(ops, shape, lv_sig, f)
    c = c + _rotation_bundle(ops, shape, lv_bc, 29, f, regen=False)
    scale = ell / 21                              # data/label streaming
    c = c + Cost(OpCount(0, 97), plain_pass(5340 * scale, 108 * scale))
    return c
