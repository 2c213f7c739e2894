"""Best-case bootstrap composition check.

L=40, dnum=2 (alpha=20, 21 specials), fftIter=6, radices [4,4,8,8,8,8],
all optimizations on. Targets: 79.2401 GOP, 45.3341 GB.
"""

import sys

sys.path.insert(0, 'src')

from ckkslab.costmodel.conventions import OpCount, PaperOps, RnsShape
from ckkslab.costmodel.dramflow import (OptimizationSet, Traffic,
                                        kskip as tk, moddown as tmd,
                                        modups as tmu, plain_pass)

OPS = PaperOps(17)
BC = RnsShape(alpha=20, k_sp=21)
F = OptimizationSet.all_on()

TGT_OPS = 79.2401e9 / 131072          # per-coefficient
TGT_GB = 45.3341e9 / 1048576          # limb units


def head_ops(sh, ell):
    t = sh.raised(ell) - sh.alpha
    return OPS.decomp(ell) + sh.beta(ell) * OPS.modup(sh.alpha, t)


def kskip_ops(sh, ell, regen=True):
    o = OPS.kskip(sh.beta(ell), sh.raised(ell))
    if regen:
        o = o + OpCount(0, sh.beta(ell) * sh.raised(ell))
    return o


def mdpair_ops(sh, ell, merged=True):
    if merged:
        return 2 * OPS.moddown(ell - 1, sh.k_sp + 1)
    return 2 * OPS.moddown(ell, sh.k_sp)


def flat_stage(sh, ell, D):
    """Flat double-hoisted stage: all D diagonals in one group."""
    K = sh.raised(ell)
    o = head_ops(sh, ell) + (D - 1) * kskip_ops(sh, ell)
    o = o + OpCount(1 * ell, 0)                 # identity pmodup
    o = o + OpCount(2 * ell * D, 0)             # products
    o = o + OpCount(0, 2 * K * (D - 1) + K * (D - 1))
    o = o + mdpair_ops(sh, ell, merged=True)    # one deferred pair
    t = tmu(sh, ell, F)
    t = t + tk(sh, ell, F, rotations=D - 1)
    t = t + plain_pass(D * ell, 0)              # diagonal reads
    t = t + tmd(sh, ell, F, merged_rescale=True)
    t = t + tmd(sh, ell, F, merged_rescale=True, addend=ell)
    return o, t


def mult(sh, ell, sq=False):
    o = OpCount(3 * ell, ell) if sq else OpCount(4 * ell, 4 * ell)
    o = o + (1 if sq else 2) * head_ops(sh, ell)
    o = o + kskip_ops(sh, ell)
    o = o + mdpair_ops(sh, ell, merged=True)
    t = plain_pass((2 if sq else 4) * ell, 2 * ell)
    t = t + plain_pass(2 * ell, ell)
    t = t + (1 if sq else 2) * tmu(sh, ell, F)
    t = t + tk(sh, ell, F)
    t = t + tmd(sh, ell, F, merged_rescale=True)
    t = t + tmd(sh, ell, F, merged_rescale=True, addend=ell)
    return o, t


def conj(sh, ell):
    o = (head_ops(sh, ell) + kskip_ops(sh, ell)
         + 2 * OPS.moddown(ell, sh.k_sp))
    t = (tmu(sh, ell, F) + tk(sh, ell, F) + tmd(sh, ell, F)
         + tmd(sh, ell, F, addend=ell))
    return o, t


def main():
    o_tot, t_tot = OpCount(), Traffic()
    marks = []

    def acc(o, t):
        nonlocal o_tot, t_tot
        o_tot, t_tot = o_tot + o, t_tot + t

    def mark(name):
        marks.append((name, o_tot.total, t_tot.total))

    # CtS: 6 flat stages at 40..35
    for lv, D in zip(range(40, 34, -1), (7, 7, 15, 15, 15, 15)):
        acc(*flat_stage(BC, lv, D))
    mark('CtS')
    # PE63: tree at 35..31 then combine@30, conjugate@28
    for lv, cnt, nsq in ((35, 1, 1), (34, 2, 1), (33, 4, 2), (32, 8, 4),
                         (31, 16, 8)):
        for i in range(cnt):
            acc(*mult(BC, lv, sq=(i < nsq)))
    mark('tree')
    acc(*mult(BC, 30))
    # cheb subs/cadds + coefficient application (fitted baseline shape)
    acc(OpCount(0, sum(2 * lv * c for lv, c in
                       ((34, 1), (33, 2), (32, 4), (31, 8))
                       ) + (35 + 34 + 2 * 33 + 4 * 32 + 8 * 31)), Traffic())
    acc(OpCount(122 * 30, 57 * 30), plain_pass(8192 * 30 / 28, 1483 * 30 / 28))
    acc(*conj(BC, 28))
    mark('PE63 rest')
    # StC: 6 flat stages at 28..23
    for lv, D in zip(range(28, 22, -1), (4, 7, 15, 15, 15, 15)):
        acc(*flat_stage(BC, lv, D))
    mark('StC')
    prev_o = prev_t = 0.0
    for name, po, pt in marks:
        print(f'  {name:10s} ops {po - prev_o:10.1f}  limbs '
              f'{pt - prev_t:9.1f}')
        prev_o, prev_t = po, pt

    gop = o_tot.total * 131072 / 1e9
    gb = t_tot.total * 1048576 / 1e9
    print(f'ops/coeff {o_tot.total:12.1f}  target {TGT_OPS:12.1f}  '
          f'ratio {o_tot.total / TGT_OPS:6.4f}')
    print(f'limbs     {t_tot.total:12.1f}  target {TGT_GB:12.1f}  '
          f'ratio {t_tot.total / TGT_GB:6.4f}')
    print(f'GOP {gop:8.4f} (79.2401)   GB {gb:8.4f} (45.3341)   '
          f'AI {o_tot.total * 131072 / (t_tot.total * 1048576):5.3f} (1.75)')
    print(f'r {t_tot.reads:9.1f} w {t_tot.writes:9.1f} k {t_tot.keys:9.1f}')


if __name__ == '__main__':
    main()
