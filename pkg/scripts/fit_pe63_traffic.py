"""PE63 traffic residual vs Mult-row-exact flow composites."""

import sys

sys.path.insert(0, 'src')

from ckkslab.costmodel.conventions import RnsShape
from ckkslab.costmodel.dramflow import (BASELINE, Traffic, kskip as tk,
                                        moddown as tmd, modups as tmu,
                                        plain_pass)

B = RnsShape(alpha=12, k_sp=13)
F = BASELINE
TGT_R, TGT_W = 31510.0, 22644.0

TREE = [(33, 1, 1), (32, 2, 1), (31, 4, 2), (30, 8, 4), (29, 16, 8)]


def mult_t(ell, sq=False):
    # tensor pass1 + pass2, operand decompositions, key switch, merged MDs
    t = plain_pass((2 if sq else 4) * ell, 2 * ell)
    t = t + plain_pass(2 * ell, ell)
    t = t + (1 if sq else 2) * tmu(B, ell, F)
    t = t + tk(B, ell, F)
    t = t + tmd(B, ell, F, merged_rescale=True)
    t = t + tmd(B, ell, F, merged_rescale=True, addend=ell)
    return t


def main():
    t = Traffic()
    for lv, cnt, nsq in TREE:
        t = t + nsq * mult_t(lv, sq=True) + (cnt - nsq) * mult_t(lv)
    t = t + mult_t(28)                              # giant combine
    t = t + (tmu(B, 26, F) + tk(B, 26, F)           # conjugate
             + tmd(B, 26, F) + tmd(B, 26, F, addend=26))
    print(f'core: r {t.reads:9.1f} w {t.writes:9.1f} k {t.keys:9.1f}')
    print(f'resid: r {TGT_R - t.reads:+9.1f} w {TGT_W - t.writes:+9.1f}')
    # candidate per-unit features
    for name, v in (('2*28', 56), ('28', 28), ('61*2*28', 61 * 56),
                    ('63*2*28', 63 * 56), ('31*2*28', 31 * 56),
                    ('sub reads 892', 892), ('tree_l', sum(
                        lv * c for lv, c, _ in TREE))):
        print(f'  {name:14s} {v:7d}  r/x {(TGT_R - t.reads) / v:7.3f} '
              f'w/x {(TGT_W - t.writes) / v:7.3f}')


if __name__ == '__main__':
    main()
