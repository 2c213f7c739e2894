"""Diagnose PE3 best-case residual structure."""

import sys

sys.path.insert(0, 'src')

from ckkslab.costmodel.conventions import OpCount, PaperOps, RnsShape

OPS = PaperOps(17)
B = RnsShape(alpha=12, k_sp=13)
C = RnsShape(alpha=20, k_sp=21)

COEFF = 131072
PE3_BASE = (22364.8, 9298.7)
PE3_BC = 2.2569e9 / COEFF
TOL = 0.71


def head_ops(sh, ell):
    t = sh.raised(ell) - sh.alpha
    return OPS.decomp(ell) + sh.beta(ell) * OPS.modup(sh.alpha, t)


def kskip_ops(sh, ell, regen=False):
    o = OPS.kskip(sh.beta(ell), sh.raised(ell))
    if regen:
        o = o + OpCount(0, sh.beta(ell) * sh.raised(ell))
    return o


def mdpair_ops(sh, ell, merged):
    if merged:
        return 2 * OPS.moddown(ell - 1, sh.k_sp + 1)
    return 2 * OPS.moddown(ell, sh.k_sp)


def mult_core(sh, ell, sq, merged, regen=False):
    o = OpCount(3 * ell, ell) if sq else OPS.tensor(ell)
    o = o + head_ops(sh, ell) + kskip_ops(sh, ell, regen)
    o = o + mdpair_ops(sh, ell, merged)
    if not merged:
        o = o + 2 * OPS.rescale(ell)
    return o


base = mult_core(B, 29, True, True) + mult_core(B, 28, False, True)
rb = PE3_BASE[0] - base.total
rbm = PE3_BASE[1] - base.mults
print(f'baseline residual: ops {rb:.1f}  m {rbm:.1f}  a {rb-rbm:.1f}')
print(f'  = enc(2x28: m476/a952) + adds 2*28x+28y = {rb-rbm-952:.1f}')
print()
print('best-case totals by level (target {:.1f}):'.format(PE3_BC))
for regen in (False, True):
    for l1 in range(10, 32):
        bc = (mult_core(C, l1, True, True, regen)
              + mult_core(C, l1 - 1, False, True, regen))
        resid = PE3_BC - bc.total
        lv = l1 - 1
        # canonical tail: enc round trip (2 transforms) at lv + adds
        # with baseline counts x,y: 2*28x+28y = 698.1 -> try x=0..14
        opts = []
        for x in range(0, 15):
            y = (698.1 - 56 * x) / 28
            if y < -0.1:
                break
            yr = round(y)
            if abs(y - yr) <= 0.026:
                tail = 51 * lv + 2 * lv * x + lv * yr
                opts.append((x, yr, resid - tail))
        best = min(opts, key=lambda t: abs(t[2])) if opts else None
        print(f'  regen={regen} l1={l1}: core resid {resid:9.1f}  '
              f'best tail {best}')
