"""Fit bootstrap FFT stage structure against StC/CtS rows.

Stage recipe hypothesis (from the exact StC key decomposition):
  - baby rotations hoisted at stage level ell (b-1 kskips)
  - products vs accumulators on the raised basis
  - per-giant merged ModDown+rescale to ell-1 (g pairs)
  - giant rotations as full rotates at ell-1 ((g-1) heads+kskips+MD pairs)
  - stage output at ell-1: one level per stage
"""

import itertools
import sys

sys.path.insert(0, 'src')

from ckkslab.costmodel.conventions import OpCount, PaperOps, RnsShape

OPS = PaperOps(17)
B = RnsShape(alpha=12, k_sp=13)

CTS = (446212.5, 196904.9, 44694.0, 24116.1, 13914.0)
STC = (253497.1, 110073.0, 28614.0, 15369.1, 8946.0)
TOL = 4.5


def head(sh, ell):
    t = sh.raised(ell) - sh.alpha
    return OPS.decomp(ell) + sh.beta(ell) * OPS.modup(sh.alpha, t)


def kskip(sh, ell):
    return OPS.kskip(sh.beta(ell), sh.raised(ell))


def mdpair(sh, ell, merged=False, carry_add=0):
    o = (2 * OPS.moddown(ell - 1, sh.k_sp + 1) if merged
         else 2 * OPS.moddown(ell, sh.k_sp))
    return o + OpCount(0, carry_add)


def stage_ops(sh, ell, D, b, g, *, pcoef, pwidth, pmods, vb_add, acc_w):
    """Returns OpCount for one stage; output at ell-1."""
    K = sh.raised(ell)
    o = head(sh, ell) + (b - 1) * kskip(sh, ell)
    o = o + OpCount((b - 1 + 2 * pmods) * ell, 0)        # pmodups
    width = K if pwidth == 'K' else ell
    o = o + OpCount(pcoef * 2 * width * D, 0)            # diag products
    o = o + OpCount(0, acc_w * (D - g))                  # accumulates
    o = o + OpCount(0, vb_add * (b - 1))                 # v_hat+b_hat
    # per-giant merged moddown-rescale to ell-1
    o = o + g * mdpair(sh, ell, merged=True)
    # giant rotations at ell-1, full, folded into the running sum
    lo = ell - 1
    o = o + (g - 1) * (head(sh, lo) + kskip(sh, lo)
                       + mdpair(sh, lo) + OPS.add(1, lo)   # carry add
                       + OPS.add(2, lo))                   # fold into acc
    return o


def run(tag, target, stages, levels):
    print(f'== {tag}: stages {stages} at levels {levels} ==')
    best = []
    for splits in itertools.product(
            *[[(b, g) for b in range(2, min(D + 1, 41))
               for g in range(-(-D // b), -(-D // b) + 2)]
              for D in stages]):
        # keys must match exactly
        kbytes = 0.0
        for (b, g), lv in zip(splits, levels):
            kbytes += (b - 1) * 2 * B.beta(lv) * B.raised(lv)
            kbytes += (g - 1) * 2 * B.beta(lv - 1) * B.raised(lv - 1)
        if abs(kbytes - target[4]) > 0.5:
            continue
        for pcoef, pwidth in ((1.0, 'K'), (1.5, 'K'), (1.0, 'l'),
                              (1.5, 'l')):
            for acc_w_mode in ('2K', '2l'):
                for vb in ('K', 'l', '0'):
                    o = OpCount()
                    for (b, g), lv, D in zip(splits, levels, stages):
                        K = B.raised(lv)
                        acc_w = 2 * K if acc_w_mode == '2K' else 2 * lv
                        vbv = {'K': K, 'l': lv, '0': 0}[vb]
                        o = o + stage_ops(
                            B, lv, D, b, g, pcoef=pcoef, pwidth=pwidth,
                            pmods=1, vb_add=vbv, acc_w=acc_w)
                    d_ops = o.total - target[0]
                    d_m = o.mults - target[1]
                    best.append((abs(d_ops) + abs(d_m), splits, pcoef,
                                 pwidth, acc_w_mode, vb, d_ops, d_m))
    best.sort(key=lambda x: x[0])
    for e in best[:14]:
        _, splits, pcoef, pwidth, accm, vb, d_ops, d_m = e
        print(f'  {splits} pc={pcoef}{pwidth} acc={accm} vb={vb} '
              f'd_ops={d_ops:+10.1f} d_m={d_m:+10.1f}')
    if not best:
        print('  no key-exact splits found')


if __name__ == '__main__':
    run('StC', STC, [32, 63, 127], [26, 25, 24])
    print()
    run('CtS', CTS, [63, 63, 127], [35, 34, 33])
