"""InnerProduct candidate: lazy-rotation fold structure, dual-table check.

Baseline (l=22, alpha=12): 1 head + 30 kskips + 2 merged MD pairs
+ 32 pmodups + 256 two-poly scalar products + accumulation adds.
Best case: same counts at l=20, alpha=20 (beta=1), regen adds, all flags.
"""

import itertools
import sys

sys.path.insert(0, 'src')

from ckkslab.costmodel.conventions import OpCount, PaperOps, RnsShape
from ckkslab.costmodel.dramflow import (BASELINE, OptimizationSet, Traffic,
                                        kskip as tk, moddown as tmd,
                                        modups as tmu, plain_pass)

OPS = PaperOps(17)
B = RnsShape(alpha=12, k_sp=13)
C = RnsShape(alpha=20, k_sp=21)
FB = BASELINE
FC = OptimizationSet.all_on()

IP_OPS_B, IP_M_B = 59934.7, 25791.3
IP_R_B, IP_W_B, IP_K_B = 6954.0, 4621.0, 4200.0
IP_OPS_C = 6.8256e9 / 131072            # 52075.2
IP_GB_C = 3.3261e9 / 1048576            # 3172.1 limb units


def head_ops(sh, ell):
    t = sh.raised(ell) - sh.alpha
    return OPS.decomp(ell) + sh.beta(ell) * OPS.modup(sh.alpha, t)


def kskip_ops(sh, ell, regen):
    o = OPS.kskip(sh.beta(ell), sh.raised(ell))
    if regen:
        o = o + OpCount(0, sh.beta(ell) * sh.raised(ell))
    return o


def mdpair_ops(sh, ell):
    return 2 * OPS.moddown(ell - 1, sh.k_sp + 1)


def ip_ops(sh, ell, regen):
    o = head_ops(sh, ell)
    o = o + 30 * kskip_ops(sh, ell, regen)
    o = o + 2 * mdpair_ops(sh, ell)
    o = o + OpCount(32 * ell, 0)
    o = o + 256 * OPS.ptct(2, ell)
    return o


def main():
    ob = ip_ops(B, 22, regen=False)
    print(f'baseline structural: m {ob.mults} (target {IP_M_B}) '
          f'd={ob.mults - IP_M_B:+.1f}')
    adds_needed = (IP_OPS_B - IP_M_B) - ob.adds
    print(f'  adds needed on top: {adds_needed:.1f} '
          f'(/2l={adds_needed / 44:.2f}, /2K={adds_needed / 70:.2f}, '
          f'/l={adds_needed / 22:.2f}, /K={adds_needed / 35:.2f})')
    # try acc-add allocations: n1 adds at 2K (raised accs) + n2 at 2l
    K = B.raised(22)
    best = []
    for n1 in range(0, 320):
        rem = adds_needed - n1 * 2 * K
        if rem < -1:
            break
        n2 = round(rem / 44)
        if n2 < 0:
            continue
        miss = abs(rem - n2 * 44)
        best.append((miss, n1, n2))
    best.sort(key=lambda x: x[0])
    for miss, n1, n2 in best[:8]:
        # transfer to best case at l=20
        oc = ip_ops(C, 20, regen=True)
        Kc = C.raised(20)
        tot_c = oc.total + n1 * 2 * Kc + n2 * 2 * 20
        print(f'  acc2K={n1} acc2l={n2} miss_b={miss:.1f} '
              f'bc_total={tot_c:.1f} (target {IP_OPS_C:.1f}) '
              f'd={tot_c - IP_OPS_C:+.1f}')


if __name__ == '__main__':
    main()
