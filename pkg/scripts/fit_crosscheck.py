"""Cross-check PE3/IP piece structures against the best-case table.

A candidate structure (piece counts) must reproduce the baseline ops
(dnum=3, alpha=12, k=13) AND the best-case ops (dnum=2, alpha=20, k=21)
with re-derived widths, for some plausible operating level.
"""

import sys

import numpy as np

sys.path.insert(0, 'src')

from ckkslab.costmodel.conventions import OpCount, PaperOps, RnsShape

OPS = PaperOps(17)
B = RnsShape(alpha=12, k_sp=13)     # baseline
C = RnsShape(alpha=20, k_sp=21)     # best-case

COEFF = 131072
PE3_BASE = (22364.8, 9298.7)                   # ops, mults
PE3_BC = 2.2569e9 / COEFF                      # 17218.8 ops
IP_BASE = (59934.7, 25791.3)
IP_BC = 6.8256e9 / COEFF                       # 52075.2 ops
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


def mult_core(sh, ell, sq, merged, tensor_add, regen=False):
    o = OpCount(3 * ell, ell) if sq else OPS.tensor(ell)
    o = o + head_ops(sh, ell) + kskip_ops(sh, ell, regen)
    if tensor_add:
        o = o + OPS.add(2, ell)
    o = o + mdpair_ops(sh, ell, merged)
    if not merged:
        o = o + 2 * OPS.rescale(ell)
    return o


def fit_pe3():
    print('== PE3 cross-check (regen adds on best-case kskips) ==')
    base = (mult_core(B, 29, True, True, False)
            + mult_core(B, 28, False, True, False))
    for l1 in range(12, 34):
        bc = (mult_core(C, l1, True, True, False, regen=True)
              + mult_core(C, l1 - 1, False, True, False, regen=True))
        for wid in (1, 2, 3):
            for enc_b, enc_c in ((28, l1 - 1), (29, l1)):
                rbm = PE3_BASE[1] - base.mults - 8.5 * wid * enc_b
                if abs(rbm) > TOL:
                    continue
                rb = PE3_BASE[0] - base.total - 3 * 8.5 * wid * enc_b
                rc = PE3_BC - bc.total - 3 * 8.5 * wid * enc_c
                for x in range(0, 30):
                    rem_b = rb - 2 * 28 * x
                    if rem_b < -TOL:
                        break
                    y = round(rem_b / 28)
                    if y < 0 or abs(rem_b - 28 * y) > TOL:
                        continue
                    rem_c = rc - 2 * (l1 - 1) * x - (l1 - 1) * y
                    if abs(rem_c) <= TOL:
                        print(f'  l1_bc={l1} encode width={wid}@{enc_b} '
                              f'add2={x} cadd={y}')


PTYPES = [
    ('ptct2l', lambda sh, l: 3.0 * l),
    ('ptct2K', lambda sh, l: 3.0 * sh.raised(l)),
    ('p2l', lambda sh, l: 2.0 * l),
    ('p2K', lambda sh, l: 2.0 * sh.raised(l)),
    ('ptct1K', lambda sh, l: 1.5 * sh.raised(l)),
    ('p1K', lambda sh, l: 1.0 * sh.raised(l)),
    ('ptct3l', lambda sh, l: 4.5 * l),
    ('p3K', lambda sh, l: 3.0 * sh.raised(l)),
    ('tens_l', lambda sh, l: 4.0 * l),
    ('tens_K', lambda sh, l: 4.0 * sh.raised(l)),
    ('p1l', lambda sh, l: 1.0 * l),
    ('ptct1l', lambda sh, l: 1.5 * l),
]


def fit_ip():
    print('== IP cross-check ==')
    ell_b = 22
    h_b = head_ops(B, ell_b)
    ks_b = kskip_ops(B, ell_b)
    rp_b = 2 * OPS.rescale(ell_b)
    m_t = IP_BASE[1]
    a_t = IP_BASE[0] - IP_BASE[1]
    out = []
    for ell_c in range(12, 28):
        h_c = head_ops(C, ell_c)
        ks_c = kskip_ops(C, ell_c, regen=True)
        rp_c = 2 * OPS.rescale(ell_c)
        K_b, K_c = B.raised(ell_b), C.raised(ell_c)
        for nH in (1, 2, 3):
            for mg in (0, 1):
                md_b = mdpair_ops(B, ell_b, mg)
                md_c = mdpair_ops(C, ell_c, mg)
                for nM in range(1, 6):
                    for nR in (0, 1, 2):
                        for npm in range(0, 36):
                            base_m = (nH * h_b.mults + 30 * ks_b.mults
                                      + nM * md_b.mults + nR * rp_b.mults
                                      + npm * ell_b)
                            rem = m_t - base_m
                            for pi, (pn, pf) in enumerate(PTYPES):
                                pm_b = pf(B, ell_b)
                                nP = round(rem / pm_b)
                                if not (60 <= nP <= 300):
                                    continue
                                if abs(rem - nP * pm_b) > TOL:
                                    continue
                                base_a = (nH * h_b.adds + 30 * ks_b.adds
                                          + nM * md_b.adds
                                          + nR * rp_b.adds)
                                A_b = a_t - base_a
                                core_c = (nH * h_c.total
                                          + 30 * ks_c.total
                                          + nM * md_c.total
                                          + nR * rp_c.total
                                          + npm * ell_c
                                          + nP * pf(C, ell_c))
                                A_c = IP_BC - core_c
                                if A_c < -TOL:
                                    continue
                                # acc adds: n70@2K, n44@2l, n35@K, n22@l
                                for n35 in range(0, 36):
                                    for n70 in range(0, 320):
                                        b_rem = (A_b - 35 * n35
                                                 - 2 * K_b * n70)
                                        c_rem = (A_c - K_c * n35
                                                 - 2 * K_c * n70)
                                        if b_rem < -TOL or c_rem < -TOL:
                                            break
                                        # 44n44+22n22=b_rem;
                                        # 2lc n44 + lc n22 = c_rem
                                        # => (2n44+n22) determined twice
                                        sb = b_rem / 22.0
                                        sc = c_rem / ell_c
                                        if (abs(sb - round(sb)) > 0.032
                                                or abs(sc - round(sc))
                                                > 0.05):
                                            continue
                                        if round(sb) == round(sc):
                                            out.append(
                                                (ell_c, nH, mg, nM, nR,
                                                 npm, pn, nP, n35, n70,
                                                 round(sb)))
    print(f'{len(out)} structures passing both tables (ops level)')
    for o in out[:60]:
        print(f'  ell_bc={o[0]} nH={o[1]} mg={o[2]} nM={o[3]} nR={o[4]} '
              f'npm={o[5]} {o[6]} x{o[7]} accK={o[8]} acc2K={o[9]} '
              f'(2*n44+n22)={o[10]}')
    return out


if __name__ == '__main__':
    fit_pe3()
    print()
    fit_ip()
