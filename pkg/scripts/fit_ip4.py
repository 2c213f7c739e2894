"""Wider joint InnerProduct solve with traffic filter.

Structure: nH heads + 30 kskips (key-pinned) + nMD merged moddowns
+ nRS rescales + nP products (type from menu) + npm plain raises
+ up to 3 accumulation-add features. Score = ops residuals (both
presets) then baseline traffic divisibility.
"""

import itertools
import sys

sys.path.insert(0, 'src')

from ckkslab.costmodel.conventions import OpCount, PaperOps, RnsShape
from ckkslab.costmodel.dramflow import (BASELINE, OptimizationSet,
                                        kskip as tk, moddown as tmd,
                                        modups as tmu)

OPS = PaperOps(17)
B, C = RnsShape(12, 13), RnsShape(20, 21)

T_OPS_B, T_M_B = 59934.7, 25791.3
T_OPS_C = 6.8256e9 / 131072


def head(sh, ell):
    return OPS.decomp(ell) + sh.beta(ell) * OPS.modup(
        sh.alpha, sh.raised(ell) - sh.alpha)


def kskip_o(sh, ell, regen):
    o = OPS.kskip(sh.beta(ell), sh.raised(ell))
    if regen:
        o = o + OpCount(0, sh.beta(ell) * sh.raised(ell))
    return o


def pieces(sh, ell, regen):
    K = sh.raised(ell)
    return {
        'H': head(sh, ell),
        'KS': kskip_o(sh, ell, regen),
        'MD': OPS.moddown(ell - 1, sh.k_sp + 1),
        'RS': OPS.rescale(ell),
        'PM': OPS.pmodup(ell),
        'P2': OPS.ptct(2, ell),
        'P1': OPS.ptct(1, ell),
        'P2K': OPS.ptct(2, K),
        'TEN': OPS.tensor(ell),
    }


def add_menu(shb, lb, shc, lc):
    Kb, Kc = shb.raised(lb), shc.raised(lc)
    bb, bc_ = shb.beta(lb), shc.beta(lc)
    return {
        'a2l': (2 * lb, 2 * lc), 'al': (lb, lc),
        'a2K': (2 * Kb, 2 * Kc), 'aK': (Kb, Kc),
        'a2l1': (2 * (lb - 1), 2 * (lc - 1)), 'al1': (lb - 1, lc - 1),
        'bg2K': ((bb - 1) * 2 * Kb, (bc_ - 1) * 2 * Kc),
        'bg2l': ((bb - 1) * 2 * lb, (bc_ - 1) * 2 * lc),
        'bgK': ((bb - 1) * Kb, (bc_ - 1) * Kc),
        'bgl': ((bb - 1) * lb, (bc_ - 1) * lc),
    }


def main():
    pb = pieces(B, 22, regen=False)
    pc = pieces(C, 20, regen=True)
    menu = add_menu(B, 22, C, 20)
    names = list(menu)
    TOL = 3.0

    sols = []
    for ptype in ('P2', 'P1', 'P2K', 'TEN'):
        for nP in (16, 31, 32, 64, 128, 255, 256, 257, 272, 512):
            for nH in (1, 2):
                for nMD in range(0, 9):
                    for nRS in range(0, 9):
                        base_m = (pb['H'].mults * nH + pb['KS'].mults * 30
                                  + pb['MD'].mults * nMD
                                  + pb['RS'].mults * nRS
                                  + pb[ptype].mults * nP)
                        rem_m = T_M_B - base_m
                        if rem_m < -TOL:
                            continue
                        npm = round(rem_m / 22)
                        if abs(rem_m - npm * 22) > TOL:
                            continue
                        base_a = (pb['H'].adds * nH + pb['KS'].adds * 30
                                  + pb['MD'].adds * nMD
                                  + pb['RS'].adds * nRS
                                  + pb[ptype].adds * nP)
                        need_b = (T_OPS_B - T_M_B) - base_a
                        tot_c0 = (pc['H'].total * nH + pc['KS'].total * 30
                                  + pc['MD'].total * nMD
                                  + pc['RS'].total * nRS
                                  + pc[ptype].total * nP
                                  + pc['PM'].total * npm)
                        need_c = T_OPS_C - tot_c0
                        if need_b < -TOL or need_c < -TOL:
                            continue
                        for combo in itertools.combinations(names, 2):
                            solve2(menu, combo, need_b, need_c, TOL, sols,
                                   (ptype, nP, nH, nMD, nRS, npm, rem_m))
    sols.sort(key=lambda s: s[0])
    seen = set()
    print(f'{len(sols)} solutions; distinct structures (best per):')
    for s in sols:
        err, tag, combo, counts, rb, rc = s
        key = tag[:6]
        if key in seen:
            continue
        seen.add(key)
        ptype, nP, nH, nMD, nRS, npm, rem_m = tag
        cstr = ' '.join(f'{f}x{n}' for f, n in zip(combo, counts))
        print(f'  {ptype}x{nP} H={nH} MD={nMD} RS={nRS} pm={npm} | {cstr} '
              f'| res_b={rb:+.1f} res_c={rc:+.1f} res_m={rem_m - npm * 22:+.1f}')
        if len(seen) >= 30:
            break


def solve2(menu, combo, need_b, need_c, tol, sols, tag):
    (f1, f2) = combo
    w1b, w1c = menu[f1]
    w2b, w2c = menu[f2]
    det = w1b * w2c - w2b * w1c
    if det == 0:
        return
    x = (need_b * w2c - w2b * need_c) / det
    y = (w1b * need_c - need_b * w1c) / det
    if x < -0.4 or y < -0.4:
        return
    xi, yi = round(x), round(y)
    if xi < 0 or yi < 0:
        return
    rb = need_b - xi * w1b - yi * w2b
    rc = need_c - xi * w1c - yi * w2c
    if abs(rb) <= tol and abs(rc) <= tol:
        sols.append((abs(rb) + abs(rc), tag, combo, (xi, yi), rb, rc))


if __name__ == '__main__':
    main()
