"""Exact piece-count solve for IP and PE3 rows."""

import itertools
import sys

sys.path.insert(0, 'src')

from ckkslab.costmodel.conventions import OpCount, PaperOps, RnsShape
from ckkslab.costmodel.dramflow import (OptimizationSet, Traffic, kskip,
                                        moddown, modups, plain_pass, rescale)

OPS = PaperOps(17)
SH = RnsShape(alpha=12, k_sp=13)
F = OptimizationSet()

TARGETS = {
    'IP': (59934.7, 25791.3, 6954.0, 4621.0, 4200.0),
    'PE3': (22364.8, 9298.7, 1635.0, 1251.0, 498.0),
}


def piece_head(ell):
    o = OPS.decomp(ell) + SH.beta(ell) * OPS.modup(
        SH.alpha, SH.raised(ell) - SH.alpha)
    return o, plain_pass(ell, ell) + modups(SH, ell, F)


def piece_baby(ell):
    """kskip + switch down + fold into running sum."""
    o = (OPS.kskip(SH.beta(ell), SH.raised(ell))
         + 2 * OPS.moddown(ell, SH.k_sp) + OPS.add(1, ell)
         + OPS.add(2, ell))
    tr = (kskip(SH, ell, F) + moddown(SH, ell, F)
          + moddown(SH, ell, F, addend=ell) + plain_pass(2 * ell, 0))
    return o, tr


def piece_graised(ell):
    """kskip, accumulate raised."""
    K = SH.raised(ell)
    o = OPS.kskip(SH.beta(ell), K) + OPS.add(2, K)
    tr = kskip(SH, ell, F) + plain_pass(2 * K, 0)
    return o, tr


def piece_mdpair(ell, carry=True):
    o = 2 * OPS.moddown(ell, SH.k_sp) + (OPS.add(1, ell) if carry
                                         else OpCount())
    tr = moddown(SH, ell, F) + moddown(SH, ell, F,
                                       addend=ell if carry else 0)
    return o, tr


def piece_resc(ell):
    return 2 * OPS.rescale(ell), 2 * rescale(ell, F)


def piece_mult(ell, sq, merged):
    K, beta = SH.raised(ell), SH.beta(ell)
    if sq:
        o = OpCount(3 * ell, ell)
        tr = plain_pass(2 * ell, 2 * ell) + plain_pass(2 * ell, ell)
    else:
        o = OPS.tensor(ell)
        tr = plain_pass(4 * ell, 2 * ell) + plain_pass(2 * ell, ell)
    o = (o + OPS.decomp(ell) + beta * OPS.modup(SH.alpha, K - SH.alpha)
         + OPS.kskip(beta, K) + OPS.add(2, ell))
    tr = tr + modups(SH, ell, F) + kskip(SH, ell, F)
    if merged:
        o = o + 2 * OPS.moddown(ell - 1, SH.k_sp + 1)
        tr = tr + 2 * moddown(SH, ell, F, addend=ell, merged_rescale=True)
    else:
        o = o + 2 * OPS.moddown(ell, SH.k_sp) + 2 * OPS.rescale(ell)
        tr = tr + 2 * moddown(SH, ell, F) + 2 * rescale(ell, F, addend=ell)
    return o, tr


def score(tag, o, tr):
    t = TARGETS[tag]
    return max(abs(x - y) / y for x, y in zip(
        (o.total, o.mults, tr.reads, tr.writes, tr.keys), t))


def report(tag, o, tr, detail):
    t = TARGETS[tag]
    d = (o.total - t[0], o.mults - t[1], tr.reads - t[2],
         tr.writes - t[3], tr.keys - t[4])
    print(f'{score(tag, o, tr):8.4%} d_ops={d[0]:+8.1f} d_m={d[1]:+8.1f} '
          f'd_r={d[2]:+6.1f} d_w={d[3]:+6.1f} d_k={d[4]:+6.1f} {detail}')


def fit_ip():
    print('== IP at level 22, 30 key switches ==')
    ell = 22
    combos = []
    for lead in (None, 'mult', 'sqmult'):
        nks = 30 - (1 if lead else 0)
        for nb in range(0, nks + 1):
            ng = nks - nb
            for nH in range(0, 4):
                for nM in range(0, 4):
                    for nR in range(0, 3):
                        o, tr = OpCount(), Traffic()
                        if lead:
                            mo, mt = piece_mult(ell, lead == 'sqmult',
                                                False)
                            o, tr = o + mo, tr + mt
                        for n, fn in ((nb, piece_baby),
                                      (ng, piece_graised)):
                            po, pt = fn(ell)
                            o, tr = o + n * po, tr + n * pt
                        for n, fn in ((nH, piece_head),
                                      (nM, piece_mdpair),
                                      (nR, piece_resc)):
                            po, pt = fn(ell)
                            o, tr = o + n * po, tr + n * pt
                        combos.append((score('IP', o, tr), lead, nb, ng,
                                       nH, nM, nR, o, tr))
    combos.sort(key=lambda c: c[0])
    for c in combos[:12]:
        s, lead, nb, ng, nH, nM, nR, o, tr = c
        report('IP', o, tr,
               f'lead={lead} baby={nb} graised={ng} head={nH} md={nM} '
               f'resc={nR}')


def fit_pe3():
    print('== PE3: two chained products + coefficient tail ==')
    combos = []
    for sq in (False, True):
        for mg in (False, True):
            o1, t1 = piece_mult(29, sq, mg)
            o2, t2 = piece_mult(28, False, mg)
            core_o, core_t = o1 + o2, t1 + t2
            for np1, lv1 in itertools.product(range(0, 4), (29, 28, 27)):
                for np_h, nadd in itertools.product((0, 1, 2), range(0, 6)):
                    for ncadd in range(0, 4):
                        o = (core_o + np1 * OPS.ptct(2, lv1)
                             + np_h * OPS.ptct(1, lv1)
                             + nadd * OPS.add(2, lv1)
                             + ncadd * OPS.add(1, lv1))
                        tr = (core_t
                              + np1 * plain_pass(3 * lv1, 2 * lv1)
                              + np_h * plain_pass(2 * lv1, lv1)
                              + nadd * plain_pass(4 * lv1, 2 * lv1)
                              + ncadd * plain_pass(2 * lv1, lv1))
                        combos.append((score('PE3', o, tr), sq, mg, np1,
                                       np_h, lv1, nadd, ncadd, o, tr))
    combos.sort(key=lambda c: c[0])
    for c in combos[:12]:
        s, sq, mg, np1, np_h, lv1, nadd, ncadd, o, tr = c
        report('PE3', o, tr,
               f'sq={sq} mg={mg} ptct2={np1} ptct1={np_h} @{lv1} '
               f'add2={nadd} cadd={ncadd}')


if __name__ == '__main__':
    fit_ip()
    fit_pe3()
