"""Pin the two small application rows (degree-3 polynomial, inner
product) exactly; their structures calibrate the conventions reused by
the large phase fits."""

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


def show(tag, o, tr, detail=''):
    t = TARGETS[tag]
    d = (o.total - t[0], o.mults - t[1], tr.reads - t[2],
         tr.writes - t[3], tr.keys - t[4])
    res = max(abs(x) / y for x, y in zip(d, t))
    print(f'{res:8.4%}  d_ops={d[0]:+9.1f} d_m={d[1]:+9.1f} '
          f'd_r={d[2]:+7.1f} d_w={d[3]:+7.1f} d_k={d[4]:+7.1f}  {detail}')
    return res


def mult_cost(ell, *, square=False, merged=False):
    K, beta = SH.raised(ell), SH.beta(ell)
    if square:
        o = OpCount(3 * ell, 2 * ell)     # three limb products, one fold
        tr = plain_pass(2 * ell, 2 * ell) + plain_pass(2 * ell, ell)
    else:
        o = OPS.tensor(ell)
        tr = plain_pass(4 * ell, 2 * ell) + plain_pass(2 * ell, ell)
    o = (o + OPS.decomp(ell)
         + beta * OPS.modup(SH.alpha, K - SH.alpha)
         + OPS.kskip(beta, K) + OPS.add(2, ell))
    tr = tr + modups(SH, ell, F) + kskip(SH, ell, F)
    if merged:
        o = o + 2 * OPS.moddown(ell - 1, SH.k_sp + 1)
        tr = tr + 2 * moddown(SH, ell, F, addend=ell, merged_rescale=True)
    else:
        o = o + 2 * OPS.moddown(ell, SH.k_sp) + 2 * OPS.rescale(ell)
        tr = tr + 2 * moddown(SH, ell, F) + 2 * rescale(ell, F, addend=ell)
    return o, tr


def fit_pe3():
    print('== PE3: u^2 at 29, u*u^2 at 28, coefficient combo ==')
    best = []
    for sq in (False, True):
        for merged in (False, True):
            for n_ptct, lv_p in itertools.product(range(0, 5),
                                                  (29, 28, 27)):
                for n_add, n_resc in itertools.product(range(0, 5),
                                                       range(0, 3)):
                    o1, t1 = mult_cost(29, square=sq, merged=merged)
                    o2, t2 = mult_cost(28, merged=merged)
                    o = o1 + o2 + n_ptct * OPS.ptct(2, lv_p) \
                        + n_add * OPS.add(2, lv_p) \
                        + n_resc * 2 * OPS.rescale(lv_p)
                    tr = t1 + t2 + n_ptct * plain_pass(3 * lv_p, 2 * lv_p) \
                        + n_add * plain_pass(4 * lv_p, 2 * lv_p) \
                        + n_resc * 2 * rescale(lv_p, F)
                    res = max(abs(x - y) / y for x, y in zip(
                        (o.total, o.mults, tr.reads, tr.writes, tr.keys),
                        TARGETS['PE3']))
                    best.append((res, sq, merged, n_ptct, lv_p, n_add,
                                 n_resc, o, tr))
    best.sort(key=lambda b: b[0])
    for b in best[:10]:
        res, sq, merged, n_ptct, lv_p, n_add, n_resc, o, tr = b
        show('PE3', o, tr,
             f'sq={sq} mg={merged} ptct={n_ptct}@{lv_p} add={n_add} '
             f'resc={n_resc}')


def fit_ip():
    print('== IP: optional product, then 16x16 fold with raised giants ==')
    best = []
    for lead in (None, 22, 23):
        for b, g in ((16, 16), (32, 8), (8, 32)):
            for baby_full in (True, False):
                for final_resc in (0, 1):
                    for extra_md in (0, 1, 2):
                        o, tr = OpCount(), Traffic()
                        if lead is not None:
                            mo, mt = mult_cost(lead)
                            o, tr = o + mo, tr + mt
                        ell = 22
                        K, beta = SH.raised(ell), SH.beta(ell)
                        ho, ht = (OPS.decomp(ell) + beta * OPS.modup(
                            SH.alpha, K - SH.alpha),
                            plain_pass(ell, ell) + modups(SH, ell, F))
                        o, tr = o + ho, tr + ht
                        # babies: switched all the way down
                        nb = b - 1
                        o = o + nb * (OPS.kskip(beta, K)
                                      + 2 * OPS.moddown(ell, SH.k_sp)
                                      + OPS.add(1, ell))
                        tr = tr + kskip(SH, ell, F, rotations=nb)
                        tr = tr + nb * (moddown(SH, ell, F)
                                        + moddown(SH, ell, F, addend=ell))
                        if baby_full:
                            # each baby rotation also re-raises its input
                            o = o + nb * (OPS.decomp(ell)
                                          + beta * OPS.modup(SH.alpha,
                                                             K - SH.alpha))
                            tr = tr + nb * (plain_pass(ell, ell)
                                            + modups(SH, ell, F))
                        # baby fold
                        o = o + nb * OPS.add(2, ell)
                        tr = tr + plain_pass(nb * 2 * ell, 0)
                        # giants: keyswitch raised accumulation
                        ng = g - 1
                        go, gt = (OPS.decomp(ell) + beta * OPS.modup(
                            SH.alpha, K - SH.alpha),
                            plain_pass(ell, ell) + modups(SH, ell, F))
                        o, tr = o + go, tr + gt
                        o = o + ng * (OPS.kskip(beta, K)
                                      + OPS.add(2, K) + OPS.add(1, ell))
                        tr = tr + kskip(SH, ell, F, rotations=ng)
                        tr = tr + plain_pass(ng * (2 * K + ell), 0)
                        # one ModDown pair over the whole sum
                        o = o + (1 + extra_md) * 2 * OPS.moddown(ell,
                                                                 SH.k_sp)
                        tr = tr + (1 + extra_md) * (
                            moddown(SH, ell, F)
                            + moddown(SH, ell, F, addend=ell))
                        if final_resc:
                            o = o + 2 * OPS.rescale(ell)
                            tr = tr + 2 * rescale(ell, F)
                        res = max(abs(x - y) / y for x, y in zip(
                            (o.total, o.mults, tr.reads, tr.writes,
                             tr.keys), TARGETS['IP']))
                        best.append((res, lead, b, g, baby_full,
                                     final_resc, extra_md, o, tr))
    best.sort(key=lambda b: b[0])
    for b in best[:10]:
        res, lead, bb, gg, bf, fr, em, o, tr = b
        show('IP', o, tr, f'lead={lead} b={bb} g={gg} baby_full={bf} '
             f'resc={fr} xmd={em}')


if __name__ == '__main__':
    fit_pe3()
    fit_ip()
