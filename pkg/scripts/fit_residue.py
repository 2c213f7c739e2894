"""Print exact residues of PE3/IP targets after candidate cores."""

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


def vec(o, tr):
    return (o.total, o.mults, tr.reads, tr.writes, tr.keys)


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


def show_res(tag, core_o, core_t, label):
    t = TARGETS[tag]
    c = vec(core_o, core_t)
    r = [x - y for x, y in zip(t, c)]
    r_adds = r[0] - r[1]
    print(f'{label:40s} R_ops={r[0]:+9.1f} R_m={r[1]:+9.1f} '
          f'R_a={r_adds:+9.1f} R_r={r[2]:+7.1f} R_w={r[3]:+7.1f} '
          f'R_k={r[4]:+6.1f}')


print('-- PE3 residue after sqMult(29)+Mult(28) --')
for sq in (True, False):
    for mg in (True, False):
        o1, t1 = piece_mult(29, sq, mg)
        o2, t2 = piece_mult(28, False, mg)
        show_res('PE3', o1 + o2, t1 + t2, f'sq={sq} mg={mg}')

print()
print('-- PE3 unit piece vectors at lv 29/28/27 --')
for lv in (29, 28, 27):
    pieces = {
        f'add2({lv})': (OPS.add(2, lv), plain_pass(4 * lv, 2 * lv)),
        f'add1({lv})': (OPS.add(1, lv), plain_pass(2 * lv, lv)),
        f'cadd({lv})': (OPS.add(1, lv), plain_pass(lv, lv)),
        f'ptct2({lv})': (OPS.ptct(2, lv), plain_pass(3 * lv, 2 * lv)),
        f'ptct1({lv})': (OPS.ptct(1, lv), plain_pass(2 * lv, lv)),
        f'resc-pair({lv})': (2 * OPS.rescale(lv), 2 * rescale(lv, F)),
        f'resc-pair-add({lv})': (2 * OPS.rescale(lv),
                                 2 * rescale(lv, F, addend=lv)),
    }
    for name, (o, tr) in pieces.items():
        v = vec(o, tr)
        print(f'{name:22s} ops={v[0]:8.1f} m={v[1]:8.1f} '
              f'a={v[0]-v[1]:8.1f} r={v[2]:6.1f} w={v[3]:6.1f}')
    print()

print('-- IP residue after nb sh-babies + ng raised-giants, lv22 --')
ell = 22


def piece_head(e):
    o = OPS.decomp(e) + SH.beta(e) * OPS.modup(SH.alpha,
                                               SH.raised(e) - SH.alpha)
    return o, plain_pass(e, e) + modups(SH, e, F)


def piece_baby(e):
    o = (OPS.kskip(SH.beta(e), SH.raised(e))
         + 2 * OPS.moddown(e, SH.k_sp) + OPS.add(1, e) + OPS.add(2, e))
    tr = (kskip(SH, e, F) + moddown(SH, e, F)
          + moddown(SH, e, F, addend=e) + plain_pass(2 * e, 0))
    return o, tr


def piece_graised(e):
    K = SH.raised(e)
    o = OPS.kskip(SH.beta(e), K) + OPS.add(2, K)
    return o, kskip(SH, e, F) + plain_pass(2 * K, 0)


def piece_mdpair(e):
    o = 2 * OPS.moddown(e, SH.k_sp) + OPS.add(1, e)
    return o, moddown(SH, e, F) + moddown(SH, e, F, addend=e)


for nb, ng in ((15, 15), (16, 14), (14, 16), (12, 18), (10, 20), (16, 16)):
    for nH in (1, 2):
        for nM in (1, 2):
            o, tr = OpCount(), Traffic()
            for n, fn in ((nb, piece_baby), (ng, piece_graised),
                          (nH, piece_head), (nM, piece_mdpair)):
                po, pt = fn(ell)
                o, tr = o + n * po, tr + n * pt
            show_res('IP', o, tr, f'nb={nb} ng={ng} head={nH} md={nM}')

print()
print('-- IP unit piece vectors at lv22 --')
for name, (o, tr) in {
        'baby': piece_baby(ell),
        'graised': piece_graised(ell),
        'head': piece_head(ell),
        'mdpair': piece_mdpair(ell),
        'resc-pair': (2 * OPS.rescale(ell), 2 * rescale(ell, F)),
        'Mult(22)': piece_mult(ell, False, False),
        'sqMult(22)': piece_mult(ell, True, False),
        'Mult22-mg': piece_mult(ell, False, True),
}.items():
    v = vec(o, tr)
    print(f'{name:12s} ops={v[0]:8.1f} m={v[1]:8.1f} a={v[0]-v[1]:8.1f} '
          f'r={v[2]:6.1f} w={v[3]:6.1f} k={v[4]:6.1f}')
