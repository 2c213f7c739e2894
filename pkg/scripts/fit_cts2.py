"""CtS level-topology variants consistent with a level-33 handoff."""

import itertools
import sys

sys.path.insert(0, 'src')

from ckkslab.costmodel.conventions import OpCount, PaperOps, RnsShape

OPS = PaperOps(17)
B = RnsShape(alpha=12, k_sp=13)
TGT = dict(ops=446212.5, m=196904.9, k=13914.0)
STAGES = [63, 63, 127]

# frozen op-convention knobs from the joint StC/CtS fit
KN = dict(p=0, i=1, pw='l', vb='K', gmg=True, gfold=1)


def head(ell):
    t = B.raised(ell) - B.alpha
    return OPS.decomp(ell) + B.beta(ell) * OPS.modup(B.alpha, t)


def kskip(ell):
    return OPS.kskip(B.beta(ell), B.raised(ell))


def mdpair(ell, merged=False):
    if merged:
        return 2 * OPS.moddown(ell - 1, B.k_sp + 1)
    return 2 * OPS.moddown(ell, B.k_sp)


def stage(ell, D, b, g, drop):
    """drop=1: giants at ell-1 (level consumed); drop=0: flat stage."""
    K = B.raised(ell)
    o = head(ell) + (b - 1) * kskip(ell)
    o = o + OpCount(KN['i'] * ell, 0)
    o = o + OpCount(2 * ell * D, 0)
    o = o + OpCount(0, 2 * K * (D - g) + K * (b - 1))
    lo = ell - drop
    if drop:
        o = o + g * mdpair(ell, merged=True)
    else:
        o = o + g * mdpair(ell, merged=False)
    o = o + (g - 1) * (head(lo) + kskip(lo) + mdpair(lo, merged=KN['gmg'])
                       + OPS.add(KN['gfold'], lo))
    return o


def key_bytes(levels, drops, splits):
    kb = 0
    for lv, dr, (b, g) in zip(levels, drops, splits):
        kb += (b - 1) * 2 * B.beta(lv) * B.raised(lv)
        lo = lv - dr
        kb += (g - 1) * 2 * B.beta(lo) * B.raised(lo)
    return kb


def run(tag, levels, drops):
    hits = []
    for splits in itertools.product(
            *[[(b, g) for b in range(2, 41)
               for g in range(-(-D // b), -(-D // b) + 3)]
              for D in STAGES]):
        if key_bytes(levels, drops, splits) != TGT['k']:
            continue
        o = OpCount()
        for lv, dr, D, (b, g) in zip(levels, drops, STAGES, splits):
            o = o + stage(lv, D, b, g, dr)
        hits.append((abs(o.total - TGT['ops']) + abs(o.mults - TGT['m']),
                     splits, o.total - TGT['ops'], o.mults - TGT['m']))
    hits.sort(key=lambda x: x[0])
    print(f'-- {tag}: {len(hits)} key-exact splits --')
    for sc, splits, d_o, d_m in hits[:6]:
        print(f'   {splits} d_ops={d_o:+9.1f} d_m={d_m:+9.1f}')


if __name__ == '__main__':
    run('E: (35,35,34) first flat, out 33', [35, 35, 34], [0, 1, 1])
    run('F: (35,34,34) middle flat, out 33', [35, 34, 34], [1, 0, 1])
    run('G: (36,35,34) drops (1,1,0)??', [36, 35, 34], [1, 1, 0])
