"""Joint micro-knob search: one stage convention must fit StC AND CtS."""

import itertools
import sys

sys.path.insert(0, 'src')

from ckkslab.costmodel.conventions import OpCount, PaperOps, RnsShape

OPS = PaperOps(17)
B = RnsShape(alpha=12, k_sp=13)

CTS = dict(ops=446212.5, m=196904.9, tgt_k=13914.0,
           stages=[63, 63, 127], levels=[35, 34, 33])
STC = dict(ops=253497.1, m=110073.9, tgt_k=8946.0,
           stages=[32, 63, 127], levels=[26, 25, 24])


def head(ell):
    t = B.raised(ell) - B.alpha
    return OPS.decomp(ell) + B.beta(ell) * OPS.modup(B.alpha, t)


def kskip(ell):
    return OPS.kskip(B.beta(ell), B.raised(ell))


def mdpair(ell, merged=False):
    if merged:
        return 2 * OPS.moddown(ell - 1, B.k_sp + 1)
    return 2 * OPS.moddown(ell, B.k_sp)


def key_splits(row):
    """All (b,g) triples whose giant-low key reads match exactly."""
    out = []
    for splits in itertools.product(
            *[[(b, g) for b in range(2, min(D + 1, 41))
               for g in range(-(-D // b), -(-D // b) + 3)]
              for D in row['stages']]):
        kb = 0.0
        for (b, g), lv in zip(splits, row['levels']):
            kb += (b - 1) * 2 * B.beta(lv) * B.raised(lv)
            kb += (g - 1) * 2 * B.beta(lv - 1) * B.raised(lv - 1)
        if abs(kb - row['tgt_k']) < 0.5:
            out.append(splits)
    return out


KNOBS = list(itertools.product(
    (False,),          # baby_md: per-baby ModDown pair (classical BSGS)
    (0, 1),            # p: pmodups per rotated baby-diag product
    (0, 1, 2),         # i: identity-diag pmodups
    (1.0,),            # c: product coefficient
    ('l', 'l1'),       # product width
    ('2K',),           # accumulator add width
    ('0', 'l', 'K'),   # v_hat+b_hat merge add per baby
    (0, 1, 2),         # giant carry adds (units of ell-1)
    (False, True),     # giant-rotate MD pairs merged?
    (1, 2),            # giant fold add npoly
))


def stage(ell, D, b, g, bmd, p, i, c, pw, accw, vb, gc, gmg, gfold):
    K = B.raised(ell)
    width = {'l': ell, 'l1': ell + 1, 'K': K}[pw]
    aw = {'2l': 2 * ell, '2l1': 2 * (ell + 1), '2K': 2 * K}[accw]
    vbv = {'0': 0, 'l': ell, 'K': K}[vb]
    o = head(ell) + (b - 1) * kskip(ell)
    if bmd:
        o = o + (b - 1) * mdpair(ell, merged=False)
    o = o + OpCount((p * (D - g) + i) * ell, 0)
    o = o + OpCount(int(c * 2 * width * D), 0)
    o = o + OpCount(0, aw * (D - g) + vbv * (b - 1))
    o = o + g * mdpair(ell, merged=True)
    lo = ell - 1
    o = o + (g - 1) * (head(lo) + kskip(lo) + mdpair(lo, merged=gmg)
                       + OpCount(0, gc * lo) + OPS.add(gfold, lo))
    return o


def total(row, splits, kn):
    o = OpCount()
    for (b, g), lv, D in zip(splits, row['levels'], row['stages']):
        o = o + stage(lv, D, b, g, *kn)
    return o


CTS_STAGE_VARIANTS = [[63, 63, 127], [127, 63, 63], [63, 63, 64],
                      [64, 63, 63], [65, 63, 127], [127, 63, 32],
                      [63, 63, 63], [63, 127, 63]]
STC_STAGE_VARIANTS = [[32, 63, 127], [63, 63, 127], [127, 63, 63],
                      [32, 63, 63], [63, 63, 64], [127, 63, 32]]


def best_for(row, variants, kn):
    top = None
    for st in variants:
        r = dict(row, stages=st)
        for s in key_splits(r):
            o = total(r, s, kn)
            sc = abs(o.total - row['ops']) + abs(o.mults - row['m'])
            if top is None or sc < top[0]:
                top = (sc, st, s, o)
    return top


def main():
    # precompute key-exact splits per variant once
    global key_splits
    raw = key_splits
    cache = {}

    def cached(r):
        key = (tuple(r['stages']), tuple(r['levels']), r['tgt_k'])
        if key not in cache:
            cache[key] = raw(r)
        return cache[key]

    key_splits = cached
    best = []
    for kn in KNOBS:
        bc = best_for(CTS, CTS_STAGE_VARIANTS, kn)
        bs = best_for(STC, STC_STAGE_VARIANTS, kn)
        if bc and bs:
            best.append((bc[0] + bs[0], kn, bc, bs))
    best.sort(key=lambda x: x[0])
    for sc, kn, bc, bs in best[:12]:
        print(f'score {sc:9.1f} kn={kn}')
        print(f'   CtS {bc[1]} {bc[2]} '
              f'd_ops={bc[3].total - CTS["ops"]:+9.1f} '
              f'd_m={bc[3].mults - CTS["m"]:+9.1f}')
        print(f'   StC {bs[1]} {bs[2]} '
              f'd_ops={bs[3].total - STC["ops"]:+9.1f} '
              f'd_m={bs[3].mults - STC["m"]:+9.1f}')


if __name__ == '__main__':
    main()
