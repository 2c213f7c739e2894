"""Solve residual traffic as small-coefficient feature combinations."""

import itertools
import sys

sys.path.insert(0, 'src')

from ckkslab.costmodel.conventions import RnsShape
from ckkslab.costmodel.dramflow import (BASELINE, Traffic, kskip, moddown,
                                        modups, plain_pass)

B = RnsShape(alpha=12, k_sp=13)
F = BASELINE

CTS = dict(r=44694.0, w=24116.1, stages=[63, 63, 127],
           levels=[35, 34, 33], splits=[(8, 8), (8, 8), (14, 10)])
STC = dict(r=28614.0, w=15369.1, stages=[32, 63, 127],
           levels=[26, 25, 24], splits=[(8, 5), (13, 5), (12, 11)])


def rotate_t(ell):
    return (2 * plain_pass(ell, ell) + modups(B, ell, F)
            + kskip(B, ell, F) + moddown(B, ell, F)
            + moddown(B, ell, F, addend=ell))


def core(row):
    t = Traffic()
    for lv, (b, g) in zip(row['levels'], row['splits']):
        t = t + modups(B, lv, F)
        t = t + kskip(B, lv, F, rotations=b - 1)
        t = t + 2 * g * moddown(B, lv, F, merged_rescale=True)
        t = t + (g - 1) * rotate_t(lv - 1)
    return t


FEATS = ['D*l', 'D*K', 'b2K', 'g2K', 'gl', 'l', 'K', 'Dl1', 'bl', 'gK']


def featvec(row):
    f = dict.fromkeys(FEATS, 0)
    for lv, D, (b, g) in zip(row['levels'], row['stages'], row['splits']):
        K = B.raised(lv)
        f['D*l'] += D * lv
        f['D*K'] += D * K
        f['b2K'] += 2 * K * (b - 1)
        f['g2K'] += 2 * K * g
        f['gl'] += g * (lv - 1)
        f['l'] += lv
        f['K'] += K
        f['Dl1'] += D * (lv + 1)
        f['bl'] += (b - 1) * lv
        f['gK'] += g * K
    return f


def main():
    rows = [(CTS, core(CTS)), (STC, core(STC))]
    resid = [(row['r'] - t.reads, row['w'] - t.writes, featvec(row))
             for row, t in rows]
    coefs = (0, 0.5, 1, 1.5, 2, 3, 4)
    hits = {'r': [], 'w': []}
    for combo in itertools.combinations(FEATS, 3):
        for cs in itertools.product(coefs, repeat=3):
            er = ew = 0.0
            for rr, ww, fv in resid:
                s = sum(c * fv[k] for c, k in zip(cs, combo))
                er += abs(s - rr)
                ew += abs(s - ww)
            hits['r'].append((er, combo, cs))
            hits['w'].append((ew, combo, cs))
    for kind in ('r', 'w'):
        hits[kind].sort(key=lambda x: x[0])
        print(f'--- {kind} ---')
        for err, combo, cs in hits[kind][:12]:
            terms = ' + '.join(f'{c}*{k}' for c, k in zip(cs, combo) if c)
            print(f'  err {err:8.1f}   {terms}')


if __name__ == '__main__':
    main()
