"""Residual analysis: stage traffic minus verified composite pieces."""

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
        t = t + modups(B, lv, F)                       # head (a-poly)
        t = t + kskip(B, lv, F, rotations=b - 1)       # babies + parks
        t = t + 2 * g * moddown(B, lv, F, merged_rescale=True)
        t = t + (g - 1) * rotate_t(lv - 1)             # giants
    return t


def feats(row):
    f = {}
    for lv, D, (b, g) in zip(row['levels'], row['stages'], row['splits']):
        K = B.raised(lv)
        for name, val in (('D*l', D * lv), ('D*K', D * K),
                          ('D*2K', 2 * D * K), ('b*2K', 2 * K * (b - 1)),
                          ('bg*2K', 2 * K * (b - 1) * g),
                          ('g*2K', 2 * K * g), ('l', lv), ('2l', 2 * lv),
                          ('K', K), ('2K', 2 * K), ('one', 1),
                          ('g*lo', g * (lv - 1)), ('b*l', (b - 1) * lv)):
            f[name] = f.get(name, 0) + val
    return f


for tag, row in (('CtS', CTS), ('StC', STC)):
    t = core(row)
    rr, rw = row['r'] - t.reads, row['w'] - t.writes
    print(f'{tag}: residual r {rr:+10.1f}  w {rw:+10.1f}')
    fv = feats(row)
    for k in sorted(fv):
        print(f'    {k:8s} {fv[k]:8d}   r/{k} = {rr / fv[k]:8.3f}   '
              f'w/{k} = {rw / fv[k]:8.3f}')
