"""Traffic fit for the frozen FFT stage structure (baseline flags)."""

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


def stage_traffic(ell, D, b, g, kn):
    (in_r, id_mode, dw, br, gin, gfold_r) = kn
    K = B.raised(ell)
    lo = ell - 1
    t = Traffic()
    # head: hoisted decomposition of input a-poly + b-poly pass
    t = t + modups(B, ell, F, hoisted=False)
    t = t + plain_pass(in_r * ell, 0)          # extra input poly reads
    # baby rotations
    t = t + kskip(B, ell, F, rotations=b - 1, park_polys=2)
    # identity diag handling: 0 = free, 1 = raise+park pair, 2 = park only
    if id_mode == 1:
        t = t + plain_pass(2 * ell, 2 * K)
    elif id_mode == 2:
        t = t + plain_pass(0, 2 * K)
    # product pass: babies re-read, diags read, accumulators parked
    t = t + plain_pass(br * K * (b - 1) + (2 * K if id_mode else 0)
                       + D * (ell if dw == 'l' else K), 2 * K * g)
    # per-giant merged moddown+rescale (reads parked acc internally)
    for _ in range(g):
        t = t + moddown(B, ell, F, merged_rescale=True)
        t = t + moddown(B, ell, F, merged_rescale=True)
    # giant full rotations at ell-1, folded into accumulator
    per = (modups(B, lo, F) + plain_pass(gin * lo, 0)
           + kskip(B, lo, F, rotations=1, park_polys=2)
           + moddown(B, lo, F) + moddown(B, lo, F, addend=gfold_r * lo))
    t = t + (g - 1) * per
    return t


def run(tag, row):
    print(f'== {tag} ==')
    grid = itertools.product(
        (0, 1),          # extra input reads (x ell)
        (0, 1, 2),       # identity diag mode
        ('l', 'K'),      # diag stored width
        (0, 1, 2),       # baby re-read polys (x K per baby)
        (0, 1, 2),       # giant rotate extra input reads (x lo)
        (0, 1),          # giant fold addend read
    )
    out = []
    for kn in grid:
        t = Traffic()
        for lv, D, (b, g) in zip(row['levels'], row['stages'],
                                 row['splits']):
            t = t + stage_traffic(lv, D, b, g, kn)
        out.append((abs(t.reads - row['r']) + abs(t.writes - row['w']),
                    kn, t.reads - row['r'], t.writes - row['w']))
    out.sort(key=lambda x: x[0])
    for sc, kn, dr, dw in out[:10]:
        print(f'  kn={kn} d_r={dr:+9.1f} d_w={dw:+9.1f}')


if __name__ == '__main__':
    run('CtS', CTS)
    print()
    run('StC', STC)
