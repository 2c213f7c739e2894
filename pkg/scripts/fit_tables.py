"""Search structure parameters for the composite kernels against the
published cost tables.

The auxiliary and API rows pin the op/traffic conventions exactly; this
script enumerates the remaining layout freedom (stage levels, baby/giant
splits, accumulation order, phase extras) and reports every assignment
that reproduces a target row within print rounding. Winners get frozen
into costmodel defaults.
"""

import itertools
import sys

sys.path.insert(0, 'src')

from ckkslab.costmodel.conventions import OpCount, PaperOps, RnsShape
from ckkslab.costmodel.dramflow import (OptimizationSet, Traffic, kskip,
                                        moddown, modups, plain_pass, rescale)

OPS = PaperOps(17)
SH = RnsShape(alpha=12, k_sp=13)
F = OptimizationSet()

# per-coefficient op targets and per-limb traffic targets, decoded from
# the printed GOP/GB cells (ops tol covers 3- vs 4-decimal printing)
ROWS = {
    'CtS': dict(ops=(446212.5, 4.0), mults=(196904.9, 0.6),
                r=(44694.0, 0.6), w=(24116.1, 0.6), k=(13914.0, 0.6)),
    'PE63': dict(ops=(441238.4, 4.0), mults=(186535.6, 0.6),
                 r=(31510.0, 0.6), w=(22644.0, 4.0), k=(8448.0, 0.6)),
    'StC': dict(ops=(253497.1, 4.0), mults=(110073.0, 0.6),
                r=(28614.0, 4.0), w=(15369.0, 0.6), k=(8946.0, 0.6)),
    'IP': dict(ops=(59934.7, 0.6), mults=(25791.3, 0.6),
               r=(6954.0, 0.6), w=(4621.0, 0.6), k=(4200.0, 0.6)),
    'PE3': dict(ops=(22364.8, 0.6), mults=(9298.7, 0.6),
                r=(1635.0, 0.6), w=(1251.0, 0.6), k=(498.0, 0.6)),
    'LR': dict(ops=(705128.1, 0.6), mults=(302368.0, 0.6),
               r=(82762.4, 0.6), w=(53538.5, 0.6), k=(49716.5, 0.6)),
}


def key_unit(ell):
    return 2 * SH.beta(ell) * SH.raised(ell)


def residual(row, ops, tr):
    t = ROWS[row]
    vals = [(ops.total, t['ops'][0]), (ops.mults, t['mults'][0]),
            (tr.reads, t['r'][0]), (tr.writes, t['w'][0]),
            (tr.keys, t['k'][0])]
    return max(abs(g - w) / w for g, w in vals)


def res_ops(row, ops):
    t = ROWS[row]
    return max(abs(ops.total - t['ops'][0]) / t['ops'][0],
               abs(ops.mults - t['mults'][0]) / t['mults'][0])


def exact(row, ops, tr, slack=1.0):
    t = ROWS[row]
    checks = [(ops.total, t['ops']), (ops.mults, t['mults']),
              (tr.reads, t['r']), (tr.writes, t['w']), (tr.keys, t['k'])]
    return all(abs(got - want) <= tol * slack for got, (want, tol) in checks)


# ---------------------------------------------------------------- pieces

def rotate_cost(ell, *, fold=0):
    """Full rotation; fold>0 fuses an accumulate of `fold` polys."""
    beta = SH.beta(ell)
    o = (OPS.decomp(ell) + beta * OPS.modup(SH.alpha, SH.raised(ell) - SH.alpha)
         + OPS.kskip(beta, SH.raised(ell)) + 2 * OPS.moddown(ell, SH.k_sp)
         + OPS.add(1, ell) + OPS.add(fold, ell))
    tr = (plain_pass(ell, ell) + plain_pass(ell, ell)
          + modups(SH, ell, F) + kskip(SH, ell, F)
          + moddown(SH, ell, F) + moddown(SH, ell, F, addend=ell)
          + plain_pass(fold * ell, 0))
    return o, tr


def hoist_head(ell):
    """Decompose and raise one operand (shared by a rotation group)."""
    o = OPS.decomp(ell) + SH.beta(ell) * OPS.modup(
        SH.alpha, SH.raised(ell) - SH.alpha)
    tr = plain_pass(ell, ell) + modups(SH, ell, F)
    return o, tr


def stage_sh(D, ell, b, g, *, giant_low, prod):
    """Single-hoisted stage: babies switched down before the products."""
    K, beta = SH.raised(ell), SH.beta(ell)
    o, tr = hoist_head(ell)
    o = o + (b - 1) * (OPS.kskip(beta, K) + 2 * OPS.moddown(ell, SH.k_sp)
                       + OPS.add(1, ell))
    tr = tr + (kskip(SH, ell, F, rotations=b - 1)
               + (b - 1) * (moddown(SH, ell, F)
                            + moddown(SH, ell, F, addend=ell)))
    o = o + D * OPS.ptct(2, ell) + (D - g) * OPS.add(2, ell)
    if prod == 'reread':
        tr = tr + plain_pass(2 * b * g * ell + D * ell, 2 * g * ell)
    else:
        tr = tr + plain_pass(3 * D * ell + 2 * (D - g) * ell, 2 * D * ell)
    return _stage_tail(o, tr, ell, g, giant_low, per_row=False)


def stage_dh(D, ell, b, g, *, giant_low, prod, pmod, id_low):
    """Raised-accumulator stage: babies stay raised, one switch per row."""
    K, beta = SH.raised(ell), SH.beta(ell)
    o, tr = hoist_head(ell)
    o = o + (b - 1) * OPS.kskip(beta, K)
    tr = tr + kskip(SH, ell, F, rotations=b - 1)
    nid = g if id_low else 0
    nr = D - nid
    o = o + nr * (OPS.ptct(2, K) + OPS.ptct(1, ell)) + nid * OPS.ptct(2, ell)
    if pmod:
        o = o + nr * OPS.pmodup(ell)
    o = o + OpCount(0, (D - g) * (2 * K + ell))
    if prod == 'reread':
        r = g * ((b - 1) * 2 * K + 2 * ell) + D * ell
        w = g * (2 * K + ell)
        tr = tr + plain_pass(r, w)
    else:
        r = nr * (2 * K + ell) + nid * 2 * ell + D * ell \
            + (D - g) * (2 * K + ell)
        w = D * (2 * K + ell)
        tr = tr + plain_pass(r, w)
    o = o + g * (2 * OPS.moddown(ell, SH.k_sp) + OPS.add(1, ell))
    tr = tr + g * (moddown(SH, ell, F) + moddown(SH, ell, F, addend=ell))
    return _stage_tail(o, tr, ell, g, giant_low, per_row=True)


def _stage_tail(o, tr, ell, g, giant_low, per_row):
    if giant_low:
        n_resc = g
        o = o + n_resc * 2 * OPS.rescale(ell)
        tr = tr + n_resc * 2 * rescale(ell, F)
        ro, rt = rotate_cost(ell - 1, fold=2)
        o = o + (g - 1) * ro
        tr = tr + (g - 1) * rt
    else:
        ro, rt = rotate_cost(ell, fold=2)
        o = o + (g - 1) * ro
        tr = tr + (g - 1) * rt
        o = o + 2 * OPS.rescale(ell)
        tr = tr + 2 * rescale(ell, F)
    return o, tr


def stage_cost(D, ell, b, g, var):
    if var['mode'] == 'sh':
        return stage_sh(D, ell, b, g, giant_low=var['glow'],
                        prod=var['prod'])
    return stage_dh(D, ell, b, g, giant_low=var['glow'], prod=var['prod'],
                    pmod=var['pmod'], id_low=var['id_low'])


VARIANTS = [dict(mode='sh', glow=gl, prod=p, pmod=False, id_low=False)
            for gl in (False, True) for p in ('reread', 'rmw')]
VARIANTS += [dict(mode='dh', glow=gl, prod=p, pmod=pm, id_low=il)
             for gl in (False, True) for p in ('reread', 'rmw')
             for pm in (False, True) for il in (False, True)]


# ------------------------------------------------- key decomposition scan

def key_scan(row, diag_opts, level_lo, level_hi, extras=(None,)):
    """Level/split assignments whose key bytes hit the target exactly.

    Key cost per stage is (b-1)*unit(l) + (g-1)*unit(l - glow); an extra
    is one more switch (a conjugation) at the given level.
    """
    target = ROWS[row]['k'][0]
    sols = []
    n_stages = len(diag_opts[0])
    for levels in itertools.combinations(range(level_hi, level_lo - 1, -1),
                                         n_stages):
        if levels[0] - levels[-1] > n_stages + 1:
            continue
        for Ds in diag_opts:
            for glow in (True, False):
                for extra in extras:
                    rem = target - (key_unit(extra) if extra else 0)
                    def stage_opts(D, ell):
                        out = []
                        for b in range(1, 2 * D + 1):
                            g = -(-D // b)
                            if b + g - 2 > 70:
                                continue
                            kk = ((b - 1) * key_unit(ell) + (g - 1)
                                  * key_unit(ell - 1 if glow else ell))
                            out.append((b, g, kk))
                        return out
                    tables = [stage_opts(D, l)
                              for D, l in zip(Ds, levels)]
                    for combo in itertools.product(*tables):
                        if abs(sum(c[2] for c in combo) - rem) < 0.5:
                            sols.append((levels, Ds, glow, extra,
                                         tuple((c[0], c[1])
                                               for c in combo)))
    return sols


def run_phase_fit(row, diag_opts, level_lo, level_hi, extras=(None,),
                  n_print=8):
    sols = key_scan(row, diag_opts, level_lo, level_hi, extras)
    print(f'{row}: {len(sols)} key-exact structures')
    scored = []
    for levels, Ds, glow, extra, splits in sols:
        for var in VARIANTS:
            if var['glow'] != glow:
                continue
            o, tr = OpCount(), Traffic()
            for (D, ell, (b, g)) in zip(Ds, levels, splits):
                so, st = stage_cost(D, ell, b, g, var)
                o, tr = o + so, tr + st
            if extra:
                eo, et = rotate_cost(extra)
                o, tr = o + eo, tr + et
            scored.append((residual(row, o, tr), levels, Ds, extra, var,
                           splits, o, tr))
    scored.sort(key=lambda s: s[0])
    t = ROWS[row]
    print(f'  target ops={t["ops"][0]} mults={t["mults"][0]} '
          f'r={t["r"][0]} w={t["w"][0]} k={t["k"][0]}')
    for s in scored[:n_print]:
        res, levels, Ds, extra, var, splits, o, tr = s
        v = (f"{var['mode']} glow={var['glow']} {var['prod']} "
             f"pm={var['pmod']} il={var['id_low']}")
        print(f'  res={res:.4%} lv={levels} D={Ds} x={extra} {v} {splits}')
        print(f'    ops={o.total:.1f} mults={o.mults:.1f} r={tr.reads:.1f} '
              f'w={tr.writes:.1f} k={tr.keys:.1f}')
    return scored


if __name__ == '__main__':
    which = sys.argv[1] if len(sys.argv) > 1 else 'cts'
    diags3 = [[32, 63, 127], [63, 63, 127], [64, 63, 63], [127, 63, 32],
              [63, 63, 64], [32, 64, 128], [63, 127, 32], [128, 63, 32],
              [127, 63, 63], [32, 63, 63]]
    if which == 'cts':
        run_phase_fit('CtS', diags3, 28, 35, extras=(None, 35, 34, 33, 32))
    elif which == 'stc':
        run_phase_fit('StC', diags3, 20, 30, extras=(None, 26, 25, 24, 23))
