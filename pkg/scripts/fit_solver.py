"""Integer solver: decompose IP/PE3 ops+adds targets into piece counts."""

import sys

sys.path.insert(0, 'src')

from ckkslab.costmodel.conventions import OpCount, PaperOps, RnsShape

OPS = PaperOps(17)
SH = RnsShape(alpha=12, k_sp=13)

# per-coefficient targets: ops, mults, reads, writes, keys
IP = (59934.7, 25791.3, 6954.0, 4621.0, 4200.0)
PE3 = (22364.8, 9298.7, 1635.0, 1251.0, 498.0)

TOL = 0.71


def head(ell):
    return OPS.decomp(ell) + SH.beta(ell) * OPS.modup(
        SH.alpha, SH.raised(ell) - SH.alpha)


def mdpair(ell, merged=False):
    if merged:
        return 2 * OPS.moddown(ell - 1, SH.k_sp + 1)
    return 2 * OPS.moddown(ell, SH.k_sp)


def solve_ip():
    ell, K = 22, 35
    h = head(ell)                      # 1307 m, 1742 a
    ks = OPS.kskip(2, K)               # 140 m, 70 a
    md = mdpair(ell)                   # 1329 m, 1828 a
    mdm = mdpair(ell, merged=True)
    rp = 2 * OPS.rescale(ell)          # 460 m, 790 a
    m_t, a_t = IP[1], IP[0] - IP[1]    # 25791.3, 34143.4
    ptypes = {
        'ptct2l': 1.5 * 2 * ell, 'ptct2K': 1.5 * 2 * K,
        'p2l': 2.0 * ell, 'p2K': 2.0 * K,
        'ptct3l': 1.5 * 3 * ell, 'p3K': 3.0 * K,
        'ptct1K': 1.5 * K, 'p1K': 1.0 * K,
    }
    hits = []
    for nH in (1, 2, 3):
        for merged in (False, True):
            mdv = mdm if merged else md
            for nM in (1, 2, 3, 4):
                for nR in (0, 1, 2):
                    for npm in (0, 15, 16, 17, 30, 31, 32, 33):
                        base_m = (nH * h.mults + 30 * ks.mults
                                  + nM * mdv.mults + nR * rp.mults
                                  + npm * ell)
                        rem = m_t - base_m
                        for pname, pm in ptypes.items():
                            nP = round(rem / pm)
                            if nP < 0 or abs(rem - nP * pm) > TOL:
                                continue
                            base_a = (nH * h.adds + 30 * ks.adds
                                      + nM * mdv.adds + nR * rp.adds)
                            rem_a = a_t - base_a
                            # accumulate adds: n70 at 2K, n44 at 2l,
                            # n35 at K, n22 at l
                            for n35 in (0, 15, 16, 17, 32):
                                for n22 in range(0, 34):
                                    r2 = rem_a - 35 * n35 - 22 * n22
                                    if r2 < -TOL:
                                        continue
                                    # 70*n70 + 44*n44 = r2
                                    for n44 in range(0, 600):
                                        r3 = r2 - 44 * n44
                                        if r3 < -TOL:
                                            break
                                        n70 = round(r3 / 70)
                                        if abs(r3 - 70 * n70) <= TOL:
                                            hits.append(
                                                (nH, merged, nM, nR, npm,
                                                 pname, nP, n35, n22, n44,
                                                 n70))
    print(f'IP: {len(hits)} exact (m,a) piece decompositions')
    for hval in hits:
        nH, merged, nM, nR, npm, pname, nP, n35, n22, n44, n70 = hval
        # plausibility screen: products ~ a few hundred, accumulates
        # proportional to products
        if not (150 <= nP <= 300):
            continue
        if n70 not in (nP, 2 * nP, nP - 16, 2 * (nP - 16), 0, nP + 16):
            continue
        print(f'  nH={nH} mg={merged} nM={nM} nR={nR} npm={npm} '
              f'{pname} x{nP} accK35={n35} acc22={n22} acc44={n44} '
              f'acc70={n70}')
    return hits


def solve_pe3():
    m_t, a_t = PE3[1], PE3[0] - PE3[1]   # 9298.7, 13066.1
    hits = []
    for l1, l2 in ((29, 28),):
        for sq in (True, False):
            for af1 in (True, False):       # tensor add included?
                for af2 in (True, False):
                    for mg in (True, False):
                        core = OpCount()
                        t1 = (OpCount(3 * l1, l1) if sq
                              else OPS.tensor(l1))
                        core = core + t1 + head(l1) + OPS.kskip(3, l1 + 13)
                        core = core + OPS.tensor(l2) + head(l2) + OPS.kskip(
                            3, l2 + 13)
                        if not af1:
                            core = core + OPS.add(2, l1)
                        if not af2:
                            core = core + OPS.add(2, l2)
                        if mg:
                            core = core + mdpair(l1, True) + mdpair(l2, True)
                        else:
                            core = (core + mdpair(l1) + mdpair(l2)
                                    + 2 * OPS.rescale(l1)
                                    + 2 * OPS.rescale(l2))
                        rem_m = m_t - core.mults
                        rem_a = a_t - core.adds
                        # tail pieces: ptct2/ptct1/lift2(scalar)/ntt2 at
                        # lv in {29,28,27}; cadds/add2s close adds
                        for lv in (29, 28, 27):
                            pieces_m = {
                                'ptct2': 3 * lv, 'ptct1': 1.5 * lv,
                                'lift2': 2 * lv, 'ntt2': 17 * lv,
                                'resc': 0,
                            }
                            for pn, pm in pieces_m.items():
                                for cnt in range(0, 7):
                                    if pn == 'ntt2':
                                        da = cnt * 34 * lv
                                    else:
                                        da = 0
                                    mm = rem_m - cnt * pm
                                    if abs(mm) > TOL:
                                        continue
                                    aa = rem_a - da
                                    # close adds with add2(x), cadd(y)
                                    for x in range(0, 40):
                                        r3 = aa - 2 * lv * x
                                        if r3 < -TOL:
                                            break
                                        y = round(r3 / lv)
                                        if (y >= 0 and
                                                abs(r3 - lv * y) <= TOL):
                                            hits.append(
                                                (sq, af1, af2, mg, lv, pn,
                                                 cnt, x, y))
    print(f'PE3: {len(hits)} exact (m,a) piece decompositions')
    for hval in hits:
        print(' ', hval)
    return hits


if __name__ == '__main__':
    solve_pe3()
    print()
    solve_ip()
