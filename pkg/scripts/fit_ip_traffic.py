"""Filter IP (m,a)-exact decompositions by exact read/write targets."""

import itertools
import sys

import numpy as np

sys.path.insert(0, 'src')

from ckkslab.costmodel.conventions import OpCount, PaperOps, RnsShape

OPS = PaperOps(17)
SH = RnsShape(alpha=12, k_sp=13)

IP = (59934.7, 25791.3, 6954.0, 4621.0, 4200.0)
TOL = 0.71
ELL, K = 22, 35

PTYPES = {
    'ptct2l': (1.5 * 2 * ELL, ELL, 2 * ELL),   # m-cost, pt width, ct width
    'ptct2K': (1.5 * 2 * K, K, 2 * K),
    'p2l': (2.0 * ELL, ELL, 2 * ELL),
    'p2K': (2.0 * K, K, 2 * K),
    'ptct3l': (1.5 * 3 * ELL, ELL, 3 * ELL),
    'p3K': (3.0 * K, K, 3 * K),
    'ptct1K': (1.5 * K, K, K),
    'p1K': (1.0 * K, K, K),
}


def head_ops(ell):
    return OPS.decomp(ell) + SH.beta(ell) * OPS.modup(
        SH.alpha, SH.raised(ell) - SH.alpha)


def gen_hits():
    h = head_ops(ELL)
    ks = OPS.kskip(2, K)
    md = 2 * OPS.moddown(ELL, SH.k_sp)
    mdm = 2 * OPS.moddown(ELL - 1, SH.k_sp + 1)
    rp = 2 * OPS.rescale(ELL)
    m_t, a_t = IP[1], IP[0] - IP[1]
    hits = []
    for nH in (1, 2, 3):
        for merged in (0, 1):
            mdv = mdm if merged else md
            for nM in (1, 2, 3, 4):
                for nR in (0, 1, 2):
                    for npm in (0, 15, 16, 17, 30, 31, 32, 33):
                        base_m = (nH * h.mults + 30 * ks.mults
                                  + nM * mdv.mults + nR * rp.mults
                                  + npm * ELL)
                        rem = m_t - base_m
                        for pi, (pname, (pm, _, _)) in enumerate(
                                PTYPES.items()):
                            nP = round(rem / pm)
                            if not (100 <= nP <= 300):
                                continue
                            if abs(rem - nP * pm) > TOL:
                                continue
                            base_a = (nH * h.adds + 30 * ks.adds
                                      + nM * mdv.adds + nR * rp.adds)
                            rem_a = a_t - base_a
                            for n35 in (0, 15, 16, 17, 32):
                                for n22 in range(0, 34):
                                    r2 = rem_a - 35 * n35 - 22 * n22
                                    if r2 < -TOL:
                                        continue
                                    for n44 in range(0, 600):
                                        r3 = r2 - 44 * n44
                                        if r3 < -TOL:
                                            break
                                        n70 = round(r3 / 70)
                                        if (n70 >= 0 and
                                                abs(r3 - 70 * n70) <= TOL):
                                            hits.append(
                                                (nH, merged, nM, nR, npm,
                                                 pi, nP, n35, n22, n44,
                                                 n70))
    return np.array(hits, dtype=np.int64)


def main():
    hits = gen_hits()
    print(f'{len(hits)} (m,a)-exact hits')
    nH, merged, nM, nR, npm = (hits[:, i] for i in range(5))
    pi, nP, n35, n22, n44, n70 = (hits[:, i] for i in range(5, 11))
    ptw = np.array([PTYPES[k][1] for k in PTYPES])[pi]
    ctw = np.array([PTYPES[k][2] for k in PTYPES])[pi]

    # write knobs: kskip park, product write, acc writes, pmodup write,
    # then read knobs: product reads, acc reads, md addend reads
    found = []
    for pk, pw_on, a70w, a44w, pmw in itertools.product(
            (0, 35, 70), (0, 1), (0, 70), (0, 44), (0, 35)):
        w = (nH * 138 + 30 * pk + nM * 114 - merged * nM * 2
             + nR * 42 + pw_on * nP * ctw + n70 * a70w + n44 * a44w
             + npm * pmw)
        mask_w = w == IP[3]
        if not mask_w.any():
            continue
        idx_w = np.nonzero(mask_w)[0]
        for prk, a70r, a44r, a35r, a22r, nMar in itertools.product(
                (0, 1, 2), (0, 70, 140), (0, 44, 88), (0, 35), (0, 22),
                (0, 1, 2)):
            sub = idx_w
            r = (nH[sub] * 114 + 30 * 70 + nM[sub] * 162
                 + np.minimum(nMar, nM[sub]) * 22 + nR[sub] * 44
                 + nP[sub] * (ptw[sub] + prk * ctw[sub])
                 + n70[sub] * a70r + n44[sub] * a44r
                 + n35[sub] * a35r + n22[sub] * a22r)
            ok = np.nonzero(r == IP[2])[0]
            for o in ok:
                found.append((tuple(hits[sub[o]]),
                              (pk, pw_on, a70w, a44w, pmw),
                              (prk, a70r, a44r, a35r, a22r, nMar)))
    print(f'{len(found)} exact (m,a,r,w) structures')
    names = list(PTYPES)
    seen = set()
    for hit, wk, rk in found:
        nHh, mg, nMh, nRh, npmh, pih, nPh, n35h, n22h, n44h, n70h = hit
        key = (hit, wk, rk)
        if key in seen:
            continue
        seen.add(key)
        print(f'  nH={nHh} mg={mg} nM={nMh} nR={nRh} npm={npmh} '
              f'{names[pih]} x{nPh} acc(K={n35h},l={n22h},2l={n44h},'
              f'2K={n70h}) wk={wk} rk={rk}')


if __name__ == '__main__':
    main()
