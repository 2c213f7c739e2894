"""Bootstrapping pieces vs dense-transform and scalar oracles."""

import numpy as np
import numpy.polynomial.chebyshev as C
import pytest
from hypothesis import given, settings, strategies as st

from ckkslab import bootstrap, ckks


def dense_transform(n: int) -> np.ndarray:
    """V[j, c] = zeta^(5^j * c), zeta a primitive 4n-th root of unity."""
    four_n = 4 * n
    v = np.empty((n, n), dtype=complex)
    e = 1
    for j in range(n):
        v[j] = np.exp(2j * np.pi * (e * np.arange(n) % four_n) / four_n)
        e = e * 5 % four_n
    return v


SPLITS = [(16, (4, 4)), (16, (2, 8)), (16, (16,)), (32, (2, 4, 4)),
          (64, (8, 8)), (64, (4, 4, 4)), (64, (2, 4, 8))]


@pytest.mark.parametrize("n,radices", SPLITS)
def test_stage_composition_matches_dense_transform(n, radices):
    v = dense_transform(n)
    pi = bootstrap.digit_reversal(n, radices)
    rng = np.random.default_rng(7)
    m = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    x = v @ m

    # coeff->slot: inverse stages, ascending split order, recover m in
    # digit-reversed order
    y = x.copy()
    for u in range(len(radices)):
        d = bootstrap.stage_diagonals(n, radices, u, inverse=True)
        y = bootstrap.apply_stage_plain(d, y)
    assert np.allclose(y, m[pi], atol=1e-9)

    # slot->coeff: forward stages, descending order, rebuild V m
    z = m[pi].astype(complex)
    for u in range(len(radices) - 1, -1, -1):
        d = bootstrap.stage_diagonals(n, radices, u, inverse=False)
        z = bootstrap.apply_stage_plain(d, z)
    assert np.allclose(z, x, atol=1e-9)


@pytest.mark.parametrize("n,radices", SPLITS)
def test_stage_diagonal_counts(n, radices):
    t = len(radices)
    fwd = [len(bootstrap.stage_diagonals(n, radices, u, inverse=False))
           for u in range(t - 1, -1, -1)]
    inv = [len(bootstrap.stage_diagonals(n, radices, u, inverse=True))
           for u in range(t)]
    assert inv == bootstrap.stage_diag_counts(radices, inverse=True)
    assert fwd == bootstrap.stage_diag_counts(radices, inverse=False)
    # wraparound stage contributes r_1 diagonals, the rest 2r - 1
    assert inv[0] == radices[0]


@given(st.lists(st.sampled_from([2, 4, 8]), min_size=1, max_size=3))
@settings(max_examples=30, deadline=None)
def test_digit_reversal_is_a_permutation(radices):
    n = int(np.prod(radices))
    pi = bootstrap.digit_reversal(n, tuple(radices))
    assert sorted(pi) == list(range(n))


def test_cos_chebyshev_fit_error_bound():
    coeffs = bootstrap.cheb_cos_coeffs(161 / 32.0, 63)
    grid = np.linspace(-1, 1, 4001)
    err = np.abs(C.chebval(grid, coeffs) - np.cos(2 * np.pi * (161 / 32.0) * grid))
    assert err.max() < 2.0 ** -38
    assert len(coeffs) == 64


def _scalar_ps(coeffs: np.ndarray, y: float) -> float:
    """Scalar mirror of the ciphertext evaluation tree (same splits)."""
    deg = len(coeffs) - 1
    t = {1: y}
    for k in (2, 4, 8, 16, 32):
        if k <= deg:
            t[k] = 2 * t[k // 2] ** 2 - 1
    for k in (3, 5, 6, 7):
        if k <= min(deg, 7):
            a, b = (2, 1) if k == 3 else (4, k - 4)
            t[k] = 2 * t[a] * t[b] - t[abs(2 * a - k)]

    def ev(cs):
        d = len(cs) - 1
        if d <= 7:
            return cs[0] + sum(cs[j] * t[j] for j in range(1, d + 1))
        g = 8
        while g * 2 <= d:
            g *= 2
        tg = np.zeros(g + 1)
        tg[g] = 1.0
        quo, rem = C.chebdiv(cs, tg)
        return ev(quo) * t[g] + ev(rem)

    return ev(coeffs)


@given(st.floats(-1, 1), st.integers(0, 2 ** 32 - 1))
@settings(max_examples=40, deadline=None)
def test_evaluation_tree_matches_chebval(y, seed):
    coeffs = np.random.default_rng(seed).standard_normal(64)
    want = C.chebval(y, coeffs)
    assert abs(_scalar_ps(coeffs, y) - want) < 1e-10 * max(1.0, abs(want))


def test_plan_level_schedule():
    p = ckks.make_params(logn=11, limbs=18, dnum=2, seed=5)
    plan = bootstrap.make_bootstrap_plan(p, radices=(32, 32))
    assert [s.entry_limbs for s in plan.cts] == [18, 17]
    # 7 levels for the degree-63 tree, 5 for the double-angle passes
    assert [s.entry_limbs for s in plan.stc] == [4, 3]
    assert plan.output_limbs == 2
    assert plan.output_limbs > plan.input_limbs


def test_full_bootstrap_refreshes_level_and_precision():
    p = ckks.make_params(logn=11, limbs=18, dnum=2, seed=5)
    plan = bootstrap.make_bootstrap_plan(p, radices=(32, 32))
    keys = ckks.keygen(p, rotations=tuple(sorted(plan.rotations)), need_conj=True)
    rng = np.random.default_rng(1)
    z = (rng.standard_normal(p.slots) + 1j * rng.standard_normal(p.slots)) * 0.3
    ct = ckks.encrypt(p, keys, z, limbs=plan.input_limbs)
    out = bootstrap.bootstrap(p, keys, plan, ct)
    assert out.limbs == plan.output_limbs > ct.limbs
    err = np.abs(ckks.decrypt(p, keys, out) - z).max()
    assert err < 2.0 ** -8, err
