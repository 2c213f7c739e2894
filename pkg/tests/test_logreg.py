"""Packed logistic-regression circuit against its plaintext mirror.

The full refreshed 6-iteration run lives in test_acceptance; here the
iteration circuit is checked at depth budget (no bootstrap) where the
mirror must match to working precision, not just the training tolerance.
"""

import numpy as np
import pytest

from ckkslab import ckks, logreg


@pytest.fixture(scope="module")
def setup():
    cfg = logreg.LrConfig(iterations=2)
    x, y = logreg.make_blobs(cfg)
    params = ckks.make_params(logn=12, limbs=16, dnum=2, seed=cfg.seed)
    keys = ckks.keygen(params, rotations=tuple(sorted(logreg.lr_rotations(cfg))))
    mask = np.zeros(params.slots)
    mask[::cfg.block] = 1.0
    ct_x = ckks.encrypt(params, keys, logreg._pack(cfg, params, x, y), limbs=16)
    return logreg.LrContext(cfg, params, keys, None, ct_x, mask, 16), x, y


def test_packing_layout(setup):
    ctx, x, y = setup
    packed = logreg._pack(ctx.cfg, ctx.params, x, y)
    i, j = 17, 2
    assert packed[i * ctx.cfg.block + j] == y[i] * x[i, j]
    assert packed[i * ctx.cfg.block + ctx.cfg.features] == 0


def test_two_iterations_match_reference(setup):
    ctx, x, y = setup
    hist = logreg.plain_train(x, y, ctx.cfg)
    ct_w = ckks.encrypt(ctx.params, ctx.keys,
                        np.zeros(ctx.params.slots, dtype=complex), limbs=16)
    for it in (1, 2):
        ct_w = logreg.lr_iteration(ctx, ct_w)
        got = ckks.decrypt(ctx.params, ctx.keys, ct_w)[:ctx.cfg.features].real
        assert np.abs(got - hist[it]).max() < 1e-8
    assert ct_w.limbs == 16 - 10  # five rescales per iteration


def test_weights_replicate_across_blocks(setup):
    ctx, x, y = setup
    ct_w = ckks.encrypt(ctx.params, ctx.keys,
                        np.zeros(ctx.params.slots, dtype=complex), limbs=16)
    ct_w = logreg.lr_iteration(ctx, ct_w)
    slots = ckks.decrypt(ctx.params, ctx.keys, ct_w)
    blocks = slots.reshape(-1, ctx.cfg.block)
    assert np.abs(blocks - blocks[0]).max() < 1e-8
    assert np.abs(blocks[:, ctx.cfg.features:]).max() < 1e-8


def test_reference_trainer_learns():
    cfg = logreg.LrConfig()
    x, y = logreg.make_blobs(cfg)
    hist = logreg.plain_train(x, y, cfg)
    losses = [logreg.log_loss(x, y, w) for w in hist]
    assert losses[-1] < losses[0] - 0.05
    acc = np.mean(np.sign(x @ hist[-1]) == y)
    assert acc > 0.8


def test_csv_roundtrip(tmp_path):
    cfg = logreg.LrConfig()
    x, y = logreg.make_blobs(cfg)
    p = tmp_path / "data.csv"
    with open(p, "w") as fh:
        fh.write("label," + ",".join(f"f{i}" for i in range(cfg.features)) + "\n")
        for yi, xi in zip(y, x):
            fh.write(",".join(map(str, [yi, *xi])) + "\n")
    x2, y2 = logreg.load_dataset_csv(str(p), cfg.features)
    assert np.allclose(x2, x) and np.array_equal(y2, y)


def test_sigmoid_poly_tracks_logistic():
    t = np.linspace(-8, 8, 201)
    assert np.abs(logreg.sigmoid3(t) - 1 / (1 + np.exp(-t))).max() < 0.12
    assert np.abs(logreg.sigmoid3(0.0) - 0.5) < 1e-12
