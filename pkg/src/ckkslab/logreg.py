"""Logistic regression trained on encrypted data with mid-training refreshes.

Packing: one sample per block of `block` slots (power of two >= features),
features laid out inside the block, labels folded into the features
(x_tilde = y * x). Weights live replicated across every block, so one
elementwise multiply plus a log2(block) rotate-and-add fold produces all
margins at the block heads; the degree-3 sigmoid is evaluated with the
head mask folded into its coefficients, and a cyclic stride-`block` fold
leaves the averaged gradient replicated in every block.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bootstrap, ckks
from .bootstrap import BootstrapPlan
from .ckks import Ciphertext, CkksParams, KeySet

# degree-3 odd fit of the logistic function on [-8, 8]
SIG_C0 = 0.5
SIG_C1 = 0.15012
SIG_C3 = -0.001593


def sigmoid3(t: np.ndarray) -> np.ndarray:
    """The polynomial stand-in both trainers share."""
    return SIG_C0 + SIG_C1 * t + SIG_C3 * t ** 3


@dataclass(frozen=True)
class LrConfig:
    features: int = 4
    block: int = 8
    samples: int = 256
    iterations: int = 6
    learning_rate: float = 1.0
    bootstrap_period: int = 3
    seed: int = 11

    def __post_init__(self):
        assert self.block >= self.features
        assert self.block & (self.block - 1) == 0
        assert self.samples & (self.samples - 1) == 0


def make_blobs(cfg: LrConfig) -> tuple[np.ndarray, np.ndarray]:
    """Two gaussian clusters with +-1 labels, features kept inside [-1, 1]."""
    rng = np.random.default_rng(cfg.seed)
    y = np.where(rng.random(cfg.samples) < 0.5, 1.0, -1.0)
    centers = rng.uniform(-0.3, 0.3, size=cfg.features)
    x = y[:, None] * centers[None, :] + 0.15 * rng.standard_normal(
        (cfg.samples, cfg.features))
    return np.clip(x, -1.0, 1.0), y


def load_dataset_csv(path: str, features: int) -> tuple[np.ndarray, np.ndarray]:
    """Rows of label,f1,...,fd; labels in {0,1} or {-1,1}."""
    import csv

    xs, ys = [], []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            try:
                vals = [float(v) for v in row]
            except (ValueError, IndexError):
                continue  # header or blank line
            ys.append(1.0 if vals[0] > 0 else -1.0)
            xs.append(vals[1:features + 1])
    return np.asarray(xs), np.asarray(ys)


def log_loss(x: np.ndarray, y: np.ndarray, w: np.ndarray) -> float:
    margins = y * (x @ w)
    return float(np.mean(np.log1p(np.exp(-margins))))


def plain_train(x: np.ndarray, y: np.ndarray, cfg: LrConfig) -> list[np.ndarray]:
    """Reference trainer: same packing-free math, same polynomial."""
    m = len(y)
    xt = y[:, None] * x
    w = np.zeros(cfg.features)
    history = [w.copy()]
    for _ in range(cfg.iterations):
        u = xt @ w
        v = (cfg.learning_rate / m) * sigmoid3(-u)
        w = w + xt.T @ v
        history.append(w.copy())
    return history


# ----------------------------------------------------------- encrypted side


@dataclass
class LrContext:
    cfg: LrConfig
    params: CkksParams
    keys: KeySet
    plan: BootstrapPlan
    ct_x: Ciphertext
    head_mask: np.ndarray          # 1 at each block head slot
    work_limbs: int


def _pack(cfg: LrConfig, params: CkksParams, x: np.ndarray, y: np.ndarray
          ) -> np.ndarray:
    assert cfg.samples * cfg.block == params.slots
    packed = np.zeros(params.slots, dtype=complex)
    xt = y[:, None] * x
    for i in range(cfg.samples):
        packed[i * cfg.block:i * cfg.block + cfg.features] = xt[i]
    return packed


def lr_rotations(cfg: LrConfig) -> set[int]:
    fold = {-(1 << k) for k in range(cfg.block.bit_length() - 1)}
    rep = {1 << k for k in range(cfg.block.bit_length() - 1)}
    samp = {-cfg.block * (1 << t) for t in range(cfg.samples.bit_length() - 1)}
    return fold | rep | samp


def make_context(cfg: LrConfig, x: np.ndarray, y: np.ndarray,
                 logn: int = 12, limbs: int = 32, dnum: int = 2,
                 radices: tuple[int, ...] = (64, 32)) -> LrContext:
    params = ckks.make_params(logn=logn, limbs=limbs, dnum=dnum, seed=cfg.seed)
    plan = bootstrap.make_bootstrap_plan(params, radices=radices)
    rots = tuple(sorted(lr_rotations(cfg) | set(plan.rotations)))
    keys = ckks.keygen(params, rotations=rots, need_conj=True)
    work = plan.output_limbs
    # five rescales per iteration; the refresh cadence must fit the budget
    assert work > 5 * cfg.bootstrap_period
    ct_x = ckks.encrypt(params, keys, _pack(cfg, params, x, y), limbs=work)
    head_mask = np.zeros(params.slots)
    head_mask[::cfg.block] = 1.0
    return LrContext(cfg, params, keys, plan, ct_x, head_mask, work)


def _fold(ctx: LrContext, ct: Ciphertext, shifts: list[int]) -> Ciphertext:
    for s in shifts:
        ct = ckks.add(ct, ckks.rotate(ctx.params, ctx.keys, ct, s))
    return ct


def lr_iteration(ctx: LrContext, ct_w: Ciphertext) -> Ciphertext:
    cfg, params, keys = ctx.cfg, ctx.params, ctx.keys
    scale = cfg.learning_rate / cfg.samples
    x = ckks.drop_limbs(ctx.ct_x, ct_w.limbs)

    u = ckks.new_mult(params, keys, x, ct_w)
    u = _fold(ctx, u, [-(1 << k) for k in range(cfg.block.bit_length() - 1)])
    # margins now sit at block heads; other slots carry cross-block sums
    # that the masked coefficients below wipe out
    s2 = ckks.new_mult(params, keys, u, u)
    s3 = ckks.new_mult(params, keys, s2, u)
    v = ckks.pt_combo(params,
                      [(u, -scale * SIG_C1 * ctx.head_mask),
                       (s3, -scale * SIG_C3 * ctx.head_mask)])
    v = ckks.pt_add(v, ckks.encode(params, scale * SIG_C0 * ctx.head_mask,
                                   v.delta, v.a.moduli))
    v = _fold(ctx, v, [1 << k for k in range(cfg.block.bit_length() - 1)])

    g = ckks.new_mult(params, keys, ckks.drop_limbs(x, v.limbs), v)
    g = _fold(ctx, g, [-cfg.block * (1 << t)
                       for t in range(cfg.samples.bit_length() - 1)])
    return ckks.add(ckks.drop_limbs(ct_w, g.limbs), g)


def encrypted_train(ctx: LrContext) -> tuple[np.ndarray, list[np.ndarray]]:
    """Runs the configured iterations, refreshing every bootstrap_period.

    Returns the final weights and the decrypted per-iteration history
    (diagnostic readout; training itself never decrypts).
    """
    cfg, params, keys = ctx.cfg, ctx.params, ctx.keys
    d = cfg.features
    ct_w = ckks.encrypt(params, keys, np.zeros(params.slots, dtype=complex),
                        limbs=ctx.work_limbs)
    history = [np.zeros(d)]
    for it in range(1, cfg.iterations + 1):
        ct_w = lr_iteration(ctx, ct_w)
        if it % cfg.bootstrap_period == 0:
            ct_w = bootstrap.bootstrap(params, keys, ctx.plan, ct_w)
        history.append(ckks.decrypt(params, keys, ct_w)[:d].real.copy())
    return history[-1], history


def sigmoid3_margin(u: np.ndarray) -> np.ndarray:
    return sigmoid3(-u)
