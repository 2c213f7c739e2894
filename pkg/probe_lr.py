import numpy as np

from ckkslab import ckks, logreg

cfg = logreg.LrConfig(iterations=2)
x, y = logreg.make_blobs(cfg)
hist = logreg.plain_train(x, y, cfg)
print("plain w1:", hist[1], "w2:", hist[2])

params = ckks.make_params(logn=12, limbs=16, dnum=2, seed=cfg.seed)
rots = tuple(sorted(logreg.lr_rotations(cfg)))
keys = ckks.keygen(params, rotations=rots, need_conj=False)
ct_x = ckks.encrypt(params, keys, logreg._pack(cfg, params, x, y), limbs=16)
mask = np.zeros(params.slots)
mask[::cfg.block] = 1.0
ctx = logreg.LrContext(cfg, params, keys, None, ct_x, mask, 16)

ct_w = ckks.encrypt(params, keys, np.zeros(params.slots, dtype=complex), limbs=16)
for it in (1, 2):
    ct_w = logreg.lr_iteration(ctx, ct_w)
    got = ckks.decrypt(params, keys, ct_w)[:cfg.features].real
    print(f"iter {it}: enc {got}  err {np.abs(got - hist[it]).max():.3e}  "
          f"limbs {ct_w.limbs}")
