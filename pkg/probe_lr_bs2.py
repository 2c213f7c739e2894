import numpy as np

from ckkslab import bootstrap, ckks, logreg

cfg = logreg.LrConfig()
x, y = logreg.make_blobs(cfg)
hist = logreg.plain_train(x, y, cfg)
ctx = logreg.make_context(cfg, x, y)
params, keys = ctx.params, ctx.keys

ct_w = ckks.encrypt(params, keys, np.zeros(params.slots, dtype=complex),
                    limbs=ctx.work_limbs)
for it in range(1, cfg.iterations + 1):
    ct_w = logreg.lr_iteration(ctx, ct_w)
    if it % cfg.bootstrap_period == 0:
        before = ckks.decrypt(params, keys, ct_w)
        print(f"pre-bs@{it}: limbs={ct_w.limbs} delta/D-1={ct_w.delta/params.delta-1:.3e} "
              f"max|slot|={np.abs(before).max():.4f} "
              f"err_vs_plain={np.abs(before[:4].real - hist[it]).max():.3e}")
        ct_w = bootstrap.bootstrap(params, keys, ctx.plan, ct_w)
        after = ckks.decrypt(params, keys, ct_w)
        print(f"post-bs@{it}: limbs={ct_w.limbs} delta/D-1={ct_w.delta/params.delta-1:.3e} "
              f"bs_err={np.abs(after - before).max():.3e}")
