import time

import numpy as np

from ckkslab import logreg

cfg = logreg.LrConfig()
x, y = logreg.make_blobs(cfg)
hist = logreg.plain_train(x, y, cfg)

t0 = time.time()
ctx = logreg.make_context(cfg, x, y)
print(f"setup {time.time() - t0:.1f}s  work_limbs={ctx.work_limbs}  "
      f"rot_keys={len(ctx.keys.rot)}")

t0 = time.time()
w, enc_hist = logreg.encrypted_train(ctx)
print(f"train {time.time() - t0:.1f}s")
for it in range(1, cfg.iterations + 1):
    err = np.abs(enc_hist[it] - hist[it]).max()
    print(f"iter {it}: err {err:.3e}")
print("final err", np.abs(w - hist[-1]).max(), "bound", 2.0 ** -6)
print("loss plain", logreg.log_loss(x, y, hist[-1]),
      "enc", logreg.log_loss(x, y, w))
