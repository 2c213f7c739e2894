import yaml
from ckkslab.costmodel.conventions import OpCount, PaperOps, RnsShape
from ckkslab.costmodel.dramflow import OptimizationSet, Traffic
from ckkslab.costmodel import composites as C

ops = PaperOps(17)
shape = RnsShape(alpha=12, k_sp=13)
f = OptimizationSet()   # baseline: fusion + address mapping only
ell = 35
N = 1 << 17
GOP = lambda o: o * N / 1e9
GB = lambda t: t * N * 8 / 1e9

targets = yaml.safe_load(open('src/ckkslab/data/targets.yaml'))

rows = {
    'ModDown': C.row_moddown(ops, shape, ell, f),
    'ModUp': C.row_modup(ops, shape, ell, f),
    'Decomp': C.row_decomp(ops, shape, ell, f),
    'KSKInnerProd': C.row_kskip(ops, shape, ell, f),
    'Automorph': C.row_automorph(ops, shape, ell, f),
    'PtAdd': C.pt_add(ops, shape, ell, f),
    'Add': C.ct_add(ops, shape, ell, f),
    'PtMult': C.pt_mult(ops, shape, ell, f),
    'Mult': C.mult(ops, shape, ell, f),
    'Rotate': C.rotate(ops, shape, ell, f),
    'HRotate8': C.hrotate(ops, shape, ell, f, 8),
}

flat = {}
for section in ('auxiliary', 'apis'):
    flat.update({k: v for k, v in targets[section].items() if k != 'columns'})

for name, cost in rows.items():
    t = flat[name]
    got = [GOP(cost.ops.total), GOP(cost.ops.mults),
           GB(cost.traffic.reads), GB(cost.traffic.writes),
           GB(cost.traffic.keys)]
    want = [t[0], t[1], t[3], t[4], t[5]]
    err = max(abs(g - w) / max(w, 1e-9) if w else abs(g) for g, w in zip(got, want))
    mark = 'OK ' if err < 0.005 else 'BAD'
    print(f'{mark} {name:14s} err={err:.4%}')
    if err >= 0.005:
        print('    got ', [round(x, 4) for x in got])
        print('    want', want)
