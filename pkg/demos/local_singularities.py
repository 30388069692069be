"""Local singularity types at the basket points of an anticanonical surface."""
from __future__ import annotations

import random

from keyvar import singcheck as sc
from keyvar.classdb import load_class

# %% The surface section table of No.1218
rec = load_class(1218)
table = rec.section_table()
print("cut degrees of the surface:", table.cut_degrees)
for (weight, coord, _), rhs in zip(table.rows, table.symbolic().values()):
    print(f"  [{weight}] {coord} = {rhs}")
pres = rec.presentation()
print("surviving coordinates:", table.surviving(pres))

# %% Localize at each point and read off the quotient type
weights = rec.weights.as_dict()
rng = random.Random(1)
for target in rec.lpc_targets:
    res = sc.run_lpc_target(pres, table, weights, target, rng)
    print(f"{target['label']:>10}: chart {target['chart']}, alpha {res['alpha']}, "
          f"rank {res['rank']}, survivors {res['surviving']}, "
          f"type {res['type']} (expected {target['expected']})")

# %% The same check through the packaged verifier, for several seeds
for seed in (1, 2, 3):
    rep = sc.verify_class_lpc(rec, seed)
    print(seed, "ok" if rep["ok"] else "FAILED", [t["type"] for t in rep["targets"]])
