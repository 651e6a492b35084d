"""
A full scan at p = 1000003
==========================

The million-scale version of the window experiment: one elliptic curve,
every admissible window start, and a hundred independently seeded
reference models to place the observed discrepancy inside the model's
distribution.  Runs in a few seconds.
"""

import time

from curvestats import ScanSpec, curve, experiment_thm1, model_reference
from curvestats.ffield import FieldSpec
from curvestats.polyff import poly

p = 1000003
fs = FieldSpec.from_prime(p)
C = curve(fs, 2, poly([1, 1, 0, 1], p))
spec = ScanSpec.full(p, window_len=50, block_len=5)

t0 = time.perf_counter()
rep = experiment_thm1(C, spec, m=3, trials=500, seed=1000)
print(f"scan of {spec.scan_len} windows in {time.perf_counter() - t0:.2f}s")
print(f"histogram counts mod 3: {rep.histogram.counts}")
print(f"discrepancy {float(rep.discrepancy):.3e}")
print(f"explicit bound {rep.bound:.1f}: {'holds' if rep.bound_pass else 'fails'}")

for c in rep.hypotheses:
    if not c.passed:
        print(f"  note: {c.name} outside the asymptotic regime ({c.detail})")

# place the curve inside the model distribution across many seeds
disc = float(rep.discrepancy)
below = 0
q99s = []
for s in range(100):
    model = model_reference(
        2, 3, 5, blocks=rep.params["blocks"], trials=500, seed=1000 + s
    )
    q99s.append(model.q99)
    below += disc <= model.q99
print(f"curve discrepancy below the model q99 in {below}/100 seeds")
print(f"q99 spread across seeds: [{min(q99s):.3e}, {max(q99s):.3e}]")
