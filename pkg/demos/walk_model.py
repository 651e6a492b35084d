"""
The random walk reference model
===============================

Window counts behave like sums of L-step walks with increments d - d',
where d and d' count ell-th roots of independent uniform field elements.
This demo simulates the walk proportions directly, shows the exact
small-length inequalities, and prints the model quantiles a curve
discrepancy is compared against.
"""

import numpy as np

from curvestats import (
    WalkConfig,
    exact_prop21a,
    exact_prop21c,
    model_reference,
    simulate_phi,
)

ell, m, L = 2, 3, 12

cfg = WalkConfig(ell=ell, m=m, L=L, trials=20000, seed=271828)
sim = simulate_phi(cfg)
print(f"walk with ell = {ell}, m = {m}, L = {L}, {cfg.trials} trials")
for a in range(m):
    print(f"  phi({a}) = {sim.mean[a]:.4f} +- {sim.stderr[a]:.4f}")
bias = float(np.max(np.abs(sim.mean - 1 / m)))
print(f"largest deviation from 1/{m}: {bias:.4f}; a walk of finite length "
      f"keeps a bias of order 1/L, which the inequalities below bound")

# exact enumerations instead of sampling, for short walks
for Lx in (2, 3, 4, 5):
    res = exact_prop21a(ell, m, Lx)
    print(f"L = {Lx}: sum of squared deviations {res.lhs:.6f} "
          f"<= {res.bound:.6f}  ({'ok' if res.passed else 'FAIL'})")

res = exact_prop21c(2, 4)
print(f"two-class variant, L = 4: {res.lhs:.6f} <= {res.bound:.6f}")

# many independent blocks shrink the discrepancy like 1/blocks
for blocks in (100, 1000, 10000):
    model = model_reference(ell, m, L, blocks=blocks, trials=400, seed=9)
    print(f"blocks = {blocks:5d}: median discrepancy {model.q50:.3e}, "
          f"q99 {model.q99:.3e}")
