"""
Character sums and stride censuses
==================================

The window machinery rests on cancellation in sums of chi(P(x)) and on
censuses that count positions whose probe values land in prescribed
character classes.  Both come with explicit error bounds; this demo
prints the observed magnitudes next to them.
"""

from curvestats import census_m, joint_census, weil_check
from curvestats.ffield import FieldSpec, character
from curvestats.polyff import poly, x_poly

p = 10007
fs = FieldSpec.from_prime(p)
chi = character(fs, 2)
P = poly([1, 1, 0, 1], p)

print(f"sums of chi(P(x)) for P = {P} over F_{p}")
for frac in (10, 4, 2, 1):
    hi = p // frac - 1
    rep = weil_check(P, chi, 0, hi)
    print(f"  x in [0, {hi:5d}]: |sum| = {rep.magnitude:8.2f}, "
          f"bound {rep.bound:.2f}, passed {rep.passed}")

rep = weil_check(P, chi, 0, p - 1)
print("complete-interval twisted sums:")
for t in rep.complete_twists:
    print(f"  twist {t.twist}: |sum| = {t.magnitude:.2f} <= {t.bound:.2f}")

# census: how many i in [0, N] have P(i + h) in given character classes
N = p - 2
for v in ([0], [1], [0, 1]):
    offsets = list(range(len(v)))
    res = census_m(P, chi, 1, offsets, N, v)
    print(f"v = {v}: count {res.count}, predicted {float(res.prediction):.1f}, "
          f"residual {res.residual:.1f} <= {res.main_bound + res.slack:.1f}")

# a joint census over two independent polynomials
pair = [x_poly(p), poly([1, 1], p)]
res = joint_census(pair, chi, 1, [0], N, [[0], [1]])
print(f"joint census of x, x+1 at targets (0, 1): count {res.count}, "
      f"predicted {float(res.prediction):.1f}, residual {res.residual:.1f}")
