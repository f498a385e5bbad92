"""
Entries of the inverse continuity matrix
========================================

The continuity matrix has 2 on the diagonal and weights summing to one
off it.  Its inverse alternates in sign and decays at least like
``(2/3) 2^-|i-j|``; on uniform grids the real rate is ``2 - sqrt(3)``.
"""

import numpy as np

from clampspline import SplineInput, assemble_system, certify_kershaw, inverse_columns

rng = np.random.default_rng(0)

# a grid whose spacings span three decades
h = 10.0 ** rng.uniform(-3, 0, 30)
x = np.concatenate(([0.0], np.cumsum(h)))
system = assemble_system(SplineInput.from_arrays(x, np.zeros_like(x), 0.0, 0.0))

rep = certify_kershaw(system)
print("certified:", rep.passed, " tightest relative margin:", f"{rep.tightest_margin:.3g}")

col = inverse_columns(system).first_column
bound = (2 / 3) * 2.0 ** -np.arange(col.size)
for i in range(10):
    print(f"row {i + 1:2d}  A^-1[i,1] = {col[i]:+.3e}   bound {bound[i]:.3e}")

# uniform grid: successive ratios settle at sqrt(3) - 2
u = assemble_system(SplineInput.from_arrays(np.arange(41.0), np.zeros(41), 0.0, 0.0))
c = inverse_columns(u).first_column
print("uniform ratios:", np.round(c[1:8] / c[:7], 6), " sqrt(3) - 2 =", round(np.sqrt(3) - 2, 6))
