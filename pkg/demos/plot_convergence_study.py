"""
Interior convergence with a perturbed end slope
===============================================

With a wrong left slope the spline no longer converges at fourth order
near that end.  Away from both ends, on the index set where
``2^-i`` and ``2^(i-n)`` are below ``h^p``, the error still shrinks fast.
"""

import numpy as np

from clampspline import convergence_study

for p in (1, 2, 3, 5):
    rows = convergence_study(np.sin, np.cos, (0.0, 3.0), 6, p, perturb_left=1.0)
    print(f"p = {p}")
    for r in rows:
        if r.skipped:
            print(f"  h = {r.hhat:.5f}  no admissible pieces")
            continue
        order = "" if r.observed_order is None else f"order {r.observed_order:.2f}"
        print(f"  h = {r.hhat:.5f}  pieces {r.omega_min}..{r.omega_max}  "
              f"error {r.max_error:.3e}  {order}")

# the observed orders track 1 + p log2(2 + sqrt 3), the decay of the inverse
print("1 + p log2(2 + sqrt 3):", [round(float(1 + p * np.log2(2 + np.sqrt(3))), 2) for p in (1, 2)])
