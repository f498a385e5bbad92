"""
How far does a wrong end slope reach?
=====================================

Change the left end derivative by one and compare the two splines piece
by piece against the a priori bound, which halves with every piece.
"""

import numpy as np

from clampspline import SplineInput, certify_pair_bound

x = np.linspace(0.0, 3.0, 31)
data = SplineInput.from_arrays(x, np.sin(x), 1.0, np.cos(3.0))

rep = certify_pair_bound(data, delta_left=1.0, delta_right=0.0, samples_per_piece=1000)
print("piece   bound        measured")
for row in rep.rows[:12]:
    bound = "not claimed" if row.bound is None else f"{row.bound:.3e}"
    print(f"{row.piece:5d}   {bound:<11}  {row.measured:.3e}")
print("all interior pieces within bound:", rep.passed)
