"""
Building and evaluating a clamped spline
========================================

Interpolate ``sin`` on an uneven grid, supplying the two end slopes,
and look at the per-piece coefficients and the error between knots.
"""

import numpy as np

from clampspline import SplineInput, build_spline, evaluate, evaluate_derivative

x = np.array([0.0, 0.4, 0.9, 1.3, 2.0, 2.2, 3.0])
data = SplineInput.from_arrays(x, np.sin(x), np.cos(x[0]), np.cos(x[-1]))
spline = build_spline(data)

# interior slopes come from the tridiagonal continuity system
print("knot derivatives:", np.round(spline.derivatives, 6))
print("cos at knots:    ", np.round(np.cos(x), 6))

# each piece is c1 + c2 s + c3 s^2 + c4 s^2 (s - h), with s = x - x_i
for piece in spline.pieces:
    print(f"[{piece.left_knot:.1f}, {piece.right_knot:.1f}]  "
          f"c = {piece.c1:+.4f} {piece.c2:+.4f} {piece.c3:+.4f} {piece.c4:+.4f}")

t = np.linspace(0, 3, 1001)
print("max |P - sin|  =", np.max(np.abs(evaluate(spline, t) - np.sin(t))))
print("max |P' - cos| =", np.max(np.abs(evaluate_derivative(spline, t) - np.cos(t))))
