"""
No end slopes can make this spline monotone
===========================================

Search for nondecreasing data whose spline overshoots in one interior
piece by so much that no choice of end derivatives in the admissible
box repairs it, then sweep that box to confirm.
"""

from clampspline import build_spline, prop42_search, prop42_verify, spline_is_monotone

found = prop42_search(seed=0, n=7)
print(found.status, "after", found.attempts_used, "attempts; offending piece", found.i0)
print("knots: ", found.data.partition.knots.round(3))
print("values:", found.data.values.round(3))
print("monotone with zero end slopes?", spline_is_monotone(build_spline(found.data)))

report = prop42_verify(found.data, found.i0, resolution=101)
c, sw = report.constants, report.sweep
print(f"overshoot {c.epsilon:.4f}, caps K1 = {c.K1:.3f}, Kn = {c.Kn:.3f}, window {c.window}")
print(f"swept {sw.points} end-slope pairs: {sw.monotone_points} monotone, "
      f"smallest overshoot {sw.min_overshoot:.4f}")
print("status:", report.status)
