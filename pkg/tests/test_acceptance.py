"""Acceptance suite.  Each criterion logs one PASS/FAIL line, collected in
the ``acceptance criteria`` section of the pytest summary."""

import time

import numpy as np
import pytest

from clampspline import (
    HermitePiece,
    assemble_system,
    build_spline,
    certify_kershaw,
    certify_pair_bound,
    convergence_study,
    derivative_perturbation,
    evaluate,
    midpoint_value,
    piece_is_monotone,
    prop42_search,
    prop42_verify,
)
from clampspline.spline_core import SplineInput, knot_second_derivative_jumps, knot_second_derivatives

from _gen import random_cubic, random_input, random_partition


def report(log, label, ok, detail):
    log.append(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")
    return ok


def test_c1_spline_correctness(acceptance_log):
    rng = np.random.default_rng(20_001)
    t0 = time.perf_counter()
    interp = jump = repro = 0.0
    for _ in range(500):
        n = int(rng.integers(3, 201))
        data = random_input(rng, n)
        sp = build_spline(data)
        f = data.values
        interp = max(interp, np.max(np.abs(evaluate(sp, data.partition.knots) - f) / (1 + np.abs(f))))
        j = knot_second_derivative_jumps(sp)
        if j.size:
            jump = max(jump, np.max(np.abs(j)) / np.max(np.abs(knot_second_derivatives(sp))))

        q, dq = random_cubic(rng)
        x = random_partition(rng, n).knots
        cub = build_spline(SplineInput.from_arrays(x, q(x), dq(x[0]), dq(x[-1])))
        t = np.linspace(x[0], x[-1], 4 * n)
        qt = q(t)
        repro = max(repro, np.max(np.abs(evaluate(cub, t) - qt)) / (1 + np.max(np.abs(qt))))
    elapsed = time.perf_counter() - t0
    ok = interp <= 1e-12 and jump <= 1e-9 and repro <= 1e-10 and elapsed < 10
    assert report(
        acceptance_log, "1 spline correctness", ok,
        f"interp {interp:.1e} (<=1e-12), C2 jump {jump:.1e} (<=1e-9), "
        f"cubic {repro:.1e} (<=1e-10), {elapsed:.2f}s (<10s)",
    )


def test_c2_inverse_certification(acceptance_log):
    rng = np.random.default_rng(20_002)
    t0 = time.perf_counter()
    failures = 0
    margin = np.inf
    for _ in range(1000):
        rep = certify_kershaw(assemble_system(random_input(rng, int(rng.integers(3, 101)))))
        failures += rep.sign_violations + rep.magnitude_violations
        margin = min(margin, rep.tightest_margin)
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 30
    assert report(
        acceptance_log, "2 inverse sign/decay certification", ok,
        f"{failures} violations over 1000 systems, tightest margin {margin:.3g}, {elapsed:.2f}s (<30s)",
    )


def test_c3_perturbation_identity(acceptance_log):
    rng = np.random.default_rng(20_003)
    worst = 0.0
    for _ in range(500):
        data = random_input(rng, int(rng.integers(3, 201)))
        dl, dr = rng.uniform(-10, 10, 2)
        P = build_spline(data)
        Q = build_spline(data.with_boundary(data.left_derivative + dl, data.right_derivative + dr))
        direct = P.derivatives[1:-1] - Q.derivatives[1:-1]
        got = derivative_perturbation(assemble_system(data), dl, dr)
        scale = max(np.max(np.abs(P.derivatives)), np.max(np.abs(Q.derivatives)), abs(dl), abs(dr))
        worst = max(worst, np.max(np.abs(got - direct)) / scale)
    assert report(
        acceptance_log, "3 analytic perturbation vs double solve", worst <= 1e-11,
        f"max relative difference {worst:.1e} (<=1e-11)",
    )


def test_c4_pair_bound(acceptance_log):
    rng = np.random.default_rng(20_004)
    violations = 0
    ratio = 0.0
    for _ in range(500):
        data = random_input(rng, int(rng.integers(4, 101)))
        dl, dr = rng.uniform(-10, 10, 2)
        rep = certify_pair_bound(data, dl, dr, samples_per_piece=1000)
        violations += len(rep.violations)
        for r in rep.rows:
            if r.bound:
                ratio = max(ratio, r.measured / r.bound)
    assert report(
        acceptance_log, "4 pair bound on interior pieces", violations == 0,
        f"{violations} violations, largest measured/bound {ratio:.3f}",
    )


@pytest.mark.parametrize("p", [1, 2, 3, 5])
def test_c5_convergence_order(acceptance_log, p):
    t0 = time.perf_counter()
    rows = convergence_study(np.sin, np.cos, (0.0, 3.0), 6, p, perturb_left=1.0)
    elapsed = time.perf_counter() - t0
    target = min(p + 1, 4)
    order = rows[-1].observed_order
    ok = order is not None and abs(order - target) <= 0.2 and elapsed < 10
    shown = "n/a" if order is None else f"{order:.3f}"
    assert report(
        acceptance_log, f"5 interior order p={p}", ok,
        f"observed {shown}, target {target} +/- 0.2, {elapsed:.2f}s (<10s)",
    )


def test_c6_endpoint_obstruction(acceptance_log):
    t0 = time.perf_counter()
    found = prop42_search(seed=0, n=7, attempts=10_000)
    rep = prop42_verify(found.data, found.i0, resolution=101) if found.found else None
    elapsed = time.perf_counter() - t0
    if rep is None:
        assert report(acceptance_log, "6 endpoint obstruction", False, "search exhausted")
    sw, eps = rep.sweep, rep.constants.epsilon
    threshold = eps / 3 - 1e-9 * (1 + abs(eps))
    ok = (
        rep.status == "verified"
        and sw.monotone_points == 0
        and sw.min_overshoot >= threshold
        and elapsed < 60
    )
    assert report(
        acceptance_log, "6 endpoint obstruction", ok,
        f"found after {found.attempts_used} attempts (i0={found.i0}), "
        f"{sw.monotone_points} monotone of {sw.points} sweep points, "
        f"min overshoot {sw.min_overshoot:.4g} >= {threshold:.4g}, {elapsed:.2f}s (<60s)",
    )


def _sampled_min(m, d0, d1, N):
    t = np.linspace(0.0, 1.0, N)[None, :]
    # P'(t h) in the Hermite basis, independent of the coefficient form
    dp = d0[:, None] * (1 - t) * (1 - 3 * t) + d1[:, None] * t * (3 * t - 2) + 6 * m[:, None] * t * (1 - t)
    return dp.min(axis=1)


def test_c7_exact_monotonicity(acceptance_log):
    rng = np.random.default_rng(20_007)
    count, N = 10_000, 10_000
    h = 10.0 ** rng.uniform(-2, 2, count)
    m = 10.0 ** rng.uniform(-2, 2, count) * rng.choice([-1.0, 0.0, 1.0], count, p=[0.1, 0.05, 0.85])
    unit = np.where(m == 0, 1.0, np.abs(m))
    alpha, beta = rng.uniform(-0.5, 4.5, (2, count))
    # a third of the pieces sit on the ellipse a^2 + ab + b^2 - 6a - 6b + 9 = 0,
    # where the quadratic P' has a double root
    edge = rng.random(count) < 1 / 3
    a_e = rng.uniform(0.0, 4.0, count)
    b_e = (6 - a_e + rng.choice([-1.0, 1.0], count) * np.sqrt(3 * a_e * (4 - a_e))) / 2
    d0 = np.where(edge, a_e, alpha) * unit
    d1 = np.where(edge, b_e, beta) * unit
    f0 = rng.normal(size=count)

    t0 = time.perf_counter()
    exact = np.empty(count, bool)
    for k in range(count):
        c3 = (m[k] - d0[k]) / h[k]
        c4 = (d1[k] + d0[k] - 2 * m[k]) / h[k] ** 2
        exact[k] = piece_is_monotone(HermitePiece(0.0, h[k], f0[k], d0[k], c3, c4, d0[k], d1[k]))
    sampled = np.concatenate([
        _sampled_min(m[s], d0[s], d1[s], N) for s in np.array_split(np.arange(count), 40)
    ])
    # a grid of step 1/(N-1) misses the minimum of the quadratic by at most
    # |d^2P'/dt^2| / (8 (N-1)^2)
    scale = np.maximum.reduce([np.abs(d0), np.abs(d1), np.abs(m), np.ones(count)])
    band = 1e-12 * scale + np.abs(6 * (d0 + d1 - 2 * m)) / (8 * (N - 1) ** 2)
    clear = np.abs(sampled) > band
    disagree = int(np.sum(clear & (exact != (sampled > 0))))
    elapsed = time.perf_counter() - t0
    assert report(
        acceptance_log, "7 exact monotonicity vs sampling oracle", disagree == 0,
        f"{disagree} disagreements over {int(clear.sum())} decided pieces "
        f"({count - int(clear.sum())} inside the tolerance band, {int(exact.sum())} monotone), {elapsed:.1f}s",
    )


def test_c8_midpoint_identity(acceptance_log):
    rng = np.random.default_rng(20_008)
    worst = 0.0
    pieces = 0
    for _ in range(100):
        sp = build_spline(random_input(rng, int(rng.integers(3, 201))))
        for i in range(1, sp.n):
            p = sp.piece(i)
            # evaluate at the exact local midpoint s = h/2; rebuilding it from
            # global coordinates adds knot rounding that is not part of the identity
            h = p.width
            s = 0.5 * h
            hermite = p.c1 + p.c2 * s + p.c3 * s * s + p.c4 * s * s * (s - h)
            scale = max(abs(sp.values[i - 1]), abs(sp.values[i]),
                        h * abs(p.left_derivative), h * abs(p.right_derivative), 1e-300)
            worst = max(worst, abs(hermite - midpoint_value(sp, i)) / scale)
            pieces += 1
    assert report(
        acceptance_log, "8 midpoint closed form", worst <= 1e-12,
        f"max relative difference {worst:.1e} over {pieces} pieces (<=1e-12)",
    )
