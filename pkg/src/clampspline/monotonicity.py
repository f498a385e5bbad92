"""Monotonicity of spline pieces and the endpoint-derivative obstruction.

For nondecreasing data, a spline whose interior overshoots the data
somewhere cannot always be repaired by re-choosing only the two endpoint
derivatives: keeping the first and last pieces monotone confines those
derivatives to a box ``[0, K1] x [0, Kn]``, and on that box the induced
change of the interior derivatives is too small (geometric decay of the
inverse of the continuity matrix) to remove an overshoot far enough from
the ends.

This module decides piece monotonicity exactly, computes the constants of
that argument (caps ``k1, kn, K1, Kn``, ratios ``R1, Rn``, the admissible
window for the overshooting piece), sweeps the box to confirm that no
endpoint choice yields a monotone spline, and searches for qualifying data.

Piece numbers are 1-based: piece ``i`` spans ``[x_i, x_{i+1}]``.
Nonincreasing data are handled by negating the values.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Literal, NamedTuple

import numpy as np

from .bounds import inverse_columns
from .spline_core import (
    CubicSpline,
    HermitePiece,
    Partition,
    SplineInput,
    assemble_system,
    build_spline,
    compute_slopes,
    midpoint_value,
    solve_tridiagonal,
)

__all__ = [
    "Prop42HypothesisError",
    "MonotonicityVerdict",
    "Prop42Constants",
    "SweepSummary",
    "Prop42Report",
    "SearchResult",
    "fritsch_carlson_necessary",
    "piece_is_monotone",
    "spline_is_monotone",
    "prop42_constants",
    "prop42_check_hypotheses",
    "prop42_verify",
    "prop42_search",
]

Direction = Literal["nondecreasing", "nonincreasing"]

MONO_RTOL = 1e-12
CAP_TOL = 1e-9
OVERSHOOT_TOL = 1e-9


class Prop42HypothesisError(ValueError):
    """Data for which the constants are not defined (even ``n``, ``n < 5``,
    decreasing values)."""


def fritsch_carlson_necessary(d_left: float, d_right: float, slope: float, atol: float = 0.0) -> bool:
    """Sign condition every monotone cubic Hermite piece satisfies.

    Both endpoint derivatives must carry the sign of the secant slope (a zero
    derivative is allowed); if the slope vanishes, both derivatives must
    vanish.  Values with magnitude ``<= atol`` count as zero.
    """
    if abs(slope) <= atol:
        return abs(d_left) <= atol and abs(d_right) <= atol
    s = math.copysign(1.0, slope)
    return s * d_left >= -atol and s * d_right >= -atol


def _scale(piece: HermitePiece) -> float:
    return max(abs(piece.left_derivative), abs(piece.right_derivative), abs(piece.slope), 1.0)


def _min_derivative(piece: HermitePiece) -> float:
    """Exact minimum of the quadratic ``P'`` over the piece."""
    h = piece.width
    lo = min(piece.left_derivative, piece.right_derivative)
    if piece.c4 != 0.0:
        # P'(s) = 3 c4 s^2 + 2 (c3 - c4 h) s + c2
        s = (piece.c4 * h - piece.c3) / (3.0 * piece.c4)
        if 0.0 < s < h:
            lo = min(lo, piece.c2 + 2.0 * piece.c3 * s + piece.c4 * s * (3.0 * s - 2.0 * h))
    return lo


def piece_is_monotone(
    piece: HermitePiece, direction: Direction = "nondecreasing", rtol: float = MONO_RTOL
) -> bool:
    if direction == "nonincreasing":
        piece = HermitePiece(
            piece.left_knot, piece.right_knot, -piece.c1, -piece.c2, -piece.c3,
            -piece.c4, -piece.left_derivative, -piece.right_derivative,
        )
    elif direction != "nondecreasing":
        raise ValueError(f"unknown direction {direction!r}")
    return _min_derivative(piece) >= -rtol * _scale(piece)


class MonotonicityVerdict(NamedTuple):
    monotone: bool
    first_offending_piece: int | None


def spline_is_monotone(spline: CubicSpline, direction: Direction = "nondecreasing") -> MonotonicityVerdict:
    for i in range(1, spline.n):
        if not piece_is_monotone(spline.piece(i), direction):
            return MonotonicityVerdict(False, i)
    return MonotonicityVerdict(True, None)


@dataclass(frozen=True)
class Prop42Constants:
    i0: int
    k1: float
    kn: float
    K1: float
    Kn: float
    lam1: float
    mu_last: float
    midpoint: float
    epsilon: float
    R1: float | None
    Rn: float | None
    window: tuple[float, float] | None
    """Half-open ``[lo, hi)`` the overshooting piece number must lie in."""
    A_i0_first: float
    A_i0_last: float
    """``|Ainv|`` entries at row ``i0`` (1-based) of the first and last columns,
    the two entries the window is designed to make small."""

    def to_dict(self) -> dict:
        d = asdict(self)
        d["window"] = None if self.window is None else list(self.window)
        return d


def _check_data(data: SplineInput) -> None:
    n = data.n
    if n % 2 == 0:
        raise Prop42HypothesisError(f"n must be odd (got n = {n})")
    if n < 5:
        raise Prop42HypothesisError(f"n must be at least 5 (got n = {n})")
    if np.any(np.diff(data.values) < 0):
        k = int(np.flatnonzero(np.diff(data.values) < 0)[0])
        raise Prop42HypothesisError(f"data must be nondecreasing; f[{k + 2}] < f[{k + 1}]")


def prop42_constants(data: SplineInput, i0: int, spline: CubicSpline | None = None) -> Prop42Constants:
    """Caps, overshoot and window for candidate piece ``i0``.

    ``k1`` and ``kn`` are the first and last interior derivatives the system
    produces when both endpoint derivatives are zero; with ``n`` odd the first
    and last inverse columns are positive in rows 1 and ``n-2``, so any
    nonnegative endpoint values can only lower them.
    """
    _check_data(data)
    n = data.n
    if not 1 <= i0 <= n - 1:
        raise IndexError(f"piece index {i0} outside 1..{n - 1}")
    if spline is None:
        spline = build_spline(data)
    slopes = compute_slopes(data)
    m = slopes.slopes
    system = assemble_system(data.with_boundary(0.0, 0.0), slopes)
    free = solve_tridiagonal(system)
    k1, kn = float(free[0]), float(free[-1])
    K1 = k1 + 4.0 * float(m[0])
    Kn = kn + 4.0 * float(m[-1])
    lam1, mu_last = float(system.lam[0]), float(system.mu[-1])

    mid = midpoint_value(spline, i0)
    eps = mid - float(data.values[i0])
    R1 = Rn = None
    window = None
    if eps > 0 and K1 > 0:
        R1 = eps / (8.0 * K1 * lam1)
    if eps > 0 and Kn > 0:
        Rn = eps / (8.0 * mu_last * Kn)
    if R1 is not None and Rn is not None:
        window = (max(1.0, 1.0 - math.log2(R1)), min(n - 2.0, n - 3.0 + math.log2(Rn)))

    cols = inverse_columns(system)
    row = min(i0, n - 2) - 1
    return Prop42Constants(
        i0=int(i0), k1=k1, kn=kn, K1=K1, Kn=Kn, lam1=lam1, mu_last=mu_last,
        midpoint=mid, epsilon=eps, R1=R1, Rn=Rn, window=window,
        A_i0_first=abs(float(cols.first_column[row])),
        A_i0_last=abs(float(cols.last_column[row])),
    )


@dataclass(frozen=True)
class SweepSummary:
    resolution: int
    box: tuple[float, float]
    """Upper corners ``(K1, Kn)`` of the admissible box (lower corner is 0)."""
    points: int
    end_monotone_points: int
    monotone_points: int
    min_overshoot: float | None
    """Minimum over sweep pairs whose first and last pieces are monotone."""
    overshoot_threshold: float
    overshoot_violations: int
    cap_violations: int
    passed: bool


@dataclass(frozen=True)
class Prop42Report:
    status: str
    """``hypotheses_not_met``, ``hypotheses_met``, ``verified``,
    ``verification_failed`` or ``hypothesis_error``."""
    n: int
    i0: int
    hypotheses: dict[str, bool]
    constants: Prop42Constants | None = None
    sweep: SweepSummary | None = None
    notes: tuple[str, ...] = ()

    @property
    def hypotheses_met(self) -> bool:
        return bool(self.hypotheses) and all(self.hypotheses.values())

    @property
    def window(self) -> tuple[float, float] | None:
        return None if self.constants is None else self.constants.window

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "n": self.n,
            "i0": self.i0,
            "hypotheses_met": self.hypotheses_met,
            "hypotheses": dict(self.hypotheses),
            "constants": None if self.constants is None else self.constants.to_dict(),
            "window": None if self.window is None else list(self.window),
            "sweep": None if self.sweep is None else asdict(self.sweep),
            "notes": list(self.notes),
        }


def prop42_check_hypotheses(data: SplineInput, i0: int) -> Prop42Report:
    """Evaluate every hypothesis for piece ``i0``; failures are reported."""
    n = data.n
    try:
        _check_data(data)
    except Prop42HypothesisError as exc:
        hyp = {
            "n_odd": n % 2 == 1,
            "n_at_least_5": n >= 5,
            "data_nondecreasing": bool(np.all(np.diff(data.values) >= 0)),
        }
        return Prop42Report("hypothesis_error", n, int(i0), hyp, notes=(str(exc),))

    spline = build_spline(data)
    c = prop42_constants(data, i0, spline)
    hyp = {
        "n_odd": True,
        "n_at_least_5": True,
        "data_nondecreasing": True,
        "first_piece_monotone": piece_is_monotone(spline.piece(1)),
        "last_piece_monotone": piece_is_monotone(spline.piece(n - 1)),
        "K1_positive": c.K1 > 0,
        "Kn_positive": c.Kn > 0,
        "overshoot_positive": c.epsilon > 0,
        "i0_in_window": c.window is not None and c.window[0] <= i0 < c.window[1],
    }
    notes = []
    if i0 == 1:
        notes.append("i0 = 1: the pair bound is only stated for pieces 2..n-2")
    if c.window is not None and not c.window[0] < c.window[1]:
        notes.append("window is empty")
    ok = all(hyp.values())
    return Prop42Report(
        "hypotheses_met" if ok else "hypotheses_not_met", n, int(i0), hyp, c,
        notes=tuple(notes),
    )


def _sweep_pairs(K1: float, Kn: float, resolution: int, original: tuple[float, float]):
    g1 = np.linspace(0.0, K1, resolution)
    gn = np.linspace(0.0, Kn, resolution)
    inside = [(a, b) for a in g1 for b in gn]
    # exterior probes: below zero and above the caps on each axis
    off = np.linspace(0.01, 1.0, resolution)
    outside = (
        [(-K1 * o, b) for o, b in zip(off, gn)]
        + [(K1 * (1.0 + o), b) for o, b in zip(off, gn)]
        + [(a, -Kn * o) for a, o in zip(g1, off)]
        + [(a, Kn * (1.0 + o)) for a, o in zip(g1, off)]
    )
    return inside + outside + [tuple(original)]


def prop42_verify(data: SplineInput, i0: int, resolution: int = 101) -> Prop42Report:
    """Sweep endpoint derivative pairs and confirm none gives a monotone spline.

    For every pair whose first and last pieces are monotone, the overshoot of
    piece ``i0`` at its midpoint must stay at least ``epsilon / 3``.
    """
    report = prop42_check_hypotheses(data, i0)
    if not report.hypotheses_met:
        return report
    c = report.constants
    n = data.n
    f_next = float(data.values[i0])
    threshold = c.epsilon / 3.0 - OVERSHOOT_TOL * (1.0 + abs(c.epsilon))
    pairs = _sweep_pairs(c.K1, c.Kn, resolution, (data.left_derivative, data.right_derivative))

    end_mono = monotone = over_bad = cap_bad = 0
    min_over = math.inf
    for a, b in pairs:
        Q = build_spline(data.with_boundary(a, b))
        first_ok = piece_is_monotone(Q.piece(1))
        last_ok = piece_is_monotone(Q.piece(n - 1))
        if spline_is_monotone(Q).monotone:
            monotone += 1
        if not (first_ok and last_ok):
            continue
        end_mono += 1
        if not (-CAP_TOL <= a <= c.K1 + CAP_TOL and -CAP_TOL <= b <= c.Kn + CAP_TOL):
            cap_bad += 1
        over = midpoint_value(Q, i0) - f_next
        min_over = min(min_over, over)
        if over < threshold:
            over_bad += 1

    passed = monotone == 0 and over_bad == 0 and cap_bad == 0
    sweep = SweepSummary(
        resolution=int(resolution),
        box=(c.K1, c.Kn),
        points=len(pairs),
        end_monotone_points=end_mono,
        monotone_points=monotone,
        min_overshoot=None if end_mono == 0 else float(min_over),
        overshoot_threshold=float(threshold),
        overshoot_violations=over_bad,
        cap_violations=cap_bad,
        passed=passed,
    )
    return Prop42Report(
        "verified" if passed else "verification_failed", n, int(i0),
        report.hypotheses, c, sweep, report.notes,
    )


@dataclass(frozen=True)
class SearchResult:
    found: bool
    attempts_used: int
    data: SplineInput | None = None
    i0: int | None = None
    report: Prop42Report | None = None

    @property
    def status(self) -> str:
        return "found" if self.found else "search exhausted"


def _candidate(rng: np.random.Generator, n: int) -> SplineInput:
    # small, partly flat increments around one steep unit jump
    scale = 2.0 ** rng.uniform(0.0, 5.0)
    h = scale * 2.0 ** rng.uniform(-1.0, 1.0, n - 1)
    inc = rng.uniform(0.0, 0.05, n - 1) * (rng.random(n - 1) < 0.7)
    inc[rng.integers(1, n - 2)] = 1.0
    x = np.concatenate(([0.0], np.cumsum(h)))
    f = np.concatenate(([0.0], np.cumsum(inc)))
    return SplineInput(Partition(x), f, 0.0, 0.0)


def prop42_search(seed: int, n: int = 7, attempts: int = 10_000) -> SearchResult:
    """Random search for clamped (zero endpoint derivative) nondecreasing data
    meeting every hypothesis for some interior piece."""
    if n % 2 == 0 or n < 7:
        raise ValueError(f"n must be odd and at least 7 (got {n})")
    rng = np.random.default_rng(seed)
    for attempt in range(1, attempts + 1):
        data = _candidate(rng, n)
        spline = build_spline(data)
        if not (piece_is_monotone(spline.piece(1)) and piece_is_monotone(spline.piece(n - 1))):
            continue
        for i0 in range(2, n - 2):
            if midpoint_value(spline, i0) <= data.values[i0]:
                continue
            report = prop42_check_hypotheses(data, i0)
            if report.hypotheses_met:
                return SearchResult(True, attempt, data, i0, report)
    return SearchResult(False, attempts)
