"""Sensitivity of a clamped spline to its endpoint derivatives.

The matrix of the continuity system has an inverse whose entries alternate
in sign and decay geometrically away from the diagonal,

    0 < (-1)**(i-j) * Ainv[i, j] <= 2/3 * 2**(-|i-j|).

Changing only the prescribed endpoint derivatives perturbs the right-hand
side in its first and last entries, so interior derivatives move by
multiples of the first and last inverse columns.  This module computes those
columns, certifies the decay numerically, bounds the distance between two
splines that differ only at the boundary, and runs the interior
convergence-order experiment.

Index conventions: inverse entries are returned as 0-based arrays; piece
numbers (``pair_difference_bound``, ``omega_set``, the study rows) are
1-based so piece ``i`` spans ``[x_i, x_{i+1}]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .spline_core import (
    Partition,
    SplineInput,
    TridiagonalSystem,
    build_spline,
    evaluate,
    solve_tridiagonal,
)

__all__ = [
    "BoundNotClaimedError",
    "InverseColumns",
    "KershawReport",
    "PairDifferenceBound",
    "PieceComparison",
    "PairBoundReport",
    "OmegaSet",
    "ConvergenceRow",
    "inverse_columns",
    "full_inverse",
    "certify_kershaw",
    "derivative_perturbation",
    "pair_difference_bound",
    "certify_pair_bound",
    "omega_set",
    "convergence_study",
    "study_csv_rows",
]

KERSHAW_TOL = 1e-12


class BoundNotClaimedError(IndexError):
    """The pair bound is only stated for pieces ``2 .. n-2``."""


@dataclass(frozen=True)
class InverseColumns:
    first_column: np.ndarray
    last_column: np.ndarray

    @property
    def dimension(self) -> int:
        return int(self.first_column.size)


def inverse_columns(system: TridiagonalSystem) -> InverseColumns:
    N = system.dimension
    E = np.zeros((N, 2))
    E[0, 0] = 1.0
    E[-1, 1] = 1.0
    cols = solve_tridiagonal(system, E)
    return InverseColumns(cols[:, 0].copy(), cols[:, 1].copy())


def full_inverse(system: TridiagonalSystem) -> np.ndarray:
    """All of ``A^{-1}``, one tridiagonal solve per column."""
    return solve_tridiagonal(system, np.eye(system.dimension))


@dataclass(frozen=True)
class KershawReport:
    passed: bool
    dimension: int
    sign_violations: int
    magnitude_violations: int
    tightest_margin: float
    """``min (bound - |entry|) / bound`` over all entries."""
    worst_entry: tuple[int, int]


def certify_kershaw(system: TridiagonalSystem, tol: float = KERSHAW_TOL) -> KershawReport:
    """Check ``0 < (-1)**(i-j) Ainv[i,j] <= 2/3 * 2**-|i-j|`` entry by entry."""
    Ainv = full_inverse(system)
    N = system.dimension
    i, j = np.indices((N, N))
    sign = np.where((i - j) % 2 == 0, 1.0, -1.0)
    signed = sign * Ainv
    bound = (2.0 / 3.0) * np.exp2(-np.abs(i - j).astype(np.float64))
    margin = (bound - np.abs(Ainv)) / bound
    sign_bad = int(np.count_nonzero(signed <= 0.0))
    mag_bad = int(np.count_nonzero(margin < -tol))
    worst = np.unravel_index(int(np.argmin(margin)), margin.shape)
    return KershawReport(
        passed=(sign_bad == 0 and mag_bad == 0),
        dimension=N,
        sign_violations=sign_bad,
        magnitude_violations=mag_bad,
        tightest_margin=float(margin[worst]),
        worst_entry=(int(worst[0]), int(worst[1])),
    )


def derivative_perturbation(
    system: TridiagonalSystem, delta_left: float, delta_right: float,
    columns: InverseColumns | None = None,
) -> np.ndarray:
    """``d_i - d~_i`` for ``i = 2 .. n-1`` (returned 0-based, length ``n-2``).

    ``delta_left = d~_1 - d_1`` and ``delta_right = d~_n - d_n``.  The change
    in the boundary data only enters the first and last right-hand side
    entries, scaled by ``lam_1`` and ``mu_{n-2}``.
    """
    if columns is None:
        columns = inverse_columns(system)
    return (
        columns.first_column * system.lam[0] * delta_left
        + columns.last_column * system.mu[-1] * delta_right
    )


@dataclass(frozen=True)
class PairDifferenceBound:
    pieces: np.ndarray
    """1-based piece numbers ``2 .. n-2``."""
    values: np.ndarray
    left_term: np.ndarray
    right_term: np.ndarray

    def for_piece(self, i: int) -> float:
        hit = np.flatnonzero(self.pieces == i)
        if hit.size == 0:
            lo = int(self.pieces[0]) if self.pieces.size else 2
            hi = int(self.pieces[-1]) if self.pieces.size else 1
            raise BoundNotClaimedError(
                f"bound not claimed for piece {i}; defined for pieces {lo}..{hi}"
            )
        return float(self.values[hit[0]])


def pair_difference_bound(
    data: SplineInput, delta_left: float, delta_right: float
) -> PairDifferenceBound:
    """Per-piece bound ``8 h_i (2**-i lam_1 |dl| + mu_{n-2} 2**(i-n) |dr|)``."""
    n = data.n
    h = data.partition.spacings
    x = data.partition.knots
    lam1 = (x[2] - x[1]) / (x[2] - x[0])
    mu_last = (x[-2] - x[-3]) / (x[-1] - x[-3])
    i = np.arange(2, n - 1)
    hi = h[i - 1]
    left = 8.0 * hi * np.exp2(-i.astype(np.float64)) * lam1 * abs(delta_left)
    right = 8.0 * hi * mu_last * np.exp2((i - n).astype(np.float64)) * abs(delta_right)
    return PairDifferenceBound(i, left + right, left, right)


@dataclass(frozen=True)
class PieceComparison:
    piece: int
    measured: float
    bound: float | None
    """``None`` on the end pieces, where no bound is claimed."""

    @property
    def ok(self) -> bool:
        return self.bound is None or self.measured <= self.bound


@dataclass(frozen=True)
class PairBoundReport:
    delta_left: float
    delta_right: float
    rows: tuple[PieceComparison, ...]

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.rows)

    @property
    def violations(self) -> list[int]:
        return [r.piece for r in self.rows if not r.ok]


def _piece_samples(knots: np.ndarray, per_piece: int) -> np.ndarray:
    t = np.linspace(0.0, 1.0, per_piece)
    return knots[:-1, None] + np.diff(knots)[:, None] * t[None, :]


def certify_pair_bound(
    data: SplineInput,
    delta_left: float,
    delta_right: float,
    samples_per_piece: int = 1000,
) -> PairBoundReport:
    """Dense-sample ``|P - P~|`` piece by piece and compare with the bound."""
    other = data.with_boundary(
        data.left_derivative + delta_left, data.right_derivative + delta_right
    )
    P = build_spline(data)
    Q = build_spline(other)
    xs = _piece_samples(data.partition.knots, samples_per_piece)
    # each sample row is evaluated on its own piece; row ends are shared knots
    s = xs - data.partition.knots[:-1, None]
    h = data.partition.spacings[:, None]

    def on_pieces(c):
        c = c[:, :, None]
        return c[:, 0] + s * (c[:, 1] + s * (c[:, 2] + c[:, 3] * (s - h)))

    diff = on_pieces(P.coefficients) - on_pieces(Q.coefficients)
    measured = np.abs(diff).max(axis=1)
    bound = pair_difference_bound(data, delta_left, delta_right)
    rows = []
    for k in range(data.n - 1):
        i = k + 1
        b = bound.for_piece(i) if 2 <= i <= data.n - 2 else None
        rows.append(PieceComparison(i, float(measured[k]), b))
    return PairBoundReport(float(delta_left), float(delta_right), tuple(rows))


@dataclass(frozen=True)
class OmegaSet:
    n: int
    hhat: float
    p: float
    indices: tuple[int, ...]

    @property
    def empty(self) -> bool:
        return not self.indices

    @property
    def lower(self) -> float:
        return -self.p * math.log2(self.hhat)

    @property
    def upper(self) -> float:
        return self.n + self.p * math.log2(self.hhat)


def omega_set(n: int, hhat: float, p: float) -> OmegaSet:
    """Pieces far enough from both ends that ``2**-i`` and ``2**(i-n)`` fall
    below ``hhat**p``; both inequalities are strict."""
    if not hhat < 1.0:
        raise ValueError(f"hhat must be < 1 (got {hhat!r})")
    if not p > 0:
        raise ValueError(f"p must be positive (got {p!r})")
    lo = -p * math.log2(hhat)
    hi = n + p * math.log2(hhat)
    first = max(1, math.floor(lo) + 1)
    last = math.ceil(hi) - 1
    return OmegaSet(int(n), float(hhat), float(p), tuple(range(first, last + 1)))


@dataclass(frozen=True)
class ConvergenceRow:
    level: int
    hhat: float
    n: int
    omega_min: int | None
    omega_max: int | None
    max_error: float | None
    observed_order: float | None

    @property
    def skipped(self) -> bool:
        return self.max_error is None


def convergence_study(
    f: Callable[[np.ndarray], np.ndarray],
    df: Callable[[float], float],
    interval: tuple[float, float],
    levels: int,
    p: float,
    perturb_left: float = 0.0,
    perturb_right: float = 0.0,
    base_intervals: int = 10,
    samples_per_piece: int = 200,
) -> list[ConvergenceRow]:
    """Interior error of a boundary-perturbed spline on dyadic uniform grids.

    Level ``k`` uses ``base_intervals * 2**k`` equal intervals.  The spline is
    clamped with ``df(a) + perturb_left`` and ``df(b) + perturb_right``; the
    error is the dense-sampled ``max |P~ - f|`` over the pieces in
    ``omega_set(n, hhat, p)``.  ``observed_order`` compares with the previous
    non-skipped level.
    """
    a, b = interval
    rows: list[ConvergenceRow] = []
    prev: ConvergenceRow | None = None
    for k in range(levels):
        n = base_intervals * 2**k + 1
        part = Partition.uniform(a, b, n)
        hhat = part.hhat
        omega = omega_set(n, hhat, p)
        pieces = [i for i in omega.indices if 1 <= i <= n - 1]
        if not pieces:
            rows.append(ConvergenceRow(k, hhat, n, None, None, None, None))
            continue
        x = part.knots
        data = SplineInput(
            part, f(x), df(a) + perturb_left, df(b) + perturb_right
        )
        P = build_spline(data)
        sel = np.asarray(pieces) - 1
        xs = _piece_samples(x, samples_per_piece)[sel].ravel()
        err = float(np.max(np.abs(evaluate(P, xs) - f(xs))))
        order = None
        if prev is not None and prev.level == k - 1 and err > 0 and prev.max_error > 0:
            order = math.log2(prev.max_error / err)
        row = ConvergenceRow(k, hhat, n, pieces[0], pieces[-1], err, order)
        rows.append(row)
        prev = row
    return rows


STUDY_COLUMNS = ("level", "hhat", "omega_min", "omega_max", "max_error", "observed_order")


def study_csv_rows(rows: Sequence[ConvergenceRow]) -> list[list[str]]:
    """Rows for CSV output, header first; skipped levels are marked."""

    def num(v):
        return "" if v is None else repr(float(v))

    out = [list(STUDY_COLUMNS)]
    for r in rows:
        if r.skipped:
            out.append([str(r.level), num(r.hhat), "skipped", "skipped", "skipped", ""])
        else:
            out.append([
                str(r.level), num(r.hhat), str(r.omega_min), str(r.omega_max),
                num(r.max_error), num(r.observed_order),
            ])
    return out
