"""Clamped C2 cubic splines in Hermite form.

A spline is stored as ``n - 1`` cubic pieces written in the divided-difference
basis

    P_i(x) = c1 + c2 (x - x_i) + c3 (x - x_i)**2 + c4 (x - x_i)**2 (x - x_{i+1})

with ``c1 = f_i``, ``c2 = d_i``, ``c3 = (m_i - d_i) / h_i`` and
``c4 = (d_{i+1} + d_i - 2 m_i) / h_i**2``.  The interior derivatives
``d_2 .. d_{n-1}`` come from the tridiagonal system that enforces continuity
of the second derivative; ``d_1`` and ``d_n`` are prescribed by the caller.

Arrays are 0-based.  Functions that take a *piece number* (``midpoint_value``)
use the 1-based numbering ``1 <= i <= n - 1`` so that piece ``i`` spans
``[x_i, x_{i+1}]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DomainError",
    "Partition",
    "SplineInput",
    "Slopes",
    "TridiagonalSystem",
    "HermitePiece",
    "CubicSpline",
    "compute_slopes",
    "assemble_system",
    "solve_tridiagonal",
    "thomas_solve",
    "build_spline",
    "evaluate",
    "evaluate_derivative",
    "evaluate_second_derivative",
    "midpoint_value",
]


class DomainError(ValueError):
    """Evaluation point outside ``[x_1, x_n]``."""


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=np.float64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Partition:
    """Strictly increasing knots ``x_1 < ... < x_n`` with ``n >= 3``."""

    knots: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.knots, dtype=np.float64)
        if x.ndim != 1:
            raise ValueError("knots must be a 1-d sequence")
        if x.size < 3:
            raise ValueError(
                f"need at least 3 knots (got {x.size}); a single piece has no "
                "continuity conditions to solve for"
            )
        if not np.all(np.isfinite(x)):
            raise ValueError("knots must be finite")
        h = np.diff(x)
        bad = np.flatnonzero(h <= 0)
        if bad.size:
            k = int(bad[0])
            raise ValueError(
                f"knots must be strictly increasing: x[{k + 1}] = {x[k + 1]!r} "
                f"is not greater than x[{k}] = {x[k]!r}"
            )
        object.__setattr__(self, "knots", _frozen(x))

    @property
    def n(self) -> int:
        return int(self.knots.size)

    @property
    def spacings(self) -> np.ndarray:
        return np.diff(self.knots)

    @property
    def hhat(self) -> float:
        return float(self.spacings.max())

    @property
    def mesh_ratio(self) -> float:
        h = self.spacings
        return float(h.max() / h.min())

    @classmethod
    def uniform(cls, a: float, b: float, n: int) -> "Partition":
        return cls(np.linspace(a, b, n))


@dataclass(frozen=True)
class SplineInput:
    """Knots, data values and the two prescribed endpoint derivatives."""

    partition: Partition
    values: np.ndarray
    left_derivative: float
    right_derivative: float

    def __post_init__(self):
        if not isinstance(self.partition, Partition):
            object.__setattr__(self, "partition", Partition(self.partition))
        f = np.asarray(self.values, dtype=np.float64)
        if f.shape != self.partition.knots.shape:
            raise ValueError(
                f"values has length {f.size}, expected {self.partition.n}"
            )
        if not np.all(np.isfinite(f)):
            raise ValueError("values must be finite")
        object.__setattr__(self, "values", _frozen(f))
        object.__setattr__(self, "left_derivative", float(self.left_derivative))
        object.__setattr__(self, "right_derivative", float(self.right_derivative))

    @classmethod
    def from_arrays(cls, x, f, left_derivative: float, right_derivative: float):
        return cls(Partition(x), f, left_derivative, right_derivative)

    @property
    def n(self) -> int:
        return self.partition.n

    def with_boundary(self, left_derivative: float, right_derivative: float):
        """Same data, different endpoint derivatives."""
        return SplineInput(
            self.partition, self.values, left_derivative, right_derivative
        )


@dataclass(frozen=True)
class Slopes:
    deltas: np.ndarray
    slopes: np.ndarray


@dataclass(frozen=True)
class TridiagonalSystem:
    """The ``(n-2) x (n-2)`` continuity system.

    Row ``k`` (0-based) reads ``lam[k] d_{k+1} + 2 d_{k+2} + mu[k] d_{k+3} = rhs[k]``
    in 1-based derivative numbering, so ``lam[0]`` multiplies the prescribed
    left derivative and ``mu[-1]`` the prescribed right derivative; those two
    products are already folded into ``rhs``.
    """

    lam: np.ndarray
    mu: np.ndarray
    rhs: np.ndarray

    @property
    def dimension(self) -> int:
        return int(self.rhs.size)

    @property
    def sub(self) -> np.ndarray:
        """Sub-diagonal entries ``lam[1:]``."""
        return self.lam[1:]

    @property
    def sup(self) -> np.ndarray:
        """Super-diagonal entries ``mu[:-1]``."""
        return self.mu[:-1]

    def dense(self) -> np.ndarray:
        """The matrix as a dense array; used by oracles and small reports."""
        N = self.dimension
        A = 2.0 * np.eye(N)
        if N > 1:
            A[np.arange(1, N), np.arange(N - 1)] = self.sub
            A[np.arange(N - 1), np.arange(1, N)] = self.sup
        return A

    def matvec(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=np.float64)
        out = 2.0 * v
        if self.dimension > 1:
            out[1:] += self.sub.reshape((-1,) + (1,) * (v.ndim - 1)) * v[:-1]
            out[:-1] += self.sup.reshape((-1,) + (1,) * (v.ndim - 1)) * v[1:]
        return out


@dataclass(frozen=True)
class HermitePiece:
    left_knot: float
    right_knot: float
    c1: float
    c2: float
    c3: float
    c4: float
    left_derivative: float
    right_derivative: float

    @property
    def width(self) -> float:
        return self.right_knot - self.left_knot

    @property
    def slope(self) -> float:
        """Secant slope ``m_i`` recovered from the coefficients."""
        return self.c2 + self.c3 * self.width

    def __call__(self, x):
        s = np.asarray(x, dtype=np.float64) - self.left_knot
        return self.c1 + s * (self.c2 + s * (self.c3 + self.c4 * (s - self.width)))

    def derivative(self, x):
        s = np.asarray(x, dtype=np.float64) - self.left_knot
        return self.c2 + 2.0 * self.c3 * s + self.c4 * s * (3.0 * s - 2.0 * self.width)

    def second_derivative(self, x):
        s = np.asarray(x, dtype=np.float64) - self.left_knot
        return 2.0 * self.c3 + self.c4 * (6.0 * s - 2.0 * self.width)


@dataclass(frozen=True)
class CubicSpline:
    """Piecewise cubic Hermite interpolant.

    ``coefficients[k]`` holds ``(c1, c2, c3, c4)`` of piece ``k + 1``.
    """

    knots: np.ndarray
    values: np.ndarray
    derivatives: np.ndarray
    coefficients: np.ndarray = field(repr=False)

    @classmethod
    def from_derivatives(cls, x, f, d) -> "CubicSpline":
        """Hermite interpolant through ``(x, f)`` with node derivatives ``d``."""
        x = np.asarray(x, dtype=np.float64)
        f = np.asarray(f, dtype=np.float64)
        d = np.asarray(d, dtype=np.float64)
        h = np.diff(x)
        m = np.diff(f) / h
        c = np.empty((h.size, 4))
        c[:, 0] = f[:-1]
        c[:, 1] = d[:-1]
        c[:, 2] = (m - d[:-1]) / h
        c[:, 3] = (d[1:] + d[:-1] - 2.0 * m) / h**2
        return cls(_frozen(x), _frozen(f), _frozen(d), _frozen(c))

    @property
    def n(self) -> int:
        return int(self.knots.size)

    @property
    def derivative_vector(self) -> np.ndarray:
        return self.derivatives

    @property
    def pieces(self) -> tuple[HermitePiece, ...]:
        return tuple(self.piece(i) for i in range(1, self.n))

    def piece(self, i: int) -> HermitePiece:
        """Piece number ``i`` (1-based), spanning ``[x_i, x_{i+1}]``."""
        if not 1 <= i <= self.n - 1:
            raise IndexError(f"piece index {i} outside 1..{self.n - 1}")
        k = i - 1
        c1, c2, c3, c4 = (float(v) for v in self.coefficients[k])
        return HermitePiece(
            float(self.knots[k]),
            float(self.knots[k + 1]),
            c1,
            c2,
            c3,
            c4,
            float(self.derivatives[k]),
            float(self.derivatives[k + 1]),
        )

    def __call__(self, x):
        return evaluate(self, x)


def compute_slopes(data: SplineInput) -> Slopes:
    h = data.partition.spacings
    delta = np.diff(data.values)
    return Slopes(_frozen(delta), _frozen(delta / h))


def assemble_system(data: SplineInput, slopes: Slopes | None = None) -> TridiagonalSystem:
    if slopes is None:
        slopes = compute_slopes(data)
    h = data.partition.spacings
    m = slopes.slopes
    lam = h[1:] / (h[:-1] + h[1:])
    mu = h[:-1] / (h[:-1] + h[1:])
    rhs = 3.0 * (lam * m[:-1] + mu * m[1:])
    # for n = 3 both corrections land on the single row
    rhs[0] -= lam[0] * data.left_derivative
    rhs[-1] -= mu[-1] * data.right_derivative
    return TridiagonalSystem(_frozen(lam), _frozen(mu), _frozen(rhs))


def thomas_solve(sub, sup, rhs, diag: float = 2.0) -> np.ndarray:
    """Solve a tridiagonal system with constant diagonal, no pivoting.

    ``sub`` and ``sup`` have length ``N - 1``; ``rhs`` has shape ``(N,)`` or
    ``(N, k)`` for ``k`` simultaneous right-hand sides.  Stable only for
    diagonally dominant matrices.
    """
    rhs = np.array(rhs, dtype=np.float64)
    N = rhs.shape[0]
    if N == 0:
        raise ValueError("empty system")
    cp = np.empty(max(N - 1, 0))
    dp = rhs
    denom = diag
    if N > 1:
        cp[0] = sup[0] / denom
    dp[0] = dp[0] / denom
    for k in range(1, N):
        denom = diag - sub[k - 1] * cp[k - 1]
        if k < N - 1:
            cp[k] = sup[k] / denom
        dp[k] = (dp[k] - sub[k - 1] * dp[k - 1]) / denom
    for k in range(N - 2, -1, -1):
        dp[k] = dp[k] - cp[k] * dp[k + 1]
    return dp


def solve_tridiagonal(system: TridiagonalSystem, rhs=None) -> np.ndarray:
    """Interior derivatives ``d_2 .. d_{n-1}``.

    ``rhs`` replaces ``system.rhs`` when given (it may be 2-d, one column per
    right-hand side).
    """
    b = system.rhs if rhs is None else rhs
    return thomas_solve(system.sub, system.sup, b)


def build_spline(data: SplineInput) -> CubicSpline:
    system = assemble_system(data)
    inner = solve_tridiagonal(system)
    d = np.concatenate(([data.left_derivative], inner, [data.right_derivative]))
    return CubicSpline.from_derivatives(data.partition.knots, data.values, d)


def _locate(spline: CubicSpline, x):
    x = np.asarray(x, dtype=np.float64)
    a, b = spline.knots[0], spline.knots[-1]
    if np.any(~((x >= a) & (x <= b))):
        raise DomainError(f"evaluation point outside [{a!r}, {b!r}]")
    # interior knots go to the left piece
    k = np.searchsorted(spline.knots, x, side="left") - 1
    k = np.clip(k, 0, spline.n - 2)
    return x, k


def evaluate(spline: CubicSpline, x):
    x, k = _locate(spline, x)
    c = spline.coefficients[k]
    s = x - spline.knots[k]
    h = spline.knots[k + 1] - spline.knots[k]
    out = c[..., 0] + s * (c[..., 1] + s * (c[..., 2] + c[..., 3] * (s - h)))
    return out[()] if out.ndim == 0 else out


def evaluate_derivative(spline: CubicSpline, x):
    x, k = _locate(spline, x)
    c = spline.coefficients[k]
    s = x - spline.knots[k]
    h = spline.knots[k + 1] - spline.knots[k]
    out = c[..., 1] + 2.0 * c[..., 2] * s + c[..., 3] * s * (3.0 * s - 2.0 * h)
    return out[()] if out.ndim == 0 else out


def evaluate_second_derivative(spline: CubicSpline, x):
    x, k = _locate(spline, x)
    c = spline.coefficients[k]
    s = x - spline.knots[k]
    h = spline.knots[k + 1] - spline.knots[k]
    out = 2.0 * c[..., 2] + c[..., 3] * (6.0 * s - 2.0 * h)
    return out[()] if out.ndim == 0 else out


def midpoint_value(spline: CubicSpline, i: int) -> float:
    """Closed-form value of piece ``i`` (1-based) at the centre of its interval.

    ``(f_i + f_{i+1}) / 2 + h_i / 8 * (d_i - d_{i+1})``
    """
    if not 1 <= i <= spline.n - 1:
        raise IndexError(f"piece index {i} outside 1..{spline.n - 1}")
    k = i - 1
    f, d = spline.values, spline.derivatives
    h = spline.knots[k + 1] - spline.knots[k]
    return float(0.5 * (f[k] + f[k + 1]) + 0.125 * h * (d[k] - d[k + 1]))


def knot_second_derivative_jumps(spline: CubicSpline) -> np.ndarray:
    """``P_i''(x_{i+1}) - P_{i+1}''(x_{i+1})`` at each interior knot."""
    c = spline.coefficients
    h = np.diff(spline.knots)
    right_end = 2.0 * c[:-1, 2] + 4.0 * c[:-1, 3] * h[:-1]
    left_end = 2.0 * c[1:, 2] - 2.0 * c[1:, 3] * h[1:]
    return right_end - left_end


def knot_second_derivatives(spline: CubicSpline) -> np.ndarray:
    """One-sided second derivatives at every piece end, flattened."""
    c = spline.coefficients
    h = np.diff(spline.knots)
    return np.concatenate(
        (2.0 * c[:, 2] - 2.0 * c[:, 3] * h, 2.0 * c[:, 2] + 4.0 * c[:, 3] * h)
    )
