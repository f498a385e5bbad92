"""Data files and JSON serialization.

Data files are comma-separated ``x,f`` rows with ``.`` as decimal mark and
an optional single header line (detected when the first non-blank line does
not parse as numbers).  Blank lines and lines starting with ``#`` are
skipped.
"""

from __future__ import annotations

import json
import sys
from typing import IO, Iterable

import numpy as np

from .spline_core import CubicSpline, Partition

__all__ = [
    "DataFileError",
    "read_data",
    "parse_data",
    "spline_to_dict",
    "spline_from_dict",
    "dumps",
]


class DataFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_data(lines: Iterable[str]) -> tuple[np.ndarray, np.ndarray]:
    xs: list[float] = []
    fs: list[float] = []
    seen_first = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cells = [c.strip() for c in line.split(",")]
        try:
            nums = [float(c) for c in cells]
        except ValueError:
            nums = None
        if not seen_first:
            seen_first = True
            if nums is None:
                continue  # header
        if nums is None:
            raise DataFileError(f"cannot parse {line!r} as numbers", lineno)
        if len(nums) != 2:
            raise DataFileError(f"expected 2 columns (x,f), got {len(nums)}", lineno)
        if xs and not nums[0] > xs[-1]:
            raise DataFileError(
                f"x = {nums[0]!r} is not greater than previous x = {xs[-1]!r}", lineno
            )
        xs.append(nums[0])
        fs.append(nums[1])
    if len(xs) < 3:
        raise DataFileError(f"need at least 3 data rows, found {len(xs)}")
    return np.array(xs), np.array(fs)


def read_data(path: str, stdin: IO[str] | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Read ``x,f`` rows from ``path``; ``"-"`` reads standard input."""
    if path == "-":
        return parse_data(stdin if stdin is not None else sys.stdin)
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_data(fh)
    except OSError as exc:
        raise DataFileError(f"cannot read {path}: {exc.strerror}") from exc


def spline_to_dict(spline: CubicSpline) -> dict:
    c = spline.coefficients
    return {
        "knots": spline.knots.tolist(),
        "values": spline.values.tolist(),
        "derivatives": spline.derivatives.tolist(),
        "pieces": [
            {
                "index": k + 1,
                "left": float(spline.knots[k]),
                "right": float(spline.knots[k + 1]),
                "c1": float(c[k, 0]),
                "c2": float(c[k, 1]),
                "c3": float(c[k, 2]),
                "c4": float(c[k, 3]),
            }
            for k in range(spline.n - 1)
        ],
    }


def spline_from_dict(d: dict) -> CubicSpline:
    """Rebuild from ``knots``, ``values`` and ``derivatives``; the stored
    coefficients are checked against the rebuilt ones."""
    part = Partition(d["knots"])
    spline = CubicSpline.from_derivatives(part.knots, d["values"], d["derivatives"])
    if "pieces" in d:
        stored = np.array([[p["c1"], p["c2"], p["c3"], p["c4"]] for p in d["pieces"]])
        if stored.shape != spline.coefficients.shape or not np.array_equal(
            stored, spline.coefficients
        ):
            raise ValueError("stored piece coefficients do not match knots/values/derivatives")
    return spline


def dumps(obj) -> str:
    """JSON text; floats are written with ``repr`` (shortest round-trip form,
    at most 17 significant digits) and non-finite values as ``null``."""

    def clean(o):
        if isinstance(o, dict):
            return {k: clean(v) for k, v in o.items()}
        if isinstance(o, (list, tuple)):
            return [clean(v) for v in o]
        if isinstance(o, (np.floating, float)):
            o = float(o)
            return o if np.isfinite(o) else None
        if isinstance(o, (np.integer,)):
            return int(o)
        if isinstance(o, np.bool_):
            return bool(o)
        return o

    return json.dumps(clean(obj), indent=2)
