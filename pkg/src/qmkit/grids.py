"""Uniform real grids and sampled functions.

Everything downstream (Schwarzian calculus, wave equation integration,
trajectory reconstruction) works on uniformly spaced samples.  A sampled
function may optionally carry caller-supplied first/second/third derivative
arrays; when they are absent, derivatives are produced by centered finite
differences and the usable domain shrinks by two points at each edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import GridTooSmall

#: Minimum number of points that keeps every stencil well defined.
MIN_POINTS = 9

#: Relative floor below which a first derivative counts as vanishing.
DERIVATIVE_FLOOR = 1e-12


@dataclass(frozen=True)
class RealGrid:
    """Uniform one-dimensional coordinate grid on [q_min, q_max]."""

    q_min: float
    q_max: float
    n_points: int

    def __post_init__(self):
        if not np.isfinite(self.q_min) or not np.isfinite(self.q_max):
            raise ValueError("grid bounds must be finite")
        if not self.q_min < self.q_max:
            raise ValueError(f"q_min must be < q_max, got [{self.q_min}, {self.q_max}]")
        if int(self.n_points) != self.n_points:
            raise ValueError("n_points must be an integer")
        if self.n_points < MIN_POINTS:
            raise GridTooSmall(
                f"grid needs at least {MIN_POINTS} points, got {self.n_points}"
            )

    @property
    def spacing(self) -> float:
        return (self.q_max - self.q_min) / (self.n_points - 1)

    def points(self) -> np.ndarray:
        return np.linspace(self.q_min, self.q_max, self.n_points)

    def interior(self, trim: int) -> "RealGrid":
        """Grid with `trim` points removed from each edge (same spacing)."""
        if trim == 0:
            return self
        h = self.spacing
        return RealGrid(
            self.q_min + trim * h, self.q_max - trim * h, self.n_points - 2 * trim
        )


@dataclass(frozen=True)
class SampledFunction:
    """Real- or complex-valued samples over a RealGrid.

    `derivatives`, when given, is a tuple of three arrays holding exact
    first, second and third derivatives at every grid point.  Operations
    that need derivatives prefer these and fall back to finite differences
    otherwise.
    """

    grid: RealGrid
    values: np.ndarray
    derivatives: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None

    def __post_init__(self):
        values = np.asarray(self.values)
        object.__setattr__(self, "values", values)
        if values.ndim != 1 or len(values) != self.grid.n_points:
            raise ValueError("values must be a 1-d array matching the grid")
        if self.derivatives is not None:
            if len(self.derivatives) != 3:
                raise ValueError("derivatives must supply all three orders")
            ds = tuple(np.asarray(d) for d in self.derivatives)
            for d in ds:
                if d.shape != values.shape:
                    raise ValueError("derivative arrays must match the sample shape")
            object.__setattr__(self, "derivatives", ds)


def sample(
    grid: RealGrid,
    func: Callable[[np.ndarray], np.ndarray],
    derivatives: tuple[Callable, Callable, Callable] | None = None,
) -> SampledFunction:
    """Sample a callable (and optionally its derivatives) on a grid."""
    q = grid.points()
    ds = None
    if derivatives is not None:
        d1, d2, d3 = derivatives
        ds = (np.asarray(d1(q)), np.asarray(d2(q)), np.asarray(d3(q)))
    return SampledFunction(grid, np.asarray(func(q)), ds)


def fd1(values: np.ndarray, spacing: float) -> np.ndarray:
    """Centered first derivative; length n-2, aligned to points 1..n-2."""
    return (values[2:] - values[:-2]) / (2.0 * spacing)


def fd2(values: np.ndarray, spacing: float) -> np.ndarray:
    """Centered second derivative; length n-2, aligned to points 1..n-2."""
    return (values[2:] - 2.0 * values[1:-1] + values[:-2]) / spacing**2


def fd3(values: np.ndarray, spacing: float) -> np.ndarray:
    """Centered third derivative; length n-4, aligned to points 2..n-3."""
    return (
        values[4:] - 2.0 * values[3:-1] + 2.0 * values[1:-3] - values[:-4]
    ) / (2.0 * spacing**3)


def derivative_table(
    f: SampledFunction,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, int]:
    """First three derivatives of ``f`` on a common interior.

    Returns ``(d1, d2, d3, trim)`` where the arrays are aligned to grid
    points ``trim .. n-1-trim``.  Exact caller-supplied derivatives come
    back untrimmed; finite differences lose two points at each edge.
    """
    if f.derivatives is not None:
        d1, d2, d3 = f.derivatives
        return d1, d2, d3, 0
    h = f.grid.spacing
    v = f.values
    # Align the three-point stencils to the five-point third derivative.
    return fd1(v, h)[1:-1], fd2(v, h)[1:-1], fd3(v, h), 2
