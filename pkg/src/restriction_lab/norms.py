"""Weighted Lebesgue (quasi-)norms on truncated planar grids and the
one-dimensional weak-Lorentz quasinorm.

Grids use the midpoint rule: one evaluation per cell at its center, so the
weight factors never sit on cell corners.  Reductions are deterministic:
fixed-size chunks are summed by numpy's pairwise scheme and the chunk
partials are combined with Neumaier compensation, independent of any
parallelism in the cell evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError

__all__ = [
    "Grid2",
    "WeightSpec",
    "Sampled1",
    "weighted_lq_2d",
    "weak_lq_1d",
    "compensated_sum",
]

_CHUNK = 1 << 15


def compensated_sum(values: np.ndarray) -> float:
    """Deterministic chunked Neumaier summation of a 1-D float array."""
    values = np.asarray(values, dtype=float).reshape(-1)
    total = 0.0
    comp = 0.0
    for start in range(0, values.size, _CHUNK):
        part = float(np.sum(values[start : start + _CHUNK]))
        t = total + part
        if abs(total) >= abs(part):
            comp += (total - t) + part
        else:
            comp += (part - t) + total
        total = t
    return total + comp


@dataclass(frozen=True)
class Grid2:
    """Midpoint-rule rectangle grid: nx-by-ny cells on [x0,x1] x [y0,y1]."""

    x0: float
    x1: float
    y0: float
    y1: float
    nx: int
    ny: int
    kind: str = "rectangle"

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise ValueError("need nx, ny >= 2")
        if not (self.x1 > self.x0 and self.y1 > self.y0):
            raise ValueError("empty grid ranges")

    @classmethod
    def centered(cls, half_x: float, half_y: float, step: float) -> "Grid2":
        """Symmetric grid |x| <= half_x, |y| <= half_y at resolution step."""
        nx = max(2, int(round(2 * half_x / step)))
        ny = max(2, int(round(2 * half_y / step)))
        return cls(-half_x, half_x, -half_y, half_y, nx, ny, kind="cartesian")

    @property
    def dx(self) -> float:
        return (self.x1 - self.x0) / self.nx

    @property
    def dy(self) -> float:
        return (self.y1 - self.y0) / self.ny

    @property
    def cell_measure(self) -> float:
        return self.dx * self.dy

    @property
    def n_cells(self) -> int:
        return self.nx * self.ny

    def centers(self) -> tuple[np.ndarray, np.ndarray]:
        xs = self.x0 + self.dx * (np.arange(self.nx) + 0.5)
        ys = self.y0 + self.dy * (np.arange(self.ny) + 0.5)
        return xs, ys


@dataclass(frozen=True)
class WeightSpec:
    """Weight family: separable (1+|x|)^a (1+|y|)^b, radial (1+|x|+|y|)^g, or none."""

    kind: str
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0

    @classmethod
    def none(cls) -> "WeightSpec":
        return cls("none")

    @classmethod
    def separable(cls, alpha: float, beta: float) -> "WeightSpec":
        if alpha < 0 or beta < 0:
            raise ValueError("weight exponents must be >= 0")
        return cls("separable", alpha=alpha, beta=beta)

    @classmethod
    def radial(cls, gamma: float) -> "WeightSpec":
        if gamma < 0:
            raise ValueError("weight exponents must be >= 0")
        return cls("radial", gamma=gamma)

    def inverse_factor(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """w^{-1} on the tensor grid, shape (len(xs), len(ys))."""
        ax = np.abs(xs)[:, None]
        ay = np.abs(ys)[None, :]
        if self.kind == "none":
            return np.ones((len(xs), len(ys)))
        if self.kind == "separable":
            return (1 + ax) ** (-self.alpha) * (1 + ay) ** (-self.beta)
        if self.kind == "radial":
            return (1 + ax + ay) ** (-self.gamma)
        raise ValueError(f"unknown weight kind {self.kind!r}")


def weighted_lq_2d(
    f, grid: Grid2, weight: WeightSpec, q: float
) -> tuple[float, float]:
    """(sum_cells |f w^{-1}|^q cell_measure)^{1/q} and a truncation diagnostic.

    ``f`` is called once with broadcasting center arrays (xs[:,None],
    ys[None,:]) and must return the values on the grid; q > 0 may be below 1
    (quasinorm, same formula).  tail_fraction is the share of the q-th-power
    mass carried by the outermost 10% frame of the grid (the region outside
    the central 90%-per-dimension box).  It is reported, never acted on.
    """
    if not (q > 0 and math.isfinite(q)):
        raise ValueError("q must be positive and finite")
    xs, ys = grid.centers()
    vals = np.asarray(f(xs[:, None], ys[None, :]))
    if vals.shape != (grid.nx, grid.ny):
        raise ValueError(f"f returned shape {vals.shape}, expected {(grid.nx, grid.ny)}")
    if not np.all(np.isfinite(vals.real)) or not np.all(np.isfinite(vals.imag)):
        raise NumericalError("non-finite density values on the grid")

    mass = np.abs(vals * weight.inverse_factor(xs, ys)) ** q * grid.cell_measure
    total = compensated_sum(mass)
    if total < 0 or not math.isfinite(total):
        raise NumericalError("q-th power mass is not finite")

    lx = grid.x1 - grid.x0
    ly = grid.y1 - grid.y0
    inner = (
        (xs[:, None] >= grid.x0 + 0.05 * lx)
        & (xs[:, None] <= grid.x1 - 0.05 * lx)
        & (ys[None, :] >= grid.y0 + 0.05 * ly)
        & (ys[None, :] <= grid.y1 - 0.05 * ly)
    )
    inner_mass = compensated_sum(mass[inner])
    tail_fraction = 0.0 if total == 0 else 1.0 - inner_mass / total
    return total ** (1 / q), tail_fraction


@dataclass(frozen=True)
class Sampled1:
    """Discrete distribution data: nonnegative values with positive measures."""

    values: np.ndarray
    measures: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        m = np.asarray(self.measures, dtype=float)
        if v.shape != m.shape or v.ndim != 1 or v.size == 0:
            raise ValueError("values and measures must be equal-length 1-D arrays")
        if np.any(v < 0) or np.any(m <= 0) or not np.all(np.isfinite(v + m)):
            raise ValueError("need finite values >= 0 and measures > 0")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "measures", m)

    @classmethod
    def uniform(cls, values: np.ndarray, cell_measure: float) -> "Sampled1":
        values = np.asarray(values, dtype=float)
        return cls(values, np.full(values.shape, cell_measure))


def weak_lq_1d(sample: Sampled1, q) -> float:
    """Weak-L^q quasinorm sup_t t mu(|f| > t)^{1/q} of sampled data.

    The supremum over thresholds is attained approaching a sample value from
    below, so it equals max over distinct values u of
    u * (measure of {value >= u})^{1/q}.  q = inf returns the max value.
    """
    if q == float("inf") or (isinstance(q, str) and q == "inf"):
        return float(np.max(sample.values))
    q = float(q)
    if q <= 0:
        raise ValueError("q must be positive")
    order = np.argsort(sample.values)[::-1]
    v = sample.values[order]
    m = np.cumsum(sample.measures[order])
    # keep the last occurrence of each distinct value: cumulative measure of {>= v}
    distinct = np.append(v[:-1] != v[1:], True)
    vv, mm = v[distinct], m[distinct]
    if vv[-1] == 0:  # zero threshold contributes nothing
        vv, mm = vv[:-1], mm[:-1]
    if vv.size == 0:
        return 0.0
    return float(np.max(vv * mm ** (1 / q)))
