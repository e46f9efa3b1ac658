"""Observability ratios for Schrodinger and heat flows, and thick-set sweeps."""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from ..field.grid import GridFunction
from ..field.norms import lp_norm
from ..field.sets import IndicatorSet
from ..field.spacetime import spacetime_norm
from ..field.transform import fourier_multiplier
from ..propagators.linear import heat_evolve, linear_trace

__all__ = [
    "time_samples",
    "schrodinger_observability",
    "observability_infimum",
    "band_limit",
    "HeatObservability",
    "heat_observability",
    "thickness_check",
]


def time_samples(T: float, dt: float) -> np.ndarray:
    n = int(round(T / dt))
    if n < 1 or abs(n * dt - T) > 1e-9 * max(1.0, T):
        raise ValueError("dt must divide T")
    return dt * np.arange(n + 1)


def schrodinger_observability(u0: GridFunction, omega: IndicatorSet, T: float, dt: float, *,
                              threads: int = 1, check: bool = True) -> float:
    """|| e^{it Laplace} u0 ||_{L^2([0,T] x Omega)} / ||u0||_2."""
    trace = linear_trace("schrodinger", u0, time_samples(T, dt), threads=threads, check=check)
    norm0 = lp_norm(u0, 2, check=False)
    if norm0 == 0:
        raise ValueError("zero initial data")
    return spacetime_norm(trace, 2, None, omega, (0.0, T)) / norm0


def observability_infimum(members, omega, T, dt, **kw) -> tuple[float, int, list]:
    """(infimum, index of the minimizer, all ratios) over a list of data."""
    ratios = [schrodinger_observability(u, omega, T, dt, **kw) for u in members]
    i = int(np.argmin(ratios))
    return float(ratios[i]), i, ratios


def band_limit(u0: GridFunction, R: float) -> GridFunction:
    """Sharp frequency cutoff to |xi| < R."""
    return fourier_multiplier(u0, lambda r: (r < R).astype(float))


class HeatObservability(NamedTuple):
    ratio: float
    floor: float
    intermediate: float
    intermediate_ok: bool


def heat_observability(u0: GridFunction, omega: IndicatorSet, T: float, dt: float, R: float,
                       *, tol: float = 1e-10) -> HeatObservability:
    """Heat observability ratio for data sharply band-limited to |xi| < R.

    ``intermediate`` is ||e^{T Laplace} u0||_2/||u0||_2, which must reach the
    floor e^{-T R^2} by Plancherel.
    """
    v0 = band_limit(u0, R)
    norm0 = lp_norm(v0, 2, check=False)
    if norm0 == 0:
        raise ValueError("band-limited data vanish")
    trace = linear_trace("heat", v0, time_samples(T, dt), check=False)
    ratio = spacetime_norm(trace, 2, None, omega, (0.0, T)) / norm0
    floor = math.exp(-T * R * R)
    inter = lp_norm(heat_evolve(v0, T, check=False), 2, check=False) / norm0
    return HeatObservability(ratio, floor, inter, bool(inter >= floor * (1.0 - tol)))


def _box_sums(mask: np.ndarray, m: int) -> np.ndarray:
    """Counts of True over every axis-aligned m-cube fully inside the array."""
    acc = mask.astype(np.int64)
    for ax in range(mask.ndim):
        c = np.cumsum(acc, axis=ax)
        pad = [(0, 0)] * mask.ndim
        pad[ax] = (1, 0)
        c = np.pad(c, pad)
        hi = np.take(c, np.arange(m, c.shape[ax]), axis=ax)
        lo = np.take(c, np.arange(0, c.shape[ax] - m), axis=ax)
        acc = hi - lo
    return acc


def thickness_check(omega: IndicatorSet, side: float, gamma: float,
                    grid: GridFunction) -> tuple[bool, float]:
    """Is |Omega cap (x + side*Q)| >= gamma * side^dim for every grid-aligned cube?

    Returns the verdict and the smallest relative measure found.
    """
    h = grid.spacing
    m = side / h
    if abs(m - round(m)) > 1e-9 * max(1.0, m) or round(m) < 1:
        raise ValueError(f"cube side {side} is not a multiple of the grid spacing {h}")
    m = int(round(m))
    if m > grid.n_points:
        raise ValueError("cube larger than the grid box")
    counts = _box_sums(omega.mask_for(grid), m)
    worst = float(counts.min()) / m ** grid.dim
    return bool(worst >= gamma), worst
