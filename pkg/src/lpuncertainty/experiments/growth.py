"""Moment growth of dispersive flows: power-law fits in log-log."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple

import numpy as np

from ..field.grid import TAIL_TOLERANCE, GridFunction
from ..field.norms import NormSpec, lp_norm, weighted_norm
from ..oracles import (GaussianPacket, gaussian_heat, gaussian_moment,
                       gaussian_schrodinger)
from ..params import InadmissibleError, check_moment_growth, index_to_float, as_index
from ..propagators.linear import heat_evolve, schrodinger_evolve
from ..propagators.wave import WaveState, projected_energy, projected_energy_density

__all__ = [
    "MIN_POINTS",
    "geometric_times",
    "loglog_slope",
    "GrowthFit",
    "predicted_growth",
    "moment_growth_fit",
    "WaveGrowth",
    "wave_energy_growth",
]

MIN_POINTS = 12


def geometric_times(t_lo: float, t_hi: float, n: int = 16, min_span: float = 10.0) -> np.ndarray:
    """Geometric grid with at least 12 points and t_hi/t_lo >= ``min_span``."""
    if not (0 < t_lo < t_hi):
        raise ValueError("need 0 < t_lo < t_hi")
    if t_hi / t_lo < min_span * (1 - 1e-12):
        raise ValueError(f"time grid must span a factor of at least {min_span:g}")
    if n < MIN_POINTS:
        raise ValueError(f"time grid needs at least {MIN_POINTS} points")
    return np.geomspace(t_lo, t_hi, n)


def loglog_slope(times, values) -> float:
    """Least-squares slope of log(value) against log(t)."""
    times, values = np.asarray(times, float), np.asarray(values, float)
    if times.size < 2:
        raise ValueError("need at least two points to fit a slope")
    if np.any(values <= 0):
        raise ValueError("log-log fit needs positive values")
    return float(np.polyfit(np.log(times), np.log(values), 1)[0])


class GrowthFit(NamedTuple):
    slope: float
    predicted: float
    rel_err: float
    times: np.ndarray
    values: np.ndarray
    excluded: tuple


def predicted_growth(kind: str, a, b, dim: int) -> tuple[float, str]:
    """Exponent and formula tag for the large-t moment growth."""
    inv_a = 1.0 / index_to_float(as_index(a))
    b = index_to_float(as_index(b))
    if kind == "schrodinger":
        return dim * (inv_a + b / dim - 0.5), "dim*(1/a + b/dim - 1/2)"
    if kind == "heat":
        return 0.5 * dim * (inv_a + b / dim - 1.0), "(dim/2)*(1/a + b/dim - 1)"
    raise ValueError(f"unknown flow {kind!r}")


def relative_error(slope: float, pred: float) -> float:
    """|slope - pred| / |pred|, or the absolute error when pred = 0."""
    return abs(slope - pred) / abs(pred) if pred != 0 else abs(slope - pred)


def moment_growth_fit(kind: str, u0, a, b, x0=None, t_grid=None, *, threads: int = 1,
                      tail_tol: float = TAIL_TOLERANCE) -> GrowthFit:
    """Fit the growth exponent of || |x - x0|^b u(t) ||_{L^a} along ``t_grid``.

    ``u0`` is either a :class:`GaussianPacket` (analytic trace; the moment is
    taken about its center) or a :class:`GridFunction` (numeric trace).
    Numeric points whose boundary tail exceeds ``tail_tol`` are excluded.
    """
    if kind not in ("schrodinger", "heat"):
        raise ValueError(f"unknown flow {kind!r}")
    dim = u0.dim
    if kind == "schrodinger":
        verdict = check_moment_growth(dim, a, b)
        if not verdict.ok:
            raise InadmissibleError("; ".join(verdict.lines()))
    t_grid = geometric_times(10.0, 100.0) if t_grid is None else np.asarray(t_grid, float)
    a_f, b_f = index_to_float(as_index(a)), index_to_float(as_index(b))
    pred, _ = predicted_growth(kind, a, b, dim)

    if isinstance(u0, GaussianPacket):
        if x0 is not None and tuple(x0) != u0.center:
            raise ValueError("analytic traces take the moment about the packet center")
        if kind == "schrodinger" and u0.is_modulated:
            raise ValueError("analytic Schrodinger traces need an unmodulated packet")
        flow = gaussian_schrodinger if kind == "schrodinger" else gaussian_heat
        vals = [gaussian_moment(flow(u0, t), b_f, a_f) for t in t_grid]
        times, values, excluded = t_grid, np.array(vals), ()
    elif isinstance(u0, GridFunction):
        center = (0.0,) * dim if x0 is None else tuple(x0)
        evolve = schrodinger_evolve if kind == "schrodinger" else heat_evolve

        def point(t):
            u = evolve(u0, t, check=False)
            return u.tail, weighted_norm(u, NormSpec(a_f, b_f, center), check=False)

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(point, t_grid))
        else:
            results = [point(t) for t in t_grid]
        keep = [i for i, (tail, _) in enumerate(results) if tail <= tail_tol]
        excluded = tuple(float(t_grid[i]) for i in range(len(t_grid)) if i not in keep)
        times = t_grid[keep]
        values = np.array([results[i][1] for i in keep])
        if times.size < MIN_POINTS:
            raise RuntimeError(f"only {times.size} truncation-free points remain "
                               f"({len(excluded)} excluded); enlarge the box")
    else:
        raise TypeError("u0 must be a GaussianPacket or a GridFunction")
    slope = loglog_slope(times, values)
    return GrowthFit(slope, pred, relative_error(slope, pred), times, values, excluded)


class WaveGrowth(NamedTuple):
    slope: float
    predicted_lower: float
    ok: bool
    times: np.ndarray
    moments: np.ndarray
    energies: np.ndarray
    energy_drift: float


def wave_energy_growth(state0: WaveState, n_dyadic: float, a, b, t_grid, x0=None, *,
                       threads: int = 1, slack: float = 0.05) -> WaveGrowth:
    """Slope of || |x - x0|^b (|sqrt(-Laplace) P_N u| + |P_N u_t|) ||_{L^a} in t.

    The lower prediction is (dim - 1)(1/a + b/dim - 1/2); ``ok`` requires the
    fitted slope to reach it up to ``slack``.  The projected energy along
    the grid is returned with its largest relative drift.
    """
    dim = state0.u.dim
    a_f, b_f = index_to_float(as_index(a)), index_to_float(as_index(b))
    lower = (dim - 1) * (1.0 / a_f + b_f / dim - 0.5)
    center = (0.0,) * dim if x0 is None else tuple(x0)
    t_grid = np.asarray(t_grid, dtype=float)

    def point(t):
        dens = projected_energy_density(state0, t, n_dyadic, check=False)
        return (weighted_norm(dens, NormSpec(a_f, b_f, center), check=False),
                projected_energy(state0, t, n_dyadic, check=False))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(point, t_grid))
    else:
        results = [point(t) for t in t_grid]
    moments = np.array([r[0] for r in results])
    energies = np.array([r[1] for r in results])
    e0 = projected_energy(state0, 0.0, n_dyadic, check=False)
    drift = float(np.max(np.abs(energies - e0)) / e0) if e0 > 0 else 0.0
    slope = loglog_slope(t_grid, moments)
    return WaveGrowth(slope, lower, bool(slope >= lower - slack), t_grid, moments, energies,
                      drift)
