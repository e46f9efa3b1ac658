"""Free Schrodinger, heat and half-wave flows as Fourier multipliers."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..field.grid import GridFunction
from ..field.transform import fourier_multiplier, frequency_norm
from .trace import EvolutionTrace

__all__ = [
    "schrodinger_multiplier",
    "schrodinger_evolve",
    "heat_evolve",
    "half_wave_evolve",
    "linear_trace",
]


def schrodinger_multiplier(f: GridFunction, t: float) -> np.ndarray:
    """exp(-i t |xi|^2) in FFT order."""
    xi = frequency_norm(f)
    return np.exp(-1j * float(t) * xi * xi)


def _finish(u: GridFunction, check: bool, what: str) -> GridFunction:
    if check:
        u.warn_if_truncated(what)
    return u


def schrodinger_evolve(u0: GridFunction, t: float, *, check: bool = True) -> GridFunction:
    """e^{it Laplace} u0, solving i u_t + Laplace u = 0."""
    if t == 0:
        return u0
    return _finish(fourier_multiplier(u0, schrodinger_multiplier(u0, t)), check,
                   f"schrodinger_evolve(t={t:g})")


def heat_evolve(u0: GridFunction, t: float, *, check: bool = True) -> GridFunction:
    """e^{t Laplace} u0 for t >= 0."""
    if t < 0:
        raise ValueError("heat flow is only defined for t >= 0")
    if t == 0:
        return u0
    return _finish(fourier_multiplier(u0, lambda r: np.exp(-float(t) * r * r)), check,
                   f"heat_evolve(t={t:g})")


def half_wave_evolve(u0: GridFunction, t: float, sign: int = 1, *,
                     check: bool = True) -> GridFunction:
    """e^{-i sign t |xi|} applied to u0 (sign = +1 or -1)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if t == 0:
        return u0
    return _finish(fourier_multiplier(u0, lambda r: np.exp(-1j * sign * float(t) * r)), check,
                   f"half_wave_evolve(t={t:g})")


_FLOWS = {"schrodinger": schrodinger_evolve, "heat": heat_evolve}


def linear_trace(kind: str, u0: GridFunction, times, *, threads: int = 1,
                 check: bool = True) -> EvolutionTrace:
    """Trace of a linear flow at uniformly spaced ``times``; each time is independent."""
    if kind not in _FLOWS:
        raise ValueError(f"unknown linear flow {kind!r}")
    times = np.asarray(times, dtype=float)
    flow = _FLOWS[kind]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            snaps = list(pool.map(lambda t: flow(u0, t, check=check), times))
    else:
        snaps = [flow(u0, t, check=check) for t in times]
    dt = float(times[1] - times[0]) if times.size > 1 else 0.0
    return EvolutionTrace(kind, times, snaps, dt, method="spectral multiplier")
