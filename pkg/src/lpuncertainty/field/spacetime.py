"""Norms over [0, T] x Omega of an evolution trace."""

from __future__ import annotations

import math

import numpy as np

from .norms import NormSpec, _finish, _power_sum
from .sets import IndicatorSet

__all__ = ["window_weights", "spacetime_norm"]


def window_weights(times, window) -> tuple[np.ndarray, np.ndarray]:
    """Indices of the samples inside ``window`` and their trapezoid weights."""
    times = np.asarray(times, dtype=float)
    t0, t1 = float(window[0]), float(window[1])
    if t1 < t0:
        raise ValueError("window end precedes its start")
    if times.size < 2:
        raise ValueError("trace needs at least two samples")
    dt = times[1] - times[0]
    if not np.allclose(np.diff(times), dt, rtol=1e-9, atol=1e-12):
        raise ValueError("trace time step is not uniform")
    eps = 1e-9 * max(abs(dt), 1.0)
    if t0 < times[0] - eps or t1 > times[-1] + eps:
        raise ValueError(f"window [{t0}, {t1}] exceeds the trace [{times[0]}, {times[-1]}]")
    idx = np.nonzero((times >= t0 - eps) & (times <= t1 + eps))[0]
    if idx.size < 2 or abs(times[idx[0]] - t0) > eps or abs(times[idx[-1]] - t1) > eps:
        raise ValueError("window endpoints must be sample times of the trace")
    w = np.full(idx.size, dt)
    w[0] = w[-1] = dt / 2.0
    return idx, w


def spacetime_norm(trace, p, spec: NormSpec | None = None,
                   omega: IndicatorSet | None = None, window=None) -> float:
    """|| |(t - t0, x - x1)|^b u ||_{L^p([t_start, t_end] x Omega)}.

    Trapezoid rule in time, equal-weight rule in space.  ``spec.center``
    holds ``(t0, x1...)``; ``spec.p`` is ignored in favour of ``p``.
    """
    spec = spec if spec is not None else NormSpec(p)
    p = NormSpec(p).p
    omega = omega if omega is not None else IndicatorSet.full()
    window = window if window is not None else (trace.times[0], trace.times[-1])
    idx, wt = window_weights(trace.times, window)
    first = trace.snapshots[0]
    dim = first.dim
    center = spec.center if spec.center is not None else (0.0,) * (dim + 1)
    if len(center) != dim + 1:
        raise ValueError("spacetime weight center needs 1 + dim components")
    b = spec.weight_power
    mask = omega.mask_for(first)
    r2_space = sum((c - x0) ** 2 for c, x0 in zip(first.coords, center[1:]))

    peak = 0.0
    total = 0.0
    for i, w in zip(idx, wt):
        snap = trace.snapshots[i]
        mod = np.where(mask, np.abs(snap.samples), 0.0)
        if b:
            r = np.sqrt(r2_space + (trace.times[i] - center[0]) ** 2)
            mod = mod * r ** b
        if math.isinf(p):
            peak = max(peak, float(mod.max()))
        else:
            total += w * _power_sum(mod, p, first.cell_volume)
    if math.isinf(p):
        return peak
    return _finish(total, p, False)
