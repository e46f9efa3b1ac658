"""Small-data nonlinear Schrodinger runs: mass, contraction, cross-check, growth."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from ..field.grid import GridFunction
from ..field.norms import NormSpec, lp_norm, weighted_norm
from ..params import InadmissibleError, check_nls, eta_condition_check
from ..propagators.nls import PotentialSpec, duhamel_picard, nls_split_step
from .growth import geometric_times, loglog_slope, predicted_growth, relative_error

__all__ = ["NLSRun", "lemma_time_power", "nls_growth"]


def lemma_time_power(dim: int, p: float, m: float) -> float:
    """Power gamma in the bound ||phi(t)|| <= C |t|^gamma eta(t): dim m/2 (1 - 2/p)."""
    return 0.5 * dim * m * (1.0 - 2.0 / p)


class NLSRun(NamedTuple):
    mass_drift: float
    ratios: list
    distances: list
    agreement: float
    slope: float
    predicted: float
    rel_err: float
    fit_times: np.ndarray
    fit_values: np.ndarray


def nls_growth(u0: GridFunction, pot: PotentialSpec, T: float, dt: float, *, p: float = 4.0,
               a: float = 2.0, b: float = 1.0, fit_window=(10.0, 50.0), n_fit: int = 16,
               iterations: int = 20, save_every: int = 10) -> NLSRun:
    """Split-step run with mass drift, Picard contraction and the moment slope."""
    dim = u0.dim
    verdict = check_nls(dim, p, pot.m)
    if not verdict.ok:
        raise InadmissibleError("; ".join(verdict.lines()))
    if not eta_condition_check(pot.sigma):
        raise InadmissibleError(f"decay sigma = {pot.sigma} must exceed 1")
    trace = nls_split_step(u0, pot, (0.0, T), dt, save_every=save_every, check=False)
    m0 = lp_norm(u0, 2, check=False)
    drift = max(abs(lp_norm(s, 2, check=False) - m0) / m0 for s in trace.snapshots)
    picard = duhamel_picard(u0, pot, (0.0, T), dt, iterations, p=p)
    end_s, end_p = trace.final.samples, picard.trace.final.samples
    agreement = float(np.linalg.norm(end_p - end_s) / np.linalg.norm(end_s))

    targets = geometric_times(*fit_window, n_fit, min_span=fit_window[1] / fit_window[0])
    idx = sorted({int(np.argmin(np.abs(trace.times - t))) for t in targets})
    times = trace.times[idx]
    values = np.array([weighted_norm(trace.snapshots[i], NormSpec(a, b), check=False)
                       for i in idx])
    slope = loglog_slope(times, values)
    pred, _ = predicted_growth("schrodinger", a, b, dim)
    return NLSRun(float(drift), picard.ratios, picard.distances, agreement, slope, pred,
                  relative_error(slope, pred), times, values)
