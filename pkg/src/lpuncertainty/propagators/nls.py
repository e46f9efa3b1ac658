"""i u_t + Laplace u + phi(t, x) |u|^(m-1) u = 0: split-step and Duhamel-Picard."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ..field.grid import GridFunction
from ..field.norms import lp_norm
from ..field.transform import frequency_norm
from .trace import EvolutionTrace

__all__ = [
    "PotentialSpec",
    "BlowUpError",
    "NonContractionError",
    "WindowEdgeWarning",
    "nls_split_step",
    "xp_norm",
    "duhamel_picard",
    "DuhamelResult",
]

BLOWUP_FACTOR = 1e6
PHASE_LIMIT = 0.1
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(8)


class BlowUpError(RuntimeError):
    """The sup norm grew past the blow-up guard."""


class NonContractionError(RuntimeError):
    """Picard distances failed to shrink for three consecutive iterates."""


class WindowEdgeWarning(RuntimeWarning):
    """A sampled supremum sits at the last sample of the window."""


_FAMILIES = ("zero", "separable", "constant")


@dataclass(frozen=True, eq=False)
class PotentialSpec:
    """phi(t, x) = c * (|t|/(1+|t|))^gamma * (1+|t|)^(-sigma) * g(x).

    ``family`` is ``zero``, ``constant`` (g = 1) or ``separable`` (g given on
    the grid as ``profile``).  The factor ``(|t|/(1+|t|))^gamma`` lets phi
    vanish at t = 0 like |t|^gamma, as the decay hypothesis on phi demands.
    """

    family: str = "zero"
    c: float = 0.0
    sigma: float = 2.0
    m: float = 3.0
    gamma: float = 0.0
    profile: GridFunction | None = None

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown potential family {self.family!r}")
        if not self.m > 1:
            raise ValueError("nonlinearity order m must exceed 1")
        if self.gamma < 0:
            raise ValueError("gamma must be nonnegative")
        if self.family == "separable":
            if self.profile is None:
                raise ValueError("separable potential needs a spatial profile")
            s = self.profile.samples
            if np.max(np.abs(s.imag)) > 1e-14 * max(1.0, float(np.max(np.abs(s.real)))):
                raise ValueError("phi must be real-valued for mass conservation")

    @property
    def is_zero(self) -> bool:
        return self.family == "zero" or self.c == 0

    def time_factor(self, t):
        t = np.abs(np.asarray(t, dtype=float))
        out = (1.0 + t) ** (-self.sigma)
        if self.gamma:
            out = out * (t / (1.0 + t)) ** self.gamma
        return self.c * out

    def time_integral(self, t0: float, t1: float) -> float:
        """int_{t0}^{t1} of the time factor, 8-point Gauss-Legendre."""
        half = 0.5 * (t1 - t0)
        s = 0.5 * (t0 + t1) + half * _GL_NODES
        return float(half * np.sum(_GL_WEIGHTS * self.time_factor(s)))

    def spatial(self, f: GridFunction) -> np.ndarray:
        """Real spatial profile g on the grid of ``f``."""
        if self.family == "zero":
            return np.zeros(f.shape)
        if self.family == "constant":
            return np.ones(f.shape)
        if not self.profile.same_grid(f):
            raise ValueError("potential profile lives on a different grid")
        return self.profile.samples.real

    def sup(self, f: GridFunction, t0: float, t1: float) -> float:
        """Upper estimate of sup |phi| over [t0, t1] x grid."""
        if self.is_zero:
            return 0.0
        ts = np.linspace(t0, t1, 2001)
        if self.gamma and self.sigma > self.gamma:
            # interior maximum of the time profile
            tstar = self.gamma / (self.sigma - self.gamma)
            if t0 <= tstar <= t1:
                ts = np.append(ts, tstar)
        return float(np.max(np.abs(self.time_factor(ts)))) * float(np.max(np.abs(self.spatial(f))))

    def to_dict(self) -> dict:
        return {"family": self.family, "c": self.c, "sigma": self.sigma, "m": self.m,
                "gamma": self.gamma}


def _rotate(u: np.ndarray, g: np.ndarray, m: float, phase_int: float) -> np.ndarray:
    """Exact flow of u_t = i phi |u|^(m-1) u over a substep."""
    if phase_int == 0:
        return u
    return u * np.exp(1j * (phase_int * g) * np.abs(u) ** (m - 1))


def _steps(window, dt) -> tuple[float, int]:
    t0, t1 = float(window[0]), float(window[1])
    if not dt > 0:
        raise ValueError("dt must be positive")
    n = int(round((t1 - t0) / dt))
    if n < 1 or abs(n * dt - (t1 - t0)) > 1e-9 * max(1.0, abs(t1 - t0)):
        raise ValueError("dt must divide the window length")
    return t0, n


def nls_split_step(u0: GridFunction, pot: PotentialSpec, window, dt: float, *,
                   save_every: int = 1, check: bool = True) -> EvolutionTrace:
    """Strang splitting: half rotation, exact linear step, half rotation.

    The rotation substeps integrate the time factor of phi exactly (to
    Gauss-Legendre accuracy), so they leave |u| unchanged pointwise.
    """
    t0, n = _steps(window, dt)
    if save_every < 1 or n % save_every:
        raise ValueError("save_every must divide the number of steps")
    g = pot.spatial(u0)
    u = u0.samples.copy()
    sup0 = float(np.max(np.abs(u)))
    phase_rate = pot.sup(u0, t0, t0 + n * dt) * sup0 ** (pot.m - 1)
    if dt * phase_rate >= PHASE_LIMIT:
        raise ValueError(f"dt = {dt:g} too large: phase rotation {dt * phase_rate:.3g} per step "
                         f"exceeds {PHASE_LIMIT}")
    lin = np.exp(-1j * dt * frequency_norm(u0) ** 2)
    times, snaps = [t0], [u0]
    for k in range(n):
        ta = t0 + k * dt
        tm, tb = ta + 0.5 * dt, ta + dt
        if not pot.is_zero:
            u = _rotate(u, g, pot.m, pot.time_integral(ta, tm))
        u = np.fft.ifftn(lin * np.fft.fftn(u))
        if not pot.is_zero:
            u = _rotate(u, g, pot.m, pot.time_integral(tm, tb))
        if not np.all(np.isfinite(u)) or np.max(np.abs(u)) > BLOWUP_FACTOR * sup0:
            raise BlowUpError(f"sup norm exceeded {BLOWUP_FACTOR:g} x initial at t = {tb:g}")
        if (k + 1) % save_every == 0:
            snap = u0.with_samples(u)
            if check:
                snap.warn_if_truncated(f"nls_split_step(t={tb:g})")
            times.append(tb)
            snaps.append(snap)
    return EvolutionTrace("nls", times, snaps, dt * save_every, method="strang split-step",
                          step=dt, params=pot.to_dict())


def xp_norm(trace: EvolutionTrace, p, t_min: float | None = None) -> float:
    """max over samples t >= t_min of |t|^{dim/2 (1 - 2/p)} ||u(t)||_p."""
    p = float(p)
    if p < 2:
        raise ValueError("X_p norms need p >= 2")
    t_min = trace.step if t_min is None else float(t_min)
    sel = [i for i, t in enumerate(trace.times) if t >= t_min - 1e-12]
    if not sel:
        raise ValueError("no samples at or after t_min")
    dim = trace.grid.dim
    w = 0.5 * dim if math.isinf(p) else 0.5 * dim * (1.0 - 2.0 / p)
    vals = [abs(trace.times[i]) ** w * lp_norm(trace.snapshots[i], p, check=False) for i in sel]
    j = int(np.argmax(vals))
    if len(sel) > 1 and j == len(sel) - 1 and vals[j] > vals[j - 1]:
        warnings.warn("X_p supremum attained at the window edge; the window may be too short",
                      WindowEdgeWarning, stacklevel=2)
    return float(vals[j])


class DuhamelResult(NamedTuple):
    trace: EvolutionTrace
    ratios: list
    distances: list


def _xp_distance(a: list, b: list, times, p, t_min, dim, vol) -> float:
    w = 0.5 * dim * (1.0 - 2.0 / p)
    best = 0.0
    for i, t in enumerate(times):
        if t < t_min - 1e-12:
            continue
        diff = np.abs(a[i] - b[i])
        best = max(best, abs(t) ** w * float(np.sum(diff ** p) * vol) ** (1.0 / p))
    return best


def duhamel_picard(u0: GridFunction, pot: PotentialSpec, window, dt: float,
                   iterations: int = 20, *, p: float = 4.0,
                   tol: float = 1e-13) -> DuhamelResult:
    """Picard iteration f_{k+1} = T f_k for the Duhamel map.

    T f(t) = e^{i(t-t0) Laplace} u0 + i int_{t0}^t e^{i(t-s) Laplace} phi |f|^(m-1) f ds,
    with the s-integral by the midpoint rule on the step grid.  Midpoint
    values of f are averages of the two neighbouring samples propagated
    half a step.  Iteration starts from the free flow and stops once the
    X_p distance between iterates reaches ``tol`` relative to the iterate.
    """
    t0, n = _steps(window, dt)
    times = t0 + dt * np.arange(n + 1)
    dim, vol = u0.dim, u0.cell_volume
    xi2 = frequency_norm(u0) ** 2
    half = np.exp(-0.5j * dt * xi2)
    half_back = np.conj(half)
    g = pot.spatial(u0)
    u0h = np.fft.fftn(u0.samples)
    free = [np.fft.ifftn(np.exp(-1j * (t - t0) * xi2) * u0h) for t in times]
    mids = times[:-1] + 0.5 * dt
    phis = [pot.time_factor(s) * g for s in mids]

    def apply(f):
        out = [u0.samples]
        acc = u0h.copy()
        for l in range(n):
            fm = 0.5 * (np.fft.ifftn(half * np.fft.fftn(f[l]))
                        + np.fft.ifftn(half_back * np.fft.fftn(f[l + 1])))
            nl = phis[l] * np.abs(fm) ** (pot.m - 1) * fm
            # pull back to t0: e^{-i(s - t0) Laplace} has symbol exp(+i(s - t0)|xi|^2)
            acc = acc + 1j * dt * np.exp(1j * (mids[l] - t0) * xi2) * np.fft.fftn(nl)
            out.append(np.fft.ifftn(np.exp(-1j * (times[l + 1] - t0) * xi2) * acc))
        return out

    f = free
    distances, ratios = [], []
    t_min = t0 + dt
    for _ in range(max(1, iterations)):
        if pot.is_zero:
            distances.append(0.0)
            break
        with np.errstate(over="ignore", invalid="ignore"):
            # divergent iterates overflow; reported just below
            nxt = apply(f)
            d = _xp_distance(nxt, f, times, p, t_min, dim, vol)
            scale = _xp_distance(nxt, [np.zeros_like(x) for x in nxt], times, p, t_min, dim,
                                 vol)
        if not math.isfinite(d):
            raise NonContractionError(f"X_p distance overflowed after {len(distances) + 1} "
                                      "iterations; initial data too large")
        if distances and distances[-1] > 0:
            ratios.append(d / distances[-1])
        distances.append(d)
        f = nxt
        if len(ratios) >= 3 and all(r >= 1 for r in ratios[-3:]):
            raise NonContractionError(
                f"X_p distances {distances[-4:]} did not shrink; initial data too large")
        if d <= tol * scale:
            break
    snaps = [u0.with_samples(x) for x in f]
    trace = EvolutionTrace("nls", times, snaps, dt, method="duhamel-picard midpoint",
                           params={**pot.to_dict(), "iterations": len(distances), "p": p})
    return DuhamelResult(trace, ratios, distances)
