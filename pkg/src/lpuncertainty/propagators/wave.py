"""The wave system u_tt = Laplace u via its cos/sin multiplier solution."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..field.grid import GridFunction
from ..field.norms import lp_norm
from ..field.transform import fourier_multiplier, frequency_norm, lp_project

__all__ = [
    "WaveState",
    "wave_solve",
    "wave_energy",
    "projected_state",
    "projected_energy_density",
    "projected_energy",
]

# relative threshold below which sin(t|xi|)/|xi| takes its limit value t
SINC_THRESHOLD = 1e-12


@dataclass(frozen=True, eq=False)
class WaveState:
    u: GridFunction
    ut: GridFunction

    def __post_init__(self):
        if not self.u.same_grid(self.ut):
            raise ValueError("u and u_t must share one grid")


def _sin_over(xi: np.ndarray, t: float, xi_max: float) -> np.ndarray:
    small = xi < SINC_THRESHOLD * xi_max
    safe = np.where(small, 1.0, xi)
    return np.where(small, t, np.sin(t * safe) / safe)


def wave_solve(state: WaveState, t: float, *, check: bool = True) -> WaveState:
    """Exact solution at time t of u_tt = Laplace u from ``state``."""
    t = float(t)
    if check:
        state.u.warn_if_truncated("wave_solve (u)")
        state.ut.warn_if_truncated("wave_solve (u_t)")
    if t == 0:
        return state
    u, ut = state.u, state.ut
    xi = frequency_norm(u)
    xi_max = float(xi.max())
    c, s = np.cos(t * xi), np.sin(t * xi)
    u0h, u1h = np.fft.fftn(u.samples), np.fft.fftn(ut.samples)
    new_u = c * u0h + _sin_over(xi, t, xi_max) * u1h
    new_ut = -xi * s * u0h + c * u1h
    return WaveState(u.with_samples(np.fft.ifftn(new_u)), u.with_samples(np.fft.ifftn(new_ut)))


def _grad_magnitude(u: GridFunction) -> GridFunction:
    """sqrt(-Laplace) u."""
    return fourier_multiplier(u, lambda r: r)


def wave_energy(state: WaveState) -> float:
    """||sqrt(-Laplace) u||_2^2 + ||u_t||_2^2."""
    return (lp_norm(_grad_magnitude(state.u), 2, check=False) ** 2
            + lp_norm(state.ut, 2, check=False) ** 2)


def projected_state(state: WaveState, n_dyadic: float) -> WaveState:
    return WaveState(lp_project(state.u, n_dyadic), lp_project(state.ut, n_dyadic))


def projected_energy_density(state0: WaveState, t: float, n_dyadic: float, *,
                             check: bool = True) -> GridFunction:
    """|sqrt(-Laplace) P_N u(t)| + |d/dt P_N u(t)| as a nonnegative grid function."""
    proj = projected_state(wave_solve(state0, t, check=check), n_dyadic)
    dens = np.abs(_grad_magnitude(proj.u).samples) + np.abs(proj.ut.samples)
    return proj.u.with_samples(dens)


def projected_energy(state0: WaveState, t: float, n_dyadic: float, *,
                     check: bool = True) -> float:
    """Energy of P_N u at time t; independent of t since P_N commutes with the flow."""
    return wave_energy(projected_state(wave_solve(state0, t, check=check), n_dyadic))
