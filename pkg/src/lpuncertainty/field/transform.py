"""Fourier transform in the convention f^(xi) = int e^{-i x.xi} f(x) dx.

On the grid ``x_j = -L + j h`` the transform is sampled at
``xi_k = k * pi / L`` for ``k = -N/2 .. N/2 - 1``, which is again a
:class:`GridFunction` box of half-width ``pi / h``.  With that pairing the
discrete transform reproduces the continuous one up to the phase
``(-1)**k`` and the cell volume, and Plancherel holds exactly:
``||f^||_2 = (2 pi)^(dim/2) ||f||_2``.
"""

from __future__ import annotations

import math

import numpy as np

from .grid import GridFunction

__all__ = [
    "fourier",
    "inverse_fourier",
    "frequencies",
    "frequency_norm",
    "fourier_multiplier",
    "bump",
    "lp_symbol",
    "check_dyadic",
    "lp_project",
]


def _phase(n: int, dim: int) -> np.ndarray:
    k = np.arange(-n // 2, n // 2)
    s = np.where(k % 2 == 0, 1.0, -1.0)
    out = s
    for _ in range(dim - 1):
        out = np.multiply.outer(out, s)
    return out


def fourier(f: GridFunction, *, check: bool = True) -> GridFunction:
    """Samples of f^ on the dual grid (half-width pi/h, spacing pi/L)."""
    if check:
        f.warn_if_truncated("fourier (aliasing risk)")
    spec = np.fft.fftshift(np.fft.fftn(f.samples)) * _phase(f.n_points, f.dim)
    return GridFunction(spec * f.cell_volume, math.pi / f.spacing)


def inverse_fourier(g: GridFunction, *, check: bool = True) -> GridFunction:
    """Inverse of :func:`fourier`, with the (2 pi)^(-dim) normalization."""
    if check:
        g.warn_if_truncated("inverse_fourier (aliasing risk)")
    h = math.pi / g.half_width
    vals = np.fft.ifftn(np.fft.ifftshift(g.samples * _phase(g.n_points, g.dim)))
    return GridFunction(vals / h ** g.dim, g.n_points * h / 2.0)


def frequencies(f: GridFunction) -> tuple[np.ndarray, ...]:
    """Angular frequency meshgrids in FFT (unshifted) order."""
    k = 2.0 * math.pi * np.fft.fftfreq(f.n_points, d=f.spacing)
    return tuple(np.meshgrid(*([k] * f.dim), indexing="ij"))


def frequency_norm(f: GridFunction) -> np.ndarray:
    """|xi| in FFT order."""
    return np.sqrt(sum(k * k for k in frequencies(f)))


def fourier_multiplier(f: GridFunction, symbol) -> GridFunction:
    """Apply the Fourier multiplier ``symbol`` (array in FFT order, or a
    callable of |xi|) to ``f``."""
    m = symbol(frequency_norm(f)) if callable(symbol) else np.asarray(symbol)
    return f.with_samples(np.fft.ifftn(np.fft.fftn(f.samples) * m))


def bump(r) -> np.ndarray:
    """Radial cutoff: 1 on r <= 1, 0 on r >= 11/10, quintic smoothstep between."""
    r = np.asarray(r, dtype=float)
    s = np.clip((r - 1.0) / 0.1, 0.0, 1.0)
    return 1.0 - s ** 3 * (10.0 - 15.0 * s + 6.0 * s * s)


def lp_symbol(xi_abs, n_dyadic: float) -> np.ndarray:
    """phi(xi/N) - phi(2 xi/N), supported in N/2 <= |xi| <= 11N/10."""
    xi_abs = np.asarray(xi_abs, dtype=float)
    return bump(xi_abs / n_dyadic) - bump(2.0 * xi_abs / n_dyadic)


def check_dyadic(f: GridFunction, n_dyadic: float) -> None:
    """Reject dyadic scales that are not powers of two or not resolved.

    The annulus must sit above four dual-grid spacings and below the
    Nyquist frequency pi/h.
    """
    n_dyadic = float(n_dyadic)
    if not n_dyadic > 0:
        raise ValueError("dyadic scale must be positive")
    mant, _ = math.frexp(n_dyadic)
    if mant != 0.5:
        raise ValueError(f"dyadic scale must be a power of two, got {n_dyadic}")
    d_xi = math.pi / f.half_width
    xi_max = math.pi / f.spacing
    if n_dyadic / 2.0 < 4.0 * d_xi or 1.1 * n_dyadic > xi_max:
        raise ValueError(
            f"dyadic scale {n_dyadic} outside the resolvable band "
            f"[{8 * d_xi:.3g}, {xi_max / 1.1:.3g}]"
        )


def lp_project(f: GridFunction, n_dyadic: float) -> GridFunction:
    """Littlewood-Paley projection P_N onto |xi| ~ N."""
    check_dyadic(f, n_dyadic)
    return fourier_multiplier(f, lambda r: lp_symbol(r, n_dyadic))
