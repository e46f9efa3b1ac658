"""Closed-form Gaussian analytics used as ground truth.

A packet is ``c * exp(i xi0.x) * exp(-alpha |x - x0|^2)`` with complex
``alpha`` (``Re alpha > 0``).  Transforms follow the convention
``f^(xi) = int exp(-i x.xi) f(x) dx``; the Schrodinger flow is
``i u_t + Laplace u = 0`` and the heat flow ``u_t = Laplace u``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import gamma as gamma_fn

from .field.grid import GridFunction
from .field.norms import as_exponent

__all__ = [
    "GaussianPacket",
    "standard_gaussian",
    "sphere_area",
    "ball_volume",
    "gaussian_fourier",
    "gaussian_lp",
    "gaussian_moment",
    "gaussian_schrodinger",
    "gaussian_heat",
    "gaussian_moment_growth_exponent",
    "heat_moment_growth_exponent",
]


def sphere_area(dim: int) -> float:
    """Surface measure omega_{dim-1} of the unit sphere in R^dim."""
    return 2.0 * math.pi ** (dim / 2.0) / math.gamma(dim / 2.0)


def ball_volume(dim: int) -> float:
    """Volume v_dim of the unit ball in R^dim."""
    return math.pi ** (dim / 2.0) / math.gamma(dim / 2.0 + 1.0)


def _vec(v, dim, name):
    if v is None:
        return (0.0,) * dim
    out = tuple(float(x) for x in np.atleast_1d(v))
    if len(out) != dim:
        raise ValueError(f"{name} must have {dim} components")
    return out


@dataclass(frozen=True)
class GaussianPacket:
    dim: int = 1
    amplitude: complex = 1.0
    width: complex = 1.0
    center: tuple = None
    modulation: tuple = None

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise ValueError("dim must be 1, 2 or 3")
        w = complex(self.width)
        if not w.real > 0:
            raise ValueError("packet width needs a positive real part")
        object.__setattr__(self, "width", w)
        object.__setattr__(self, "amplitude", complex(self.amplitude))
        object.__setattr__(self, "center", _vec(self.center, self.dim, "center"))
        object.__setattr__(self, "modulation", _vec(self.modulation, self.dim, "modulation"))

    @property
    def real_width(self) -> float:
        """w = Re(alpha); ``|g| = |c| exp(-w |x - x0|^2)``."""
        return self.width.real

    @property
    def is_modulated(self) -> bool:
        return any(self.modulation)

    def __call__(self, *coords):
        coords = [np.asarray(c, dtype=float) for c in coords]
        r2 = sum((c - x0) ** 2 for c, x0 in zip(coords, self.center))
        phase = sum(c * k for c, k in zip(coords, self.modulation))
        return self.amplitude * np.exp(1j * phase - self.width * r2)

    def sample(self, half_width: float, n_points: int) -> GridFunction:
        return GridFunction.from_function(self, self.dim, half_width, n_points)

    def dilate(self, lam: float) -> "GaussianPacket":
        """The packet x -> g(lam x)."""
        lam = float(lam)
        return replace(self, width=self.width * lam * lam,
                       center=tuple(x / lam for x in self.center),
                       modulation=tuple(k * lam for k in self.modulation))

    def translate(self, shift) -> "GaussianPacket":
        """x -> g(x - shift), written back in packet form."""
        shift = _vec(shift, self.dim, "shift")
        phase = -sum(k * s for k, s in zip(self.modulation, shift))
        return replace(self, amplitude=self.amplitude * cmath.exp(1j * phase),
                       center=tuple(x + s for x, s in zip(self.center, shift)))


def standard_gaussian(dim: int = 1) -> GaussianPacket:
    """exp(-|x|^2 / 2)."""
    return GaussianPacket(dim=dim, width=0.5)


def gaussian_fourier(g: GaussianPacket) -> GaussianPacket:
    """Exact transform: width 1/(4 alpha), center xi0, modulation -x0."""
    d = g.dim
    dot = sum(k * x for k, x in zip(g.modulation, g.center))
    amp = g.amplitude * cmath.sqrt(math.pi / g.width) ** d * cmath.exp(1j * dot)
    return GaussianPacket(dim=d, amplitude=amp, width=1.0 / (4.0 * g.width),
                          center=g.modulation, modulation=tuple(-x for x in g.center))


def gaussian_lp(g: GaussianPacket, p) -> float:
    """||g||_p = |c| (pi / (p w))^(dim / (2p)); |c| for p = inf."""
    p = as_exponent(p)
    c = abs(g.amplitude)
    if math.isinf(p):
        return c
    return c * (math.pi / (p * g.real_width)) ** (g.dim / (2.0 * p))


def gaussian_moment(g: GaussianPacket, b, a, center=None) -> float:
    """|| |x - x0|^b g ||_{L^a} about the packet center."""
    if center is not None and _vec(center, g.dim, "center") != g.center:
        raise ValueError("closed form needs the moment centered at the packet center")
    a = as_exponent(a)
    b = float(b)
    if b < 0:
        raise ValueError("moment power must be nonnegative")
    c, w, d = abs(g.amplitude), g.real_width, g.dim
    if math.isinf(a):
        if b == 0:
            return c
        return c * (b / (2.0 * w * math.e)) ** (b / 2.0)
    s = (a * b + d) / 2.0
    integral = sphere_area(d) * float(gamma_fn(s)) / (2.0 * (a * w) ** s)
    return c * integral ** (1.0 / a)


def gaussian_schrodinger(g: GaussianPacket, t: float) -> GaussianPacket:
    """Free evolution e^{it Laplace} g, exactly.

    The modulated case follows from Galilean invariance: the center moves
    with velocity 2 xi0 and the amplitude picks up exp(-i |xi0|^2 t).
    ``1 + 4 i alpha t`` only meets the real axis at t = 0, so the principal
    square root is continuous in t.
    """
    t = float(t)
    z = 1.0 + 4j * g.width * t
    k2 = sum(k * k for k in g.modulation)
    amp = g.amplitude * (1.0 / cmath.sqrt(z)) ** g.dim * cmath.exp(-1j * k2 * t)
    center = tuple(x + 2.0 * k * t for x, k in zip(g.center, g.modulation))
    return replace(g, amplitude=amp, width=g.width / z, center=center)


def gaussian_heat(g: GaussianPacket, t: float) -> GaussianPacket:
    """Heat evolution e^{t Laplace} g for t >= 0 (unmodulated packets)."""
    t = float(t)
    if t < 0:
        raise ValueError("heat flow is only defined forward in time")
    if g.is_modulated:
        raise ValueError("heat oracle covers unmodulated packets only")
    z = 1.0 + 4.0 * g.width * t
    return replace(g, amplitude=g.amplitude * (1.0 / cmath.sqrt(z)) ** g.dim,
                   width=g.width / z)


def gaussian_moment_growth_exponent(a, b, dim: int) -> float:
    """Large-t power of || |x|^b e^{it Laplace} g ||_{L^a}: dim (1/a + b/dim - 1/2)."""
    inv_a = 1.0 / as_exponent(a)
    return dim * (inv_a + float(b) / dim - 0.5)


def heat_moment_growth_exponent(a, b, dim: int) -> float:
    """Large-t power of || |x|^b e^{t Laplace} g ||_{L^a}: (dim/2)(1/a + b/dim - 1)."""
    inv_a = 1.0 / as_exponent(a)
    return 0.5 * dim * (inv_a + float(b) / dim - 1.0)
