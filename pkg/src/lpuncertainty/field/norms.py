"""L^p quasi-norms, weighted moments and localization ratios on grids.

Integrals use the equal-weight rule ``h^dim * sum`` on the grid, which is
spectrally accurate for smooth integrands that have decayed at the box edge.
A point singularity ``|x - x0|**gamma`` sitting on a grid node spoils that,
so weighted norms subtract the leading lattice-sum error term
``Z_dim(-gamma) * h**(dim+gamma) * G(x0)``, where ``Z_dim`` is the Epstein
zeta function of the integer lattice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import warnings

from scipy import integrate, optimize, special

from ..params import as_index, index_to_float
from .grid import GridFunction

__all__ = [
    "NormSpec",
    "as_exponent",
    "lattice_zeta",
    "lp_norm",
    "weighted_norm",
    "h0_ratio",
    "h1_ratio",
    "refined_max",
    "weighted_max",
]

# below this exponent the sum is accumulated in the log domain
LOG_DOMAIN_BELOW = 0.25


def as_exponent(p) -> float:
    """Float value of an index given as number, Fraction, string or INF."""
    v = index_to_float(as_index(p))
    if not v > 0:
        raise ValueError(f"norm exponent must be positive, got {p!r}")
    return v


@dataclass(frozen=True)
class NormSpec:
    """Weighted norm ``|| |x - center|**weight_power f ||_{L^p}``."""

    p: float
    weight_power: float = 0.0
    center: tuple | None = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "p", as_exponent(self.p))
        b = float(self.weight_power)
        if not (b >= 0 and math.isfinite(b)):
            raise ValueError("weight_power must be a finite nonnegative number")
        object.__setattr__(self, "weight_power", b)
        if self.center is not None:
            object.__setattr__(self, "center", tuple(float(c) for c in self.center))


def _theta(t: float) -> float:
    j = np.arange(1, 12)
    return 1.0 + 2.0 * float(np.sum(np.exp(-np.pi * j * j * t)))


_J = np.arange(-12, 13)
_K = np.arange(1, 12)


def _theta_shifted(t: float, delta: float) -> float:
    """sum over j in Z of exp(-pi t (j + delta)^2)."""
    return float(np.sum(np.exp(-np.pi * t * (_J + delta) ** 2)))


def _theta_dual(t: float, delta: float) -> float:
    """sum over k in Z of exp(-pi t k^2) cos(2 pi k delta)."""
    return 1.0 + 2.0 * float(np.sum(np.exp(-np.pi * _K * _K * t) * np.cos(2 * np.pi * _K * delta)))


@lru_cache(maxsize=256)
def lattice_zeta(dim: int, s: float, shift: tuple | None = None) -> float:
    """Epstein zeta sum over j in Z^dim of |j + shift|**(-s), continued in s.

    Without a shift the j = 0 term is omitted.  Uses the theta-function
    representation, valid for every ``s`` except the poles ``s = 0``
    (unshifted only) and ``s = dim``; at ``s = -2, -4, ...`` the value is 0.
    """
    half = s / 2.0
    shift = None if shift is None or not any(shift) else tuple(shift)
    if half <= 0 and half == int(half):
        if s == 0 and shift is None:
            return -1.0
        return 0.0 if s != 0 else 1.0

    if shift is None:
        def integrand(t):
            return (_theta(t) ** dim - 1.0) * (t ** (half - 1.0) + t ** ((dim - s) / 2.0 - 1.0))

        with warnings.catch_warnings():
            # large |s| makes the integrand peak far out; quad flags roundoff only
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            tail, _ = integrate.quad(integrand, 1.0, np.inf, limit=200, epsabs=1e-15,
                                     epsrel=1e-13)
        return float((-2.0 / s - 2.0 / (dim - s) + tail) * np.pi ** half / special.gamma(half))

    if len(shift) != dim:
        raise ValueError("shift needs one component per dimension")

    def direct(t):
        return t ** (half - 1.0) * math.prod(_theta_shifted(t, d) for d in shift)

    def dual(t):
        return t ** ((dim - s) / 2.0 - 1.0) * (math.prod(_theta_dual(t, d) for d in shift) - 1.0)

    with warnings.catch_warnings():
        # the dual integrand underflows to roundoff level well before t = inf
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        i1, _ = integrate.quad(direct, 1.0, np.inf, limit=200, epsabs=1e-15, epsrel=1e-13)
        i2, _ = integrate.quad(dual, 1.0, np.inf, limit=200, epsabs=1e-15, epsrel=1e-13)
    return float((-2.0 / (dim - s) + i1 + i2) * np.pi ** half / special.gamma(half))


def _log_sum(logs: np.ndarray) -> float:
    finite = logs[np.isfinite(logs)]
    if finite.size == 0:
        return -math.inf
    top = finite.max()
    return float(top + np.log(np.sum(np.exp(finite - top))))


def refined_max(values: np.ndarray) -> float:
    """Maximum of a sampled positive function, refined by a parabola in log.

    The discrete maximum is corrected along every axis by fitting a parabola
    through log-values at the argmax and its two neighbours.  Exact for
    Gaussian profiles; falls back to the grid maximum at edges and plateaus.
    """
    values = np.asarray(values, dtype=float)
    idx = np.unravel_index(int(np.argmax(values)), values.shape)
    v0 = values[idx]
    if v0 <= 0:
        return float(max(v0, 0.0))
    lv0 = math.log(v0)
    bump = 0.0
    for ax in range(values.ndim):
        i = idx[ax]
        if i == 0 or i == values.shape[ax] - 1:
            continue
        lo = list(idx)
        hi = list(idx)
        lo[ax] -= 1
        hi[ax] += 1
        vm, vp = values[tuple(lo)], values[tuple(hi)]
        if vm <= 0 or vp <= 0:
            continue
        lm, lp = math.log(vm), math.log(vp)
        curv = lm - 2.0 * lv0 + lp
        if curv >= 0:
            continue
        shift = (lm - lp) / (2.0 * curv)
        if abs(shift) <= 1.0:
            bump += -((lm - lp) ** 2) / (8.0 * curv)
    return float(math.exp(lv0 + bump))


def _power_sum(mod, p, vol, log_weight=None, log_domain=False):
    """(log of) vol * sum(weight**p * mod**p)."""
    if log_domain:
        with np.errstate(divide="ignore"):
            logs = p * np.log(mod)
        if log_weight is not None:
            logs = logs + p * log_weight
        return _log_sum(logs.ravel()) + math.log(vol)
    vals = mod ** p
    if log_weight is not None:
        with np.errstate(over="ignore"):
            vals = vals * np.exp(p * log_weight)
    return float(np.sum(vals)) * vol


def _finish(total, p, log_domain):
    if log_domain:
        return float(math.exp(total / p)) if math.isfinite(total) else 0.0
    return float(total ** (1.0 / p))


def lp_norm(f: GridFunction, p, *, method: str = "auto", refine: bool = True,
            check: bool = True) -> float:
    """(h^dim sum |f|^p)^(1/p), or the maximum of |f| for p = inf.

    The maximum is polished off-grid on the trigonometric interpolant.

    ``method`` is ``"direct"``, ``"log"`` or ``"auto"`` (log-domain
    accumulation below p = 1/4).  Quasi-norms 0 < p < 1 are allowed.
    """
    p = as_exponent(p)
    if check:
        f.warn_if_truncated("lp_norm")
    mod = np.abs(f.samples)
    if math.isinf(p):
        return weighted_max(f, 0.0, (0.0,) * f.dim, refine) if refine else float(mod.max())
    log_domain = _use_log(method, p)
    return _finish(_power_sum(mod, p, f.cell_volume, log_domain=log_domain), p, log_domain)


def _use_log(method, p):
    if method == "auto":
        return p < LOG_DOMAIN_BELOW
    if method not in ("direct", "log"):
        raise ValueError(f"unknown method {method!r}")
    return method == "log"


def _spectral_value(f: GridFunction, point, coef=None) -> complex:
    """Trigonometric interpolant of the samples evaluated at ``point``."""
    if coef is None:
        coef = np.fft.fftn(f.samples) / f.n_points ** f.dim
    k = 2.0 * np.pi * np.fft.fftfreq(f.n_points, d=f.spacing)
    out = coef
    for x in point:
        out = np.tensordot(np.exp(1j * k * (float(x) + f.half_width)), out, axes=(0, 0))
    return complex(out)


def weighted_max(f: GridFunction, b: float, center, refine: bool = True) -> float:
    """sup |x - center|^b |f(x)|, polished off-grid on the trigonometric interpolant."""
    r = f.radius(center)
    vals = np.abs(f.samples) * r ** b
    idx = np.unravel_index(int(np.argmax(vals)), vals.shape)
    best = float(vals[idx])
    if not refine or best == 0:
        return best
    coef = np.fft.fftn(f.samples) / f.n_points ** f.dim
    c = np.asarray(center, dtype=float)
    x_start = np.array([f.axis[i] for i in idx])
    h = f.spacing

    def neg(x):
        if np.max(np.abs(x - x_start)) > 2 * h:
            return 0.0
        return -abs(_spectral_value(f, x, coef)) * float(np.linalg.norm(x - c)) ** b

    res = optimize.minimize(neg, x_start, method="Nelder-Mead",
                            options={"xatol": 1e-9 * h, "fatol": 1e-15 * best,
                                     "initial_simplex": x_start + 0.5 * h * np.vstack(
                                         [np.zeros(f.dim), np.eye(f.dim)])})
    return max(best, float(-res.fun))


def _node_laplacian(g: np.ndarray, node, h: float) -> float | None:
    """Fourth-order central-difference Laplacian of ``g`` at an interior node."""
    n = g.shape[0]
    if any(j < 2 or j > n - 3 for j in node):
        return None
    lap = 0.0
    for ax in range(g.ndim):
        vals = []
        for off in (-2, -1, 0, 1, 2):
            idx = list(node)
            idx[ax] += off
            vals.append(g[tuple(idx)])
        lap += (-vals[0] + 16 * vals[1] - 30 * vals[2] + 16 * vals[3] - vals[4]) / (12 * h * h)
    return lap


def _singular_correction(f, mod, p, b, center) -> float:
    """Lattice-sum error of the p-th power weighted sum, or 0.

    With G = |f|^p and gamma = b p, the error of the equal-weight sum is
    ``Z(-gamma) h^(d+gamma) G(x0) + Z(-gamma-2) h^(d+gamma+2) Lap G(x0) / (2d) + ...``.
    Both terms are removed when x0 is a node; off-node centers keep only the
    first, evaluated with the shifted lattice sum.
    """
    gamma = b * p
    if gamma == 0 or (gamma / 2.0).is_integer():
        return 0.0
    pos = (np.asarray(center, dtype=float) + f.half_width) / f.spacing
    node = np.rint(pos)
    if np.any(node < 0) or np.any(node >= f.n_points):
        return 0.0
    frac = pos - node
    frac[np.abs(frac) < 1e-9] = 0.0
    h, dim = f.spacing, f.dim
    if np.any(frac != 0):
        shift = tuple(float(round(abs(x), 12)) for x in frac)
        g0 = abs(_spectral_value(f, center)) ** p
        return lattice_zeta(dim, -gamma, shift) * h ** (dim + gamma) * g0 if g0 else 0.0
    node = tuple(int(v) for v in node)
    g0 = mod[node] ** p
    if g0 == 0:
        return 0.0
    corr = lattice_zeta(dim, -gamma) * h ** (dim + gamma) * g0
    lap = _node_laplacian(mod ** p, node, h)
    if lap:
        corr += lattice_zeta(dim, -gamma - 2) * h ** (dim + gamma + 2) * lap / (2 * dim)
    return corr


def weighted_norm(f: GridFunction, spec: NormSpec, *, method: str = "auto",
                  refine: bool = True, correct: bool = True, check: bool = True) -> float:
    """|| |x - x0|^b f ||_{L^p} on the grid.

    For p < inf and a weight center on a grid node, the leading error of the
    point singularity is removed (``correct=False`` keeps the plain sum).
    """
    p, b = spec.p, spec.weight_power
    if b == 0:
        return lp_norm(f, p, method=method, refine=refine, check=check)
    if check:
        f.warn_if_truncated("weighted_norm")
    center = spec.center if spec.center is not None else (0.0,) * f.dim
    r = f.radius(center)
    mod = np.abs(f.samples)
    with np.errstate(divide="ignore"):
        log_w = b * np.log(r)
    if math.isinf(p):
        return weighted_max(f, b, center, refine)
    log_domain = _use_log(method, p)
    total = _power_sum(mod, p, f.cell_volume, log_weight=log_w, log_domain=log_domain)
    corr = _singular_correction(f, mod, p, b, center) if correct else 0.0
    if corr:
        if log_domain:
            plain = math.exp(total)
            total = math.log(plain - corr) if plain > corr else total
        else:
            total = total - corr
    return _finish(total, p, log_domain)


def _nonzero_denominator(value, what):
    if value == 0:
        raise ValueError(f"{what} vanishes; the ratio is undefined for the zero function")
    return value


def h0_ratio(f: GridFunction, q) -> float:
    """||f||_1 / ||f||_q."""
    return lp_norm(f, 1) / _nonzero_denominator(lp_norm(f, q), "||f||_q")


def h1_ratio(f: GridFunction, r, q) -> float:
    """|| |x|^r f ||_2 / ||f||_q."""
    num = weighted_norm(f, NormSpec(2, float(r)))
    return num / _nonzero_denominator(lp_norm(f, q), "||f||_q")
