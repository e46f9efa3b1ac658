"""Uncertainty products, the two lemmas behind them, and a minimizer probe."""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from ..field.grid import GridFunction
from ..field.norms import NormSpec, lp_norm, weighted_norm
from ..field.sets import IndicatorSet
from ..field.spacetime import spacetime_norm
from ..field.transform import fourier
from ..oracles import ball_volume, sphere_area
from ..params import (INF, InadmissibleError, SideParams, as_index, check_thm2, check_thm5,
                      critical_index, index_to_float, recip)

__all__ = [
    "UPResult",
    "up_product",
    "lemma1_constant",
    "lemma1_threshold",
    "lemma1_bound",
    "lemma1_check",
    "half_mass_check",
    "lemma2_check",
    "thm5_product",
    "MinimizerResult",
    "product_minimizer",
]

QUAD_TOL = 1e-6


class UPResult(NamedTuple):
    product: float
    factor1: float
    factor2: float


def _ratio(f: GridFunction, a, b, k, center) -> float:
    num = weighted_norm(f, NormSpec(index_to_float(a), index_to_float(b), center))
    den = lp_norm(f, index_to_float(k))
    if den == 0:
        raise ValueError("zero function")
    return num / den


def up_product(f: GridFunction, side1: SideParams, side2: SideParams, x0=None, xi0=None, *,
               check: bool = True) -> UPResult:
    """Two-factor product of position and frequency localization.

    factor1 = || |x - x0|^b1 f ||_a1 / ||f||_k1, factor2 the same for f^
    about xi0 with (a2, b2, k2); the product raises factor1 to
    1/a2 + b2/n - 1/k2 and factor2 to 1/a1 + b1/n - 1/k1.
    """
    n = f.dim
    if side1.n != n or side2.n != n:
        raise ValueError("side dimensions must match the grid dimension")
    if check:
        verdict = check_thm2(n, side1, side2)
        if not verdict.ok:
            raise InadmissibleError("; ".join(verdict.lines()))
    if not np.any(f.samples):
        raise ValueError("zero function")
    x0 = (0.0,) * n if x0 is None else tuple(x0)
    xi0 = (0.0,) * n if xi0 is None else tuple(xi0)
    f1 = _ratio(f, side1.a, side1.b, side1.k, x0)
    f2 = _ratio(fourier(f), side2.a, side2.b, side2.k, xi0)
    e1 = float(side1.exponent)
    e2 = float(side2.exponent)
    return UPResult(f1 ** e2 * f2 ** e1, f1, f2)


# -- explicit moment lower bound ------------------------------------------


def _lemma1_args(n, a, b, s, p):
    a, b, p = as_index(a), as_index(b), as_index(p)
    s = float(s)
    if not s >= 1 or math.isinf(s):
        raise InadmissibleError("s must lie in [1, inf)")
    if p is INF or not (critical_index(n, a, b) < p <= a):
        raise InadmissibleError(
            f"p must lie in (critical index {critical_index(n, a, b)}, a] and be finite")
    return index_to_float(a), index_to_float(b), s, index_to_float(p)


def _tail_weight(n, a, b, p, T):
    """|| |x|^{-bp} ||_{L^r(|x| >= T)} with r = a/(a - p)."""
    if a == p:
        return T ** (-b * p)
    if math.isinf(a):
        return sphere_area(n) * T ** (n - b * p) / (b * p - n)
    r = a / (a - p)
    return (sphere_area(n) / (b * p * r - n)) ** (1.0 / r) * T ** (n - (n / a + b) * p)


def lemma1_threshold(n, p, s, norm_p, norm_ps) -> float:
    """Radius T with (v_n T^n)^{1/s} ||f||_{ps'}^p = ||f||_p^p / 2."""
    return ball_volume(n) ** (-1.0 / n) * (norm_p ** p / (2.0 * norm_ps ** p)) ** (s / n)


def lemma1_constant(n, a, b, s, p) -> float:
    """C with || |x|^b f ||_a >= C ||f||_p (||f||_p/||f||_{ps'})^{s((1/a+b/n)p-1)}."""
    a, b, s, p = _lemma1_args(n, a, b, s, p)
    e = (n / a + b) * p - n
    K = _tail_weight(n, a, b, p, 1.0)
    return (2.0 * K) ** (-1.0 / p) * (ball_volume(n) * 2.0 ** s) ** (-e / (n * p))


def lemma1_bound(norm_p: float, norm_ps: float, n, a, b, s, p) -> float:
    """Right-hand side of the moment bound from the two norms of f."""
    a, b, s, p = _lemma1_args(n, a, b, s, p)
    T = lemma1_threshold(n, p, s, norm_p, norm_ps)
    return (norm_p ** p / (2.0 * _tail_weight(n, a, b, p, T))) ** (1.0 / p)


def _ps_norm(f, p, s):
    ps = math.inf if s == 1 else p * s / (s - 1.0)
    return lp_norm(f, ps)


def lemma1_check(f: GridFunction, a, b, s, p, x0=None, tol: float = QUAD_TOL):
    """(lhs, rhs, ok) for || |x - x0|^b f ||_a >= explicit bound."""
    n = f.dim
    a_, b_, s_, p_ = _lemma1_args(n, a, b, s, p)
    center = (0.0,) * n if x0 is None else tuple(x0)
    lhs = weighted_norm(f, NormSpec(a_, b_, center))
    rhs = lemma1_bound(lp_norm(f, p_), _ps_norm(f, p_, s_), n, a, b, s, p)
    return lhs, rhs, bool(lhs >= rhs * (1.0 - tol))


def half_mass_check(f: GridFunction, p, s, x0=None, tol: float = QUAD_TOL):
    """(inner, half, ok): mass of |f|^p inside the threshold ball against ||f||_p^p / 2."""
    p, s = float(p), float(s)
    center = (0.0,) * f.dim if x0 is None else tuple(x0)
    norm_p = lp_norm(f, p)
    T = lemma1_threshold(f.dim, p, s, norm_p, _ps_norm(f, p, s))
    inside = f.radius(center) <= T
    inner = float(np.sum(np.abs(f.samples[inside]) ** p)) * f.cell_volume
    half = 0.5 * norm_p ** p
    return inner, half, bool(inner <= half * (1.0 + tol))


# -- Holder interpolation ---------------------------------------------------


def lemma2_check(f: GridFunction, k, p, q, m, tol: float = QUAD_TOL):
    """(lhs, rhs, ok) for ||f||_p/||f||_k >= (||f||_q/||f||_m)^{(1/p-1/k)/(1/q-1/m)}."""
    k, p, q, m = (as_index(x) for x in (k, p, q, m))
    chain1 = m <= k <= p and m < q <= p
    chain2 = p <= k <= m and p <= q < m
    if not (chain1 or chain2):
        raise InadmissibleError("indices satisfy neither ordering chain")
    norms = {x: lp_norm(f, index_to_float(x)) for x in {k, p, q, m}}
    expo = float((recip(p) - recip(k)) / (recip(q) - recip(m)))
    lhs = norms[p] / norms[k]
    rhs = (norms[q] / norms[m]) ** expo
    return lhs, rhs, bool(lhs >= rhs * (1.0 - tol))


# -- spacetime product ------------------------------------------------------


def thm5_product(trace, omega: IndicatorSet, T: float, a1, b1, k1, a2, b2, k2,
                 x1=None, t0: float = 0.0, x2=None, *, check: bool = True) -> UPResult:
    """Product of an initial-data moment ratio and a spacetime moment ratio.

    factor1 = || |x - x1|^b1 u0 ||_a1 / ||u0||_k1 on R^n; factor2 is the
    same over [0, T] x Omega in R^{n+1} with weight |(t - t0, x - x2)|^b2.
    """
    u0 = trace.snapshots[0]
    n = u0.dim
    if check:
        verdict = check_thm5(n, a1, b1, k1, a2, b2, k2)
        if not verdict.ok:
            raise InadmissibleError("; ".join(verdict.lines()))
    s1 = SideParams(n, a1, b1, k1)
    s2 = SideParams(n + 1, a2, b2, k2)
    x1 = (0.0,) * n if x1 is None else tuple(x1)
    x2 = (0.0,) * n if x2 is None else tuple(x2)
    f1 = _ratio(u0, s1.a, s1.b, s1.k, x1)
    window = (trace.times[0], trace.times[0] + T)
    spec = NormSpec(index_to_float(s2.a), index_to_float(s2.b), (t0,) + x2)
    num = spacetime_norm(trace, spec.p, spec, omega, window)
    den = spacetime_norm(trace, index_to_float(s2.k), None, omega, window)
    if den == 0:
        raise ValueError("solution vanishes on [0, T] x Omega")
    f2 = num / den
    return UPResult(f1 ** float(s2.exponent) * f2 ** float(s1.exponent), f1, f2)


# -- counterexample probe -----------------------------------------------------


class MinimizerResult(NamedTuple):
    min_product: float
    argmin: tuple
    trajectory: list
    evaluations: int
    exhausted: bool


def product_minimizer(family, side1: SideParams, side2: SideParams, budget: int = 60, *,
                      seed: int = 0, restarts: int = 2, step: float | None = None,
                      min_step: float = 1e-3, check: bool = True) -> MinimizerResult:
    """Coordinate descent with shrinking steps and random restarts.

    Minimizes ``up_product`` over the family's parameter box.  The
    trajectory lists ``(evaluation, theta, product, best_so_far)``.
    """
    bounds = np.asarray(family.bounds, dtype=float)
    lo, hi = bounds[:, 0], bounds[:, 1]
    rng = np.random.default_rng(seed)
    trajectory = []
    best = (math.inf, None)
    evals = 0

    def evaluate(theta):
        nonlocal evals, best
        evals += 1
        val = up_product(family.member(theta), side1, side2, check=check).product
        if val < best[0]:
            best = (val, tuple(float(x) for x in theta))
        trajectory.append((evals, tuple(float(x) for x in theta), val, best[0]))
        return val

    starts = [0.5 * (lo + hi)] + [rng.uniform(lo, hi) for _ in range(restarts)]
    for start in starts:
        if evals >= budget:
            break
        theta = np.array(start, dtype=float)
        current = evaluate(theta)
        h = np.full(theta.shape, step if step is not None else 0.25) * (hi - lo)
        while evals < budget and np.any(h > min_step * (hi - lo)):
            improved = False
            for i in range(theta.size):
                for sgn in (1.0, -1.0):
                    if evals >= budget:
                        break
                    trial = theta.copy()
                    trial[i] = np.clip(trial[i] + sgn * h[i], lo[i], hi[i])
                    if trial[i] == theta[i]:
                        continue
                    val = evaluate(trial)
                    if val < current:
                        theta, current, improved = trial, val, True
                        break
            if not improved:
                h = h / 2.0
    return MinimizerResult(best[0], best[1], trajectory, evals, evals >= budget)
