"""Config-driven experiment dispatch: validation first, then compute.

A config is a JSON object::

    {"experiment": "<tag>", "grid": {"dim": 1, "L": 20, "N": 2048},
     "params": {...}, "seed": 0, "tolerances": {...}}
"""

from __future__ import annotations

import math
import platform
from fractions import Fraction

import numpy as np

from .. import __version__
from ..field.grid import GridFunction
from ..field.norms import lp_norm
from ..field.sets import IndicatorSet
from ..oracles import GaussianPacket, standard_gaussian
from ..params import (INF, Condition, InadmissibleError, SideParams, Verdict, as_index,
                      check_lp_heisenberg, check_moment_growth, check_nls, check_thm2,
                      check_thm5, critical_index)
from ..propagators.linear import linear_trace
from ..propagators.nls import PotentialSpec
from ..propagators.wave import WaveState
from .corpus import PacketFamily, corpus_functions
from .growth import geometric_times, moment_growth_fit, predicted_growth, wave_energy_growth
from .nonlinear import lemma_time_power, nls_growth
from .observability import (heat_observability, observability_infimum,
                            schrodinger_observability, thickness_check, time_samples)
from .products import (half_mass_check, lemma1_check, lemma1_constant, lemma2_check,
                       product_minimizer, thm5_product, up_product)
from .records import ExperimentRecord, predicted

__all__ = ["EXPERIMENTS", "ConfigError", "validate", "run_experiment"]


class ConfigError(ValueError):
    """Malformed or incomplete configuration."""


def _get(d, key, default=None, required=False):
    if key not in d:
        if required:
            raise ConfigError(f"missing config field {key!r}")
        return default
    return d[key]


def _grid(cfg, dim=1, L=20.0, N=1024):
    g = cfg.get("grid", {})
    return int(g.get("dim", dim)), float(g.get("L", L)), int(g.get("N", N))


def _side(d, n) -> SideParams:
    try:
        return SideParams(n, d["a"], d["b"], d["k"])
    except KeyError as exc:
        raise ConfigError(f"side parameters need a, b, k (missing {exc})") from None


def _omega(d, dim) -> IndicatorSet:
    return IndicatorSet.from_dict(d or {"kind": "full"}, dim)


def _provenance(cfg, **extra) -> dict:
    dim, L, N = _grid(cfg)
    out = {"grid": {"dim": dim, "L": L, "N": N}, "seed": int(cfg.get("seed", 0)),
           "package_version": __version__, "numpy": np.__version__,
           "python": platform.python_version()}
    out.update(extra)
    return out


def _tol(cfg, name, default):
    return float(cfg.get("tolerances", {}).get(name, default))


def _verdict(*conds, unknown=()):
    return Verdict(tuple(conds), tuple(unknown))


def _merge(*verdicts) -> Verdict:
    conds, unknown = [], []
    for v in verdicts:
        conds.extend(v.conditions)
        unknown.extend(v.unknown)
    return Verdict(tuple(conds), tuple(unknown))


# -- validation -----------------------------------------------------------------


def _validate_up(cfg):
    p = cfg.get("params", {})
    dim = _grid(cfg)[0]
    s1 = _side(_get(p, "side1", required=True), dim)
    s2 = _side(_get(p, "side2", required=True), dim)
    v = check_thm2(dim, s1, s2)
    if s1 == s2 and s1.a == s1.k and s1.b == 1:
        # the L^p Heisenberg family: report its open endpoints
        lp = check_lp_heisenberg(dim, s1.a)
        if lp.unknown:
            return _merge(lp)
    return v


def _validate_lemma1(cfg):
    p = cfg.get("params", {})
    dim = _grid(cfg)[0]
    a, b, pp = as_index(p.get("a", 2)), as_index(p.get("b", 1)), as_index(p.get("p", 1))
    s = as_index(p.get("s", 2))
    c = critical_index(dim, a, b)
    return _verdict(Condition("p > critical index", c, "<", pp),
                    Condition("p <= a", pp, "<=", a),
                    Condition("p < inf", pp, "<", INF),
                    Condition("s >= 1", Fraction(1), "<=", s),
                    Condition("s < inf", s, "<", INF))


def _validate_lemma2(cfg):
    p = cfg.get("params", {})
    k, pp, q, m = (as_index(p.get(x)) for x in ("k", "p", "q", "m"))
    chain1 = m <= k <= pp and m < q <= pp
    chain2 = pp <= k <= m and pp <= q < m
    if chain1:
        return _verdict(Condition("m <= k", m, "<=", k), Condition("k <= p", k, "<=", pp),
                        Condition("m < q", m, "<", q), Condition("q <= p", q, "<=", pp))
    return _verdict(Condition("p <= k", pp, "<=", k), Condition("k <= m", k, "<=", m),
                    Condition("p <= q", pp, "<=", q), Condition("q < m", q, "<", m))


def _validate_growth(cfg):
    p = cfg.get("params", {})
    dim = _grid(cfg)[0]
    if p.get("kind", "schrodinger") == "heat":
        return _verdict(Condition("b > 0", Fraction(0), "<", as_index(p.get("b", 1))))
    return check_moment_growth(dim, p.get("a", 2), p.get("b", 1))


def _validate_wave(cfg):
    p = cfg.get("params", {})
    return check_moment_growth(_grid(cfg, dim=2)[0], p.get("a", 2), p.get("b", 1))


def _positive_cond(label, x):
    return Condition(label, Fraction(0), "<", as_index(x))


def _validate_obs(cfg):
    p = cfg.get("params", {})
    kind = p.get("omega", {"kind": "full"}).get("kind", "full")
    conds = [_positive_cond("T > 0", p.get("T", 1)), _positive_cond("dt > 0", p.get("dt", 0.05))]
    unknown = () if kind in ("full", "ball_complement", "periodic_slabs") else (
        f"observable set of kind {kind!r} is not one of the cited examples",)
    return _verdict(*conds, unknown=unknown)


def _validate_heat_obs(cfg):
    p = cfg.get("params", {})
    conds = [_positive_cond("T > 0", p.get("T", 1)), _positive_cond("dt > 0", p.get("dt", 0.05))]
    conds += [_positive_cond(f"R = {R} > 0", R) for R in p.get("R", [1, 2, 4])]
    return _verdict(*conds)


def _validate_thickness(cfg):
    p = cfg.get("params", {})
    g = as_index(p.get("gamma", Fraction(2, 5)))
    return _verdict(_positive_cond("gamma > 0", g), Condition("gamma <= 1", g, "<=", Fraction(1)),
                    _positive_cond("side > 0", p.get("side", 1)))


def _validate_thm5(cfg):
    p = cfg.get("params", {})
    dim = _grid(cfg)[0]
    return check_thm5(dim, p.get("a1", 2), p.get("b1", 1), p.get("k1", 2),
                      p.get("a2", 2), p.get("b2", 1), p.get("k2", 2))


def _validate_nls(cfg):
    p = cfg.get("params", {})
    dim = _grid(cfg)[0]
    sigma = as_index(p.get("sigma", 2))
    eta = _verdict(Condition("eta integrable (sigma > 1)", Fraction(1), "<", sigma))
    return _merge(check_nls(dim, p.get("p", 4), p.get("m", 3)), eta)


def _validate_minimizer(cfg):
    return _validate_up(cfg)


# -- experiments ----------------------------------------------------------------


def _run_up(cfg, threads):
    p = cfg["params"]
    dim, L, N = _grid(cfg, L=40.0, N=4096)
    s1, s2 = _side(p["side1"], dim), _side(p["side2"], dim)
    width = float(p.get("width", 0.5))
    lams = [float(x) for x in p.get("lambdas", [0.25, 0.5, 1, 2, 4])]
    x0 = tuple(p.get("x0", [0.0] * dim))
    xi0 = tuple(p.get("xi0", [0.0] * dim))
    base = GaussianPacket(dim=dim, width=width)
    rows, prods = [], []
    for lam in lams:
        g = base.dilate(lam)
        g = GaussianPacket(dim, 1.0, g.width, center=x0, modulation=xi0)
        res = up_product(g.sample(L, N), s1, s2, x0, xi0)
        prods.append(res.product)
        rows.append((lam, res.product, res.factor1, res.factor2))
    spread = (max(prods) - min(prods)) / float(np.mean(prods))
    tol = _tol(cfg, "dilation", 5e-3)
    rec = ExperimentRecord("up_product", params={"side1": s1, "side2": s2, "width": width,
                                                 "lambdas": lams, "x0": x0, "xi0": xi0},
                           measured={"products": prods, "dilation_spread": spread},
                           tolerances={"dilation": tol},
                           provenance=_provenance(cfg))
    ok = spread <= tol
    heis = all(s.a == 2 and s.k == 2 and s.b == 1 for s in (s1, s2))
    if heis:
        rec.predicted["product"] = predicted(dim / 2.0, "Gaussian Heisenberg product dim/2")
        rec.tolerances["product_rel"] = _tol(cfg, "product_rel", 5e-3)
        err = max(abs(x - dim / 2.0) for x in prods) / (dim / 2.0)
        rec.measured["product_rel_err"] = err
        ok = ok and err <= rec.tolerances["product_rel"]
    rec.ok = bool(ok)
    rec.add_series("dilation", ("lambda", "product", "factor1", "factor2"), rows)
    return rec


def _corpus(cfg, dim_default=1):
    dim, L, N = _grid(cfg, dim=dim_default, L=32.0, N=512 if dim_default == 1 else 128)
    p = cfg.get("params", {})
    size = int(p.get("size", 500))
    return dim, L, N, size, corpus_functions(int(cfg.get("seed", 0)), size, dim, L, N)


def _run_lemma1(cfg, threads):
    p = cfg.get("params", {})
    a, b, s, pp = (p.get("a", 2), p.get("b", 1), p.get("s", 2), p.get("p", 1))
    dim, L, N, size, fs = _corpus(cfg)
    tol = _tol(cfg, "quadrature", 1e-6)
    ratios, bad, half_bad = [], 0, 0
    for f in fs:
        lhs, rhs, ok = lemma1_check(f, a, b, s, pp, tol=tol)
        ratios.append(lhs / rhs)
        bad += not ok
        half_bad += not half_mass_check(f, float(as_index(pp)), float(as_index(s)), tol=tol)[2]
    C = lemma1_constant(dim, a, b, s, pp)
    return ExperimentRecord(
        "lemma1",
        params={"a": a, "b": b, "s": s, "p": pp, "corpus_size": size},
        measured={"violations": bad, "half_mass_violations": half_bad,
                  "min_ratio": min(ratios), "max_ratio": max(ratios)},
        predicted={"violations": predicted(0, "moment lower bound is a theorem"),
                   "constant": predicted(C, "(2K)^(-1/p) (v_n 2^s)^(-e/(n p))")},
        ok=bad == 0 and half_bad == 0, tolerances={"quadrature": tol},
        provenance=_provenance(cfg, grid={"dim": dim, "L": L, "N": N}))


def _run_lemma2(cfg, threads):
    p = cfg.get("params", {})
    k, pp, q, m = (p.get(x) for x in ("k", "p", "q", "m"))
    dim, L, N, size, fs = _corpus(cfg)
    tol = _tol(cfg, "quadrature", 1e-6)
    bad, worst = 0, math.inf
    for f in fs:
        lhs, rhs, ok = lemma2_check(f, k, pp, q, m, tol=tol)
        bad += not ok
        worst = min(worst, lhs / rhs)
    return ExperimentRecord(
        "lemma2", params={"k": k, "p": pp, "q": q, "m": m, "corpus_size": size},
        measured={"violations": bad, "min_ratio": worst},
        predicted={"violations": predicted(0, "Holder interpolation")},
        ok=bad == 0, tolerances={"quadrature": tol},
        provenance=_provenance(cfg, grid={"dim": dim, "L": L, "N": N}))


def _run_growth(cfg, threads):
    p = cfg.get("params", {})
    kind = p.get("kind", "schrodinger")
    mode = p.get("mode", "analytic")
    dim, L, N = _grid(cfg, L=1024.0, N=4096)
    a, b = p.get("a", 2), p.get("b", 1)
    alpha = float(p.get("alpha", 0.25))
    t_grid = geometric_times(float(p.get("t_lo", 10)), float(p.get("t_hi", 100)),
                             int(p.get("n_t", 16)))
    g = GaussianPacket(dim=dim, width=alpha)
    u0 = g if mode == "analytic" else g.sample(L, N)
    tail_tol = _tol(cfg, "tail", 1e-8)
    fit = moment_growth_fit(kind, u0, a, b, t_grid=t_grid, threads=threads, tail_tol=tail_tol)
    tol = _tol(cfg, "slope_rel", 1e-2)
    _, formula = predicted_growth(kind, a, b, dim)
    rec = ExperimentRecord(
        "moment_growth",
        params={"kind": kind, "mode": mode, "a": a, "b": b, "alpha": alpha,
                "t_lo": float(t_grid[0]), "t_hi": float(t_grid[-1]), "n_t": len(t_grid)},
        measured={"slope": fit.slope, "rel_err": fit.rel_err, "excluded": list(fit.excluded)},
        predicted={"slope": predicted(fit.predicted, formula)},
        ok=fit.rel_err <= tol, tolerances={"slope_rel": tol, "tail": tail_tol},
        provenance=_provenance(cfg, grid={"dim": dim, "L": L, "N": N}))
    rec.add_series("moment", ("t", "moment"), zip(fit.times, fit.values))
    return rec


def _run_wave(cfg, threads):
    p = cfg.get("params", {})
    dim, L, N = _grid(cfg, dim=2, L=100.0, N=256)
    a, b = p.get("a", 2), p.get("b", 1)
    nd = float(p.get("N_dyadic", 1))
    alpha = float(p.get("alpha", 0.25))
    t_grid = geometric_times(float(p.get("t_lo", 5)), float(p.get("t_hi", 50)),
                             int(p.get("n_t", 12)))
    u = GaussianPacket(dim=dim, width=alpha).sample(L, N)
    state = WaveState(u, u * 0.0)
    slack = _tol(cfg, "slope_slack", 0.05)
    etol = _tol(cfg, "energy", 1e-6)
    res = wave_energy_growth(state, nd, a, b, t_grid, threads=threads, slack=slack)
    rec = ExperimentRecord(
        "wave_energy",
        params={"a": a, "b": b, "N_dyadic": nd, "alpha": alpha,
                "t_lo": float(t_grid[0]), "t_hi": float(t_grid[-1]), "n_t": len(t_grid)},
        measured={"slope": res.slope, "energy_drift": res.energy_drift},
        predicted={"slope_lower": predicted(res.predicted_lower,
                                            "(dim-1)*(1/a + b/dim - 1/2)")},
        ok=res.ok and res.energy_drift <= etol,
        tolerances={"slope_slack": slack, "energy": etol},
        provenance=_provenance(cfg, grid={"dim": dim, "L": L, "N": N}))
    rec.add_series("moment", ("t", "moment", "projected_energy"),
                   zip(res.times, res.moments, res.energies))
    return rec


def _run_obs(cfg, threads):
    p = cfg.get("params", {})
    dim, L, N = _grid(cfg, L=40.0, N=1024)
    T, dt = float(p.get("T", 1)), float(p.get("dt", 0.05))
    omega = _omega(p.get("omega"), dim)
    widths = [float(w) for w in p.get("widths", [0.25, 0.5, 1, 2])]
    centers = [float(c) for c in p.get("centers", [0.0, 1.0, 3.0])]
    members, labels = [], []
    for w in widths:
        for c in centers:
            members.append(GaussianPacket(dim, 1.0, w, center=[c] + [0.0] * (dim - 1))
                           .sample(L, N))
            labels.append((w, c))
    inf, i, ratios = observability_infimum(members, omega, T, dt, threads=threads)
    full = schrodinger_observability(members[0], IndicatorSet.full(), T, dt, threads=threads)
    tol = _tol(cfg, "unitarity", 1e-6)
    full_err = abs(full - math.sqrt(T)) / math.sqrt(T)
    rec = ExperimentRecord(
        "schrodinger_observability",
        params={"T": T, "dt": dt, "omega": omega, "widths": widths, "centers": centers},
        measured={"infimum": inf, "argmin_width": labels[i][0], "argmin_center": labels[i][1],
                  "full_space_ratio": full, "full_space_rel_err": full_err},
        predicted={"full_space_ratio": predicted(math.sqrt(T), "sqrt(T) by unitarity")},
        ok=full_err <= tol and inf > 0, tolerances={"unitarity": tol},
        provenance=_provenance(cfg, grid={"dim": dim, "L": L, "N": N}))
    rec.add_series("ratios", ("width", "center", "ratio"),
                   [(w, c, r) for (w, c), r in zip(labels, ratios)])
    return rec


def _run_heat_obs(cfg, threads):
    p = cfg.get("params", {})
    dim, L, N = _grid(cfg, L=32.0, N=512)
    T, dt = float(p.get("T", 1)), float(p.get("dt", 0.05))
    omega = _omega(p.get("omega", {"kind": "periodic_slabs", "period": 1, "fill": 0.5}), dim)
    Rs = [float(r) for r in p.get("R", [1, 2, 4])]
    u0 = standard_gaussian(dim).sample(L, N)
    thick, worst = thickness_check(omega, float(p.get("side", 1)), float(p.get("gamma", 0.4)),
                                   u0)
    if not thick:
        raise InadmissibleError(f"Omega is not thick at the requested scale (worst {worst:.3g})")
    tol = _tol(cfg, "intermediate", 1e-10)
    rows, scaled, inter_ok = [], [], True
    for R in Rs:
        res = heat_observability(u0, omega, T, dt, R, tol=tol)
        rows.append((R, res.ratio, res.floor, res.intermediate))
        scaled.append(res.ratio / res.floor)
        inter_ok = inter_ok and res.intermediate_ok
    rec = ExperimentRecord(
        "heat_observability",
        params={"T": T, "dt": dt, "omega": omega, "R": Rs},
        measured={"min_ratio_over_floor": min(scaled), "intermediate_ok": inter_ok,
                  "thickness_worst": worst},
        predicted={"floor": predicted([math.exp(-T * R * R) for R in Rs], "exp(-T R^2)")},
        ok=inter_ok and min(scaled) > 0, tolerances={"intermediate": tol},
        provenance=_provenance(cfg, grid={"dim": dim, "L": L, "N": N}))
    rec.add_series("band", ("R", "ratio", "floor", "intermediate"), rows)
    return rec


def _run_thickness(cfg, threads):
    p = cfg.get("params", {})
    dim, L, N = _grid(cfg, L=16.0, N=512)
    omega = _omega(p.get("omega", {"kind": "periodic_slabs", "period": 1, "fill": 0.5}), dim)
    side, gamma = float(p.get("side", 1)), float(p.get("gamma", 0.4))
    grid = GridFunction(np.zeros((N,) * dim), L)
    thick, worst = thickness_check(omega, side, gamma, grid)
    return ExperimentRecord(
        "thickness", params={"omega": omega, "side": side, "gamma": gamma},
        measured={"thick": thick, "worst_fraction": worst}, ok=thick,
        provenance=_provenance(cfg, grid={"dim": dim, "L": L, "N": N}))


def _run_thm5(cfg, threads):
    p = cfg.get("params", {})
    dim, L, N = _grid(cfg, L=40.0, N=1024)
    T, dt = float(p.get("T", 1)), float(p.get("dt", 0.05))
    omega = _omega(p.get("omega"), dim)
    keys = ("a1", "b1", "k1", "a2", "b2", "k2")
    vals = [p.get(k, d) for k, d in zip(keys, (2, 1, 2, 2, 1, 2))]
    u0 = GaussianPacket(dim, 1.0, float(p.get("alpha", 0.5))).sample(L, N)
    trace = linear_trace("schrodinger", u0, time_samples(T, dt), threads=threads)
    res = thm5_product(trace, omega, T, *vals)
    return ExperimentRecord(
        "thm5", params=dict(zip(keys, vals)) | {"T": T, "dt": dt, "omega": omega},
        measured={"product": res.product, "factor1": res.factor1, "factor2": res.factor2},
        ok=bool(res.product > 0 and math.isfinite(res.product)),
        provenance=_provenance(cfg, grid={"dim": dim, "L": L, "N": N}))


def _run_nls(cfg, threads):
    p = cfg.get("params", {})
    dim, L, N = _grid(cfg, L=1024.0, N=4096)
    pp, m, sigma = float(p.get("p", 4)), float(p.get("m", 3)), float(p.get("sigma", 2))
    c = float(p.get("c", 1000))
    T, dt = float(p.get("T", 50)), float(p.get("dt", 0.05))
    size = float(p.get("data_norm", 1e-2))
    g = GaussianPacket(dim, 1.0, float(p.get("alpha", 0.25))).sample(L, N)
    u0 = g * (size / lp_norm(g, pp / (pp - 1)))
    pot = PotentialSpec("constant", c=c, sigma=sigma, m=m, gamma=lemma_time_power(dim, pp, m))
    run = nls_growth(u0, pot, T, dt, p=pp, fit_window=tuple(p.get("fit_window", (10, 50))))
    tols = {"mass": _tol(cfg, "mass", 1e-8), "contraction": _tol(cfg, "contraction", 0.5),
            "agreement": _tol(cfg, "agreement", 1e-3), "slope_rel": _tol(cfg, "slope_rel", 2e-2)}
    later = run.ratios[1:] if len(run.ratios) > 1 else run.ratios
    ok = (run.mass_drift <= tols["mass"] and all(r < tols["contraction"] for r in later)
          and run.agreement <= tols["agreement"] and run.rel_err <= tols["slope_rel"])
    rec = ExperimentRecord(
        "nls",
        params={"p": pp, "m": m, "sigma": sigma, "c": c, "T": T, "dt": dt,
                "data_norm": size, "gamma": pot.gamma},
        measured={"mass_drift": run.mass_drift, "ratios": run.ratios,
                  "distances": run.distances, "agreement": run.agreement,
                  "slope": run.slope, "rel_err": run.rel_err},
        predicted={"slope": predicted(run.predicted, "dim*(1/a + b/dim - 1/2)")},
        ok=bool(ok), tolerances=tols,
        provenance=_provenance(cfg, grid={"dim": dim, "L": L, "N": N}))
    rec.add_series("moment", ("t", "moment"), zip(run.fit_times, run.fit_values))
    return rec


def _run_minimizer(cfg, threads):
    p = cfg["params"]
    dim, L, N = _grid(cfg, L=20.0, N=1024)
    s1, s2 = _side(p["side1"], dim), _side(p["side2"], dim)
    fam_cfg = p.get("family", {"tag": "gaussian_sweep"})
    family = PacketFamily(fam_cfg.get("tag", "gaussian_sweep"), dim=dim, half_width=L,
                          n_points=N, width=float(fam_cfg.get("width", 1.0)),
                          K=int(fam_cfg.get("K", 1)), seed=int(cfg.get("seed", 0)),
                          bounds=tuple(tuple(b) for b in fam_cfg.get("bounds", [(-2.0, 2.0)])))
    res = product_minimizer(family, s1, s2, int(p.get("budget", 40)),
                            seed=int(cfg.get("seed", 0)))
    rec = ExperimentRecord(
        "minimizer", params={"side1": s1, "side2": s2, "family": family,
                             "budget": int(p.get("budget", 40))},
        measured={"min_product": res.min_product, "argmin": list(res.argmin),
                  "evaluations": res.evaluations, "budget_exhausted": res.exhausted},
        ok=None, provenance=_provenance(cfg, grid={"dim": dim, "L": L, "N": N}))
    rec.add_series("trajectory", ("evaluation", "product", "best"),
                   [(e, v, b) for e, _, v, b in res.trajectory])
    return rec


EXPERIMENTS = {
    "up_product": (_validate_up, _run_up),
    "lemma1": (_validate_lemma1, _run_lemma1),
    "lemma2": (_validate_lemma2, _run_lemma2),
    "moment_growth": (_validate_growth, _run_growth),
    "wave_energy": (_validate_wave, _run_wave),
    "schrodinger_observability": (_validate_obs, _run_obs),
    "heat_observability": (_validate_heat_obs, _run_heat_obs),
    "thickness": (_validate_thickness, _run_thickness),
    "thm5": (_validate_thm5, _run_thm5),
    "nls": (_validate_nls, _run_nls),
    "minimizer": (_validate_minimizer, _run_minimizer),
}


def _lookup(cfg):
    tag = cfg.get("experiment")
    if tag not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment {tag!r}; choose from {sorted(EXPERIMENTS)}")
    return EXPERIMENTS[tag]


def validate(cfg: dict) -> Verdict:
    """Admissibility verdict for a config; raises ConfigError when malformed."""
    check, _ = _lookup(cfg)
    try:
        return check(cfg)
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"malformed parameters: {exc}") from None


def run_experiment(cfg: dict, threads: int = 1) -> ExperimentRecord:
    """Validate, then run; inadmissible configs never reach the compute path."""
    verdict = validate(cfg)
    if not verdict.ok:
        raise InadmissibleError("; ".join(verdict.lines()))
    _, run = _lookup(cfg)
    return run(cfg, threads)
