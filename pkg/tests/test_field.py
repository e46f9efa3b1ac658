import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lpuncertainty.experiments.corpus import corpus_functions
from lpuncertainty.field import (
    GridFunction, IndicatorSet, NormSpec, TruncationWarning, bump, check_dyadic, fourier,
    frequency_norm, h0_ratio, h1_ratio, inverse_fourier, lattice_zeta, lp_norm, lp_project,
    lp_symbol, restrict, spacetime_norm, weighted_norm,
)
from lpuncertainty.oracles import GaussianPacket, gaussian_fourier, gaussian_lp, gaussian_moment
from lpuncertainty.propagators import EvolutionTrace, linear_trace


def gauss(dim=1, alpha=1.0, L=20.0, N=1024, center=None, amp=1.0):
    g = GaussianPacket(dim=dim, amplitude=amp, width=alpha,
                       center=center if center is not None else (0.0,) * dim)
    return g, g.sample(L, N)


def rel(a, b):
    return abs(a - b) / abs(b)


# -- grid -------------------------------------------------------------------

def test_grid_geometry():
    f = GridFunction(np.zeros(8), 2.0)
    assert f.spacing == 0.5
    assert np.allclose(f.axis, np.arange(-2.0, 2.0, 0.5))
    assert f.node_index((0.0,)) == (4,)
    assert f.node_index((0.1,)) is None


def test_grid_is_immutable():
    f = GridFunction(np.zeros(8), 1.0)
    with pytest.raises(ValueError):
        f.samples[0] = 1.0


@pytest.mark.parametrize("bad", [np.zeros(6), np.zeros((4, 8)), np.zeros(8192)])
def test_grid_rejects_bad_shapes(bad):
    with pytest.raises(ValueError):
        GridFunction(bad, 1.0)


def test_truncation_flag():
    _, f = gauss(L=3.0, N=64)
    assert f.tail > 1e-8
    with pytest.warns(TruncationWarning):
        lp_norm(f, 2)
    _, g = gauss(L=10.0, N=256)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        lp_norm(g, 2)


# -- norms ----------------------------------------------------------------

def test_constant_one_on_box():
    f = GridFunction(np.ones(64), 3.0)
    assert lp_norm(f, 1, check=False) == pytest.approx(6.0, rel=1e-14)


@pytest.mark.parametrize("dim,N", [(1, 1024), (2, 256), (3, 128)])
@pytest.mark.parametrize("p", [0.2, 0.5, 1, 2, 3.5])
def test_lp_norm_gaussian(dim, N, p):
    # the box must hold e^{-p x^2} down to double precision
    L = max(8.0, math.sqrt(40.0 / p))
    _, f = gauss(dim=dim, L=L, N=N)
    expected = (math.pi / p) ** (dim / (2 * p))
    assert rel(lp_norm(f, p), expected) < 1e-6


def test_lp_norm_sup_is_amplitude():
    _, f = gauss(amp=2.5 * np.exp(0.3j), center=(0.137,))
    assert lp_norm(f, math.inf) == pytest.approx(2.5, rel=1e-12)


def test_lp_norm_rejects_nonpositive():
    _, f = gauss()
    for p in (0, -1):
        with pytest.raises(ValueError):
            lp_norm(f, p)


def test_weighted_norm_example():
    _, f = gauss()
    expected = (math.sqrt(math.pi / 2) / 4) ** 0.5
    assert rel(weighted_norm(f, NormSpec(2, 1)), expected) < 1e-10


def test_weighted_norm_translation_covariant():
    _, f = gauss(N=2048, L=20)
    _, g = gauss(N=2048, L=20, center=(3.3,))
    a = weighted_norm(f, NormSpec(2, 1.5))
    b = weighted_norm(g, NormSpec(2, 1.5, center=(3.3,)))
    assert rel(b, a) < 1e-8


def test_weighted_norm_b_zero_is_lp():
    _, f = gauss()
    assert weighted_norm(f, NormSpec(3, 0)) == lp_norm(f, 3)


@pytest.mark.parametrize("dim,N,L", [(1, 1024, 12.0), (2, 256, 10.0), (3, 128, 8.0)])
@pytest.mark.parametrize("a,b", [(1, 0.5), (2, 1), (3, 0.3), (math.inf, 1), (2, 2.5)])
def test_weighted_norm_matches_oracle(dim, N, L, a, b):
    g, f = gauss(dim=dim, L=L, N=N)
    assert rel(weighted_norm(f, NormSpec(a, b)), gaussian_moment(g, b, a)) < 1e-6


def test_weighted_norm_off_node_center_matches_oracle():
    g, f = gauss(L=12.0, N=1024, center=(0.4137,))
    assert rel(weighted_norm(f, NormSpec(2, 0.5, center=(0.4137,))),
               gaussian_moment(g, 0.5, 2)) < 1e-6


@pytest.mark.parametrize("s", [3.0, -0.5, -4.5, -9.5])
def test_lattice_zeta_one_dimension_is_riemann(s):
    from scipy.special import zeta
    assert lattice_zeta(1, s) == pytest.approx(2 * zeta(s), rel=1e-9)


def test_lattice_zeta_shifted_matches_hurwitz():
    from scipy.special import zeta
    d, s = 0.3, 3.5
    assert lattice_zeta(1, s, (d,)) == pytest.approx(zeta(s, d) + zeta(s, 1 - d), rel=1e-10)


def test_h0_ratio_examples():
    _, f = gauss(alpha=1.0)
    assert h0_ratio(f, 1) == pytest.approx(1.0, rel=1e-14)
    assert rel(h0_ratio(f, 2), math.sqrt(math.pi) / (math.pi / 2) ** 0.25) < 1e-10


@pytest.mark.parametrize("lam", [0.5, 2.0, 4.0])
def test_h0_ratio_dilation(lam):
    g, f = gauss(L=20, N=2048)
    fl = g.dilate(lam).sample(20, 2048)
    for q in (2, 3):
        assert rel(h0_ratio(fl, q), lam ** (-1 + 1 / q) * h0_ratio(f, q)) < 1e-8


def test_h1_ratio_examples():
    _, f = gauss(alpha=0.5, L=20, N=1024)
    assert rel(h1_ratio(f, 1, 2), 1 / math.sqrt(2)) < 1e-10
    assert h1_ratio(f, 0, 2) == pytest.approx(1.0, rel=1e-12)


def test_h1_ratio_grows_like_distance():
    ds = np.array([20.0, 40.0, 80.0])
    vals = []
    for d in ds:
        _, f = gauss(alpha=1.0, L=128, N=4096, center=(d,))
        vals.append(h1_ratio(f, 1.5, 2))
    slope = np.polyfit(np.log(ds), np.log(vals), 1)[0]
    assert slope == pytest.approx(1.5, abs=0.01)


def test_ratios_reject_zero():
    z = GridFunction(np.zeros(64), 1.0)
    with pytest.raises(ValueError):
        h0_ratio(z, 2)


@pytest.mark.parametrize("p", [0.5, 1, 2, 4])
def test_quadrature_consistency_doubling(p):
    _, f = gauss(L=15, N=512)
    _, g = gauss(L=15, N=1024)
    assert rel(lp_norm(f, p), lp_norm(g, p)) < 1e-8
    assert rel(weighted_norm(f, NormSpec(p, 1)), weighted_norm(g, NormSpec(p, 1))) < 1e-8


@pytest.mark.parametrize("dim,N", [(1, 2048), (2, 512)])
@pytest.mark.parametrize("lam", [0.5, 1, 2, 4])
def test_dilation_law(dim, N, lam):
    g, f = gauss(dim=dim, L=24.0, N=N)
    fl = g.dilate(lam).sample(24.0, N)
    for p in (1, 2, 5):
        assert rel(lp_norm(fl, p), lam ** (-dim / p) * lp_norm(f, p)) < 1e-3
    for a, b in ((2, 1), (1, 0.5), (math.inf, 2)):
        scale = lam ** (-b - (0 if math.isinf(a) else dim / a))
        got = weighted_norm(fl, NormSpec(a, b))
        assert rel(got, scale * weighted_norm(f, NormSpec(a, b))) < 1e-3


@pytest.mark.parametrize("p", np.linspace(0.25, 1.0, 7))
def test_log_domain_agrees_with_direct(p):
    funcs = corpus_functions(3, 5, 1, 40.0, 2048)
    for f in funcs:
        a = lp_norm(f, p, method="log", check=False)
        b = lp_norm(f, p, method="direct", check=False)
        assert rel(a, b) < 1e-12


def test_tiny_exponent_uses_log_domain():
    _, f = gauss(amp=1e-30, L=40, N=2048)
    val = lp_norm(f, 0.05)
    assert math.isfinite(val) and val > 0
    assert rel(val, gaussian_lp(GaussianPacket(1, 1e-30, 1.0), 0.05)) < 1e-8


# -- Fourier ---------------------------------------------------------------

def test_fourier_gaussian_example():
    g, f = gauss(L=20, N=2048)
    fh = fourier(f)
    exact = gaussian_fourier(g)(*fh.coords)
    assert np.max(np.abs(fh.samples - exact)) / np.max(np.abs(exact)) < 1e-6


def test_fourier_of_translate_is_modulated():
    g, f = gauss(L=20, N=2048)
    x0 = 1.25
    fs = g.translate((x0,)).sample(20, 2048)
    a, b = fourier(f), fourier(fs)
    xi = a.axis
    assert np.max(np.abs(b.samples - np.exp(-1j * xi * x0) * a.samples)) < 1e-10


@pytest.mark.parametrize("dim,N", [(1, 1024), (2, 256), (3, 64)])
def test_round_trip(dim, N):
    f = corpus_functions(11, 1, dim, 10.0 if dim < 3 else 16.0, N)[0] if dim < 3 else \
        gauss(dim=3, L=8, N=N)[1]
    back = inverse_fourier(fourier(f, check=False), check=False)
    err = lp_norm(back - f, 2, check=False) / lp_norm(f, 2, check=False)
    assert err < 1e-10


def test_narrow_gaussian_has_flat_transform():
    _, f = gauss(alpha=400.0, L=4, N=4096)
    fh = fourier(f)
    central = np.abs(fh.samples[np.abs(fh.axis) < 2.0])
    assert central.max() / central.min() < 1.01


@pytest.mark.parametrize("dim,N,L", [(1, 2048, 40.0), (2, 512, 32.0)])
def test_plancherel(dim, N, L):
    for f in corpus_functions(5, 5, dim, L, N):
        lhs = lp_norm(fourier(f), 2)
        rhs = (2 * math.pi) ** (dim / 2) * lp_norm(f, 2)
        assert rel(lhs, rhs) < 1e-8


def test_hausdorff_young_on_corpus():
    ps = [1.0, 1.25, 1.5, 1.75, 2.0]
    worst = -np.inf
    for f in corpus_functions(2024, 100, 1, 40.0, 2048):
        fh = fourier(f, check=False)
        for p in ps:
            pc = math.inf if p == 1 else p / (p - 1)
            lhs = lp_norm(fh, pc, check=False)
            rhs = (2 * math.pi) ** (0 if math.isinf(pc) else 1 / pc) * lp_norm(f, p, check=False)
            worst = max(worst, lhs / rhs - 1)
    assert worst <= 1e-6


# -- Littlewood-Paley -------------------------------------------------------

def test_bump_profile():
    assert bump(np.array([0.0, 1.0]))[1] == 1.0
    assert bump(np.array([1.1, 2.0])).max() == 0.0
    s = bump(np.linspace(1, 1.1, 50))
    assert np.all(np.diff(s) <= 0)


def test_partition_of_unity():
    xi = np.linspace(0.5, 500.0, 20001)
    total = sum(lp_symbol(xi, 2.0 ** j) for j in range(-3, 12))
    inside = (xi > 2.0 ** -3 * 1.1) & (xi < 2.0 ** 11 / 2)
    assert np.max(np.abs(total[inside] - 1)) < 1e-6


def test_pure_frequency_packet():
    L, N = 200.0, 4096
    n_dy = 4.0
    g = GaussianPacket(1, 1.0, 0.005, center=(0.0,), modulation=(n_dy * 0.8,))
    f = g.sample(L, N)
    mass = lp_norm(f, 2) ** 2
    kept = lp_project(f, n_dy)
    assert rel(lp_norm(kept, 2) ** 2, mass) < 1e-6
    assert lp_norm(lp_project(f, 4 * n_dy), 2, check=False) ** 2 < 1e-8 * mass


def test_projection_preserves_real_radial():
    _, f = gauss(dim=2, alpha=0.2, L=30, N=256)
    pf = lp_project(f, 2.0)
    assert np.max(np.abs(pf.samples.imag)) < 1e-12
    s = pf.samples.real
    assert np.max(np.abs(s[1:, 1:] - s[1:, 1:].T)) < 1e-12
    assert np.max(np.abs(s[1:, 1:] - s[1:, 1:][::-1, :])) < 1e-12


@pytest.mark.parametrize("n", [3.0, 1e-3, 1e6, -2.0])
def test_dyadic_rejection(n):
    _, f = gauss(L=20, N=1024)
    with pytest.raises(ValueError):
        check_dyadic(f, n)


# -- sets ---------------------------------------------------------------

def test_restrict_full_is_identity():
    _, f = gauss()
    assert np.array_equal(restrict(f, IndicatorSet.full()).samples, f.samples)


def test_restrict_ball_complement():
    _, f = gauss(L=5, N=64)
    g = restrict(f, IndicatorSet.ball_complement((0.0,), 1.0))
    inside = np.abs(f.axis) <= 1.0
    assert np.all(g.samples[inside] == 0)
    assert np.array_equal(g.samples[~inside], f.samples[~inside])


@given(st.floats(0.5, 5.0), st.floats(0.05, 1.0), st.floats(-2.0, 2.0))
def test_restrict_idempotent(period, fill, offset):
    _, f = gauss(dim=2, L=5, N=64)
    om = IndicatorSet.periodic_slabs(period, fill, offset, axis=1)
    once = restrict(f, om)
    assert np.array_equal(restrict(once, om).samples, once.samples)


def test_restrict_mask_shape_mismatch():
    _, f = gauss(L=5, N=64)
    with pytest.raises(ValueError):
        restrict(f, IndicatorSet.explicit(np.ones(32, bool)))


def test_set_dict_round_trip():
    om = IndicatorSet.periodic_slabs(2.0, 0.25, 0.5, axis=0)
    back = IndicatorSet.from_dict(om.to_dict(), 1)
    x = np.linspace(-5, 5, 101)
    assert np.array_equal(om.indicator((x,)), back.indicator((x,)))


@pytest.mark.parametrize("bad", [0.0, 1.5])
def test_slab_fill_bounds(bad):
    with pytest.raises(ValueError):
        IndicatorSet.periodic_slabs(1.0, bad)


# -- spacetime ---------------------------------------------------------

def _constant_trace(f, T=2.0, steps=20):
    times = np.linspace(0, T, steps + 1)
    return EvolutionTrace("constant", times, [f] * len(times), T / steps)


@pytest.mark.parametrize("p", [1, 2, 3])
def test_spacetime_constant_in_time(p):
    _, f = gauss()
    tr = _constant_trace(f, T=2.0)
    assert rel(spacetime_norm(tr, p), 2.0 ** (1 / p) * lp_norm(f, p)) < 1e-12


def test_spacetime_schrodinger_mass():
    _, f = gauss(alpha=0.5, L=60, N=2048)
    times = np.linspace(0, 3.0, 31)
    tr = linear_trace("schrodinger", f, times)
    assert rel(spacetime_norm(tr, 2), math.sqrt(3.0) * lp_norm(f, 2)) < 1e-6


def test_spacetime_weight_monotone_in_t0():
    _, f = gauss()
    tr = _constant_trace(f, T=1.0)
    vals = [spacetime_norm(tr, 2, NormSpec(2, 1, center=(t0, 0.0))) for t0 in (2, 3, 5, 8)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_spacetime_window_checks():
    _, f = gauss()
    tr = _constant_trace(f, T=1.0, steps=10)
    with pytest.raises(ValueError, match="exceeds"):
        spacetime_norm(tr, 2, window=(0, 2))
    with pytest.raises(ValueError, match="sample times"):
        spacetime_norm(tr, 2, window=(0, 0.55))
    sub = spacetime_norm(tr, 2, window=(0.2, 0.6))
    assert rel(sub, math.sqrt(0.4) * lp_norm(f, 2)) < 1e-12


def test_frequency_norm_shape():
    _, f = gauss(dim=2, L=5, N=64)
    assert frequency_norm(f).shape == f.shape
