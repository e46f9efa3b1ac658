import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lpuncertainty.field import NormSpec, fourier, lp_norm, weighted_norm
from lpuncertainty.oracles import (
    GaussianPacket, ball_volume, gaussian_fourier, gaussian_heat, gaussian_lp, gaussian_moment,
    gaussian_moment_growth_exponent, gaussian_schrodinger, heat_moment_growth_exponent,
    sphere_area, standard_gaussian,
)

widths = st.floats(0.05, 5.0)
times = st.floats(-5.0, 5.0)
vec = st.floats(-3.0, 3.0)


def close_packets(g, h, tol=1e-12):
    assert g.dim == h.dim
    assert abs(g.amplitude - h.amplitude) <= tol * max(1.0, abs(g.amplitude))
    assert abs(g.width - h.width) <= tol * max(1.0, abs(g.width))
    assert np.allclose(g.center, h.center, atol=tol)
    assert np.allclose(g.modulation, h.modulation, atol=tol)


def test_packet_rejects_bad_width():
    with pytest.raises(ValueError):
        GaussianPacket(1, 1.0, -0.5)


def test_geometry_constants():
    assert sphere_area(2) == pytest.approx(2 * math.pi)
    assert ball_volume(3) == pytest.approx(4 * math.pi / 3)


# -- transforms ---------------------------------------------------------------

def test_fourier_standard_example():
    gh = gaussian_fourier(GaussianPacket(1, 1.0, 0.5))
    xi = np.linspace(-4, 4, 9)
    assert np.allclose(gh(xi), math.sqrt(2 * math.pi) * np.exp(-xi ** 2 / 2), rtol=1e-14)


@given(widths, vec, vec)
def test_double_transform_is_reflection(alpha, x0, k0):
    g = GaussianPacket(1, 0.7 - 0.2j, alpha, center=(x0,), modulation=(k0,))
    gg = gaussian_fourier(gaussian_fourier(g))
    x = np.linspace(-3, 3, 13)
    assert np.allclose(gg(x), 2 * math.pi * g(-x), rtol=1e-10, atol=1e-12)


def test_modulated_transform_is_centered_at_modulation():
    g = GaussianPacket(2, 1.0, 1.0, modulation=(1.5, -0.5))
    assert gaussian_fourier(g).center == (1.5, -0.5)


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_gaussian_lp_values(dim):
    g = GaussianPacket(dim, 2.0, 1.0)
    assert gaussian_lp(g, 3) == pytest.approx(2 * (math.pi / 3) ** (dim / 6), rel=1e-15)
    assert gaussian_lp(g, math.inf) == 2.0


@given(st.integers(1, 3), widths, vec)
def test_oracle_plancherel(dim, alpha, k0):
    g = GaussianPacket(dim, 1.0, complex(alpha, 0.3), modulation=(k0,) * dim)
    lhs = gaussian_lp(gaussian_fourier(g), 2)
    assert lhs == pytest.approx((2 * math.pi) ** (dim / 2) * gaussian_lp(g, 2), rel=1e-12)


# -- moments ----------------------------------------------------------------

def test_moment_example():
    g = GaussianPacket(1, 1.0, 1.0)
    assert gaussian_moment(g, 1, 2) == pytest.approx((math.sqrt(math.pi / 2) / 4) ** 0.5,
                                                     rel=1e-15)


@given(st.integers(1, 3), widths, st.floats(0.3, 6.0))
def test_moment_b_zero_is_lp(dim, alpha, a):
    g = GaussianPacket(dim, 1.3, alpha)
    assert gaussian_moment(g, 0, a) == pytest.approx(gaussian_lp(g, a), rel=1e-12)


@pytest.mark.parametrize("b", [0.5, 1, 2.5])
def test_moment_sup_against_dense_grid(b):
    g = GaussianPacket(1, 1.0, 0.7)
    r = np.linspace(0, 10, 2_000_001)
    dense = np.max(r ** b * np.exp(-0.7 * r * r))
    assert gaussian_moment(g, b, math.inf) == pytest.approx(dense, rel=1e-6)


def test_moment_rejects_foreign_center():
    with pytest.raises(ValueError):
        gaussian_moment(GaussianPacket(1), 1, 2, center=(1.0,))


# -- free flows -------------------------------------------------------------

@pytest.mark.parametrize("dim", [1, 2, 3])
@pytest.mark.parametrize("t", [0.1, 1.0, 7.0, -3.0])
def test_schrodinger_sup_decay(dim, t):
    u = gaussian_schrodinger(GaussianPacket(dim, 1.0, 1.0), t)
    assert gaussian_lp(u, math.inf) == pytest.approx((1 + 16 * t * t) ** (-dim / 4), rel=1e-13)


def test_schrodinger_identity_at_zero():
    g = GaussianPacket(2, 0.5j, 1.5, center=(1, 2), modulation=(0.3, -1))
    close_packets(gaussian_schrodinger(g, 0.0), g)


@given(st.integers(1, 3), widths, times, vec)
def test_schrodinger_unitary(dim, alpha, t, k0):
    g = GaussianPacket(dim, 1.0, alpha, modulation=(k0,) * dim)
    assert gaussian_lp(gaussian_schrodinger(g, t), 2) == pytest.approx(gaussian_lp(g, 2),
                                                                       rel=1e-12)


@given(widths, times, times, vec, vec)
def test_schrodinger_semigroup(alpha, s, t, x0, k0):
    g = GaussianPacket(1, 1.0, alpha, center=(x0,), modulation=(k0,))
    close_packets(gaussian_schrodinger(gaussian_schrodinger(g, s), t),
                  gaussian_schrodinger(g, s + t), tol=1e-10)


@given(widths, st.floats(0, 5), st.floats(0, 5))
def test_heat_semigroup(alpha, s, t):
    g = GaussianPacket(2, 1.0, alpha)
    close_packets(gaussian_heat(gaussian_heat(g, s), t), gaussian_heat(g, s + t), tol=1e-12)


def test_heat_examples():
    g = GaussianPacket(3, 1.0, 1.0)
    close_packets(gaussian_heat(g, 0.0), g)
    for t in (0.5, 2.0, 10.0):
        u = gaussian_heat(g, t)
        assert gaussian_lp(u, 1) == pytest.approx(gaussian_lp(g, 1), rel=1e-13)
        assert gaussian_lp(u, math.inf) == pytest.approx((1 + 4 * t) ** -1.5, rel=1e-13)


def test_heat_rejections():
    with pytest.raises(ValueError):
        gaussian_heat(GaussianPacket(1), -1.0)
    with pytest.raises(ValueError):
        gaussian_heat(GaussianPacket(1, modulation=(1.0,)), 1.0)


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_schrodinger_branch_is_continuous(dim):
    g = GaussianPacket(dim, 1.0, 2.0)
    ts = np.linspace(-20, 20, 40001)
    amps = np.array([gaussian_schrodinger(g, t).amplitude for t in ts])
    rate = (dim / 2) * 4 * 2.0 * (ts[1] - ts[0])
    assert np.max(np.abs(np.diff(amps))) <= 1.01 * rate
    # a branch jump would show up as a phase step far above the local rate (dim/2) 4 alpha dt
    step = np.abs(np.diff(np.angle(amps)))
    step = np.minimum(step, 2 * math.pi - step)
    assert np.max(step) <= 1.01 * rate


def test_schrodinger_matches_pointwise_kernel():
    # u(t) is the Fourier inverse of e^{-it xi^2} g^; evaluate one point by quadrature
    from scipy import integrate
    g = GaussianPacket(1, 1.0, 0.8, center=(0.5,), modulation=(1.0,))
    gh = gaussian_fourier(g)
    t, x = 0.7, 1.3

    def part(xi, which):
        v = np.exp(1j * (x * xi - t * xi * xi)) * gh(xi) / (2 * math.pi)
        return v.real if which == 0 else v.imag

    re = integrate.quad(part, -30, 30, args=(0,), epsabs=1e-13, limit=400)[0]
    im = integrate.quad(part, -30, 30, args=(1,), epsabs=1e-13, limit=400)[0]
    assert abs(complex(re, im) - gaussian_schrodinger(g, t)(x)) < 1e-10


# -- growth exponents ---------------------------------------------------------

@pytest.mark.parametrize("a,b,dim,expected", [
    (2, 1, 1, 1.0), (2, 1, 3, 1.0), (2, 2, 2, 2.0), (math.inf, 0, 1, -0.5), (math.inf, 0, 3, -1.5),
])
def test_growth_exponent_examples(a, b, dim, expected):
    assert gaussian_moment_growth_exponent(a, b, dim) == pytest.approx(expected)


@pytest.mark.parametrize("a,b", [(2, 1), (1, 0.5), (4, 2)])
def test_growth_exponent_from_exact_moments(a, b):
    g = GaussianPacket(2, 1.0, 0.5)
    t = np.array([1e4, 1e5])
    m = [gaussian_moment(gaussian_schrodinger(g, s), b, a) for s in t]
    slope = math.log(m[1] / m[0]) / math.log(10)
    assert slope == pytest.approx(gaussian_moment_growth_exponent(a, b, 2), abs=1e-6)


def test_heat_growth_exponent_from_exact_moments():
    g = GaussianPacket(1, 1.0, 0.5)
    m = [gaussian_moment(gaussian_heat(g, s), 1, 2) for s in (1e6, 1e7)]
    slope = math.log(m[1] / m[0]) / math.log(10)
    assert slope == pytest.approx(heat_moment_growth_exponent(2, 1, 1), abs=1e-6)


# -- grid agreement -----------------------------------------------------------

@pytest.mark.parametrize("dim,N,L", [(1, 2048, 24.0), (2, 512, 16.0), (3, 128, 10.0)])
def test_oracles_agree_with_grid(dim, N, L):
    g = GaussianPacket(dim, 0.8 + 0.6j, 0.7, center=(0.25,) * dim, modulation=(0.5,) * dim)
    f = g.sample(L, N)
    for p in (0.5, 1, 2, math.inf):
        assert lp_norm(f, p) == pytest.approx(gaussian_lp(g, p), rel=1e-6)
    for a, b in ((2, 1), (1, 0.5), (math.inf, 1.5)):
        got = weighted_norm(f, NormSpec(a, b, center=g.center))
        assert got == pytest.approx(gaussian_moment(g, b, a), rel=1e-6)
    fh = fourier(f)
    exact = gaussian_fourier(g)(*fh.coords)
    assert np.max(np.abs(fh.samples - exact)) < 1e-6 * np.max(np.abs(exact))


# -- Heisenberg product -------------------------------------------------------

def _heisenberg(g, L=40.0, N=4096):
    f = g.sample(L, N)
    fh = fourier(f)
    x_ratio = weighted_norm(f, NormSpec(2, 1)) / lp_norm(f, 2)
    xi_ratio = weighted_norm(fh, NormSpec(2, 1)) / lp_norm(fh, 2)
    return x_ratio * xi_ratio


def test_heisenberg_standard_gaussian_oracle():
    g = standard_gaussian(1)
    gh = gaussian_fourier(g)
    prod = (gaussian_moment(g, 1, 2) / gaussian_lp(g, 2)) * \
        (gaussian_moment(gh, 1, 2) / gaussian_lp(gh, 2))
    assert prod == pytest.approx(0.5, rel=1e-15)


@pytest.mark.parametrize("lam", [0.25, 0.5, 1.0, 2.0, 4.0])
def test_heisenberg_dilation_invariant_on_grid(lam):
    assert _heisenberg(standard_gaussian(1).dilate(lam)) == pytest.approx(0.5, rel=1e-8)


def test_heisenberg_minimum_over_family():
    base = _heisenberg(standard_gaussian(1))
    others = [_heisenberg(GaussianPacket(1, 1.0, complex(0.5, c))) for c in (0.2, 0.5, 1.0)]
    assert all(v > base for v in others)
