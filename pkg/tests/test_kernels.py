"""Green-function symbols and FFT convolution operators.

The symbol values frozen in oracles.py come from a 40-digit mpmath session
(root pair of the mode polynomial, then the divided difference or its series
limit).  Convolution operators are checked against exact Gaussian evolution:
the parabolic kernel maps a Gaussian to a Gaussian with the variance shifted
by 2 mu t, closed form throughout.
"""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import ORACLE_PARAMS
from oracles import GHAT_XI_0_3_T3, GHAT_XI_HALF_EPS_T3, GHAT_XI_HALF_T3
from relaxwave import GridSpec, ModelParams, ProfileSet
from relaxwave.kernels import (KINDS, SpectralGrid, U_apply, apply_G,
                               convolve_G0_moment_test, dt_G_hat, G_hat,
                               lambda12, multiplier, zero_mean_tail_field)
from relaxwave.kernels import _ghat_routes


def gaussian(x, s):
    """Unit-mass Gaussian with standard deviation s."""
    return np.exp(-x * x / (2.0 * s * s)) / math.sqrt(2.0 * math.pi * s * s)


def dgaussian(x, s):
    return -x / (s * s) * gaussian(x, s)


# -- lattice -------------------------------------------------------------------

def test_spectral_grid_validation():
    with pytest.raises(ValueError):
        SpectralGrid(L=10.0, N=100)
    with pytest.raises(ValueError):
        SpectralGrid(L=10.0, N=8)


def test_spectral_grid_lattice_and_frequencies():
    grid = SpectralGrid(L=16.0, N=64)
    assert grid.dx == 0.5
    assert grid.x[0] == -16.0
    assert 0.0 in grid.x
    assert grid.xi[0] == 0.0
    assert grid.xi[1] == pytest.approx(math.pi / 16.0, rel=1e-15)
    assert grid.xi.shape == (33,)
    assert grid.xi_full.shape == (64,)
    # 2/3 rule keeps modes up to N/3
    mask = grid.dealias_mask
    assert mask[21] and not mask[22]


def test_spectral_grid_from_grid():
    g = GridSpec(L=40.0, N=256, dt=0.1, T=1.0)
    sg = SpectralGrid.from_grid(g)
    assert sg.L == 40.0 and sg.N == 256


# -- mode roots and symbols -------------------------------------------------------

@given(st.floats(min_value=-40.0, max_value=40.0),
       st.floats(min_value=-0.95, max_value=0.95))
def test_lambda12_solves_the_mode_polynomial(xi, a):
    lam1, lam2 = lambda12(xi, a)
    q = xi * xi + 1j * a * xi
    assert abs(lam1 + lam2 + 1.0) < 1e-12
    assert abs(lam1 * lam2 - q) < 1e-10 * max(1.0, abs(q))


def test_G_hat_frozen_values():
    # mpmath reference, see oracles.py.  xi = 0.5 at a = 0 is the exact root
    # coincidence (series branch); xi = 0.3 has well-separated real roots
    # (divided-difference branch); the nudged value sits just off coincidence
    v = G_hat(0.5, 3.0, 0.0)
    assert v.imag == 0.0
    assert v.real == pytest.approx(GHAT_XI_HALF_T3, rel=1e-13)
    assert complex(G_hat(0.5 + 1e-7, 3.0, 0.0)).real \
        == pytest.approx(GHAT_XI_HALF_EPS_T3, rel=1e-12)
    assert complex(G_hat(0.3, 3.0, 0.0)).real \
        == pytest.approx(GHAT_XI_0_3_T3, rel=1e-13)


def test_G_hat_initial_conditions():
    # the Green function starts at 0 with unit velocity, mode by mode
    xi = np.linspace(-20.0, 20.0, 41)
    np.testing.assert_array_equal(G_hat(xi, 0.0, 0.4), np.zeros_like(xi))
    np.testing.assert_array_equal(dt_G_hat(xi, 0.0, 0.4), np.ones_like(xi))
    with pytest.raises(ValueError):
        G_hat(1.0, -1.0, 0.0)


def test_G_hat_time_derivative_consistency():
    # centered differences carry truncation error on the oscillatory modes,
    # so the match is capped in absolute terms rather than relative ones
    h = 1e-5
    for xi in (0.05, 0.3, 0.499, 0.5, 0.62, 3.0):
        for a in (0.0, 0.35):
            fd = (complex(G_hat(xi, 2.0 + h, a))
                  - complex(G_hat(xi, 2.0 - h, a))) / (2.0 * h)
            assert complex(dt_G_hat(xi, 2.0, a)) \
                == pytest.approx(fd, rel=1e-4, abs=1e-8)


def test_G_hat_evaluation_routes_agree_on_the_overlap_band():
    # the symbol switches from the divided difference to the sinch series at
    # |delta| t / 2 = 1; both routes are accurate on a band around the switch
    # and must agree there to near machine precision
    t = 3.0
    for a in (0.0, 0.4):
        # endpoints chosen so no node hits the coincidence xi = 1/2 exactly,
        # where the divided difference is 0/0 by construction
        xi = np.linspace(0.251, 0.949, 141)
        direct, series = _ghat_routes(xi, t, a)
        z = 0.5 * np.abs(np.sqrt(1.0 - 4.0 * (xi * xi + 1j * a * xi))) * t
        band = (z > 0.3) & (z < 3.0)
        assert np.sum(band) > 40
        np.testing.assert_allclose(direct[band], series[band],
                                   rtol=1e-9, atol=1e-14)


def test_G_hat_is_hermitian_in_xi():
    xi = np.linspace(0.05, 8.0, 80)
    a = 0.45
    gp = G_hat(xi, 2.5, a)
    gm = G_hat(-xi, 2.5, a)
    np.testing.assert_allclose(gm, np.conj(gp), rtol=1e-12, atol=1e-15)


def test_multiplier_kinds_are_consistent():
    params = ModelParams(0.3, 1.0, 0.0)
    xi = np.linspace(-6.0, 6.0, 25)
    t = 2.0
    g = multiplier("G", xi, t, params)
    g0 = multiplier("G0", xi, t, params)
    np.testing.assert_allclose(multiplier("dxG", xi, t, params), 1j * xi * g,
                               rtol=1e-14, atol=0.0)
    np.testing.assert_allclose(multiplier("dxG0", xi, t, params), 1j * xi * g0,
                               rtol=1e-14, atol=0.0)
    np.testing.assert_allclose(multiplier("G_minus_G0", xi, t, params), g - g0,
                               rtol=1e-12, atol=1e-16)
    with pytest.raises(ValueError):
        multiplier("bogus", xi, t, params)
    with pytest.raises(ValueError):
        multiplier("G0", xi, 0.0, params)
    assert set(KINDS) == {"G", "dtG", "G0", "G_minus_G0", "dxG", "dxG0"}


def test_parabolic_symbol_semigroup():
    params = ModelParams(0.25, 1.0, 0.0)
    xi = np.linspace(-10.0, 10.0, 81)
    prod = multiplier("G0", xi, 1.0, params) * multiplier("G0", xi, 2.0, params)
    np.testing.assert_allclose(prod, multiplier("G0", xi, 3.0, params),
                               rtol=1e-12, atol=1e-300)


# -- grid operators ----------------------------------------------------------------

def test_apply_G0_evolves_gaussians_exactly():
    # G0(t) conv gaussian(s) = gaussian(sqrt(s^2 + 2 mu t)) shifted by the
    # drift a t; closed form, so this checks kernel, drift sign, and scaling
    params = ModelParams(0.3, 1.0, 0.0)
    grid = SpectralGrid(L=60.0, N=2 ** 11)
    x = grid.x
    sigma, t = 1.0, 8.0
    out = apply_G(gaussian(x, sigma), t, params, grid, kind="G0")
    s_t = math.sqrt(sigma * sigma + 2.0 * params.mu * t)
    np.testing.assert_allclose(out, gaussian(x - params.a * t, s_t),
                               rtol=1e-9, atol=1e-13)


def test_apply_G_rejects_mismatched_field():
    grid = SpectralGrid(L=30.0, N=64)
    with pytest.raises(ValueError):
        apply_G(np.zeros(65), 1.0, ORACLE_PARAMS, grid)


def test_wave_kernel_approaches_parabolic_kernel():
    # the damped wave kernel relaxes onto the parabolic one an order of t
    # faster than either field decays: the relative gap at t = 40 measures
    # about 0.009 against 0.052 at t = 10
    grid = SpectralGrid(L=120.0, N=2 ** 12)
    phi = gaussian(grid.x, 0.8)
    ratios = []
    for t in (10.0, 40.0):
        diff = apply_G(phi, t, ORACLE_PARAMS, grid, kind="G_minus_G0")
        base = apply_G(phi, t, ORACLE_PARAMS, grid, kind="G0")
        ratios.append(float(np.max(np.abs(diff)) / np.max(np.abs(base))))
    assert ratios[1] < 0.02
    assert ratios[1] < 0.35 * ratios[0]


# -- moment-decay helpers -----------------------------------------------------------

def test_zero_mean_tail_field_shape():
    grid = SpectralGrid(L=200.0, N=2 ** 12)
    phi = zero_mean_tail_field(grid, 1.5)
    # exact spectral derivative: the lattice mean vanishes identically
    assert abs(np.sum(phi)) < 1e-12 * np.sum(np.abs(phi))
    # odd about the origin node
    n = grid.N
    assert phi[n // 2] == pytest.approx(0.0, abs=1e-15)
    np.testing.assert_allclose(phi[n // 2 + 1:], -phi[1:n // 2][::-1],
                               rtol=0.0, atol=1e-13)
    # algebraic tail: doubling x scales the field by about 2^(-gamma)
    i1 = int(np.argmin(np.abs(grid.x - 40.0)))
    i2 = int(np.argmin(np.abs(grid.x - 80.0)))
    ratio = phi[i2] / phi[i1]
    assert ratio == pytest.approx(2.0 ** -1.5, rel=0.05)
    # a smaller core concentrates the field
    sharp = zero_mean_tail_field(grid, 1.5, core_scale=0.1)
    assert np.max(np.abs(sharp)) > 3.0 * np.max(np.abs(phi))


def test_moment_test_requires_zero_mean():
    grid = SpectralGrid(L=60.0, N=2 ** 11)
    with pytest.raises(ValueError):
        convolve_G0_moment_test(gaussian(grid.x, 1.0), [1.0, 2.0],
                                ORACLE_PARAMS, grid)


def test_moment_decay_matches_gaussian_closed_form():
    # a Gaussian derivative evolves in closed form: sup norm exactly
    # e^(-1/2) / (sqrt(2 pi) (sigma^2 + 2 mu t)), L1 norm 2 g(0)
    grid = SpectralGrid(L=60.0, N=2 ** 11)
    sigma = 1.0
    phi = dgaussian(grid.x, sigma)
    times = [1.0, 2.0, 4.0, 8.0]
    dec = convolve_G0_moment_test(phi, times, ORACLE_PARAMS, grid)
    for i, t in enumerate(times):
        s2 = sigma * sigma + 2.0 * ORACLE_PARAMS.mu * t
        linf_exact = math.exp(-0.5) / math.sqrt(2.0 * math.pi) / s2
        l1_exact = 2.0 / math.sqrt(2.0 * math.pi * s2)
        # the lattice sup sits up to dx/2 away from the true peak and the L1
        # sum crosses the |.| kink at the origin; both cost O(dx^2) relative
        assert dec.linf[i] == pytest.approx(linf_exact, rel=1e-3)
        assert dec.l1[i] == pytest.approx(l1_exact, rel=1e-4)
    assert dec.slope_linf < -0.8
    assert -0.55 < dec.slope_l1 < -0.40


# -- weighted smoothing operator -------------------------------------------------------

def test_U_apply_guards():
    grid = SpectralGrid(L=60.0, N=2 ** 11)
    profiles = ProfileSet.from_params(ORACLE_PARAMS, 0.1)
    h = np.zeros(grid.N)
    with pytest.raises(ValueError):
        U_apply(h, 1.0, 1.0, profiles, grid)
    with pytest.raises(ValueError):
        U_apply(h, 1.0, -0.5, profiles, grid)
    with pytest.raises(ValueError):
        # kernel width sqrt(4 mu gap) far below the lattice step
        U_apply(h, 1e-6, 0.0, profiles, grid)


def test_U_apply_flat_weight_reduces_to_kernel_derivative():
    # with zero mass the weight is 1 and chi = 0, so U[h] collapses to
    # dG0/dx conv H with H the running integral of h; for h a Gaussian
    # derivative that is again closed form.  The kernel is lattice-sampled,
    # so the error is O(dx^2): about 9e-7 at N = 2^11 and a quarter of that
    # at N = 2^12
    profiles = ProfileSet.from_params(ORACLE_PARAMS, 0.0)
    sigma, tau, t = 1.0, 0.5, 6.5
    s_t = math.sqrt(sigma * sigma + 2.0 * profiles.mu * (t - tau))
    errs = []
    for N in (2 ** 11, 2 ** 12):
        grid = SpectralGrid(L=60.0, N=N)
        out = U_apply(dgaussian(grid.x, sigma), t, tau, profiles, grid)
        errs.append(float(np.max(np.abs(out - dgaussian(grid.x, s_t)))))
    assert errs[0] < 3e-6
    assert errs[0] / errs[1] > 3.0
    # the cumulative flag must take the already integrated field
    grid = SpectralGrid(L=60.0, N=2 ** 11)
    out = U_apply(dgaussian(grid.x, sigma), t, tau, profiles, grid)
    out2 = U_apply(gaussian(grid.x, sigma), t, tau, profiles, grid,
                   h_is_cumulative=True)
    np.testing.assert_allclose(out2, out, rtol=0.0, atol=3e-6)
