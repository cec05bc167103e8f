"""Closed-form profile shapes against independently computed references.

The frozen numbers in oracles.py come from a 40-digit mpmath session that
evaluated the closed forms directly; nothing below re-derives them through
package code.  The remaining tests are structural identities (mass, the
weight ODE, kernel semigroup) that the implementation does not use anywhere.
"""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import ORACLE_M, ORACLE_PARAMS
from oracles import (CHI_STAR_0, CHI_STAR_1_3, D_CUBIC_MOMENT, ENV_POWER_G15,
                     ETA_PLUS_LIMIT, ETA_STAR_0, ETA_STAR_2, GAMMA_0_75,
                     GAMMA_1_25, NU0_G15, V_STAR_0_7, Z_AT_0_T4, Z_AT_0_T64,
                     Z_AT_1_5_T4)
from relaxwave import ModelParams, ProfileSet, TailSpec
from relaxwave.profiles import compute_d, gamma_fn


# -- stationary shapes --------------------------------------------------------

def test_chi_star_frozen_values(oracle_profiles):
    # mpmath reference, see oracles.py
    assert oracle_profiles.chi_star(0.0) == pytest.approx(CHI_STAR_0, rel=1e-12)
    assert oracle_profiles.chi_star(1.3) == pytest.approx(CHI_STAR_1_3, rel=1e-12)


def test_chi_star_carries_the_prescribed_mass(oracle_profiles):
    # chi* is a log-derivative in disguise, so its integral telescopes to M.
    # Plain trapezoid on a wide window; the integrand is analytic and tiny at
    # the ends, so the rule converges far past the tolerance used here.
    x = np.linspace(-80.0, 80.0, 16001)
    total = float(np.trapezoid(oracle_profiles.chi_star(x), x))
    assert total == pytest.approx(ORACLE_M, rel=1e-12)


def test_eta_star_frozen_values(oracle_profiles):
    # mpmath reference, see oracles.py
    assert oracle_profiles.eta_star(0.0) == pytest.approx(ETA_STAR_0, rel=1e-12)
    assert oracle_profiles.eta_star(2.0) == pytest.approx(ETA_STAR_2, rel=1e-12)


def test_eta_star_limits(oracle_profiles):
    # the weight interpolates 1 (upstream) to e^q (downstream); at |x| = 60
    # the erfc transition has fully saturated in double precision
    assert oracle_profiles.eta_star(-60.0) == pytest.approx(1.0, rel=1e-14)
    assert oracle_profiles.eta_star(60.0) == pytest.approx(ETA_PLUS_LIMIT, rel=1e-14)


def test_eta_star_satisfies_the_weight_ode(oracle_profiles):
    # eta*' = (b / 2 mu) chi* eta* defines the weight; the implementation
    # never differentiates eta, so a finite-difference check is independent
    x = np.linspace(-6.0, 6.0, 241)
    h = 1e-5
    lhs = (oracle_profiles.eta_star(x + h) - oracle_profiles.eta_star(x - h)) / (2.0 * h)
    rhs = (ORACLE_PARAMS.b / (2.0 * oracle_profiles.mu)) \
        * oracle_profiles.chi_star(x) * oracle_profiles.eta_star(x)
    np.testing.assert_allclose(lhs, rhs, rtol=1e-6, atol=1e-10)


def test_dchi_star_matches_finite_differences(oracle_profiles):
    x = np.linspace(-8.0, 8.0, 161)
    h = 1e-5
    fd = (oracle_profiles.chi_star(x + h) - oracle_profiles.chi_star(x - h)) / (2.0 * h)
    np.testing.assert_allclose(oracle_profiles.dchi_star(x), fd,
                               rtol=1e-6, atol=1e-10)


def test_V_star_frozen_value(oracle_profiles):
    # mpmath reference, see oracles.py
    assert oracle_profiles.V_star(0.7) == pytest.approx(V_STAR_0_7, rel=1e-12)


def test_similarity_centering_uses_shifted_time():
    # the self-similar variable is centered at a(1+t), not a t; scaling the
    # on-center value back up must reproduce the stationary peak exactly
    drift = ModelParams(0.3, 1.0, 0.0)
    ps = ProfileSet.from_params(drift, 0.1)
    t = 7.0
    center = drift.a * (1.0 + t)
    assert float(ps.chi(center, t)) * math.sqrt(1.0 + t) \
        == pytest.approx(float(ps.chi_star(0.0)), rel=1e-14)


def test_cubic_moment_frozen_and_node_stable():
    # mpmath reference, see oracles.py
    d = compute_d(ORACLE_PARAMS, ORACLE_M)
    assert d == pytest.approx(D_CUBIC_MOMENT, rel=1e-12)
    # the Gauss-Legendre rule is saturated: doubling nodes changes nothing
    assert compute_d(ORACLE_PARAMS, ORACLE_M, n_nodes=480) \
        == pytest.approx(d, rel=1e-13)


# -- heat kernel ----------------------------------------------------------------

def test_heat_kernel_mass_and_peak_location():
    drift = ModelParams(0.3, 1.0, 0.0)
    ps = ProfileSet.from_params(drift, 0.1)
    t = 7.0
    x = drift.a * t + np.linspace(-40.0, 40.0, 8001)
    g = ps.heat_kernel_G0(x, t)
    assert float(np.trapezoid(g, x)) == pytest.approx(1.0, rel=1e-12)
    assert x[int(np.argmax(g))] == pytest.approx(drift.a * t, abs=0.02)


def test_heat_kernel_derivative_matches_finite_differences(oracle_profiles):
    x = np.linspace(-10.0, 10.0, 201)
    h = 1e-6
    fd = (oracle_profiles.heat_kernel_G0(x + h, 2.0)
          - oracle_profiles.heat_kernel_G0(x - h, 2.0)) / (2.0 * h)
    np.testing.assert_allclose(oracle_profiles.heat_kernel_G0(x, 2.0, order=1),
                               fd, rtol=1e-7, atol=1e-10)


def test_heat_kernel_semigroup(oracle_profiles):
    # G0(., s) conv G0(., t) = G0(., s + t); the composition is evaluated on
    # a lattice, where the trapezoid rule is spectrally accurate for Gaussians
    dx = 0.02
    n = 4001
    x = dx * (np.arange(n) - n // 2)
    g1 = oracle_profiles.heat_kernel_G0(x, 1.0)
    g2 = oracle_profiles.heat_kernel_G0(x, 2.0)
    g3 = np.convolve(g1, g2, mode="same") * dx
    np.testing.assert_allclose(g3, oracle_profiles.heat_kernel_G0(x, 3.0),
                               rtol=0.0, atol=1e-12)


def test_heat_kernel_rejects_bad_arguments(oracle_profiles):
    with pytest.raises(ValueError):
        oracle_profiles.heat_kernel_G0(np.zeros(4), 0.0)
    with pytest.raises(ValueError):
        oracle_profiles.heat_kernel_G0(np.zeros(4), 1.0, order=2)


# -- slow-tail response ---------------------------------------------------------

def test_Z_point_values_frozen(oracle_profiles, oracle_tail):
    # mpmath reference, see oracles.py; the reported quadrature error must
    # also stand behind the agreement
    for x, t, ref in ((0.0, 4.0, Z_AT_0_T4), (1.5, 4.0, Z_AT_1_5_T4),
                      (0.0, 64.0, Z_AT_0_T64)):
        val, err = oracle_profiles.Z_eval(oracle_tail, x, t)
        assert err < 1e-10
        assert val == pytest.approx(ref, abs=1e-10)


def test_Z_vanishes_without_tails(oracle_profiles):
    none = TailSpec(1.5, 1.5, 0.0, 0.0)
    val, err = oracle_profiles.Z_eval(none, 0.7, 5.0)
    assert val == 0.0
    assert err < 1e-13
    x = -20.0 + 0.25 * np.arange(161)
    assert not np.any(oracle_profiles.Z_field(none, x, 5.0))


def test_Z_even_for_odd_tails_with_flat_weight():
    # zero mass kills the weight (eta = 1, chi = 0), and an odd tail under an
    # even kernel with one x-derivative leaves an even response
    ps = ProfileSet.from_params(ORACLE_PARAMS, 0.0)
    odd = TailSpec(1.5, 1.5, 0.7, -0.7)
    for x in (0.4, 1.1, 2.7):
        vp, ep = ps.Z_eval(odd, x, 3.0)
        vm, em = ps.Z_eval(odd, -x, 3.0)
        assert vp == pytest.approx(vm, abs=max(10.0 * (ep + em), 1e-12))


def test_Z_field_converges_to_point_values(oracle_profiles, oracle_tail):
    # second-order in the lattice step against the adaptive-quadrature values
    truth0, _ = oracle_profiles.Z_eval(oracle_tail, 0.0, 4.0)
    truth15, _ = oracle_profiles.Z_eval(oracle_tail, 1.5, 4.0)
    diffs = []
    for h in (0.25, 0.125):
        x = -20.0 + h * np.arange(int(round(40.0 / h)) + 1)
        z = oracle_profiles.Z_field(oracle_tail, x, 4.0)
        i0 = int(round(20.0 / h))
        i15 = int(round(21.5 / h))
        diffs.append((abs(float(z[i0]) - truth0), abs(float(z[i15]) - truth15)))
    assert diffs[1][0] < 5e-5 and diffs[1][1] < 5e-5
    assert diffs[0][0] / diffs[1][0] > 3.0
    assert diffs[0][1] / diffs[1][1] > 3.0


def test_Z_envelope_bounded_by_tail_strength(oracle_profiles, oracle_tail):
    # sup |Z| (1+t)^(gamma/2) <= C max(|c+|, |c-|); a scan of this quantity
    # at t in {10, 100, 1000} peaks near 0.30, frozen here with slack
    g = oracle_tail.gamma
    scale = max(abs(oracle_tail.c_plus), abs(oracle_tail.c_minus))
    for t in (10.0, 1000.0):
        W = 14.0 * math.sqrt(t) + 5.0
        x = np.linspace(-W, W, 4001)
        x = x - x[int(np.argmin(np.abs(x)))]
        z = oracle_profiles.Z_field(oracle_tail, x, t)
        assert float(np.max(np.abs(z))) * (1.0 + t) ** (0.5 * g) < 0.6 * scale


def test_Z_rejects_nonpositive_time(oracle_profiles, oracle_tail):
    with pytest.raises(ValueError):
        oracle_profiles.Z_eval(oracle_tail, 0.0, 0.0)
    with pytest.raises(ValueError):
        oracle_profiles.Z_field(oracle_tail, np.linspace(-1.0, 1.0, 9), -1.0)


# -- decay constants ------------------------------------------------------------

def test_nu_constants_frozen(oracle_profiles, oracle_tail):
    # mpmath reference, see oracles.py
    nu = oracle_profiles.nu_tilde(oracle_tail)
    assert nu.nu0 == pytest.approx(NU0_G15, rel=1e-12)
    assert nu.env_power == pytest.approx(ENV_POWER_G15, rel=1e-12)


def test_nu_constants_borderline(oracle_profiles):
    border = TailSpec(2.0, 2.0, 1.0, 0.0)
    nu = oracle_profiles.nu_tilde(border)
    # the power constants lose meaning at the borderline and must say so
    assert math.isnan(nu.nu0)
    assert math.isnan(nu.env_power)
    # kappa = 0 when a = c = 0, so nu1 reduces to the plain tail average
    assert nu.nu1 == 0.5
    assert nu.env_log > 0.0


# -- gamma function --------------------------------------------------------------

def test_gamma_fn_reference_points():
    assert gamma_fn(1.0) == 1.0
    assert gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    assert gamma_fn(1.5) == pytest.approx(0.5 * math.sqrt(math.pi), rel=1e-15)
    # mpmath reference, see oracles.py
    assert gamma_fn(0.75) == pytest.approx(GAMMA_0_75, rel=1e-12)
    assert gamma_fn(1.25) == pytest.approx(GAMMA_1_25, rel=1e-12)


def test_gamma_fn_rejects_nonpositive_arguments():
    for bad in (0.0, -1.0, -0.5, math.nan):
        with pytest.raises(ValueError):
            gamma_fn(bad)


@given(st.floats(min_value=0.05, max_value=20.0))
def test_gamma_fn_recurrence(s):
    assert gamma_fn(s + 1.0) == pytest.approx(s * gamma_fn(s), rel=1e-12)
