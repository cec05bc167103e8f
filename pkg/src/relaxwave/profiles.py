"""Asymptotic profiles: the nonlinear diffusion wave, its weight, and the correctors.

Everything here is closed-form.  With mu = 1 - a^2 and q = b M / (2 mu), define

    D(x)      = sqrt(pi) + (e^q - 1) * (sqrt(pi)/2) * erfc(x / (2 sqrt(mu)))
    chi*(x)   = (sqrt(mu)/b) * (e^q - 1) * exp(-x^2/(4 mu)) / D(x)
    eta*(x)   = e^q * sqrt(pi) / D(x)

chi* is the self-similar shape of the Burgers diffusion wave carrying mass M
(chi(x,t) = chi*(zeta)/sqrt(1+t) with zeta = (x - a(1+t))/sqrt(1+t) solves
chi_t + (a chi + (b/2) chi^2)_x = mu chi_xx exactly), and eta* is the
Cole-Hopf weight exp((b/2mu) * int_-inf^x chi*).  Both follow from the same
Gaussian antiderivative, which is why no quadrature appears.

The first corrector of the integrated equation is

    V*(x) = (b chi*(x) - x) * eta*(x) * exp(-x^2/(4 mu)) / (4 sqrt(pi) mu^(3/2))

and enters as V(x,t) = -kappa * d * V*(zeta) * log(1+t)/(1+t), with d the
cubic moment int (eta*)^{-1} (chi*)^3.  The linear slow-tail response Z is a
weighted convolution of the drifting heat kernel against the prescribed tail
shape; Z_eval does it by adaptive quadrature at a point, Z_field by FFT on a
whole grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.signal import fftconvolve
from scipy.special import erfc

from .model import ModelParams, TailSpec

__all__ = ["ProfileSet", "NuConstants", "gamma_fn", "compute_d"]

SQRT_PI = math.sqrt(math.pi)

def gamma_fn(s: float) -> float:
    """Gamma function for positive arguments.

    Thin guard over math.gamma: the decay constants only ever need s > 0,
    and a non-positive argument always signals an upstream sign error, so it
    is rejected here instead of reflected.
    """
    if not s > 0.0:
        raise ValueError(f"gamma_fn needs s > 0, got {s}")
    return math.gamma(s)


def compute_d(params: ModelParams, M: float, n_nodes: int = 240) -> float:
    """Cubic moment d = int (eta*)^{-1} (chi*)^3 dy by Gauss-Legendre.

    The integrand is Gaussian-localized, so a fixed rule on |y| <= 12 sqrt(mu)
    converges to rounding; doubling n_nodes moves the result by < 1e-15 rel.
    """
    mu = params.mu
    half = 12.0 * math.sqrt(mu)
    nodes, weights = np.polynomial.legendre.leggauss(n_nodes)
    y = half * nodes
    w = math.exp(params.b * M / (2.0 * mu)) - 1.0
    denom = SQRT_PI + w * (SQRT_PI / 2.0) * erfc(y / (2.0 * math.sqrt(mu)))
    chi_s = (math.sqrt(mu) / params.b) * w * np.exp(-y * y / (4.0 * mu)) / denom
    eta_s = math.exp(params.b * M / (2.0 * mu)) * SQRT_PI / denom
    return float(half * np.dot(weights, chi_s**3 / eta_s))


@dataclass(frozen=True)
class NuConstants:
    """Decay constants of the slow-tail response on the drift line x = a t.

    nu0 drives the power rate t^(-gamma/2) and is NaN at the borderline
    gamma = 2, where the enhanced rate t^(-1) log t takes over with
    coefficient nu1.  env_power and env_log are the corresponding centerline
    amplitude limits, ready to compare against measured envelopes.
    """

    nu0: float
    nu1: float
    env_power: float
    env_log: float


@dataclass(frozen=True)
class ProfileSet:
    """All profile evaluations for one (params, M) pair.

    Scalars that every call needs (mu, the tail weight factor, the cubic
    moment d) are computed once in from_params.
    """

    params: ModelParams
    M: float
    mu: float
    kappa: float
    d: float

    @classmethod
    def from_params(cls, params: ModelParams, M: float) -> "ProfileSet":
        return cls(params=params, M=M, mu=params.mu, kappa=params.kappa,
                   d=compute_d(params, M))

    # -- similarity variable ------------------------------------------------

    def zeta(self, x, t):
        root = np.sqrt(1.0 + t)
        return (np.asarray(x, dtype=float) - self.params.a * (1.0 + t)) / root

    # -- stationary shapes ----------------------------------------------------

    def _wq(self) -> float:
        return math.expm1(self.params.b * self.M / (2.0 * self.mu))

    def _denom(self, x) -> np.ndarray:
        return SQRT_PI + self._wq() * (SQRT_PI / 2.0) * erfc(
            np.asarray(x, dtype=float) / (2.0 * math.sqrt(self.mu)))

    def chi_star(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return (math.sqrt(self.mu) / self.params.b) * self._wq() \
            * np.exp(-x * x / (4.0 * self.mu)) / self._denom(x)

    def eta_star(self, x) -> np.ndarray:
        return (1.0 + self._wq()) * SQRT_PI / self._denom(x)

    def dchi_star(self, x) -> np.ndarray:
        """chi*' = chi* (b chi* - x) / (2 mu), from the log-derivative of D."""
        x = np.asarray(x, dtype=float)
        cs = self.chi_star(x)
        return cs * (self.params.b * cs - x) / (2.0 * self.mu)

    def V_star(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        amp = 1.0 / (4.0 * SQRT_PI * self.mu**1.5)
        return amp * (self.params.b * self.chi_star(x) - x) * self.eta_star(x) \
            * np.exp(-x * x / (4.0 * self.mu))

    # -- time-dependent evaluations -------------------------------------------

    def chi(self, x, t) -> np.ndarray:
        return self.chi_star(self.zeta(x, t)) / math.sqrt(1.0 + t)

    def eta(self, x, t) -> np.ndarray:
        return self.eta_star(self.zeta(x, t))

    def dchi_dx(self, x, t) -> np.ndarray:
        return self.dchi_star(self.zeta(x, t)) / (1.0 + t)

    def dchi_dt(self, x, t) -> np.ndarray:
        s = 1.0 + t
        z = self.zeta(x, t)
        return (-0.5 * self.chi_star(z) * s**-1.5
                + self.dchi_star(z) * (-self.params.a / s - 0.5 * z * s**-1.5))

    def V(self, x, t) -> np.ndarray:
        return -self.kappa * self.d * self.V_star(self.zeta(x, t)) \
            * math.log(1.0 + t) / (1.0 + t)

    def heat_kernel_G0(self, x, t: float, order: int = 0) -> np.ndarray:
        """Drifting heat kernel exp(-(x - a t)^2 / (4 mu t)) / sqrt(4 pi mu t).

        order=1 returns the x-derivative.  t must be positive.
        """
        if t <= 0.0:
            raise ValueError("heat kernel needs t > 0")
        x = np.asarray(x, dtype=float)
        arg = x - self.params.a * t
        g = np.exp(-arg * arg / (4.0 * self.mu * t)) / math.sqrt(4.0 * math.pi * self.mu * t)
        if order == 0:
            return g
        if order == 1:
            return -arg / (2.0 * self.mu * t) * g
        raise ValueError("order must be 0 or 1")

    # -- slow-tail linear response ---------------------------------------------

    def _psi(self, tail: TailSpec, y) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        expo = np.where(y >= 0.0, 1.0 - tail.alpha, 1.0 - tail.beta)
        out = tail.strength(y) * (1.0 + np.abs(y)) ** expo
        # psi jumps at the origin; a lattice node landing exactly there must
        # carry the midpoint value or trapezoidal convolutions lose an order.
        return np.where(y == 0.0, 0.5 * (tail.c_plus + tail.c_minus), out)

    def Z_eval(self, tail: TailSpec, x: float, t: float) -> tuple[float, float]:
        """Point value of the response Z(x, t) with a rigorous error estimate.

        Z = eta * (dG0/dx (.,t) conv psi) + (b/2mu) chi eta * (G0(.,t) conv psi)
        where psi is the prescribed tail shape.  psi is bounded, so the
        quadrature window only has to cover the drifting kernel: 12 standard
        deviations around its peak.  The returned error adds the adaptive
        estimate to the kernel mass discarded beyond the window.
        """
        if t <= 0.0:
            raise ValueError("Z is defined for t > 0")
        eta_xt = float(self.eta(x, t))
        chi_xt = float(self.chi(x, t))
        slope = self.params.b / (2.0 * self.mu) * chi_xt * eta_xt

        def integrand_dx(y):
            return float(self.heat_kernel_G0(x - y, t, order=1)) * float(self._psi(tail, y))

        def integrand_0(y):
            return float(self.heat_kernel_G0(x - y, t)) * float(self._psi(tail, y))

        center = x - self.params.a * t  # kernel peak in the y variable
        W = 12.0 * math.sqrt(self.mu * t)
        lo, hi = center - W, center + W
        # break at the psi kink (origin) and the kernel peak when inside
        pts = sorted({lo, hi, min(max(0.0, lo), hi), min(max(center, lo), hi)})
        val = err = 0.0
        for fn, weight in ((integrand_dx, eta_xt), (integrand_0, slope)):
            acc = e_acc = 0.0
            for ya, yb in zip(pts, pts[1:]):
                if yb <= ya:
                    continue
                v, e = quad(fn, ya, yb, limit=200, epsabs=1e-13, epsrel=1e-11)
                acc += v
                e_acc += e
            val += weight * acc
            err += abs(weight) * e_acc

        # beyond the window |psi| never exceeds its value at the complement
        # point nearest the origin, and the kernels carry mass erfc(6) ~ 2e-17
        d0 = max(0.0, W - abs(center))
        sup_out = max(abs(tail.c_plus), abs(tail.c_minus)) * (1.0 + d0) ** (1.0 - tail.gamma)
        m0 = math.erfc(W / (2.0 * math.sqrt(self.mu * t)))
        m1 = math.exp(-W * W / (4.0 * self.mu * t)) / math.sqrt(math.pi * self.mu * t)
        err += sup_out * (abs(eta_xt) * m1 + abs(slope) * m0)
        return val, err

    def Z_field(self, tail: TailSpec, x: np.ndarray, t: float) -> np.ndarray:
        """Z(., t) on a uniform grid via FFT convolution.

        The kernel window spans 12 sqrt(mu t) around the drift offset; psi is
        evaluated on the extended lattice the convolution actually touches, so
        no periodic wrap-around of the slow tails occurs.
        """
        if t <= 0.0:
            raise ValueError("Z is defined for t > 0")
        x = np.asarray(x, dtype=float)
        h = x[1] - x[0]
        reach = 12.0 * math.sqrt(self.mu * t) + abs(self.params.a) * t
        m = int(math.ceil(reach / h))
        offsets = h * np.arange(-m, m + 1)
        k0 = self.heat_kernel_G0(offsets, t) * h
        k1 = self.heat_kernel_G0(offsets, t, order=1) * h

        y_ext = np.concatenate((x[0] + h * np.arange(-m, 0), x, x[-1] + h * np.arange(1, m + 1)))
        psi = self._psi(tail, y_ext)
        conv0 = fftconvolve(psi, k0, mode="valid")
        conv1 = fftconvolve(psi, k1, mode="valid")

        eta_xt = self.eta(x, t)
        chi_xt = self.chi(x, t)
        return eta_xt * conv1 + self.params.b / (2.0 * self.mu) * chi_xt * eta_xt * conv0

    def nu_tilde(self, tail: TailSpec) -> NuConstants:
        """Decay constants for the centerline amplitude of Z (and Z + V)."""
        g = tail.gamma
        cp, cm = tail.c_plus, tail.c_minus
        chi0 = float(self.chi_star(0.0))
        eta0 = float(self.eta_star(0.0))
        amp = eta0 / (4.0 * SQRT_PI * self.mu**1.5)

        if g < 2.0:
            nu0 = math.sqrt(self.mu) * (cp - cm) * gamma_fn(0.5 * (3.0 - g)) \
                + self.params.b * chi0 * (cp + cm) / (2.0 - g) * gamma_fn(2.0 - 0.5 * g)
            env_power = amp * 2.0 ** (2.0 - g) * self.mu ** (1.0 - 0.5 * g) * abs(nu0)
        else:
            nu0 = math.nan
            env_power = math.nan
        nu1 = 0.5 * (cp + cm) - self.kappa * self.d
        env_log = abs(self.params.b * chi0) * eta0 * abs(nu1) / (4.0 * SQRT_PI * self.mu**1.5)
        return NuConstants(nu0=nu0, nu1=nu1, env_power=env_power, env_log=env_log)
