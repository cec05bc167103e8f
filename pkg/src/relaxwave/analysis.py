"""Rate extraction and the claim-level verdicts.

Nothing in here integrates a PDE; functions take finished trajectories,
profile sets and tail prescriptions, measure decay exponents or normalized
amplitude bands, and return structured Verdict records.  The claim registry
at the bottom maps the stable claim identifiers used by the command line to
exactly one checking operation each.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .grids import GridSpec
from .kernels import SpectralGrid, apply_G, convolve_G0_moment_test, U_apply, zero_mean_tail_field
from .model import ModelParams, TailSpec
from .profiles import ProfileSet, gamma_fn
from .solver import Trajectory, make_profile_trajectory, pde_residual, run_damped_wave, solve_auxiliary

__all__ = [
    "NormSeries", "RateFit", "Verdict", "difference_norms", "fit_rate",
    "verify_theorem_1_1", "verify_cor_1_3", "verify_theorem_1_2",
    "bound_sandwich", "verify_prop_5_1", "kernel_estimate_check",
    "moment_lemma_check", "representation_check", "u_operator_bound_check",
    "burgers_residual_check", "jinxin_cross_check",
    "gamma_identity_residuals", "CLAIM_ANCHORS",
]

COMBOS = ("zero", "chi", "chi+Z", "chi+Z+V")


@dataclass(frozen=True)
class NormSeries:
    """L1, L2 and sup norms of one difference field over the snapshot times."""

    times: np.ndarray
    l1: np.ndarray
    l2: np.ndarray
    linf: np.ndarray
    combo: str = "zero"

    def pick(self, norm: str) -> np.ndarray:
        if norm not in ("l1", "l2", "linf"):
            raise ValueError(f"unknown norm {norm!r}")
        return getattr(self, norm)


@dataclass(frozen=True)
class RateFit:
    exponent: float
    log_flag: bool
    C_hat: float
    window: tuple[float, float]
    residual: float
    local_slopes: tuple[float, ...]


@dataclass
class Verdict:
    """Outcome of one claim check, JSON-ready."""

    claim_id: str
    anchor: str
    status: str                    # pass | fail | inconclusive | degenerate
    measured: dict = field(default_factory=dict)
    target: str = ""
    tolerance: str = ""
    window: tuple[float, float] | None = None
    notes: str = ""

    @property
    def passed(self) -> bool:
        return self.status in ("pass", "degenerate")


def difference_norms(traj: Trajectory, combo: str, profiles: ProfileSet,
                     tail: TailSpec | None = None) -> NormSeries:
    """Norms of u minus the requested profile combination, per snapshot.

    Combos with Z start at the first positive snapshot time (the slow-tail
    response is a convolution against a spreading kernel, undefined at t=0).
    """
    if combo not in COMBOS:
        raise ValueError(f"combo must be one of {COMBOS}")
    if "Z" in combo and tail is None:
        raise ValueError("Z combinations need the tail prescription")
    if abs(profiles.M - traj.data.M) > 1e-12 * max(1.0, abs(traj.data.M)):
        raise ValueError(
            f"profile mass {profiles.M} does not match trajectory mass {traj.data.M}")

    x = traj.grid.x
    dx = traj.grid.dx
    ts, l1s, l2s, linfs = [], [], [], []
    for snap in traj.snapshots:
        t = snap.t
        if "Z" in combo and t <= 0.0:
            continue
        diff = snap.u.copy()
        if combo != "zero":
            diff -= profiles.chi(x, t)
        if "Z" in combo:
            diff -= profiles.Z_field(tail, x, t)
        if combo == "chi+Z+V":
            diff -= profiles.V(x, t)
        a = np.abs(diff)
        ts.append(t)
        l1s.append(dx * float(np.sum(a)))
        l2s.append(math.sqrt(dx * float(np.sum(a * a))))
        linfs.append(float(np.max(a)))
    return NormSeries(times=np.array(ts), l1=np.array(l1s), l2=np.array(l2s),
                      linf=np.array(linfs), combo=combo)


def _fit_loglog(times: np.ndarray, values: np.ndarray,
                window: tuple[float, float] | None = None,
                model: str = "auto") -> RateFit:
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if window is None:
        hi = float(times[-1])
        window = (hi / 32.0, hi)
    lo, hi = window
    sel = (times >= lo * (1.0 - 1e-9)) & (times <= hi * (1.0 + 1e-9))
    t = times[sel]
    E = values[sel]
    good = E > 0.0
    if not np.all(good):
        warnings.warn(f"dropping {int(np.sum(~good))} nonpositive entries from rate fit",
                      RuntimeWarning, stacklevel=3)
        t, E = t[good], E[good]
    if len(t) < 8:
        raise ValueError(f"rate fit needs at least 8 samples in window, got {len(t)}")
    if t[-1] / t[0] < 10.0 ** 1.5 * (1.0 - 1e-9):
        raise ValueError("rate fit needs at least 1.5 decades of time")

    lt, le = np.log(t), np.log(E)
    A = np.column_stack([np.ones_like(lt), lt])
    coef_pow, *_ = np.linalg.lstsq(A, le, rcond=None)
    resid_pow = float(np.sqrt(np.mean((A @ coef_pow - le) ** 2)))

    # alternative model log E = log C + p log t + log log t (unit log coefficient)
    le_shift = le - np.log(np.log(t))
    coef_log, *_ = np.linalg.lstsq(A, le_shift, rcond=None)
    resid_log = float(np.sqrt(np.mean((A @ coef_log - le_shift) ** 2)))

    use_log = model == "log" or (model == "auto" and resid_log < 0.9 * resid_pow)
    coef, resid = (coef_log, resid_log) if use_log else (coef_pow, resid_pow)

    slopes = []
    for i in range(len(t)):
        j = int(np.argmin(np.abs(t - 2.0 * t[i])))
        if j > i and abs(t[j] / t[i] - 2.0) < 0.25:
            slopes.append(float((le[j] - le[i]) / (lt[j] - lt[i])))
    return RateFit(exponent=float(coef[1]), log_flag=bool(use_log),
                   C_hat=float(math.exp(coef[0])), window=(float(lo), float(hi)),
                   residual=resid, local_slopes=tuple(slopes))


def fit_rate(series: NormSeries, norm: str = "linf",
             window: tuple[float, float] | None = None,
             model: str = "auto") -> RateFit:
    """Least-squares decay exponent of the chosen norm, with log-model selection.

    The log-corrected model E = C t^p log t is adopted only when it improves
    the RMS log residual by at least 10 percent, which keeps short windows
    from producing spurious log flags.
    """
    return _fit_loglog(series.times, series.pick(norm), window=window, model=model)


# -- theorem-level checks -----------------------------------------------------

CLAIM_ANCHORS = {
    "THM11_RATE_L1": "L1 decay rate of the distance to the diffusion wave",
    "THM11_RATE_L2": "L2 decay rate of the distance to the diffusion wave",
    "THM11_RATE_LINF": "sup-norm decay rate of the distance to the diffusion wave",
    "THM12_Z": "slow-tail response captures the leading remainder (power case)",
    "THM12_ZV": "slow-tail plus cubic correctors capture the remainder (log case)",
    "COR13_SHARP": "borderline tails force the log-corrected sup-norm rate",
    "LEM21_KERNEL": "semigroup and parabolic-approximation kernel decay rates",
    "LEM24_MOMENT": "zero-mean slow-tailed data gain the moment decay rate",
    "LEM26_REPR": "weighted smoothing representation matches a direct solve",
    "LEM27_UBOUND": "weighted smoothing operator obeys its dispersive envelope",
    "PROP51_V": "cubic-flux corrector solves its forced drift-diffusion problem",
    "SANDWICH_123": "centerline amplitude is pinned two-sided (power case)",
    "SANDWICH_124": "centerline amplitude is pinned two-sided (log case)",
    "BURGERS_RESID": "diffusion-wave profile satisfies the discrete flux balance",
    "JINXIN_XCHECK": "independent relaxation-system integration reproduces u",
}


def _verdict(claim_id, status, measured, target, tolerance, window=None, notes=""):
    return Verdict(claim_id=claim_id, anchor=CLAIM_ANCHORS[claim_id], status=status,
                   measured=measured, target=target, tolerance=tolerance,
                   window=window, notes=notes)


def verify_theorem_1_1(traj: Trajectory, profiles: ProfileSet,
                       tail: TailSpec) -> list[Verdict]:
    """Decay exponents of u - chi in L1, L2 and sup norm against their targets.

    The sup and L1 exponents must land within 0.1 of the predicted value;
    L2 is held to the one-sided upper-rate form (no slower than predicted
    plus 0.1), matching how the rates are actually asserted.
    """
    g = tail.gamma
    if traj.times[-1] < 500.0:
        return [_verdict(cid, "inconclusive", {}, "", "",
                         notes="trajectory too short, need t >= 500")
                for cid in ("THM11_RATE_L1", "THM11_RATE_L2", "THM11_RATE_LINF")]
    series = difference_norms(traj, "chi", profiles, tail)
    out = []
    for norm, cid, q in (("l1", "THM11_RATE_L1", 1.0),
                         ("l2", "THM11_RATE_L2", 2.0),
                         ("linf", "THM11_RATE_LINF", math.inf)):
        target = -0.5 * g + (0.0 if math.isinf(q) else 0.5 / q)
        fit = fit_rate(series, norm)
        two_sided = norm in ("l1", "linf")
        ok = fit.exponent <= target + 0.1 and (not two_sided or fit.exponent >= target - 0.1)
        out.append(_verdict(
            cid, "pass" if ok else "fail",
            {"exponent": fit.exponent, "residual": fit.residual,
             "prefactor": fit.C_hat, "log_flag": fit.log_flag},
            f"{target:+.4f}",
            "0.1 two-sided" if two_sided else "0.1 upper",
            window=fit.window))
    return out


def verify_cor_1_3(traj: Trajectory, profiles: ProfileSet,
                   tail: TailSpec) -> Verdict:
    """Borderline case: log-normalized sup distance stays in a narrow band."""
    if tail.gamma < 2.0:
        return _verdict("COR13_SHARP", "inconclusive", {}, "gamma = 2", "",
                        notes=f"run has gamma={tail.gamma}, the borderline check needs 2")
    series = difference_norms(traj, "chi", profiles, tail)
    sel = (series.times >= 50.0) & (series.times <= traj.times[-1])
    t = series.times[sel]
    band = (1.0 + t) * series.linf[sel] / np.log(1.0 + t)
    ratio = float(np.max(band) / np.min(band))
    fit = fit_rate(series, "linf")
    ok = ratio < 5.0 and fit.log_flag
    return _verdict(
        "COR13_SHARP", "pass" if ok else "fail",
        {"band_ratio": ratio, "fit_exponent": fit.exponent, "log_flag": fit.log_flag},
        "band ratio < 5 and log model selected", "factor 5",
        window=(float(t[0]), float(t[-1])))


def _decreasing(values: np.ndarray, slack: float = 1.01) -> bool:
    v = np.asarray(values)
    steps_ok = np.all(v[1:] <= slack * v[:-1])
    return bool(steps_ok and v[-1] < v[0])


def verify_theorem_1_2(traj: Trajectory, profiles: ProfileSet,
                       tail: TailSpec) -> Verdict:
    """The subtracted response must beat the bare rate and its normalized
    remainder must shrink over the final decade."""
    g = tail.gamma
    T = float(traj.times[-1])
    base = difference_norms(traj, "chi", profiles, tail)
    if g < 2.0:
        cid, combo = "THM12_Z", "chi+Z"
    else:
        cid, combo = "THM12_ZV", "chi+Z+V"
    refined = difference_norms(traj, combo, profiles, tail)

    # the slope gap is read off plain log-log fits for both series: automatic
    # model selection could hand the two series different families (power for
    # one, log-corrected for the other) and exponents across families do not
    # compare
    fit_base = fit_rate(base, "linf", model="power")
    fit_ref = fit_rate(refined, "linf", model="power")
    improvement = fit_base.exponent - fit_ref.exponent

    sel = refined.times >= T / 10.0 * (1.0 - 1e-9)
    t_fin = refined.times[sel]
    E_fin = refined.linf[sel]
    if g < 2.0:
        normalized = (1.0 + t_fin) ** (0.5 * g) * E_fin
    else:
        normalized = (1.0 + t_fin) * E_fin / np.log(1.0 + t_fin)
    decreasing = _decreasing(normalized)

    full = (1.0 + refined.times) ** (0.5 * g) * refined.linf if g < 2.0 \
        else (1.0 + refined.times) * refined.linf / np.log(1.0 + refined.times)
    slope_norm = _fit_loglog(refined.times, full).exponent

    ok = improvement >= 0.05 and decreasing and slope_norm <= -0.05
    return _verdict(
        cid, "pass" if ok else "fail",
        {"exponent_bare": fit_base.exponent, "exponent_refined": fit_ref.exponent,
         "improvement": improvement, "normalized_slope": slope_norm,
         "normalized_last_over_first": float(normalized[-1] / normalized[0]),
         "decreasing": decreasing},
        "improvement >= 0.05, normalized remainder decreasing",
        "slope margin 0.05", window=fit_ref.window)


def bound_sandwich(profiles: ProfileSet, tail: TailSpec,
                   t_list=None) -> Verdict:
    """Centerline amplitude of the slow-tail response against its predicted limit.

    Evaluates |Z| (plus the cubic corrector in the borderline case) on the
    drift line x = a t by adaptive quadrature, normalizes by the predicted
    power of 1+t, and requires convergence (last two dyadic steps below 5
    percent), positivity, and agreement with the closed-form limit within a
    factor [0.5, 1.5].
    """
    g = tail.gamma
    nus = profiles.nu_tilde(tail)
    a = profiles.params.a
    borderline = g >= 2.0
    cid = "SANDWICH_124" if borderline else "SANDWICH_123"
    key_const = nus.nu1 if borderline else nus.nu0
    if abs(key_const) < 1e-14:
        return _verdict(cid, "degenerate",
                        {"nu0": nus.nu0, "nu1": nus.nu1},
                        "nonzero decay constant", "",
                        notes="decay constant vanishes for this tail; "
                              "optimality hypothesis does not apply")
    if t_list is None:
        # the power case approaches its limit only like t^((gamma-2)/2),
        # which degenerates toward the borderline; stretch the dyadic ladder
        # so the 5% step gate tests convergence rather than patience
        k_hi = 14 if borderline else 14 + max(0, math.ceil(16.0 * (g - 1.5)))
        t_list = [float(2 ** k) for k in range(2, k_hi + 1)]
    t_arr = np.asarray(sorted(t_list), dtype=float)
    r = np.empty_like(t_arr)
    for i, t in enumerate(t_arr):
        z_val, _ = profiles.Z_eval(tail, a * t, float(t))
        if borderline:
            z_val += float(profiles.V(a * t, float(t)))
            r[i] = (1.0 + t) * abs(z_val) / math.log(1.0 + t)
        else:
            r[i] = (1.0 + t) ** (0.5 * g) * abs(z_val)
    predicted = nus.env_log if borderline else nus.env_power
    step1 = abs(r[-1] - r[-2]) / r[-1]
    step2 = abs(r[-2] - r[-3]) / r[-2]
    cmax = float(np.max(r)) / max(abs(tail.c_plus), abs(tail.c_minus), 1e-300)
    ratio_to_limit = r[-1] / predicted
    converged = step1 < 0.05 and step2 < 0.05 and bool(np.all(r > 0.0))
    in_band = 0.5 <= ratio_to_limit <= 1.5
    status, notes = ("pass", "") if converged and in_band else ("fail", "")
    if status == "fail" and converged and not borderline and 2.0 - g < 0.2:
        # this close to the borderline the approach exponent (gamma-2)/2 is
        # under 0.1; report the monotone trend honestly instead of failing
        tail_r = r[-5:]
        toward = np.all(np.diff(tail_r) > 0.0) if ratio_to_limit < 1.0 \
            else np.all(np.diff(tail_r) < 0.0)
        if toward:
            status = "inconclusive"
            notes = ("amplitude still approaching the limit at rate "
                     f"t^{0.5 * (g - 2.0):+.3f}; band unreachable at desk "
                     "scale but the trend is monotone toward it")
    return _verdict(
        cid, status,
        {"r_last": float(r[-1]), "predicted_limit": predicted,
         "ratio_to_limit": float(ratio_to_limit),
         "last_steps": (float(step1), float(step2)),
         "upper_constant": cmax},
        "converged positive limit matching the closed form",
        "5% per dyadic step, factor [0.5, 1.5] of limit",
        window=(float(t_arr[0]), float(t_arr[-1])), notes=notes)


def verify_prop_5_1(params: ModelParams, profiles: ProfileSet,
                    grid: GridSpec) -> Verdict:
    """Forced drift-diffusion run against the closed-form corrector.

    Solves the auxiliary problem with forcing d/dx(-kappa chi^3) from rest and
    checks that (1+t) * ||v - V||_inf stays inside a factor-10 band on
    t in [10, 1000]: the corrector absorbs the log-growing part exactly.
    """
    kappa = params.kappa
    if abs(kappa * profiles.d) < 1e-300 or profiles.M == 0.0:
        return _verdict("PROP51_V", "degenerate",
                        {"kappa": kappa, "d": profiles.d},
                        "kappa*d != 0", "",
                        notes="forcing and corrector both vanish; nothing to measure")

    def lam(x, t):
        return -kappa * profiles.chi(x, t) ** 3

    z0 = np.zeros(grid.N)
    traj = solve_auxiliary(z0, lam, params, profiles, grid)
    x = grid.x
    ts, devs = [], []
    for snap in traj.snapshots:
        if snap.t < 10.0 or snap.t > 1000.0:
            continue
        dev = float(np.max(np.abs(snap.u - profiles.V(x, snap.t))))
        ts.append(snap.t)
        devs.append((1.0 + snap.t) * dev)
    devs_arr = np.asarray(devs)
    band = float(np.max(devs_arr) / np.min(devs_arr))
    slope = float(np.polyfit(np.log(ts), np.log(devs_arr), 1)[0])
    ok = band < 10.0
    return _verdict(
        "PROP51_V", "pass" if ok else "fail",
        {"band_ratio": band, "normalized_slope": slope,
         "level_last": float(devs_arr[-1])},
        "(1+t)*deviation bounded", "max/min < 10",
        window=(float(ts[0]), float(ts[-1])))


def kernel_estimate_check(params: ModelParams, L: float = 600.0,
                          N: int = 2 ** 13) -> Verdict:
    """Decay slopes of the full kernel and its parabolic defect on a Gaussian.

    The ladder starts at t = 100: earlier, the quartic-in-frequency part of
    the defect (one half-order faster) still shadows the cubic term whose
    rate the estimate is sharp for.  The top stays under 10^4 so Gaussian
    images around the period are far below the defect level.
    """
    sgrid = SpectralGrid(L=L, N=N)
    x = sgrid.x
    phi = np.exp(-0.5 * x * x)
    times = np.array([100.0 * 2 ** (k / 2.0) for k in range(14)])
    linf_G = np.empty_like(times)
    linf_diff = np.empty_like(times)
    for i, t in enumerate(times):
        linf_G[i] = np.max(np.abs(apply_G(phi, float(t), params, sgrid, kind="G")))
        linf_diff[i] = np.max(np.abs(apply_G(phi, float(t), params, sgrid,
                                             kind="G_minus_G0")))
    slope_G = float(np.polyfit(np.log(times), np.log(linf_G), 1)[0])
    slope_diff = float(np.polyfit(np.log(times), np.log(linf_diff), 1)[0])
    ok = abs(slope_G + 0.5) <= 0.05 and abs(slope_diff + 1.0) <= 0.07
    return _verdict(
        "LEM21_KERNEL", "pass" if ok else "fail",
        {"slope_full": slope_G, "slope_defect": slope_diff},
        "-0.5 and -1.0", "0.05 / 0.07",
        window=(float(times[0]), float(times[-1])))


def moment_lemma_check(params: ModelParams, L: float = 2000.0,
                       N: int = 2 ** 15) -> Verdict:
    """Enhanced decay for zero-mean slow tails, plus the borderline log band.

    The enhanced rate only sets in once the kernel width sqrt(mu t) dwarfs
    the core of the test field, so the field is built with a core well under
    the kernel width at the start of the window (sqrt(10) vs 0.1); a unit
    core would drag the fitted slope a tenth short of the exponent.
    """
    sgrid = SpectralGrid(L=L, N=N)
    times = [t for t in (10.0 * 2 ** (k / 2.0) for k in range(14))
             if t <= 1000.0]

    phi15 = zero_mean_tail_field(sgrid, 1.5, core_scale=0.1)
    dec15 = convolve_G0_moment_test(phi15, times, params, sgrid)

    phi20 = zero_mean_tail_field(sgrid, 2.0, core_scale=0.1)
    dec20 = convolve_G0_moment_test(phi20, times, params, sgrid)
    band_vals = dec20.linf * dec20.times / np.log(2.0 + dec20.times)
    band = float(np.max(band_vals) / np.min(band_vals))

    ok = abs(dec15.slope_linf + 0.75) <= 0.05 and band < 5.0
    return _verdict(
        "LEM24_MOMENT", "pass" if ok else "fail",
        {"slope_gamma15": dec15.slope_linf, "band_gamma2": band,
         "slope_l1_gamma15": dec15.slope_l1},
        "-0.75 and factor-5 log band", "0.05 / factor 5",
        window=(float(times[0]), float(times[-1])))


def representation_integral(profiles: ProfileSet, sgrid: SpectralGrid,
                            lam, t: float, n_nodes: int = 48) -> np.ndarray:
    """Duhamel part of the representation: integral over tau of U[d/dx lam].

    Substituting s = sqrt(t - tau) removes the inverse-square-root kernel
    growth at tau -> t, so fixed Gauss-Legendre converges fast.  The last
    kernel-resolution-limited sliver is closed with a trapezoid using the
    exact limit U -> d/dx lam as tau -> t.
    """
    x = sgrid.x
    mu = profiles.mu
    h = sgrid.dx
    gap_min = (3.0 * h) ** 2 / (4.0 * mu)
    s_lo = math.sqrt(gap_min)
    s_hi = math.sqrt(t)
    if s_hi <= s_lo:
        raise ValueError("horizon shorter than the resolvable kernel width")
    nodes, wts = np.polynomial.legendre.leggauss(n_nodes)
    s = 0.5 * (s_hi - s_lo) * nodes + 0.5 * (s_hi + s_lo)
    acc = np.zeros_like(x)
    for si, wi in zip(s, wts):
        tau = t - si * si
        acc += wi * 2.0 * si * U_apply(lam(x, tau), t, tau, profiles, sgrid,
                                       h_is_cumulative=True)
    acc *= 0.5 * (s_hi - s_lo)

    # sliver tau in [t - gap_min, t]: trapezoid between the last resolvable
    # evaluation and the exact coincidence limit d/dx lam(., t)
    xi = sgrid.xi
    dlam_end = np.fft.irfft(1j * xi * np.fft.rfft(lam(x, t)), n=sgrid.N)
    u_edge = U_apply(lam(x, t - gap_min), t, t - gap_min, profiles, sgrid,
                     h_is_cumulative=True)
    acc += 0.5 * gap_min * (dlam_end + u_edge)
    return acc


def representation_check(params: ModelParams | None = None,
                         M: float = 0.1) -> Verdict:
    """Representation formula vs the Crank-Nicolson oracle on a manufactured case."""
    if params is None:
        params = ModelParams(a=0.25, b=1.0, c=0.0)
    profiles = ProfileSet.from_params(params, M)
    grid = GridSpec(L=160.0, N=2 ** 12, dt=0.004, T=16.0,
                    snapshot_times=(0.0, 1.0, 4.0, 16.0))
    sgrid = SpectralGrid.from_grid(grid)
    x = grid.x

    def lam(xv, t):
        return 0.3 * math.exp(-t / 5.0) * np.exp(-0.125 * (xv - 2.0) ** 2)

    z0 = profiles.heat_kernel_G0(x, 1.0)
    traj = solve_auxiliary(z0, lam, params, profiles, grid)

    worst = 0.0
    details = {}
    for t in (1.0, 4.0, 16.0):
        z_cn = traj.at_time(t).u
        z_repr = U_apply(z0, t, 0.0, profiles, sgrid) \
            + representation_integral(profiles, sgrid, lam, t)
        rel = float(np.max(np.abs(z_cn - z_repr)) / np.max(np.abs(z_cn)))
        details[f"rel_linf_t{t:g}"] = rel
        worst = max(worst, rel)
    ok = worst < 1e-3
    return _verdict(
        "LEM26_REPR", "pass" if ok else "fail", details,
        "relative sup discrepancy < 1e-3", "1e-3", window=(1.0, 16.0))


def u_operator_bound_check(params: ModelParams | None = None,
                           M: float = 0.1) -> Verdict:
    """Dispersive envelope of the weighted smoothing operator on a Gaussian.

    The claim is one-sided: sup decay no slower than (t-tau)^(-1/2) times a
    constant.  A Gaussian forcing cannot saturate it (its finite mass buys a
    faster rate eventually), so the conditions are that the gap^(1/2)-
    normalized sup envelope never grows late (the late-half maximum stays
    under the early-half maximum), that the fitted sup slope is at least as
    steep as the envelope allows, and that the quarter-power L2 envelope is
    non-increasing step to step within 5 percent.
    """
    if params is None:
        params = ModelParams(a=0.25, b=1.0, c=0.0)
    profiles = ProfileSet.from_params(params, M)
    sgrid = SpectralGrid(L=400.0, N=2 ** 13)
    x = sgrid.x
    tau = 1.0
    lam_field = np.exp(-0.25 * x * x)
    gaps = np.array([0.5 * 2.0 ** k for k in range(8)])
    sup = np.empty_like(gaps)
    l2 = np.empty_like(gaps)
    for i, gp in enumerate(gaps):
        field = U_apply(lam_field, tau + gp, tau, profiles, sgrid,
                        h_is_cumulative=True)
        sup[i] = np.max(np.abs(field))
        l2[i] = math.sqrt(sgrid.dx * float(np.sum(field * field)))
    slope_sup = float(np.polyfit(np.log(gaps), np.log(sup), 1)[0])
    env_sup = sup * np.sqrt(gaps)
    env_l2 = l2 * gaps ** 0.25
    ok = slope_sup <= -0.5 + 0.07 \
        and float(np.max(env_sup[4:])) < float(np.max(env_sup[:4])) \
        and np.all(np.diff(env_l2) <= 1e-12 + 0.05 * env_l2[:-1])
    return _verdict(
        "LEM27_UBOUND", "pass" if ok else "fail",
        {"slope_sup": slope_sup,
         "envelope_sup_early": float(np.max(env_sup[:4])),
         "envelope_sup_late": float(np.max(env_sup[4:])),
         "envelope_l2_max": float(np.max(env_l2))},
        "sup slope <= -0.43, normalized envelopes bounded", "0.07",
        window=(float(gaps[0]), float(gaps[-1])))


def burgers_residual_check(params: ModelParams | None = None,
                           M: float = 0.1) -> Verdict:
    """Second-order convergence of the profile's discrete flux-balance residual."""
    if params is None:
        params = ModelParams(a=0.3, b=1.0, c=0.0)
    profiles = ProfileSet.from_params(params, M)

    def level(n, tau):
        times = tuple(1.0 + tau * k for k in range(int(2.0 / tau) + 1))
        grid = GridSpec(L=40.0, N=n, dt=tau, T=times[-1], snapshot_times=times)
        traj = make_profile_trajectory(profiles, grid)
        _, resid = pde_residual(traj, which="burgers")
        return float(np.max(resid))

    coarse = level(2 ** 9, 0.05)
    fine = level(2 ** 10, 0.025)
    factor = coarse / fine
    ok = factor >= 3.0
    return _verdict(
        "BURGERS_RESID", "pass" if ok else "fail",
        {"residual_coarse": coarse, "residual_fine": fine, "factor": factor},
        "refinement by 2 shrinks residual by >= 3", "factor 3",
        window=(1.0, 3.0))


def jinxin_cross_check(traj_spectral: Trajectory,
                       traj_jinxin: Trajectory) -> Verdict:
    """Relative sup distance between the two independent integrations."""
    worst = 0.0
    worst_t = 0.0
    for s1, s2 in zip(traj_spectral.snapshots, traj_jinxin.snapshots):
        if abs(s1.t - s2.t) > 1e-9 * max(1.0, s1.t):
            raise ValueError("snapshot schedules differ between the two runs")
        scale = float(np.max(np.abs(s1.u)))
        if scale == 0.0:
            continue
        rel = float(np.max(np.abs(s1.u - s2.u))) / scale
        if rel > worst:
            worst, worst_t = rel, s1.t
    ok = worst < 1e-4
    return _verdict(
        "JINXIN_XCHECK", "pass" if ok else "fail",
        {"max_relative_linf": worst, "at_time": worst_t},
        "< 1e-4 at every snapshot", "1e-4")


def gamma_identity_residuals(mu: float = 1.0) -> dict[str, float]:
    """Quadrature check of the Gaussian-moment identity used by the decay constants.

    For each (j, gamma, t) the integral of exp(-y^2/(4 mu t)) y^(j-gamma) over
    (0, inf) is compared with 2^(j-gamma) (mu t)^((j+1-gamma)/2) Gamma((j+1-gamma)/2).
    The integrable endpoint singularity is removed exactly by substituting
    y = s^k with k = 1/(j - gamma + 1), leaving a smooth stretched exponential.
    """
    out = {}
    for j in (1, 2):
        for g in (1.25, 1.5, 1.75):
            for t in (1.0, 10.0):
                k = 1.0 / (j - g + 1.0)
                s_max = (200.0 * mu * t) ** (1.0 / (2.0 * k)) + 10.0
                val, _ = quad(lambda s: k * math.exp(-s ** (2.0 * k) / (4.0 * mu * t)),
                              0.0, s_max, limit=200, epsabs=1e-14, epsrel=1e-12)
                ref = 2.0 ** (j - g) * (mu * t) ** (0.5 * (j + 1.0 - g)) \
                    * gamma_fn(0.5 * (j + 1.0 - g))
                out[f"j{j}_g{g}_t{t:g}"] = abs(val - ref) / ref
    return out
