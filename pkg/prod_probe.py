"""Production-scale probe: THM11 rates, THM12 improvement, boundary drift."""
import time

import numpy as np

from relaxwave import (GridSpec, ModelParams, ProfileSet, balanced_tail,
                       default_halfwidth, difference_norms, fit_rate,
                       geometric_snapshot_times, make_calibrated_data,
                       run_damped_wave, verify_theorem_1_1, verify_theorem_1_2)

M, EPS, T = 0.1, 0.01, 2000.0
params = ModelParams(a=0.0, b=1.0, c=0.0)
profiles = ProfileSet.from_params(params, M)

for g in (1.25, 1.75, 1.5):
    tail = balanced_tail(g, 0.05, params, M)
    L = default_halfwidth(g, T)
    N = 2 ** 15
    while 2.0 * L / N > 0.11 and N < 2 ** 17:
        N *= 2
    grid = GridSpec(L=L, N=N, dt=0.02, T=T,
                    snapshot_times=geometric_snapshot_times(T))
    data = make_calibrated_data(params, tail, M, EPS, grid)
    t0 = time.time()
    traj = run_damped_wave(params, data, grid)
    wall = time.time() - t0
    br = np.array(traj.diagnostics["boundary_ratio"])
    print(f"\n=== gamma={g}  L={L:.0f} N={N} dx={grid.dx:.4f}  wall={wall:.0f}s "
          f"steps={traj.diagnostics['steps_total']}")
    print("boundary ratio: max", f"{br.max():.3e}", "argmax t",
          f"{traj.times[int(br.argmax())]:.3g}", "final", f"{br[-1]:.3e}")
    dm = np.array(traj.diagnostics["mass"])
    print("mass drift max:", f"{np.max(np.abs(dm - dm[0])):.3e}")

    series = difference_norms(traj, "chi", profiles, tail)
    for norm, q in (("l1", 1.0), ("l2", 2.0), ("linf", np.inf)):
        target = -0.5 * g + (0.0 if np.isinf(q) else 0.5 / q)
        fit = fit_rate(series, norm)
        print(f"{norm:4s}: exponent {fit.exponent:+.4f} target {target:+.4f} "
              f"log_flag {fit.log_flag} resid {fit.residual:.3f} "
              f"local slopes {['%.3f' % s for s in fit.local_slopes[-4:]]}")
    with np.printoptions(precision=3):
        print("  times:", series.times[-8:])
        print("  l1   :", series.l1[-8:])
        print("  linf :", series.linf[-8:])

    for v in verify_theorem_1_1(traj, profiles, tail):
        print(f"  {v.claim_id}: {v.status}  measured {v.measured}")

    if g == 1.5:
        t0 = time.time()
        v = verify_theorem_1_2(traj, profiles, tail)
        print(f"  {v.claim_id}: {v.status}  measured {v.measured}  notes {v.notes}")
        print(f"  (thm12 wall {time.time()-t0:.0f}s)")
