"""Scratch probe: gamma=2 paths (THM12_ZV, SANDWICH_124) at production scale."""
import time
import warnings

import numpy as np

from relaxwave.analysis import bound_sandwich, verify_cor_1_3, verify_theorem_1_2
from relaxwave.grids import GridSpec, default_halfwidth, geometric_snapshot_times
from relaxwave.model import ModelParams, balanced_tail, make_calibrated_data
from relaxwave.profiles import ProfileSet
from relaxwave.solver import run_damped_wave

PARAMS = ModelParams(a=0.0, b=1.0, c=0.0)
PROFILES = ProfileSet.from_params(PARAMS, 0.1)


def show(v):
    print(f"{v.claim_id}: {v.status}  measured {v.measured}  notes {v.notes!r}")


gamma, T = 2.0, 2000.0
tail = balanced_tail(gamma, 0.05, PARAMS, 0.1)

t0 = time.time()
show(bound_sandwich(PROFILES, tail))
print(f"  (sandwich g=2 wall {time.time() - t0:.0f}s)", flush=True)

t0 = time.time()
L = default_halfwidth(gamma, T)
N = 2 ** 15
while 2.0 * L / N > 0.11 and N < 2 ** 17:
    N *= 2
grid = GridSpec(L=L, N=N, dt=0.02, T=T, snapshot_times=geometric_snapshot_times(T))
data = make_calibrated_data(PARAMS, tail, 0.1, 0.01, grid)
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    traj = run_damped_wave(PARAMS, data, grid)
print(f"=== gamma=2 run wall={time.time() - t0:.0f}s "
      f"boundary {max(traj.diagnostics['boundary_ratio']):.2e}", flush=True)

t0 = time.time()
show(verify_theorem_1_2(traj, PROFILES, tail))
print(f"  (thm12_zv wall {time.time() - t0:.0f}s)")
show(verify_cor_1_3(traj, PROFILES, tail))
