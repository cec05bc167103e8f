"""Scratch probe: remaining checks not yet exercised this session."""
import time
import warnings

import numpy as np

from relaxwave.analysis import (
    bound_sandwich, burgers_residual_check, representation_check,
    u_operator_bound_check, verify_cor_1_3, verify_prop_5_1,
)
from relaxwave.cli import _prop51_setup
from relaxwave.grids import GridSpec, default_halfwidth, geometric_snapshot_times
from relaxwave.model import ModelParams, balanced_tail, make_calibrated_data
from relaxwave.profiles import ProfileSet
from relaxwave.solver import run_damped_wave

PARAMS = ModelParams(a=0.0, b=1.0, c=0.0)
PROFILES = ProfileSet.from_params(PARAMS, 0.1)


def show(v):
    print(f"{v.claim_id}: {v.status}  measured {v.measured}  notes {v.notes!r}")


t0 = time.time()
tail19 = balanced_tail(1.9, 0.05, PARAMS, 0.1)
show(bound_sandwich(PROFILES, tail19))
print(f"  (sandwich g=1.9 wall {time.time() - t0:.0f}s)")

t0 = time.time()
show(representation_check())
print(f"  (representation wall {time.time() - t0:.0f}s)")

t0 = time.time()
show(u_operator_bound_check())
print(f"  (u-bound wall {time.time() - t0:.0f}s)")

t0 = time.time()
show(burgers_residual_check())
print(f"  (burgers wall {time.time() - t0:.0f}s)")

t0 = time.time()
p51_params, p51_profiles, p51_grid = _prop51_setup()
show(verify_prop_5_1(p51_params, p51_profiles, p51_grid))
print(f"  (prop51 wall {time.time() - t0:.0f}s)")

# borderline trajectory for COR13
t0 = time.time()
gamma = 2.0
T = 2000.0
L = default_halfwidth(gamma, T)
N = 2 ** 15
while 2.0 * L / N > 0.11 and N < 2 ** 17:
    N *= 2
grid = GridSpec(L=L, N=N, dt=0.02, T=T,
                snapshot_times=geometric_snapshot_times(T))
tail = balanced_tail(gamma, 0.05, PARAMS, 0.1)
data = make_calibrated_data(PARAMS, tail, 0.1, 0.01, grid)
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    traj = run_damped_wave(PARAMS, data, grid)
print(f"=== gamma=2 run: L={grid.L:.0f} N={grid.N} wall={time.time() - t0:.0f}s "
      f"boundary {max(traj.diagnostics['boundary_ratio']):.2e} "
      f"mass {max(abs(np.diff(traj.diagnostics['mass']))):.2e}")
show(verify_cor_1_3(traj, PROFILES, tail))
