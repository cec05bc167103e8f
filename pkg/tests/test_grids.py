import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from relaxwave import GridSpec, default_halfwidth, geometric_snapshot_times


def test_lattice_contains_exact_origin():
    # power-of-two N puts a node exactly at x = 0; the tail prescription has
    # a jump there and several quadratures rely on hitting it exactly
    grid = GridSpec(L=100.0, N=2 ** 10, dt=0.1, T=10.0)
    assert 0.0 in grid.x
    assert grid.x[0] == -100.0
    assert grid.x[-1] == pytest.approx(100.0 - grid.dx)


def test_snapshot_schedule_anchored_at_horizon():
    times = geometric_snapshot_times(2000.0)
    assert times[0] == 0.0
    assert times[-1] == 2000.0
    # consecutive ratios are sqrt(2) throughout the geometric part
    ratios = [t2 / t1 for t1, t2 in zip(times[1:-1], times[2:])]
    assert all(abs(r - math.sqrt(2.0)) < 1e-9 for r in ratios)
    # anchoring at T makes T/2, T/4, ... exact members
    assert any(abs(t - 1000.0) < 1e-9 for t in times)
    assert any(abs(t - 500.0) < 1e-9 for t in times)


@given(st.floats(min_value=2.0, max_value=1e5))
def test_snapshot_schedule_is_strictly_increasing(T):
    times = geometric_snapshot_times(T)
    assert times[0] == 0.0 and times[-1] == T
    assert all(t2 > t1 for t1, t2 in zip(times, times[1:]))


def test_gridspec_validates_shape():
    with pytest.raises(ValueError):
        GridSpec(L=10.0, N=100, dt=0.1, T=1.0)      # not a power of two
    with pytest.raises(ValueError):
        GridSpec(L=10.0, N=8, dt=0.1, T=1.0)        # too small
    with pytest.raises(ValueError):
        GridSpec(L=10.0, N=32, dt=0.1, T=1.0, snapshot_times=(0.0, 2.0))
    with pytest.raises(ValueError):
        GridSpec(L=10.0, N=32, dt=0.1, T=1.0, snapshot_times=(0.0, 0.5, 0.5))


def test_default_schedule_fills_in():
    grid = GridSpec(L=10.0, N=32, dt=0.1, T=16.0)
    assert grid.snapshot_times == geometric_snapshot_times(16.0)


def test_step_count_grows_with_t():
    grid = GridSpec(L=10.0, N=32, dt=0.1, T=2000.0)
    early = grid.step_count(0.0, 1.0)
    late = grid.step_count(1000.0, 1001.0)
    assert early == 10
    # late steps are capped at 8x the base step
    assert late == math.ceil(1.0 / 0.8)
    assert grid.step_count(0.0, 1e-9) == 1


def test_default_halfwidth_covers_both_regimes():
    assert default_halfwidth(1.5, 2000.0) == pytest.approx(40.0 * math.sqrt(2001.0))
    # near gamma = 1 the tail plateau needs the width instead
    assert default_halfwidth(1.01, 1.0) == pytest.approx(2000.0)
