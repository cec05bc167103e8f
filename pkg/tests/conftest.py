"""Shared fixtures: the oracle parameter set and one small cached trajectory."""

import warnings
from dataclasses import dataclass

import pytest

from relaxwave import (GridSpec, InitialData, ModelParams, ProfileSet,
                       TailSpec, Trajectory, balanced_tail,
                       make_calibrated_data, run_damped_wave)

ORACLE_PARAMS = ModelParams(a=0.0, b=1.0, c=0.0)
ORACLE_M = 0.1


@pytest.fixture(scope="session")
def oracle_profiles() -> ProfileSet:
    """Profile set at the parameters every frozen oracle value was computed for."""
    return ProfileSet.from_params(ORACLE_PARAMS, ORACLE_M)


@pytest.fixture(scope="session")
def oracle_tail() -> TailSpec:
    """The (deliberately unbalanced) tail the frozen Z values use."""
    return TailSpec(alpha=1.5, beta=1.5, c_plus=1.0, c_minus=0.0)


@dataclass(frozen=True)
class SmallRun:
    params: ModelParams
    tail: TailSpec
    profiles: ProfileSet
    grid: GridSpec
    data: InitialData
    traj: Trajectory


@pytest.fixture(scope="session")
def small_run(oracle_profiles) -> SmallRun:
    """One short calibrated integration shared by solver and analysis tests.

    T = 64 on a narrow grid: wide enough that nothing interesting reaches the
    boundary before the horizon, small enough to integrate in about a second.
    """
    grid = GridSpec(L=250.0, N=2 ** 12, dt=0.02, T=64.0)
    tail = balanced_tail(1.5, 0.05, ORACLE_PARAMS, ORACLE_M)
    data = make_calibrated_data(ORACLE_PARAMS, tail, ORACLE_M, 0.01, grid)
    with warnings.catch_warnings():
        # the narrow grid trips the (informative) contamination warning
        warnings.simplefilter("ignore", RuntimeWarning)
        traj = run_damped_wave(ORACLE_PARAMS, data, grid)
    return SmallRun(params=ORACLE_PARAMS, tail=tail, profiles=oracle_profiles,
                    grid=grid, data=data, traj=traj)
