"""Uniform periodic grids and run schedules shared by the data builder and the solvers."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


def default_halfwidth(gamma: float, T: float) -> float:
    """Domain half-width wide enough for diffusive spreading and for a slow tail plateau."""
    return max(40.0 * math.sqrt(1.0 + T), 20.0 / (gamma - 1.0))


def geometric_snapshot_times(T: float, ratio: float = math.sqrt(2.0)) -> tuple[float, ...]:
    """Snapshot schedule 0, ..., T/ratio^2, T/ratio, T.

    Anchoring the ladder at T (instead of at 1) guarantees that any window
    of the form [T/2^k, T] contains samples at both endpoints exactly, which
    the rate-fit preconditions rely on.
    """
    if T <= 0:
        raise ValueError("T must be positive")
    times = [float(T)]
    t = T / ratio
    while t >= 1.0 - 1e-12 and t >= T * 1e-6:
        times.append(t)
        t /= ratio
    times.append(0.0)
    return tuple(reversed(times))


@dataclass(frozen=True)
class GridSpec:
    """Periodic grid on [-L, L) with N points plus the time schedule of a run.

    dt is the base step near t=0; integrators are allowed to grow the step
    at late times as long as every snapshot time is hit exactly.
    """

    L: float
    N: int
    dt: float
    T: float
    snapshot_times: tuple[float, ...] = field(default=())

    def __post_init__(self):
        if self.N < 16 or (self.N & (self.N - 1)) != 0:
            raise ValueError("N must be a power of two, at least 16")
        if self.L <= 0 or self.dt <= 0 or self.T <= 0:
            raise ValueError("L, dt and T must be positive")
        snaps = self.snapshot_times or geometric_snapshot_times(self.T)
        snaps = tuple(float(t) for t in snaps)
        if any(t2 <= t1 for t1, t2 in zip(snaps, snaps[1:])):
            raise ValueError("snapshot times must be strictly increasing")
        if snaps[0] < 0.0 or snaps[-1] > self.T + 1e-12:
            raise ValueError("snapshot times must stay within [0, T]")
        object.__setattr__(self, "snapshot_times", snaps)

    @classmethod
    def build(cls, gamma: float = 1.5, T: float = 2000.0, N: int = 2**15,
              dt: float = 0.25, L: float | None = None,
              snapshot_times: tuple[float, ...] | None = None) -> "GridSpec":
        if L is None:
            L = default_halfwidth(gamma, T)
        return cls(L=float(L), N=int(N), dt=float(dt), T=float(T),
                   snapshot_times=tuple(snapshot_times) if snapshot_times else ())

    @property
    def dx(self) -> float:
        return 2.0 * self.L / self.N

    @property
    def x(self) -> np.ndarray:
        return -self.L + self.dx * np.arange(self.N)

    def step_count(self, t0: float, t1: float) -> int:
        """Number of equal steps used on [t0, t1]; the base step grows ~t/16, capped at 8 dt."""
        target = self.dt * min(8.0, max(1.0, t0 / 16.0))
        return max(1, int(math.ceil((t1 - t0) / target - 1e-12)))
