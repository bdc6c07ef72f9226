"""High-rate attitude dead reckoning from gyro samples.

One rotation-vector quaternion step per sample, with the accumulated
gyro bias estimate subtracted first. The angular rate is treated as
constant over the step, which is exact for piecewise-constant rates and
accurate to O(dt^2) otherwise; no coning correction is applied.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .geometry import Quaternion, quat_multiply, rotvec_to_quat


class PropagatorState(NamedTuple):
    """Attitude, accumulated gyro bias (rad/s) and timestamp (s)."""

    q: Quaternion
    bias: np.ndarray
    t: float

    @classmethod
    def initial(cls, q: Quaternion = Quaternion.identity(),
                bias=None, t: float = 0.0) -> "PropagatorState":
        b = np.zeros(3) if bias is None else np.asarray(bias, dtype=float)
        return cls(q, b, t)


def propagate(state: PropagatorState, gyro, dt: float) -> PropagatorState:
    """Advance the attitude by one gyro sample over dt seconds.

    The bias estimate is subtracted from the measured rate before
    integration; the bias itself is left unchanged (the filter owns it).
    """
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    gx, gy, gz = float(gyro[0]), float(gyro[1]), float(gyro[2])
    if not (math.isfinite(gx) and math.isfinite(gy) and math.isfinite(gz)):
        raise ValueError(f"gyro sample must be finite, got ({gx}, {gy}, {gz})")
    bx, by, bz = state.bias
    step = ((gx - bx) * dt, (gy - by) * dt, (gz - bz) * dt)
    q = quat_multiply(state.q, rotvec_to_quat(step))
    return PropagatorState(q, state.bias, state.t + dt)
