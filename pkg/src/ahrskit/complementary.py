"""Mahony-style passive complementary filter, the comparison baseline.

Gyro rates are corrected by a proportional-integral feedback built from
the cross products between measured and predicted gravity/field
directions, then integrated exactly like the plain propagator. The
integral term absorbs constant gyro bias.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .geometry import Quaternion, quat_multiply, quat_to_dcm, rotvec_to_quat


class CfState(NamedTuple):
    """Attitude, PI integral feedback (rad/s) and gains (1/s)."""

    q: Quaternion
    integral_fb: np.ndarray
    kp: float
    ki: float

    @classmethod
    def initial(cls, q: Quaternion = Quaternion.identity(),
                kp: float = 1.0, ki: float = 0.05) -> "CfState":
        if kp < 0.0 or ki < 0.0:
            raise ValueError(f"gains must be non-negative, got kp={kp} ki={ki}")
        return cls(q, np.zeros(3), kp, ki)


def cf_update(state: CfState, gyro, accel, mag, dt: float) -> CfState:
    """One fusion step. A zero-norm accel or mag skips that error term."""
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    gyro = np.asarray(gyro, dtype=float)
    accel = np.asarray(accel, dtype=float)
    mag = np.asarray(mag, dtype=float)

    cbn = quat_to_dcm(state.q)
    err = np.zeros(3)

    an = np.linalg.norm(accel)
    if an > 0.0:
        # measured vs predicted "up" reaction: at rest accel = -C_n^b g
        meas = accel / an
        pred = -cbn[2, :]  # C_n^b @ (0,0,-1) = -(third row of C_b^n)
        err += np.cross(meas, pred)

    mn = np.linalg.norm(mag)
    if mn > 0.0:
        meas = mag / mn
        h = cbn @ meas
        # reference field with the measured inclination, zero declination
        ref = np.array([np.hypot(h[0], h[1]), 0.0, h[2]])
        pred = cbn.T @ ref
        err += np.cross(meas, pred)

    integral = state.integral_fb
    if state.ki > 0.0:
        integral = integral + state.ki * err * dt
    rate = gyro + state.kp * err + integral
    q = quat_multiply(state.q, rotvec_to_quat(rate * dt))
    return CfState(q, integral, state.kp, state.ki)
