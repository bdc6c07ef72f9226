"""Direct Euler-angle measurements from accelerometer and magnetometer.

The accelerometer gives roll/pitch from the gravity reaction, guarded by
a specific-force norm gate that rejects samples taken under linear
acceleration. The magnetometer gives yaw after tilt compensation with
the roll/pitch of the same epoch. A gated or unusable sensor yields
``None`` for its angles: skipping a measurement is a normal outcome, not
an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

from .geometry import wrap_yaw


@dataclass(frozen=True)
class FastEulerConfig:
    """Gravity magnitude and accelerometer outlier gate, both m/s^2."""

    gravity: float = 9.81
    accel_gate: float = 0.5

    def __post_init__(self):
        if self.gravity <= 0.0:
            raise ValueError(f"gravity must be positive, got {self.gravity}")
        if self.accel_gate <= 0.0:
            raise ValueError(f"accel_gate must be positive, got {self.accel_gate}")


class MeasuredAngles(NamedTuple):
    """Per-epoch angle measurements; None marks a skipped sensor."""

    roll: Optional[float]
    pitch: Optional[float]
    yaw: Optional[float]


def accel_roll_pitch(accel, cfg: FastEulerConfig) -> Optional[Tuple[float, float]]:
    """Roll and pitch measured from the specific-force vector (m/s^2).

    Returns None when the sample is the zero vector or the norm gate
    ``| ||f|| - g | <= accel_gate`` fails, i.e. when linear acceleration
    makes the gravity direction unreliable.

    The pitch expression atan2(ax, -az) is exact only at zero roll; at
    nonzero roll it is a small-roll approximation. Roll is exact for any
    pitch away from +-90 deg.
    """
    ax, ay, az = float(accel[0]), float(accel[1]), float(accel[2])
    norm = math.sqrt(ax * ax + ay * ay + az * az)
    if norm == 0.0 or abs(norm - cfg.gravity) > cfg.accel_gate:
        return None
    return math.atan2(-ay, -az), math.atan2(ax, -az)


def mag_yaw(mag, roll: float, pitch: float) -> Optional[float]:
    """Tilt-compensated heading in [0, 2*pi) from a body-frame field vector.

    The field is used direction-only (normalized first), so any unit works.
    Roll/pitch should come from the same epoch: the accelerometer angles
    when available, otherwise the current attitude estimate. Returns None
    for a zero field vector. Headings are magnetic-north referenced; no
    declination correction is applied.
    """
    mx, my, mz = float(mag[0]), float(mag[1]), float(mag[2])
    norm = math.sqrt(mx * mx + my * my + mz * mz)
    if norm == 0.0:
        return None
    mx, my, mz = mx / norm, my / norm, mz / norm

    sr, cr = math.sin(roll), math.cos(roll)
    sp, cp = math.sin(pitch), math.cos(pitch)
    # Project the field onto the local horizontal plane (de-rotate roll,
    # then pitch).
    hx = mx * cp + my * sp * sr + mz * sp * cr
    hy = my * cr - mz * sr
    return wrap_yaw(math.atan2(-hy, hx))


def fast_euler(accel, mag, cfg: FastEulerConfig,
               fallback_roll_pitch: Optional[Tuple[float, float]] = None) -> MeasuredAngles:
    """Full measurement pass: roll/pitch from accel, then yaw from mag.

    When the accelerometer is gated, `fallback_roll_pitch` (typically the
    current filter estimate) keeps the heading measurement alive;
    without a fallback the yaw is skipped as well.
    """
    rp = accel_roll_pitch(accel, cfg)
    tilt = rp if rp is not None else fallback_roll_pitch
    yaw = mag_yaw(mag, tilt[0], tilt[1]) if tilt is not None else None
    if rp is None:
        return MeasuredAngles(None, None, yaw)
    return MeasuredAngles(rp[0], rp[1], yaw)
