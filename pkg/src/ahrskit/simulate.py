"""Synthetic IMU/magnetometer data with exact attitude ground truth.

Trajectories are piecewise segments of constant body angular rate and
constant body-frame linear acceleration, so the true attitude integrates
exactly (one rotation-vector step per sample). Sensor errors follow a
constant-plus-first-order-Markov gyro bias with white noise, white
accelerometer noise on the specific force, and white noise on a rotated
unit magnetic field. Output is bit-reproducible for a given seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .geometry import (EulerAngles, euler_to_quat, quat_multiply, quat_to_dcm,
                       quat_to_euler, rotvec_to_quat)


class Segment(NamedTuple):
    """Constant-rate trajectory piece.

    duration: s; rate: body angular rate, rad/s; accel: body-frame
    linear acceleration, m/s^2.
    """

    duration: float
    rate: Tuple[float, float, float]
    accel: Tuple[float, float, float] = (0.0, 0.0, 0.0)


@dataclass(frozen=True)
class TrajectorySpec:
    segments: Tuple[Segment, ...]
    initial_attitude: EulerAngles = EulerAngles(0.0, 0.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        if not self.segments:
            raise ValueError("trajectory must have at least one segment")
        for seg in self.segments:
            if seg.duration <= 0.0:
                raise ValueError(f"segment duration must be positive, got {seg.duration}")
            if not all(math.isfinite(v) for v in (*seg.rate, *seg.accel)):
                raise ValueError("segment rates and accelerations must be finite")

    @property
    def duration(self) -> float:
        return sum(seg.duration for seg in self.segments)


@dataclass(frozen=True)
class GyroModel:
    """Constant bias + first-order Markov drift + white noise.

    sigma_markov is the Markov driving noise density (rad/s/sqrt(s));
    the drift state decays with time constant tau and has stationary
    variance sigma_markov^2 * tau / 2. sigma_white is an angular-rate
    white noise density (rad/s/sqrt(Hz)).
    """

    bias: Tuple[float, float, float] = (0.0, 0.0, 0.0)
    tau: float = 100.0
    sigma_markov: float = 0.0
    sigma_white: float = 0.0

    def __post_init__(self):
        if self.tau <= 0.0:
            raise ValueError(f"tau must be positive, got {self.tau}")
        if self.sigma_markov < 0.0 or self.sigma_white < 0.0:
            raise ValueError("noise densities must be non-negative")


@dataclass(frozen=True)
class AccelModel:
    """White specific-force noise (m/s^2/sqrt(Hz)) and local gravity."""

    sigma_white: float = 0.0
    gravity: float = 9.81

    def __post_init__(self):
        if self.sigma_white < 0.0:
            raise ValueError("sigma_white must be non-negative")
        if self.gravity <= 0.0:
            raise ValueError(f"gravity must be positive, got {self.gravity}")


def _default_field() -> Tuple[float, float, float]:
    # unit field at 60 deg inclination, pointing magnetic north
    return (math.cos(math.radians(60.0)), 0.0, math.sin(math.radians(60.0)))


@dataclass(frozen=True)
class MagModel:
    """Navigation-frame field direction and white noise (1/sqrt(Hz))."""

    field_ned: Tuple[float, float, float] = field(default_factory=_default_field)
    sigma_white: float = 0.0

    def __post_init__(self):
        f = np.asarray(self.field_ned, dtype=float)
        norm = np.linalg.norm(f)
        if norm == 0.0:
            raise ValueError("magnetic field direction cannot be zero")
        f = f / norm
        if np.hypot(f[0], f[1]) <= 1e-9:
            raise ValueError("magnetic field needs a horizontal component for heading")
        object.__setattr__(self, "field_ned", tuple(f))
        if self.sigma_white < 0.0:
            raise ValueError("sigma_white must be non-negative")


class SensorRecord(NamedTuple):
    """One timestamped sample; truth is None in replayed logs."""

    t: float
    gyro: np.ndarray
    accel: np.ndarray
    mag: np.ndarray
    truth: Optional[EulerAngles] = None


def simulate(traj: TrajectorySpec, gyro_model: GyroModel, accel_model: AccelModel,
             mag_model: MagModel, rate: float, seed: int) -> List[SensorRecord]:
    """Generate sensor records at `rate` Hz along a trajectory.

    Record k carries the gyro rate over the step ending at its timestamp
    and the accelerometer/magnetometer/truth values at that timestamp,
    so replaying the noiseless stream through a rotation-vector
    integrator reproduces the truth attitude exactly.
    """
    if rate <= 0.0:
        raise ValueError(f"rate must be positive, got {rate}")
    dt = 1.0 / rate

    steps_per_seg = []
    for seg in traj.segments:
        n = round(seg.duration * rate)
        if n < 1:
            raise ValueError(
                f"segment duration {seg.duration} s too short for {rate} Hz sampling")
        steps_per_seg.append(n)
    n_total = sum(steps_per_seg)

    rng = np.random.default_rng(seed)
    markov_w = rng.normal(0.0, gyro_model.sigma_markov * math.sqrt(dt), (n_total, 3))
    gyro_w = rng.normal(0.0, gyro_model.sigma_white * math.sqrt(rate), (n_total, 3))
    accel_w = rng.normal(0.0, accel_model.sigma_white * math.sqrt(rate), (n_total, 3))
    mag_w = rng.normal(0.0, mag_model.sigma_white * math.sqrt(rate), (n_total, 3))

    bias0 = np.asarray(gyro_model.bias, dtype=float)
    field_n = np.asarray(mag_model.field_ned, dtype=float)
    gravity = accel_model.gravity
    markov_decay = 1.0 - dt / gyro_model.tau

    q = euler_to_quat(traj.initial_attitude)
    drift = np.zeros(3)
    records: List[SensorRecord] = []
    k = 0
    for seg, n_steps in zip(traj.segments, steps_per_seg):
        omega = np.asarray(seg.rate, dtype=float)
        lin_acc = np.asarray(seg.accel, dtype=float)
        step_quat = rotvec_to_quat(omega * dt)
        for _ in range(n_steps):
            q = quat_multiply(q, step_quat)
            cbn = quat_to_dcm(q)
            gyro = omega + bias0 + drift + gyro_w[k]
            drift = markov_decay * drift + markov_w[k]
            accel = -gravity * cbn[2, :] + lin_acc + accel_w[k]
            mag = cbn.T @ field_n + mag_w[k]
            k += 1
            records.append(SensorRecord(k * dt, gyro, accel, mag, quat_to_euler(q)))
    return records


def truth_array(records: Sequence[SensorRecord]) -> np.ndarray:
    """(N, 3) roll/pitch/yaw truth matrix; raises if any record lacks truth."""
    out = np.empty((len(records), 3))
    for i, rec in enumerate(records):
        if rec.truth is None:
            raise ValueError(f"record at t={rec.t} has no ground truth")
        out[i] = rec.truth
    return out
