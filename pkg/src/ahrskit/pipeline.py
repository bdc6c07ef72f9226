"""End-to-end fusion loop: alignment, per-sample estimation, emission.

Per IMU sample the loop dead-reckons the attitude from the gyro,
converts accel/mag into measured angles, runs the filter time update and
whichever measurement layers have valid data this epoch, then feeds the
corrections back. A gated accelerometer or an off-epoch magnetometer
simply skips its layer; the covariance flows on to the next consumer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .complementary import CfState, cf_update
from .dlkf import (FilterState, NoiseConfig, accel_update, adaptive_factor,
                   apply_correction, mag_update, time_update)
from .fasteuler import FastEulerConfig, accel_roll_pitch, mag_yaw
from .geometry import (EulerAngles, Quaternion, euler_to_quat, quat_to_dcm,
                       quat_to_euler, wrap_pi)
from .propagation import PropagatorState, propagate
from .simulate import SensorRecord

ALGORITHMS = ("dlkf", "cf", "gyro-only")


class AlignmentError(ValueError):
    """Raised when the initial-alignment window is unusable."""


@dataclass(frozen=True)
class PipelineConfig:
    """Everything a run needs: algorithm choice, tuning, sensor rates."""

    algorithm: str = "dlkf"
    noise: NoiseConfig = field(default_factory=NoiseConfig)
    fast_euler: FastEulerConfig = field(default_factory=FastEulerConfig)
    cf_kp: float = 1.0
    cf_ki: float = 0.05
    imu_rate_hz: float = 250.0
    mag_rate_hz: float = 10.0
    align_duration_s: float = 2.0

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}, "
                             f"expected one of {ALGORITHMS}")
        if self.imu_rate_hz <= 0.0 or self.mag_rate_hz <= 0.0:
            raise ValueError("sensor rates must be positive")
        if self.mag_rate_hz > self.imu_rate_hz:
            raise ValueError(f"mag rate {self.mag_rate_hz} Hz cannot exceed "
                             f"IMU rate {self.imu_rate_hz} Hz")
        if self.align_duration_s < 0.0:
            raise ValueError("alignment duration must be non-negative")
        if self.cf_kp < 0.0 or self.cf_ki < 0.0:
            raise ValueError("CF gains must be non-negative")


class AttitudeEstimate(NamedTuple):
    """One output sample: Euler angles, quaternion, accumulated gyro bias."""

    t: float
    euler: EulerAngles
    q: Quaternion
    gyro_bias: np.ndarray


def initial_alignment(records: Sequence[SensorRecord],
                      cfg: FastEulerConfig) -> Tuple[Quaternion, np.ndarray]:
    """Coarse attitude and gyro-bias seed from a static data window.

    Roll/pitch come from the gate-passing accelerometer average, yaw
    from the magnetometer average, and the mean gyro rate seeds the bias
    accumulator (valid because the vehicle is assumed static).
    """
    if not records:
        raise AlignmentError("alignment window is empty")
    passing = [r.accel for r in records if accel_roll_pitch(r.accel, cfg) is not None]
    if len(passing) * 2 < len(records):
        raise AlignmentError(
            f"accel gate rejected {len(records) - len(passing)} of "
            f"{len(records)} alignment samples; vehicle not static enough")
    accel_mean = np.mean(passing, axis=0)
    rp = accel_roll_pitch(accel_mean, cfg)
    if rp is None:
        raise AlignmentError("averaged accelerometer failed the norm gate")
    mag_mean = np.mean([r.mag for r in records], axis=0)
    yaw = mag_yaw(mag_mean, rp[0], rp[1])
    if yaw is None:
        raise AlignmentError("averaged magnetometer is zero; heading unobservable")
    gyro_mean = np.mean([r.gyro for r in records], axis=0)
    return euler_to_quat(EulerAngles(rp[0], rp[1], yaw)), gyro_mean


def run_pipeline(records: Sequence[SensorRecord], cfg: PipelineConfig,
                 on_epoch: Optional[Callable[[float, FilterState], None]] = None,
                 ) -> List[AttitudeEstimate]:
    """Run the configured estimator over a time-ordered record stream.

    Estimates are emitted at the IMU rate for every sample after the
    alignment window. `on_epoch`, if given, receives (t, FilterState)
    after each dlkf epoch (diagnostics; ignored by other algorithms).
    """
    if not records:
        raise ValueError("no records to process")

    t0 = records[0].t
    align_end = t0 + cfg.align_duration_s
    n_align = 0
    if cfg.align_duration_s > 0.0:
        while n_align < len(records) and records[n_align].t <= align_end:
            n_align += 1
        if n_align == 0:
            raise AlignmentError("alignment window contains no samples")
        q0, bias_seed = initial_alignment(records[:n_align], cfg.fast_euler)
        t_prev = records[n_align - 1].t
    else:
        q0, bias_seed = Quaternion.identity(), np.zeros(3)
        # no alignment: first sample only sets the clock
        t_prev = t0
        n_align = 1
    rest = records[n_align:]
    if not rest:
        raise ValueError("no records left after the alignment window")

    if cfg.algorithm == "dlkf":
        return _run_dlkf(rest, cfg, q0, bias_seed, t_prev, n_align, on_epoch)
    if cfg.algorithm == "cf":
        return _run_cf(rest, cfg, q0, t_prev, n_align)
    return _run_gyro_only(rest, q0, t_prev, n_align)


def _advance(next_due: float, t: float, period: float) -> float:
    while next_due <= t:
        next_due += period
    return next_due


def _check_dt(t: float, t_prev: float, index: int) -> float:
    dt = t - t_prev
    if dt <= 0.0:
        raise ValueError(f"timestamps not strictly increasing at sample {index} "
                         f"(t={t} after {t_prev})")
    return dt


def _run_dlkf(records, cfg, q0, bias_seed, t_prev, offset, on_epoch):
    prop = PropagatorState(q0, np.asarray(bias_seed, dtype=float), t_prev)
    fs = FilterState.initial()
    mag_period = 1.0 / cfg.mag_rate_hz
    next_mag = records[0].t
    estimates = []
    for i, rec in enumerate(records):
        dt = _check_dt(rec.t, t_prev, offset + i)
        try:
            prop = propagate(prop, rec.gyro, dt)
            est = quat_to_euler(prop.q)

            rp = accel_roll_pitch(rec.accel, cfg.fast_euler)
            gamma2 = adaptive_factor(rec.accel, cfg.noise)
            yaw_meas = None
            if rec.t >= next_mag:
                # tilt-compensate with the accel angles only while the
                # accel is fully trusted; a gated or de-weighted sample
                # would leak its linear-acceleration error into heading
                tilt = rp if (rp is not None and gamma2 <= 1.0) else (est.roll, est.pitch)
                yaw_meas = mag_yaw(rec.mag, tilt[0], tilt[1])
                next_mag = _advance(next_mag, rec.t, mag_period)

            fs = time_update(fs, quat_to_dcm(prop.q), dt, cfg.noise)
            if rp is not None:
                z1 = (wrap_pi(rp[0] - est.roll), wrap_pi(rp[1] - est.pitch))
                fs = accel_update(fs, z1, gamma2 * cfg.noise.Ra_nominal)
            if yaw_meas is not None:
                fs = mag_update(fs, yaw_meas - est.yaw, cfg.noise.Rm)
            prop, fs = apply_correction(prop, fs)
        except ValueError as exc:
            raise ValueError(f"sample {offset + i} (t={rec.t}): {exc}") from exc
        estimates.append(AttitudeEstimate(rec.t, quat_to_euler(prop.q), prop.q,
                                          prop.bias))
        if on_epoch is not None:
            on_epoch(rec.t, fs)
        t_prev = rec.t
    return estimates


_NO_MAG = np.zeros(3)


def _run_cf(records, cfg, q0, t_prev, offset):
    state = CfState.initial(q0, cfg.cf_kp, cfg.cf_ki)
    mag_period = 1.0 / cfg.mag_rate_hz
    next_mag = records[0].t
    estimates = []
    for i, rec in enumerate(records):
        dt = _check_dt(rec.t, t_prev, offset + i)
        mag = _NO_MAG
        if rec.t >= next_mag:
            mag = rec.mag
            next_mag = _advance(next_mag, rec.t, mag_period)
        try:
            state = cf_update(state, rec.gyro, rec.accel, mag, dt)
        except ValueError as exc:
            raise ValueError(f"sample {offset + i} (t={rec.t}): {exc}") from exc
        # the PI integral converges to minus the gyro bias
        estimates.append(AttitudeEstimate(rec.t, quat_to_euler(state.q), state.q,
                                          -state.integral_fb))
        t_prev = rec.t
    return estimates


def _run_gyro_only(records, q0, t_prev, offset):
    # pure dead reckoning: no bias compensation, establishes the drift
    # the filters must remove
    prop = PropagatorState(q0, np.zeros(3), t_prev)
    estimates = []
    for i, rec in enumerate(records):
        dt = _check_dt(rec.t, t_prev, offset + i)
        try:
            prop = propagate(prop, rec.gyro, dt)
        except ValueError as exc:
            raise ValueError(f"sample {offset + i} (t={rec.t}): {exc}") from exc
        estimates.append(AttitudeEstimate(rec.t, quat_to_euler(prop.q), prop.q,
                                          prop.bias))
        t_prev = rec.t
    return estimates
