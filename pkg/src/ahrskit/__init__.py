"""Attitude-heading estimation for small UAVs.

A gyro-propagated, accelerometer/magnetometer-corrected attitude
estimator built around a six-state error-state Kalman filter with two
sequential measurement layers and adaptive accelerometer noise, plus a
complementary-filter baseline, a synthetic sensor simulator, and an
RMSE evaluation harness.
"""

from .complementary import CfState, cf_update
from .dlkf import (FilterState, NoiseConfig, accel_update, adaptive_factor,
                   adaptive_ra, apply_correction, mag_update, time_update)
from .fasteuler import (FastEulerConfig, MeasuredAngles, accel_roll_pitch,
                        fast_euler, mag_yaw)
from .geometry import (EulerAngles, Quaternion, euler_to_quat, quat_multiply,
                       quat_to_dcm, quat_to_euler, rotvec_to_quat, wrap_pi,
                       wrap_yaw)
from .metrics import RunResult, align_series, evaluate, improvement, rmse
from .pipeline import (AlignmentError, AttitudeEstimate, PipelineConfig,
                       initial_alignment, run_pipeline)
from .propagation import PropagatorState, propagate
from .simulate import (AccelModel, GyroModel, MagModel, Segment, SensorRecord,
                       TrajectorySpec, simulate)

__version__ = "0.1.0"

__all__ = [
    "AccelModel", "AlignmentError", "AttitudeEstimate", "CfState",
    "EulerAngles", "FastEulerConfig", "FilterState", "GyroModel", "MagModel",
    "MeasuredAngles", "NoiseConfig", "PipelineConfig", "PropagatorState",
    "Quaternion", "RunResult", "Segment", "SensorRecord", "TrajectorySpec",
    "accel_roll_pitch", "accel_update", "adaptive_factor", "adaptive_ra",
    "align_series", "apply_correction", "cf_update", "euler_to_quat",
    "evaluate", "fast_euler", "improvement", "initial_alignment", "mag_update",
    "mag_yaw", "propagate", "quat_multiply", "quat_to_dcm", "quat_to_euler",
    "rmse", "rotvec_to_quat", "run_pipeline", "simulate", "time_update",
    "wrap_pi", "wrap_yaw",
]
