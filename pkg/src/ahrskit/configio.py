"""Flat key-value text files for run configs and simulation scenarios.

Format: one ``key = value`` pair per line, ``#`` starts a comment, blank
lines are ignored. Unknown keys are errors so typos fail loudly instead
of silently falling back to defaults. Angle-valued keys carry their unit
in the name (``*_deg``, ``*_deg2``, ``*_dps``); everything else is SI.
"""

from __future__ import annotations

import hashlib
import math
from pathlib import Path
from typing import Dict, List, Tuple

import numpy as np

from .dlkf import NoiseConfig
from .fasteuler import FastEulerConfig
from .geometry import EulerAngles
from .pipeline import PipelineConfig
from .simulate import (AccelModel, GyroModel, MagModel, Segment,
                       TrajectorySpec)

_DEG2RAD_SQ = (math.pi / 180.0) ** 2


def parse_kv_lines(text: str, source: str = "<config>") -> List[Tuple[str, str]]:
    """Parse key-value lines, preserving order and repeated keys."""
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        key, value = key.strip(), value.strip()
        if not key or not value:
            raise ValueError(f"{source}:{lineno}: empty key or value in {raw!r}")
        pairs.append((key, value))
    return pairs


def _floats(value: str, n: int, key: str) -> List[float]:
    parts = [p.strip() for p in value.split(",")]
    if len(parts) != n:
        raise ValueError(f"key {key!r}: expected {n} comma-separated values, "
                         f"got {len(parts)}")
    return [float(p) for p in parts]


# ---------------------------------------------------------------------------
# pipeline config files

_CONFIG_KEYS = frozenset({
    "algorithm", "imu_rate_hz", "mag_rate_hz", "align_s", "gravity",
    "accel_gate", "q_diag_deg2", "ra_diag_deg2", "rm_deg2", "tau_g_s",
    "lambda_a", "gamma2_max", "cf_kp", "cf_ki",
})


def pipeline_config_from_text(text: str, source: str = "<config>") -> PipelineConfig:
    kv: Dict[str, str] = {}
    for key, value in parse_kv_lines(text, source):
        if key not in _CONFIG_KEYS:
            raise ValueError(f"{source}: unknown config key {key!r}")
        if key in kv:
            raise ValueError(f"{source}: duplicate config key {key!r}")
        kv[key] = value

    base_noise = NoiseConfig()
    gravity = float(kv.get("gravity", 9.81))
    q = np.diag(_floats(kv["q_diag_deg2"], 6, "q_diag_deg2")) * _DEG2RAD_SQ \
        if "q_diag_deg2" in kv else base_noise.Q
    ra = np.diag(_floats(kv["ra_diag_deg2"], 2, "ra_diag_deg2")) * _DEG2RAD_SQ \
        if "ra_diag_deg2" in kv else base_noise.Ra_nominal
    rm = float(kv["rm_deg2"]) * _DEG2RAD_SQ if "rm_deg2" in kv else base_noise.Rm
    noise = NoiseConfig(
        Q=q, Ra_nominal=ra, Rm=rm,
        tau_g=float(kv.get("tau_g_s", base_noise.tau_g)),
        lambda_a=float(kv.get("lambda_a", base_noise.lambda_a)),
        gamma2_max=float(kv.get("gamma2_max", base_noise.gamma2_max)),
        gravity=gravity,
    )
    fast = FastEulerConfig(gravity=gravity,
                           accel_gate=float(kv.get("accel_gate", 0.5)))
    return PipelineConfig(
        algorithm=kv.get("algorithm", "dlkf"),
        noise=noise,
        fast_euler=fast,
        cf_kp=float(kv.get("cf_kp", 1.0)),
        cf_ki=float(kv.get("cf_ki", 0.05)),
        imu_rate_hz=float(kv.get("imu_rate_hz", 250.0)),
        mag_rate_hz=float(kv.get("mag_rate_hz", 10.0)),
        align_duration_s=float(kv.get("align_s", 2.0)),
    )


def load_pipeline_config(path) -> PipelineConfig:
    path = Path(path)
    return pipeline_config_from_text(path.read_text(encoding="utf-8"), str(path))


def config_hash(path) -> str:
    """Short content hash used to tag evaluation results."""
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()[:12]


# ---------------------------------------------------------------------------
# scenario files for the simulator

_SCENARIO_KEYS = frozenset({
    "rate_hz", "seed", "initial_rpy_deg", "segment", "gravity",
    "gyro_bias_rps", "gyro_tau_s", "gyro_sigma_markov", "gyro_sigma_white",
    "accel_sigma_white", "mag_sigma_white", "mag_field_ned",
})


def scenario_from_text(text: str, source: str = "<scenario>"):
    """Parse a scenario file.

    Returns (TrajectorySpec, GyroModel, AccelModel, MagModel, rate, seed).
    ``segment`` lines repeat, in order, each holding
    ``duration_s, wx_dps, wy_dps, wz_dps, ax, ay, az``.
    """
    kv: Dict[str, str] = {}
    segments: List[Segment] = []
    for key, value in parse_kv_lines(text, source):
        if key not in _SCENARIO_KEYS:
            raise ValueError(f"{source}: unknown scenario key {key!r}")
        if key == "segment":
            v = _floats(value, 7, "segment")
            segments.append(Segment(v[0], tuple(math.radians(x) for x in v[1:4]),
                                    tuple(v[4:7])))
            continue
        if key in kv:
            raise ValueError(f"{source}: duplicate scenario key {key!r}")
        kv[key] = value
    if not segments:
        raise ValueError(f"{source}: scenario needs at least one 'segment' line")

    rpy = _floats(kv.get("initial_rpy_deg", "0,0,0"), 3, "initial_rpy_deg")
    traj = TrajectorySpec(tuple(segments),
                          EulerAngles(*(math.radians(a) for a in rpy)))
    gyro = GyroModel(
        bias=tuple(_floats(kv.get("gyro_bias_rps", "0,0,0"), 3, "gyro_bias_rps")),
        tau=float(kv.get("gyro_tau_s", 100.0)),
        sigma_markov=float(kv.get("gyro_sigma_markov", 0.0)),
        sigma_white=float(kv.get("gyro_sigma_white", 0.0)),
    )
    accel = AccelModel(sigma_white=float(kv.get("accel_sigma_white", 0.0)),
                       gravity=float(kv.get("gravity", 9.81)))
    field = kv.get("mag_field_ned")
    mag = MagModel(field_ned=tuple(_floats(field, 3, "mag_field_ned"))
                   if field else MagModel().field_ned,
                   sigma_white=float(kv.get("mag_sigma_white", 0.0)))
    rate = float(kv.get("rate_hz", 250.0))
    seed = int(kv.get("seed", 0))
    return traj, gyro, accel, mag, rate, seed


def load_scenario(path):
    path = Path(path)
    return scenario_from_text(path.read_text(encoding="utf-8"), str(path))
