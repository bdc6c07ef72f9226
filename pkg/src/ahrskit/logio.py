"""CSV I/O for sensor logs and attitude estimates.

Log schema, one header line then one row per sample::

    t,gx,gy,gz,ax,ay,az,mx,my,mz[,troll,tpitch,tyaw]

SI units throughout (s, rad/s, m/s^2, unit-normalized field, rad), UTF-8,
LF line endings, '.' decimal separator. The three truth columns are
present either for every row or for none. Floats are written with
repr(), which round-trips exactly, so a write/read cycle is lossless and
rewriting produces bit-identical files.
"""

from __future__ import annotations

from pathlib import Path
from typing import List, Sequence

import numpy as np

from .geometry import EulerAngles, Quaternion
from .pipeline import AttitudeEstimate
from .simulate import SensorRecord

LOG_HEADER = "t,gx,gy,gz,ax,ay,az,mx,my,mz"
LOG_TRUTH_HEADER = LOG_HEADER + ",troll,tpitch,tyaw"
EST_HEADER = "t,roll,pitch,yaw,qw,qx,qy,qz,bgx,bgy,bgz"


def _fmt(values) -> str:
    return ",".join(repr(float(v)) for v in values)


def write_log(path, records: Sequence[SensorRecord]) -> None:
    """Write sensor records; truth columns appear iff records carry truth."""
    if not records:
        raise ValueError("refusing to write an empty log")
    with_truth = records[0].truth is not None
    lines = [LOG_TRUTH_HEADER if with_truth else LOG_HEADER]
    for rec in records:
        if (rec.truth is not None) != with_truth:
            raise ValueError(f"record at t={rec.t}: truth must be present for "
                             "all records or none")
        fields = [rec.t, *rec.gyro, *rec.accel, *rec.mag]
        if with_truth:
            fields += [rec.truth.roll, rec.truth.pitch, rec.truth.yaw]
        lines.append(_fmt(fields))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def read_log(path) -> List[SensorRecord]:
    """Read a sensor log; accepts both schema variants."""
    text = Path(path).read_text(encoding="utf-8")
    lines = text.splitlines()
    if not lines:
        raise ValueError(f"{path}: empty log file")
    header = lines[0].strip()
    if header == LOG_TRUTH_HEADER:
        with_truth, n_cols = True, 13
    elif header == LOG_HEADER:
        with_truth, n_cols = False, 10
    else:
        raise ValueError(f"{path}: unrecognized log header {header!r}")
    records = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != n_cols:
            raise ValueError(f"{path}:{lineno}: expected {n_cols} columns, "
                             f"got {len(parts)}")
        try:
            v = [float(p) for p in parts]
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
        truth = EulerAngles(v[10], v[11], v[12]) if with_truth else None
        records.append(SensorRecord(v[0], np.array(v[1:4]), np.array(v[4:7]),
                                    np.array(v[7:10]), truth))
    if not records:
        raise ValueError(f"{path}: log contains no samples")
    return records


def write_estimates(path, estimates: Sequence[AttitudeEstimate]) -> None:
    if not estimates:
        raise ValueError("refusing to write an empty estimate file")
    lines = [EST_HEADER]
    for est in estimates:
        lines.append(_fmt([est.t, est.euler.roll, est.euler.pitch, est.euler.yaw,
                           est.q.w, est.q.x, est.q.y, est.q.z, *est.gyro_bias]))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def read_estimates(path) -> List[AttitudeEstimate]:
    text = Path(path).read_text(encoding="utf-8")
    lines = text.splitlines()
    if not lines or lines[0].strip() != EST_HEADER:
        raise ValueError(f"{path}: unrecognized estimate header")
    estimates = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 11:
            raise ValueError(f"{path}:{lineno}: expected 11 columns, got {len(parts)}")
        try:
            v = [float(p) for p in parts]
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
        estimates.append(AttitudeEstimate(v[0], EulerAngles(v[1], v[2], v[3]),
                                          Quaternion(v[4], v[5], v[6], v[7]),
                                          np.array(v[8:11])))
    if not estimates:
        raise ValueError(f"{path}: estimate file contains no samples")
    return estimates
