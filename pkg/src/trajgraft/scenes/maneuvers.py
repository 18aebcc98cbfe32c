"""Rule-based maneuver labeling from a full (observed + future) track.

Rules, applied in order on the concatenated track:

1. net first-to-last displacement below ``stationary_displacement`` ->
   stationary (degenerate tracks land here too);
2. net signed heading change beyond +-``turn_angle`` -> turn_left /
   turn_right (left = counterclockwise: +y forward, +x right, so a left
   turn curves toward -x);
3. lateral offset perpendicular to the initial heading beyond
   +-``lane_offset`` with the final heading within ``turn_angle`` of the
   initial one -> lane_change_left / lane_change_right (positive lateral
   = left);
4. otherwise straight.

Start/end headings are estimated from two-step chords, which keeps the
labels stable under per-point jitter.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .types import Maneuver, ManeuverThresholds

_DEFAULT = ManeuverThresholds()
_TINY = 1e-9


def _cross(a: np.ndarray, b: np.ndarray) -> float:
    return float(a[0] * b[1] - a[1] * b[0])


def _signed_angle(a: np.ndarray, b: np.ndarray) -> float:
    """Angle rotating a onto b, in (-pi, pi]; positive = counterclockwise."""
    return float(np.arctan2(_cross(a, b), float(np.dot(a, b))))


def _chord_heading(track: np.ndarray, from_start: bool) -> Optional[np.ndarray]:
    n = len(track)
    if from_start:
        seg = track[min(2, n - 1)] - track[0]
    else:
        seg = track[-1] - track[-min(3, n)]
    norm = float(np.linalg.norm(seg))
    if norm < _TINY:
        return None
    return seg / norm


def classify_maneuver(
    track: np.ndarray,
    heading_hint: np.ndarray,
    thresholds: ManeuverThresholds = _DEFAULT,
) -> Maneuver:
    """Label a track (K, 2), K >= 2; heading_hint breaks degenerate ties."""
    track = np.asarray(track, dtype=np.float64)
    if track.ndim != 2 or len(track) < 2:
        raise ValueError(f"track must be (K>=2, 2), got {track.shape}")

    net = track[-1] - track[0]
    if float(np.linalg.norm(net)) < thresholds.stationary_displacement:
        return Maneuver.STATIONARY

    hint = np.asarray(heading_hint, dtype=np.float64)
    h_start = _chord_heading(track, from_start=True)
    h_end = _chord_heading(track, from_start=False)
    if h_start is None:
        h_start = hint
    if h_end is None:
        h_end = hint

    dpsi = _signed_angle(h_start, h_end)
    if dpsi > thresholds.turn_angle:
        return Maneuver.TURN_LEFT
    if dpsi < -thresholds.turn_angle:
        return Maneuver.TURN_RIGHT

    lateral = _cross(h_start, net)
    if abs(lateral) > thresholds.lane_offset and abs(dpsi) <= thresholds.turn_angle:
        return Maneuver.LANE_CHANGE_LEFT if lateral > 0 else Maneuver.LANE_CHANGE_RIGHT
    return Maneuver.STRAIGHT
