"""Scene and agent containers for the synthetic dataset."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np


class AgentType(str, enum.Enum):
    CAR = "car"
    PEDESTRIAN = "pedestrian"
    CYCLIST = "cyclist"
    BUS = "bus"


class Maneuver(str, enum.Enum):
    STATIONARY = "stationary"
    STRAIGHT = "straight"
    TURN_LEFT = "turn_left"
    TURN_RIGHT = "turn_right"
    LANE_CHANGE_LEFT = "lane_change_left"
    LANE_CHANGE_RIGHT = "lane_change_right"


AGENT_TYPES: Tuple[AgentType, ...] = tuple(AgentType)
MANEUVERS: Tuple[Maneuver, ...] = tuple(Maneuver)


@dataclass
class Agent:
    """One road user in ego-frame coordinates (meters, +y = ego forward)."""

    observed: np.ndarray  # (T, 2) past positions, last row is the current one
    future: np.ndarray  # (T_f, 2) ground-truth future positions
    agent_type: AgentType
    heading: np.ndarray  # (2,) unit motion direction at the current step
    maneuver: Maneuver
    captions: Tuple[str, str, str]

    def validate(self):
        if len(self.observed) < 2 or len(self.future) < 1:
            raise ValueError("agent track too short")
        if abs(float(np.linalg.norm(self.heading)) - 1.0) > 1e-9:
            raise ValueError("heading must have unit norm")
        if len(self.captions) != 3:
            raise ValueError("agents carry exactly 3 captions")


@dataclass
class Scene:
    """Ego-centric snapshot: agent tracks plus the synthetic BEV grids."""

    scene_id: int
    agents: List[Agent]
    bev_image: np.ndarray  # (h, w, d_bev) occupancy + maneuver-cue channels
    bev_map: np.ndarray  # (h, w, d_map) lane / crosswalk rasters
    grid_extent: float  # meters covered per side
    ego_index: int = 0


@dataclass(frozen=True)
class ManeuverThresholds:
    """Rule parameters for the maneuver classifier (documented defaults)."""

    stationary_displacement: float = 0.5  # m, net first-to-last displacement
    turn_angle: float = float(np.deg2rad(30.0))  # rad, net heading change
    lane_offset: float = 2.5  # m, lateral offset from the initial heading line


@dataclass(frozen=True)
class GenConfig:
    """Knobs of the synthetic scene generator.

    Label soundness (classifier reproduces the generator's intent on 100%
    of agents) is guaranteed for noise_sigma <= 0.05 at the default
    kinematic ranges.
    """

    t_observed: int = 4
    t_future: int = 12
    dt: float = 0.5  # seconds per step
    grid_h: int = 32
    grid_w: int = 32
    grid_extent: float = 112.0
    noise_sigma: float = 0.02
    spawn_radius: float = 12.0
    thresholds: ManeuverThresholds = field(default_factory=ManeuverThresholds)


# bev_image channel layout produced by the generator
BEV_CHANNELS = ("occupancy", "turn_cue", "lane_cue", "halt_cue")
MAP_CHANNELS = ("roads", "crosswalks")
D_BEV = len(BEV_CHANNELS)
D_MAP = len(MAP_CHANNELS)
