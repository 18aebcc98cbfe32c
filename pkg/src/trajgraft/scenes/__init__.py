"""Synthetic scene generation, labeling, captions, BEV grids, and IO."""

from .bev import compose_bev, ego_world_to_grid, grid_to_world, world_to_grid
from .captions import caption_pool, render_caption, tokenize
from .generate import SPEED_RANGES, generate_dataset, synthesize_track
from .io import read_dataset, scene_from_line, scene_to_line, write_dataset
from .maneuvers import classify_maneuver
from .types import (
    AGENT_TYPES,
    BEV_CHANNELS,
    D_BEV,
    D_MAP,
    MANEUVERS,
    Agent,
    AgentType,
    GenConfig,
    Maneuver,
    ManeuverThresholds,
    Scene,
)

__all__ = [
    "AGENT_TYPES",
    "BEV_CHANNELS",
    "D_BEV",
    "D_MAP",
    "MANEUVERS",
    "SPEED_RANGES",
    "Agent",
    "AgentType",
    "GenConfig",
    "Maneuver",
    "ManeuverThresholds",
    "Scene",
    "caption_pool",
    "classify_maneuver",
    "compose_bev",
    "ego_world_to_grid",
    "generate_dataset",
    "grid_to_world",
    "read_dataset",
    "render_caption",
    "scene_from_line",
    "scene_to_line",
    "synthesize_track",
    "tokenize",
    "world_to_grid",
    "write_dataset",
]
