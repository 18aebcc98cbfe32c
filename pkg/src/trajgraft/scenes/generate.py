"""Deterministic synthetic scene generation.

Tracks are constant-speed lines/arcs (lane changes add a smoothstep lateral
offset) sampled at steps 1..T+T_f from a virtual step-0 anchor, then
anchored so the current position (last observed step) lands where the scene
needs it: exactly (0, 0) with heading +y for the ego agent, a sampled spawn
point for everyone else. Gaussian position noise is added last.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

import numpy as np

from ..errors import ConfigError
from .bev import rasterize_agents, rasterize_map
from .captions import render_caption
from .types import AGENT_TYPES, MANEUVERS, Agent, AgentType, GenConfig, Maneuver, Scene

SPEED_RANGES: Dict[AgentType, Tuple[float, float]] = {
    AgentType.CAR: (2.0, 4.5),
    AgentType.BUS: (1.5, 3.5),
    AgentType.CYCLIST: (1.0, 3.0),
    AgentType.PEDESTRIAN: (0.4, 1.4),
}
_TYPE_WEIGHTS = (0.45, 0.20, 0.20, 0.15)  # car, pedestrian, cyclist, bus
_TURN_TOTAL = (np.deg2rad(60.0), np.deg2rad(110.0))  # net heading change, rad
_LANE_OFFSET = (3.5, 4.5)  # lateral meters


def synthesize_track(
    maneuver: Maneuver,
    speed: float,
    heading_angle: float,
    n_steps: int,
    dt: float,
    turn_total: float = 0.0,
    lane_offset: float = 0.0,
) -> Tuple[np.ndarray, np.ndarray]:
    """Positions (n_steps, 2) at steps 1..n_steps from an origin anchor at
    virtual step 0, plus unit tangents (n_steps, 2) at each step."""
    k = np.arange(1, n_steps + 1, dtype=np.float64)
    t = k * dt
    direction = np.array([np.cos(heading_angle), np.sin(heading_angle)])
    left = np.array([-np.sin(heading_angle), np.cos(heading_angle)])

    if maneuver == Maneuver.STATIONARY or speed == 0.0:
        track = np.zeros((n_steps, 2))
        tangents = np.tile(direction, (n_steps, 1))
    elif maneuver in (Maneuver.TURN_LEFT, Maneuver.TURN_RIGHT):
        omega = turn_total / (n_steps * dt)
        radius = speed / omega
        psi = heading_angle + omega * t
        track = np.stack(
            [radius * (np.sin(psi) - np.sin(heading_angle)), radius * (np.cos(heading_angle) - np.cos(psi))],
            axis=-1,
        )
        tangents = np.stack([np.cos(psi), np.sin(psi)], axis=-1)
    elif maneuver in (Maneuver.LANE_CHANGE_LEFT, Maneuver.LANE_CHANGE_RIGHT):
        u = k / n_steps
        ease = 3.0 * u**2 - 2.0 * u**3
        track = direction[None, :] * (speed * t)[:, None] + left[None, :] * (lane_offset * ease)[:, None]
        lateral_rate = lane_offset * (6.0 * u - 6.0 * u**2) / (n_steps * dt)
        vel = direction[None, :] * speed + left[None, :] * lateral_rate[:, None]
        tangents = vel / np.linalg.norm(vel, axis=-1, keepdims=True)
    else:  # straight
        track = direction[None, :] * (speed * t)[:, None]
        tangents = np.tile(direction, (n_steps, 1))
    return track, tangents


def _rotation_to_plus_y(unit: np.ndarray) -> np.ndarray:
    return np.array([[unit[1], -unit[0]], [unit[0], unit[1]]])


def _make_agent(
    rng: np.random.Generator,
    maneuver: Maneuver,
    agent_type: AgentType,
    cfg: GenConfig,
    is_ego: bool,
) -> Agent:
    n_steps = cfg.t_observed + cfg.t_future
    current = cfg.t_observed - 1  # index of the last observed step

    speed = rng.uniform(*SPEED_RANGES[agent_type])
    heading_angle = rng.uniform(0.0, 2.0 * np.pi)
    turn_mag = rng.uniform(*_TURN_TOTAL)
    lane_mag = rng.uniform(*_LANE_OFFSET)
    spawn_r = cfg.spawn_radius * np.sqrt(rng.uniform())
    spawn_phi = rng.uniform(0.0, 2.0 * np.pi)

    if maneuver == Maneuver.STATIONARY:
        speed = 0.0
    turn_total = turn_mag if maneuver == Maneuver.TURN_LEFT else -turn_mag
    lane_offset = lane_mag if maneuver == Maneuver.LANE_CHANGE_LEFT else -lane_mag

    track, tangents = synthesize_track(maneuver, speed, heading_angle, n_steps, cfg.dt, turn_total, lane_offset)
    tangent = tangents[current]

    if is_ego:
        rot = _rotation_to_plus_y(tangent)
        track = (track - track[current]) @ rot.T
        heading = np.array([0.0, 1.0])
    else:
        spawn = spawn_r * np.array([np.cos(spawn_phi), np.sin(spawn_phi)])
        track = track - track[current] + spawn
        heading = tangent

    if cfg.noise_sigma > 0.0:
        track = track + rng.normal(0.0, cfg.noise_sigma, size=track.shape)
        if is_ego:
            track = track - track[current]

    return Agent(
        observed=track[: cfg.t_observed].copy(),
        future=track[cfg.t_observed :].copy(),
        agent_type=agent_type,
        heading=heading,
        maneuver=maneuver,
        captions=render_caption(agent_type, maneuver, rng),
    )


def _make_scene(seed: int, scene_id: int, agents_per_scene: int, cfg: GenConfig) -> Scene:
    rng = np.random.default_rng(np.random.SeedSequence([seed, 0x5C3E, scene_id]))
    agents: List[Agent] = []
    for i in range(agents_per_scene):
        maneuver = MANEUVERS[(scene_id * agents_per_scene + i) % len(MANEUVERS)]
        if i == 0:
            agent_type = AgentType.CAR  # ego
        else:
            agent_type = AGENT_TYPES[rng.choice(len(AGENT_TYPES), p=_TYPE_WEIGHTS)]
        agents.append(_make_agent(rng, maneuver, agent_type, cfg, is_ego=(i == 0)))

    half = cfg.grid_extent / 2.0
    for agent in agents:
        if np.abs(agent.observed).max() > half:
            raise ConfigError(
                "observed track leaves the grid extent; enlarge grid_extent or shrink spawn_radius/speeds"
            )

    return Scene(
        scene_id=scene_id,
        agents=agents,
        bev_image=rasterize_agents(agents, cfg.grid_h, cfg.grid_w, cfg.grid_extent),
        bev_map=rasterize_map(rng, cfg.grid_h, cfg.grid_w, cfg.grid_extent),
        grid_extent=cfg.grid_extent,
        ego_index=0,
    )


def generate_dataset(seed: int, n_scenes: int, agents_per_scene: int, cfg: GenConfig = GenConfig()) -> List[Scene]:
    """Deterministic dataset; each scene derives its own seed, so generation
    order is irrelevant."""
    if seed < 0:
        raise ConfigError("seed must be non-negative")
    if n_scenes < 1:
        raise ConfigError("n_scenes must be >= 1")
    if agents_per_scene < 1:
        raise ConfigError("agents_per_scene must be >= 1")
    if cfg.grid_h < 4 or cfg.grid_w < 4:
        raise ConfigError("grid must be at least 4x4")
    if cfg.t_observed < 2 or cfg.t_future < 1:
        raise ConfigError("need t_observed >= 2 and t_future >= 1")
    return [_make_scene(seed, sid, agents_per_scene, cfg) for sid in range(n_scenes)]
