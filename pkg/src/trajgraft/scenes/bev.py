"""BEV grid construction and coordinate mapping.

Grid coordinates are continuous: ego-frame meters (-extent/2, -extent/2)
map to cell (0, 0) and (+extent/2, +extent/2) to (w-1, h-1); x indexes
width, y height.
"""

from __future__ import annotations

import numpy as np

from ..errors import ShapeError
from .types import Maneuver, Scene


def world_to_grid(points: np.ndarray, extent: float, grid_h: int, grid_w: int) -> np.ndarray:
    """Map ego-frame meters (..., 2) to continuous grid coords (..., 2)."""
    points = np.asarray(points, dtype=np.float64)
    out = np.empty_like(points)
    out[..., 0] = (points[..., 0] + extent / 2.0) * ((grid_w - 1) / extent)
    out[..., 1] = (points[..., 1] + extent / 2.0) * ((grid_h - 1) / extent)
    return out


def grid_to_world(coords: np.ndarray, extent: float, grid_h: int, grid_w: int) -> np.ndarray:
    coords = np.asarray(coords, dtype=np.float64)
    out = np.empty_like(coords)
    out[..., 0] = coords[..., 0] * (extent / (grid_w - 1)) - extent / 2.0
    out[..., 1] = coords[..., 1] * (extent / (grid_h - 1)) - extent / 2.0
    return out


def ego_world_to_grid(point: np.ndarray, scene: Scene) -> np.ndarray:
    h, w = scene.bev_image.shape[:2]
    return world_to_grid(point, scene.grid_extent, h, w)


def compose_bev(scene: Scene) -> np.ndarray:
    """Channel-concatenate [bev_image; bev_map] without changing values."""
    if scene.bev_image.shape[:2] != scene.bev_map.shape[:2]:
        raise ShapeError(
            f"bev_image {scene.bev_image.shape} and bev_map {scene.bev_map.shape} differ spatially"
        )
    return np.concatenate([scene.bev_image, scene.bev_map], axis=2)


def stamp_gaussian(channel: np.ndarray, center_m, extent: float, amplitude: float, radius_m: float):
    """Add a gaussian blob (in place) at an ego-frame position."""
    h, w = channel.shape
    cx, cy = world_to_grid(np.asarray(center_m, dtype=np.float64), extent, h, w)
    sigma = radius_m * (w - 1) / extent
    reach = int(np.ceil(3.0 * sigma)) + 1
    x_lo, x_hi = max(int(np.floor(cx)) - reach, 0), min(int(np.ceil(cx)) + reach, w - 1)
    y_lo, y_hi = max(int(np.floor(cy)) - reach, 0), min(int(np.ceil(cy)) + reach, h - 1)
    if x_lo > x_hi or y_lo > y_hi:
        return
    ys, xs = np.mgrid[y_lo : y_hi + 1, x_lo : x_hi + 1]
    d2 = (xs - cx) ** 2 + (ys - cy) ** 2
    channel[y_lo : y_hi + 1, x_lo : x_hi + 1] += amplitude * np.exp(-d2 / (2.0 * sigma * sigma))


# cue channel values per maneuver: (turn_cue, lane_cue, halt_cue)
_CUES = {
    Maneuver.STATIONARY: (0.0, 0.0, 1.0),
    Maneuver.STRAIGHT: (0.0, 0.0, 0.0),
    Maneuver.TURN_LEFT: (1.0, 0.0, 0.0),
    Maneuver.TURN_RIGHT: (-1.0, 0.0, 0.0),
    Maneuver.LANE_CHANGE_LEFT: (0.0, 1.0, 0.0),
    Maneuver.LANE_CHANGE_RIGHT: (0.0, -1.0, 0.0),
}


def rasterize_agents(agents, grid_h: int, grid_w: int, extent: float) -> np.ndarray:
    """Synthetic stand-in for the camera BEV: occupancy plus maneuver cues.

    Channel 0 stamps each agent's observed positions with recency-weighted
    occupancy; channels 1-3 stamp the maneuver cue at the current position,
    carrying intent information that the tracks alone do not.
    """
    grid = np.zeros((grid_h, grid_w, 4), dtype=np.float64)
    for agent in agents:
        n_obs = len(agent.observed)
        for k, pos in enumerate(agent.observed):
            stamp_gaussian(grid[:, :, 0], pos, extent, (k + 1) / n_obs, radius_m=2.5)
        turn, lane, halt = _CUES[agent.maneuver]
        current = agent.observed[-1]
        if turn != 0.0:
            stamp_gaussian(grid[:, :, 1], current, extent, turn, radius_m=4.0)
        if lane != 0.0:
            stamp_gaussian(grid[:, :, 2], current, extent, lane, radius_m=4.0)
        if halt != 0.0:
            stamp_gaussian(grid[:, :, 3], current, extent, halt, radius_m=4.0)
    return grid


def rasterize_map(rng: np.random.Generator, grid_h: int, grid_w: int, extent: float) -> np.ndarray:
    """Lane / crosswalk raster: an intersection of two road bands."""
    grid = np.zeros((grid_h, grid_w, 2), dtype=np.float64)
    half_road = rng.uniform(6.0, 9.0)
    cross_dist = rng.uniform(10.0, 14.0)
    xs = grid_to_world(np.stack([np.arange(grid_w, dtype=np.float64), np.zeros(grid_w)], axis=-1), extent, grid_h, grid_w)[:, 0]
    ys = grid_to_world(np.stack([np.zeros(grid_h), np.arange(grid_h, dtype=np.float64)], axis=-1), extent, grid_h, grid_w)[:, 1]
    on_x = np.abs(xs) <= half_road
    on_y = np.abs(ys) <= half_road
    grid[:, :, 0] = np.maximum(on_y[:, None], on_x[None, :]).astype(np.float64)
    for sign in (-1.0, 1.0):
        band_y = (np.abs(ys - sign * cross_dist) <= 1.5)[:, None] & on_x[None, :]
        band_x = on_y[:, None] & (np.abs(xs - sign * cross_dist) <= 1.5)[None, :]
        grid[:, :, 1] = np.maximum(grid[:, :, 1], np.maximum(band_y, band_x).astype(np.float64))
    return grid
