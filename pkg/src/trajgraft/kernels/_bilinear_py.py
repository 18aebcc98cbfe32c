"""Pure-numpy bilinear gather/scatter, the fallback sampling backend.

Operation order (clamping, corner weights, accumulation order) mirrors the
compiled kernel exactly so both backends produce bit-identical results.
"""

import numpy as np


def _corners(grid: np.ndarray, pts: np.ndarray):
    h, w, _ = grid.shape
    x = np.minimum(np.maximum(pts[:, 0], 0.0), float(w - 1))
    y = np.minimum(np.maximum(pts[:, 1], 0.0), float(h - 1))
    x0 = np.minimum(np.floor(x), float(max(w - 2, 0))).astype(np.intp)
    y0 = np.minimum(np.floor(y), float(max(h - 2, 0))).astype(np.intp)
    fx = x - x0
    fy = y - y0
    x1 = np.minimum(x0 + 1, w - 1)
    y1 = np.minimum(y0 + 1, h - 1)
    return x, y, x0, y0, x1, y1, fx, fy


def bilinear_gather(grid: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Sample grid (h, w, d) at pts (n, 2) of (x, y) coords; returns (n, d)."""
    _, _, x0, y0, x1, y1, fx, fy = _corners(grid, pts)
    w00 = ((1.0 - fy) * (1.0 - fx))[:, None]
    w01 = ((1.0 - fy) * fx)[:, None]
    w10 = (fy * (1.0 - fx))[:, None]
    w11 = (fy * fx)[:, None]
    return w00 * grid[y0, x0] + w01 * grid[y0, x1] + w10 * grid[y1, x0] + w11 * grid[y1, x1]


def bilinear_scatter(grid: np.ndarray, pts: np.ndarray, grad_out: np.ndarray):
    """Gradients of bilinear_gather: returns (grad_grid, grad_pts).

    grad_pts is zero in a coordinate that was clamped.
    """
    x, y, x0, y0, x1, y1, fx, fy = _corners(grid, pts)
    w00 = (1.0 - fy) * (1.0 - fx)
    w01 = (1.0 - fy) * fx
    w10 = fy * (1.0 - fx)
    w11 = fy * fx

    grad_grid = np.zeros_like(grid)
    np.add.at(grad_grid, (y0, x0), w00[:, None] * grad_out)
    np.add.at(grad_grid, (y0, x1), w01[:, None] * grad_out)
    np.add.at(grad_grid, (y1, x0), w10[:, None] * grad_out)
    np.add.at(grad_grid, (y1, x1), w11[:, None] * grad_out)

    g00 = grid[y0, x0]
    g01 = grid[y0, x1]
    g10 = grid[y1, x0]
    g11 = grid[y1, x1]
    dx = (1.0 - fy)[:, None] * (g01 - g00) + fy[:, None] * (g11 - g10)
    dy = (1.0 - fx)[:, None] * (g10 - g00) + fx[:, None] * (g11 - g01)
    grad_pts = np.empty_like(pts)
    grad_pts[:, 0] = (grad_out * dx).sum(axis=1) * (pts[:, 0] == x)
    grad_pts[:, 1] = (grad_out * dy).sum(axis=1) * (pts[:, 1] == y)
    return grad_grid, grad_pts
