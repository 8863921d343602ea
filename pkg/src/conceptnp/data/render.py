"""Hard-edged rasterization of arena states onto pixel grids.

A pixel takes a ball's color iff the pixel center falls inside the ball's
footprint (disc or axis-aligned square). No anti-aliasing: the model side
prefers crisp, reproducible targets. Later-indexed balls draw over earlier
ones; the background is black.
"""

from __future__ import annotations

import numpy as np

from .physics import BallState


def pixel_centers(resolution: tuple[int, int]) -> tuple[np.ndarray, np.ndarray]:
    """Arena-coordinate (x, y) grids of pixel centers, each (H, W)."""
    h, w = resolution
    xs = (np.arange(w) + 0.5) / w
    ys = (np.arange(h) + 0.5) / h
    return np.meshgrid(xs, ys)


def render_frame(states: list[BallState], resolution: tuple[int, int], shape: str = "disc") -> np.ndarray:
    """Rasterize balls to a (3, H, W) float32 image, draw order = list order."""
    h, w = resolution
    if h < 8 or w < 8:
        raise ValueError(f"resolution must be at least 8x8, got {resolution}")
    if shape not in ("disc", "square"):
        raise ValueError(f"unknown shape {shape!r}")
    px, py = pixel_centers(resolution)
    image = np.zeros((3, h, w), dtype=np.float32)
    for ball in states:
        dx = px - ball.position[0]
        dy = py - ball.position[1]
        if shape == "disc":
            mask = dx * dx + dy * dy <= ball.radius * ball.radius
        else:
            mask = (np.abs(dx) <= ball.radius) & (np.abs(dy) <= ball.radius)
        for c in range(3):
            image[c][mask] = ball.color[c]
    return image
