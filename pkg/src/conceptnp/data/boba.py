"""Bouncing-ball video episodes.

Each episode is a short video of 1-2 elastically colliding balls; the
function inputs are normalized timestamps. Color is sampled once per ball
and stays constant over the video, so the appearance law is a constant
while the position laws follow the collision dynamics. Variants support
held-out colors and square shapes for generalization probes.
"""

from __future__ import annotations

import colorsys
from dataclasses import dataclass, field

import numpy as np

from ..rng import substream
from .episode import Episode, make_episode
from .physics import BallState, simulate
from .render import render_frame


class GenerationError(ValueError):
    """Raised when a generator config cannot produce valid episodes."""


@dataclass
class BobaConfig:
    n_episodes: int = 100
    n_balls: int = 1
    n_frames: int = 12
    resolution: int = 32
    radius_range: tuple[float, float] = (0.08, 0.12)
    speed_range: tuple[float, float] = (0.03, 0.08)
    dt: float = 1.0
    shape: str = "disc"  # "square" swaps discs for axis-aligned squares
    hue_range: tuple[float, float] = (0.0, 0.8)  # (0.8, 1.0) = held-out colors
    meta: bool = field(default=True)

    def validate(self) -> None:
        if self.n_balls < 1:
            raise GenerationError("n_balls must be at least 1")
        if self.n_frames < 2:
            raise GenerationError("need at least 2 frames per episode")
        if self.radius_range[0] <= 0 or self.radius_range[1] < self.radius_range[0]:
            raise GenerationError(f"bad radius range {self.radius_range}")
        if 2.0 * self.radius_range[1] >= 1.0:
            raise GenerationError("balls of maximum radius cannot fit the arena")
        # Worst case every ball has the max radius; demand enough free area to
        # place them without overlap by rejection.
        if self.n_balls * (2.0 * self.radius_range[1]) ** 2 > 0.5:
            raise GenerationError("too many balls for the arena at this radius range")

    def to_dict(self) -> dict:
        return {
            "kind": "boba",
            "n_episodes": self.n_episodes,
            "n_balls": self.n_balls,
            "n_frames": self.n_frames,
            "resolution": self.resolution,
            "radius_range": list(self.radius_range),
            "speed_range": list(self.speed_range),
            "dt": self.dt,
            "shape": self.shape,
            "hue_range": list(self.hue_range),
        }


def _sample_initial_states(config: BobaConfig, rng: np.random.Generator) -> list[BallState]:
    states: list[BallState] = []
    for _ in range(config.n_balls):
        radius = float(rng.uniform(*config.radius_range))
        for attempt in range(10_000):
            position = rng.uniform(radius, 1.0 - radius, size=2)
            if all(
                np.linalg.norm(position - other.position) > radius + other.radius
                for other in states
            ):
                break
        else:
            raise GenerationError("could not place non-overlapping balls")
        speed = float(rng.uniform(*config.speed_range))
        angle = float(rng.uniform(0.0, 2.0 * np.pi))
        velocity = speed * np.array([np.cos(angle), np.sin(angle)])
        hue = float(rng.uniform(*config.hue_range)) % 1.0
        color = np.array(colorsys.hsv_to_rgb(hue, 1.0, 1.0))
        states.append(BallState(position.astype(np.float64), velocity, radius, color))
    return states


def generate_boba(config: BobaConfig, seed: int) -> list[Episode]:
    """Generate bouncing-ball episodes, a pure function of (config, seed)."""
    config.validate()
    episodes = []
    n = config.n_frames
    inputs = (np.arange(n, dtype=np.float32) / np.float32(n - 1)).reshape(n, 1)
    for e in range(config.n_episodes):
        rng = substream(seed, "boba", e)
        initial = _sample_initial_states(config, rng)
        frames, collisions = simulate(initial, n, config.dt)
        images = np.stack(
            [
                render_frame(frame, (config.resolution, config.resolution), config.shape)
                for frame in frames
            ]
        )
        meta = {}
        if config.meta:
            meta = {
                "frames": frames,
                "collisions": collisions,
                "colors": [b.color.copy() for b in initial],
            }
        episodes.append(make_episode(inputs, images, meta))
    return episodes
