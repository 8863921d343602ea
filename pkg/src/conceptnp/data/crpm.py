"""Procedural 3x3 matrix reasoning episodes with continuous attributes.

Each episode is a 3x3 grid of grayscale cells; the function inputs are the
grid coordinates in {-1, 0, 1}^2. Within a row every attribute (size,
grayscale, rotation, and for double instances the inner shape's size and
grayscale) follows either a progressive rule (arithmetic with a nonzero
step) or a constant rule. Rule kind and step are shared by the three rows
of a matrix; the row start values differ, which is what makes the removed
cells predictable from the rest of the matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..rng import substream
from .episode import Episode, make_episode
from .render import pixel_centers

INSTANCES = ("triangle", "double-triangle", "circle", "double-circle")

OUTER_ATTRIBUTES = ("size", "grayscale", "rotation")
INNER_ATTRIBUTES = ("inner_size", "inner_grayscale")

# Legal value ranges. Sizes are fractions of the half-image (inner size is a
# fraction of the outer size), grayscales are pixel values, rotation is in
# degrees and stays below the equilateral triangle's 120-degree symmetry.
ATTRIBUTE_RANGES: dict[str, tuple[float, float]] = {
    "size": (0.2, 0.8),
    "grayscale": (0.2, 1.0),
    "rotation": (0.0, 120.0),
    "inner_size": (0.3, 0.7),
    "inner_grayscale": (0.2, 1.0),
}

# Progressive step magnitudes, scaled so start + 2*step can stay in range.
STEP_RANGES: dict[str, tuple[float, float]] = {
    "size": (0.05, 0.15),
    "grayscale": (0.08, 0.25),
    "rotation": (10.0, 40.0),
    "inner_size": (0.05, 0.10),
    "inner_grayscale": (0.08, 0.25),
}

SECTOR_SPAN_DEG = 270.0  # circles render as pie sectors so rotation is visible


class RuleError(ValueError):
    """Raised when a rule would produce out-of-range attribute values."""


@dataclass
class CrpmRule:
    """Row rule: cell value at column k is start + k * step."""

    attribute: str
    kind: str  # "progressive" | "constant"
    start: float
    step: float

    def __post_init__(self) -> None:
        if self.kind == "constant" and self.step != 0.0:
            raise RuleError("constant rules must have step 0")
        if self.kind == "progressive" and self.step == 0.0:
            raise RuleError("progressive rules must have a nonzero step")
        lo, hi = ATTRIBUTE_RANGES[self.attribute]
        for k in range(3):
            v = self.value(k)
            if not lo <= v <= hi:
                raise RuleError(f"{self.attribute} value {v} outside [{lo}, {hi}]")

    def value(self, position: int) -> float:
        return self.start + position * self.step

    def row_values(self) -> list[float]:
        return [self.value(k) for k in range(3)]


@dataclass
class CrpmConfig:
    n_episodes: int = 100
    instance: str = "triangle"
    resolution: int = 32
    p_progressive: float = 0.5

    def validate(self) -> None:
        if self.instance not in INSTANCES:
            raise ValueError(f"unknown instance {self.instance!r}, expected one of {INSTANCES}")

    @property
    def attributes(self) -> tuple[str, ...]:
        if self.instance.startswith("double-"):
            return OUTER_ATTRIBUTES + INNER_ATTRIBUTES
        return OUTER_ATTRIBUTES

    @property
    def base_shape(self) -> str:
        return self.instance.removeprefix("double-")

    def to_dict(self) -> dict:
        return {
            "kind": "crpm",
            "n_episodes": self.n_episodes,
            "instance": self.instance,
            "resolution": self.resolution,
            "p_progressive": self.p_progressive,
        }


def _triangle_mask(px: np.ndarray, py: np.ndarray, radius: float, rotation_deg: float) -> np.ndarray:
    """Pixels inside the equilateral triangle of given circumradius (cell coords)."""
    angles = np.deg2rad(rotation_deg) + np.deg2rad([90.0, 210.0, 330.0])
    # Image y grows downward; negate the y component so rotation is counterclockwise.
    vx = 0.5 + radius * np.cos(angles)
    vy = 0.5 - radius * np.sin(angles)
    mask = np.ones_like(px, dtype=bool)
    for k in range(3):
        x0, y0 = vx[k], vy[k]
        x1, y1 = vx[(k + 1) % 3], vy[(k + 1) % 3]
        cross = (x1 - x0) * (py - y0) - (y1 - y0) * (px - x0)
        mask &= cross <= 0
    return mask


def _sector_mask(px: np.ndarray, py: np.ndarray, radius: float, rotation_deg: float) -> np.ndarray:
    """Pixels inside a pie sector spanning SECTOR_SPAN_DEG from the rotation angle."""
    dx = px - 0.5
    dy = 0.5 - py
    inside = dx * dx + dy * dy <= radius * radius
    theta = np.degrees(np.arctan2(dy, dx))
    rel = np.mod(theta - rotation_deg, 360.0)
    return inside & (rel <= SECTOR_SPAN_DEG)


def render_cell(config: CrpmConfig, values: dict[str, float]) -> np.ndarray:
    """Rasterize one cell to a (1, H, W) float32 image from attribute values."""
    res = (config.resolution, config.resolution)
    px, py = pixel_centers(res)
    image = np.zeros((1, *res), dtype=np.float32)
    radius = 0.5 * values["size"]
    if config.base_shape == "triangle":
        mask = _triangle_mask(px, py, radius, values["rotation"])
    else:
        mask = _sector_mask(px, py, radius, values["rotation"])
    image[0][mask] = values["grayscale"]
    if config.instance.startswith("double-"):
        inner_radius = radius * values["inner_size"]
        if config.base_shape == "triangle":
            inner = _triangle_mask(px, py, inner_radius, values["rotation"])
        else:
            inner = _sector_mask(px, py, inner_radius, values["rotation"])
        image[0][inner] = values["inner_grayscale"]
    return image


def _sample_rules(attribute: str, config: CrpmConfig, rng: np.random.Generator) -> list[CrpmRule]:
    """Three row rules for one attribute: shared kind and step, per-row starts."""
    lo, hi = ATTRIBUTE_RANGES[attribute]
    progressive = bool(rng.random() < config.p_progressive)
    if progressive:
        magnitude = float(rng.uniform(*STEP_RANGES[attribute]))
        step = magnitude if rng.random() < 0.5 else -magnitude
    else:
        step = 0.0
    start_lo = lo - min(0.0, 2.0 * step)
    start_hi = hi - max(0.0, 2.0 * step)
    kind = "progressive" if progressive else "constant"
    return [
        CrpmRule(attribute, kind, float(rng.uniform(start_lo, start_hi)), step)
        for _ in range(3)
    ]


def grid_inputs() -> np.ndarray:
    """Row-major grid coordinates (x=column, y=row) in {-1, 0, 1}^2."""
    coords = [(float(col - 1), float(row - 1)) for row in range(3) for col in range(3)]
    return np.array(coords, dtype=np.float32)


def generate_crpm(config: CrpmConfig, seed: int) -> list[Episode]:
    """Generate matrix episodes, a pure function of (config, seed)."""
    config.validate()
    inputs = grid_inputs()
    episodes = []
    for e in range(config.n_episodes):
        rng = substream(seed, "crpm", e)
        rules = {attr: _sample_rules(attr, config, rng) for attr in config.attributes}
        images = []
        values_record: dict[str, np.ndarray] = {
            attr: np.zeros((3, 3)) for attr in config.attributes
        }
        for row in range(3):
            for col in range(3):
                cell_values = {attr: rules[attr][row].value(col) for attr in config.attributes}
                for attr, v in cell_values.items():
                    values_record[attr][row, col] = v
                images.append(render_cell(config, cell_values))
        meta = {"rules": rules, "values": values_record}
        episodes.append(make_episode(inputs, np.stack(images), meta))
    return episodes


def audit_episode(episode: Episode) -> None:
    """Check the recorded attribute values against the recorded row rules, exactly."""
    rules: dict[str, list[CrpmRule]] = episode.meta["rules"]
    values: dict[str, np.ndarray] = episode.meta["values"]
    for attr, row_rules in rules.items():
        for row, rule in enumerate(row_rules):
            expected = rule.row_values()
            got = values[attr][row].tolist()
            if got != expected:
                raise RuleError(f"{attr} row {row}: values {got} do not match rule {rule}")
            if rule.kind == "constant" and len(set(got)) != 1:
                raise RuleError(f"{attr} row {row}: constant rule produced varying values")
