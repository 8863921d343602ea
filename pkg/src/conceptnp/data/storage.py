"""Dataset directories: manifest.json + a flat little-endian f32 payload.

Layout of episodes.bin: [episode][point][input floats][image floats], points
in input order. Context/target splits are never stored; they are drawn at
load or evaluation time.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .episode import Episode, make_episode

FORMAT_VERSION = 1


class DatasetFormatError(ValueError):
    """Raised for corrupt manifests or payloads that do not match them."""


@dataclass
class DatasetManifest:
    name: str
    image_dims: tuple[int, int, int]  # (channels, H, W)
    episode_count: int
    frames_per_episode: int
    input_dim: int
    generator_config: dict
    format_version: int = FORMAT_VERSION

    @property
    def floats_per_point(self) -> int:
        c, h, w = self.image_dims
        return self.input_dim + c * h * w

    @property
    def total_images(self) -> int:
        return self.episode_count * self.frames_per_episode


def write_dataset(episodes: list[Episode], path: str | Path, name: str = "dataset",
                  generator_config: dict | None = None) -> DatasetManifest:
    """Write a dataset directory; episodes must be homogeneous in dims."""
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    if episodes:
        dims = episodes[0].image_dims
        n = episodes[0].n_points
        input_dim = episodes[0].inputs.shape[1]
        for ep in episodes:
            if ep.image_dims != dims or ep.n_points != n or ep.inputs.shape[1] != input_dim:
                raise DatasetFormatError("episodes are not homogeneous in dims")
    else:
        dims, n, input_dim = (0, 0, 0), 0, 0
    manifest = DatasetManifest(
        name=name,
        image_dims=dims,
        episode_count=len(episodes),
        frames_per_episode=n,
        input_dim=input_dim,
        generator_config=generator_config or {},
    )
    with open(path / "manifest.json", "w", encoding="utf-8") as f:
        json.dump(asdict(manifest), f, indent=2)
    with open(path / "episodes.bin", "wb") as f:
        for ep in episodes:
            flat = np.concatenate(
                [ep.inputs.astype("<f4").reshape(n, -1), ep.images.astype("<f4").reshape(n, -1)],
                axis=1,
            )
            f.write(flat.tobytes())
    return manifest


def read_manifest(path: str | Path) -> DatasetManifest:
    path = Path(path)
    try:
        with open(path / "manifest.json", "r", encoding="utf-8") as f:
            raw = json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        raise DatasetFormatError(f"cannot read manifest at {path}: {exc}") from exc
    try:
        manifest = DatasetManifest(
            name=raw["name"],
            image_dims=tuple(raw["image_dims"]),
            episode_count=int(raw["episode_count"]),
            frames_per_episode=int(raw["frames_per_episode"]),
            input_dim=int(raw["input_dim"]),
            generator_config=raw["generator_config"],
            format_version=int(raw["format_version"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DatasetFormatError(f"manifest at {path} is missing fields: {exc}") from exc
    if manifest.format_version != FORMAT_VERSION:
        raise DatasetFormatError(f"unsupported format version {manifest.format_version}")
    if len(manifest.image_dims) != 3:
        raise DatasetFormatError(f"image_dims must be (channels, H, W), got {manifest.image_dims}")
    return manifest


def read_dataset(path: str | Path) -> list[Episode]:
    """Read back episodes (with the default split; redraw splits as needed)."""
    path = Path(path)
    manifest = read_manifest(path)
    payload = np.fromfile(path / "episodes.bin", dtype="<f4")
    expected = manifest.episode_count * manifest.frames_per_episode * manifest.floats_per_point
    if payload.size != expected:
        raise DatasetFormatError(
            f"payload holds {payload.size} floats but manifest implies {expected}"
        )
    episodes = []
    c, h, w = manifest.image_dims
    n = manifest.frames_per_episode
    per_ep = n * manifest.floats_per_point
    for e in range(manifest.episode_count):
        block = payload[e * per_ep : (e + 1) * per_ep].reshape(n, manifest.floats_per_point)
        inputs = block[:, : manifest.input_dim].copy()
        images = block[:, manifest.input_dim :].reshape(n, c, h, w).copy()
        episodes.append(make_episode(inputs, images))
    return episodes


def export_png(episodes: list[Episode], directory: str | Path) -> list[Path]:
    """Write one PNG per frame, named ep{e}_pt{n}.png."""
    from PIL import Image

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for e, ep in enumerate(episodes):
        for n in range(ep.n_points):
            arr = np.clip(ep.images[n] * 255.0, 0, 255).astype(np.uint8)
            if arr.shape[0] == 1:
                img = Image.fromarray(arr[0], mode="L")
            else:
                img = Image.fromarray(np.transpose(arr, (1, 2, 0)), mode="RGB")
            out = directory / f"ep{e}_pt{n}.png"
            img.save(out)
            written.append(out)
    return written
