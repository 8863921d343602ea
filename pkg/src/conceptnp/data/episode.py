"""Episodes: sets of (input, image) points with a context/target split."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np


class SplitError(ValueError):
    """Raised when a context/target split request is invalid."""


@dataclass
class Episode:
    """One sample: N (input, image) points plus a context/target index split.

    inputs: (N, input_dim) float32 -- timestamps for video data, grid
        coordinates for matrix data.
    images: (N, C, H, W) float32 with pixels in [0, 1].
    context_idx / target_idx: disjoint sorted int arrays covering 0..N-1.
    meta: generator-side records (ball states, row rules, ...). Not
        serialized; used by audits only.
    """

    inputs: np.ndarray
    images: np.ndarray
    context_idx: np.ndarray
    target_idx: np.ndarray
    meta: dict = field(default_factory=dict)

    @property
    def n_points(self) -> int:
        return self.inputs.shape[0]

    @property
    def image_dims(self) -> tuple[int, int, int]:
        c, h, w = self.images.shape[1:]
        return int(c), int(h), int(w)

    def validate(self) -> None:
        n = self.n_points
        if self.images.shape[0] != n:
            raise ValueError(f"inputs have {n} points but images have {self.images.shape[0]}")
        if self.inputs.ndim != 2 or self.images.ndim != 4:
            raise ValueError("inputs must be (N, input_dim), images (N, C, H, W)")
        ctx = set(self.context_idx.tolist())
        tgt = set(self.target_idx.tolist())
        if ctx & tgt:
            raise ValueError("context and target sets overlap")
        if ctx | tgt != set(range(n)):
            raise ValueError("context and target sets must cover all points")
        if not ctx or not tgt:
            raise ValueError("context and target sets must both be nonempty")


def make_episode(inputs: np.ndarray, images: np.ndarray, meta: dict | None = None) -> Episode:
    """Episode with the default split (last point is the single target)."""
    n = inputs.shape[0]
    ep = Episode(
        inputs=np.ascontiguousarray(inputs, dtype=np.float32),
        images=np.ascontiguousarray(images, dtype=np.float32),
        context_idx=np.arange(n - 1, dtype=np.int64),
        target_idx=np.array([n - 1], dtype=np.int64),
        meta=meta or {},
    )
    ep.validate()
    return ep


def split_context_target(episode: Episode, n_target: int, rng: np.random.Generator) -> Episode:
    """Redraw the split: a uniformly random size-n_target subset becomes the target set."""
    n = episode.n_points
    if not 1 <= n_target <= n - 1:
        raise SplitError(f"n_target must be in [1, {n - 1}], got {n_target}")
    target = np.sort(rng.choice(n, size=n_target, replace=False)).astype(np.int64)
    mask = np.ones(n, dtype=bool)
    mask[target] = False
    context = np.flatnonzero(mask).astype(np.int64)
    return replace(episode, context_idx=context, target_idx=target)
