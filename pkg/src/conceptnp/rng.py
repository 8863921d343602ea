"""Counter-style derivation of independent random streams from one master seed.

Every stochastic choice in the toolkit (episode generation, context/target
splits, latent noise, parameter init) pulls from its own named stream, so
reordering or parallelising one consumer can never perturb another.
"""

from __future__ import annotations

import zlib

import numpy as np

_MASK64 = (1 << 64) - 1


def _encode(part: int | str) -> int:
    if isinstance(part, str):
        return zlib.crc32(part.encode("utf-8"))
    return int(part) & _MASK64


def seed_sequence(root: int, *path: int | str) -> np.random.SeedSequence:
    """SeedSequence for the stream identified by (root, *path)."""
    return np.random.SeedSequence([_encode(root), *(_encode(p) for p in path)])


def substream(root: int, *path: int | str) -> np.random.Generator:
    """Generator for the stream identified by (root, *path)."""
    return np.random.default_rng(seed_sequence(root, *path))


def derive_seed(root: int, *path: int | str) -> int:
    """A plain integer seed derived from (root, *path), for APIs that take ints."""
    return int(seed_sequence(root, *path).generate_state(1, dtype=np.uint64)[0])
