"""Named parameter store with seeded init and a flat binary checkpoint format.

Initialization draws every value from one numpy stream in name-sorted
order, so parameters are a pure function of (scheme, seed) and never touch
torch's global RNG. Checkpoints are manifest.json plus params.bin holding
the name-sorted tensors as little-endian float32.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import torch
from torch import nn

from ..rng import substream

CHECKPOINT_VERSION = 1


class CheckpointError(ValueError):
    """Raised when a stored checkpoint cannot be matched to the live module."""


class ParamStore:
    """View over a module's named parameters."""

    def __init__(self, module: nn.Module, scheme: str = "fan_in_uniform", seed: int = 0):
        self.module = module
        self.scheme = scheme
        self.seed = seed
        names = [name for name, _ in module.named_parameters()]
        if len(names) != len(set(names)):
            raise ValueError("parameter names are not unique")

    def named(self) -> dict[str, nn.Parameter]:
        return dict(self.module.named_parameters())

    def sorted_items(self) -> list[tuple[str, nn.Parameter]]:
        return sorted(self.named().items())

    def n_params(self) -> int:
        return sum(p.numel() for p in self.module.parameters())

    def initialize(self) -> None:
        """Reset all parameters from (scheme, seed)."""
        if self.scheme != "fan_in_uniform":
            raise ValueError(f"unknown init scheme {self.scheme!r}")
        rng = substream(self.seed, "init")
        with torch.no_grad():
            for name, p in self.sorted_items():
                if p.ndim >= 2:
                    fan_in = int(np.prod(p.shape[1:]))
                    bound = 1.0 / np.sqrt(fan_in)
                    values = rng.uniform(-bound, bound, size=tuple(p.shape))
                    p.copy_(torch.from_numpy(values.astype(np.float32)))
                elif name.endswith(".weight"):
                    p.fill_(1.0)  # norm-layer scales
                else:
                    p.zero_()

    def state_arrays(self) -> dict[str, np.ndarray]:
        return {
            name: p.detach().cpu().numpy().astype("<f4")
            for name, p in self.sorted_items()
        }

    def save(self, directory: str | Path, extra: dict | None = None) -> None:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        entries = []
        offset = 0
        with open(directory / "params.bin", "wb") as f:
            for name, arr in self.state_arrays().items():
                f.write(arr.tobytes())
                entries.append({"name": name, "shape": list(arr.shape), "offset": offset})
                offset += arr.size
        manifest = {
            "format_version": CHECKPOINT_VERSION,
            "init": {"scheme": self.scheme, "seed": self.seed},
            "params": entries,
        }
        manifest.update(extra or {})
        with open(directory / "manifest.json", "w", encoding="utf-8") as f:
            json.dump(manifest, f, indent=2)

    def load(self, directory: str | Path) -> dict:
        """Load params from a checkpoint directory; returns the manifest."""
        directory = Path(directory)
        try:
            with open(directory / "manifest.json", "r", encoding="utf-8") as f:
                manifest = json.load(f)
        except (OSError, json.JSONDecodeError) as exc:
            raise CheckpointError(f"cannot read checkpoint manifest: {exc}") from exc
        payload = np.fromfile(directory / "params.bin", dtype="<f4")
        live = self.named()
        entries = manifest.get("params", [])
        stored_names = {e["name"] for e in entries}
        if stored_names != set(live):
            missing = set(live) - stored_names
            extra_names = stored_names - set(live)
            raise CheckpointError(f"parameter name mismatch: missing={missing} extra={extra_names}")
        total = sum(int(np.prod(e["shape"])) for e in entries)
        if payload.size != total:
            raise CheckpointError(f"params.bin holds {payload.size} floats, manifest implies {total}")
        with torch.no_grad():
            for e in entries:
                shape = tuple(e["shape"])
                p = live[e["name"]]
                if tuple(p.shape) != shape:
                    raise CheckpointError(f"shape mismatch for {e['name']}: {shape} vs {tuple(p.shape)}")
                size = int(np.prod(shape))
                block = payload[e["offset"] : e["offset"] + size].reshape(shape)
                p.copy_(torch.from_numpy(block.copy()).to(p.dtype))
        return manifest
