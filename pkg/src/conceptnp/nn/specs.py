"""Network-family specs and the torch modules they build.

Specs are plain data so they can be echoed into manifests and rebuilt
exactly at load time. Builders return torch modules; parameter values are
owned by ParamStore so initialization never depends on torch's global RNG.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import torch
from torch import nn


@dataclass
class MlpSpec:
    """Linear stack: depth hidden layers of hidden_width with ReLU, linear output."""

    input_dim: int
    hidden_width: int
    depth: int
    output_dim: int

    def __post_init__(self) -> None:
        if min(self.input_dim, self.output_dim) < 1 or (self.depth > 0 and self.hidden_width < 1):
            raise ValueError(f"all dims must be >= 1: {self}")

    def to_dict(self) -> dict:
        return {
            "input_dim": self.input_dim,
            "hidden_width": self.hidden_width,
            "depth": self.depth,
            "output_dim": self.output_dim,
        }

    @staticmethod
    def from_dict(raw: dict) -> "MlpSpec":
        return MlpSpec(raw["input_dim"], raw["hidden_width"], raw["depth"], raw["output_dim"])


def build_mlp(spec: MlpSpec) -> nn.Sequential:
    layers: list[nn.Module] = []
    width = spec.input_dim
    for _ in range(spec.depth):
        layers.append(nn.Linear(width, spec.hidden_width))
        layers.append(nn.ReLU())
        width = spec.hidden_width
    layers.append(nn.Linear(width, spec.output_dim))
    return nn.Sequential(*layers)


@dataclass
class ConvStage:
    kernel: int
    stride: int
    padding: int
    out_channels: int

    def to_dict(self) -> dict:
        return {"kernel": self.kernel, "stride": self.stride,
                "padding": self.padding, "out_channels": self.out_channels}

    @staticmethod
    def from_dict(raw: dict) -> "ConvStage":
        return ConvStage(raw["kernel"], raw["stride"], raw["padding"], raw["out_channels"])


@dataclass
class ConvEncoderSpec:
    """Conv stages (each conv + optional norm + ReLU) ending 1x1, then a linear head."""

    in_shape: tuple[int, int, int]
    stages: list[ConvStage]
    out_width: int
    batchnorm: bool = False

    def shape_trace(self) -> list[tuple[int, int, int]]:
        c, h, w = self.in_shape
        trace = [(c, h, w)]
        for s in self.stages:
            h = (h + 2 * s.padding - s.kernel) // s.stride + 1
            w = (w + 2 * s.padding - s.kernel) // s.stride + 1
            c = s.out_channels
            if h < 1 or w < 1:
                raise ValueError(f"stage {s} collapses the feature map below 1x1")
            trace.append((c, h, w))
        return trace

    def validate(self) -> None:
        c, h, w = self.shape_trace()[-1]
        if (h, w) != (1, 1):
            raise ValueError(f"encoder stages must reach a 1x1 bottleneck, got {h}x{w}")

    def to_dict(self) -> dict:
        return {
            "in_shape": list(self.in_shape),
            "stages": [s.to_dict() for s in self.stages],
            "out_width": self.out_width,
            "batchnorm": self.batchnorm,
        }

    @staticmethod
    def from_dict(raw: dict) -> "ConvEncoderSpec":
        return ConvEncoderSpec(
            tuple(raw["in_shape"]),
            [ConvStage.from_dict(s) for s in raw["stages"]],
            raw["out_width"],
            raw["batchnorm"],
        )


class ConvEncoder(nn.Module):
    def __init__(self, spec: ConvEncoderSpec):
        super().__init__()
        spec.validate()
        self.spec = spec
        layers: list[nn.Module] = []
        channels = spec.in_shape[0]
        for s in spec.stages:
            layers.append(nn.Conv2d(channels, s.out_channels, s.kernel, s.stride, s.padding))
            if spec.batchnorm:
                layers.append(nn.BatchNorm2d(s.out_channels))
            layers.append(nn.ReLU())
            channels = s.out_channels
        self.stages = nn.Sequential(*layers)
        self.head = nn.Linear(channels, spec.out_width)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        if x.shape[1:] != torch.Size(self.spec.in_shape):
            raise ValueError(f"expected images of shape {self.spec.in_shape}, got {tuple(x.shape[1:])}")
        feats = self.stages(x)
        return self.head(feats.flatten(1))


@dataclass
class DeconvDecoderSpec:
    """Transposed-conv stages from a width vector up to image dims, sigmoid output."""

    in_width: int
    stages: list[ConvStage]  # out_channels of the last stage = image channels
    out_shape: tuple[int, int, int]
    batchnorm: bool = False

    def shape_trace(self) -> list[tuple[int, int, int]]:
        c, h, w = self.in_width, 1, 1
        trace = [(c, h, w)]
        for s in self.stages:
            h = (h - 1) * s.stride - 2 * s.padding + s.kernel
            w = (w - 1) * s.stride - 2 * s.padding + s.kernel
            c = s.out_channels
            trace.append((c, h, w))
        return trace

    def validate(self) -> None:
        if self.shape_trace()[-1] != tuple(self.out_shape):
            raise ValueError(
                f"decoder stages produce {self.shape_trace()[-1]}, expected {self.out_shape}"
            )

    def to_dict(self) -> dict:
        return {
            "in_width": self.in_width,
            "stages": [s.to_dict() for s in self.stages],
            "out_shape": list(self.out_shape),
            "batchnorm": self.batchnorm,
        }

    @staticmethod
    def from_dict(raw: dict) -> "DeconvDecoderSpec":
        return DeconvDecoderSpec(
            raw["in_width"],
            [ConvStage.from_dict(s) for s in raw["stages"]],
            tuple(raw["out_shape"]),
            raw["batchnorm"],
        )


class DeconvDecoder(nn.Module):
    def __init__(self, spec: DeconvDecoderSpec):
        super().__init__()
        spec.validate()
        self.spec = spec
        layers: list[nn.Module] = []
        channels = spec.in_width
        for i, s in enumerate(spec.stages):
            layers.append(nn.ConvTranspose2d(channels, s.out_channels, s.kernel, s.stride, s.padding))
            last = i == len(spec.stages) - 1
            if not last:
                if spec.batchnorm:
                    layers.append(nn.BatchNorm2d(s.out_channels))
                layers.append(nn.ReLU())
            channels = s.out_channels
        self.stages = nn.Sequential(*layers)

    def forward(self, z: torch.Tensor) -> torch.Tensor:
        if z.shape[-1] != self.spec.in_width:
            raise ValueError(f"expected latent width {self.spec.in_width}, got {z.shape[-1]}")
        x = z.reshape(z.shape[0], self.spec.in_width, 1, 1)
        return torch.sigmoid(self.stages(x))


# Per-resolution conv chains. The 64 entry is the reference chain; smaller
# resolutions drop stride-2 stages so the 1x1 bottleneck property holds.
_ENCODER_CHAINS: dict[int, tuple[list[int], int, int]] = {
    64: ([32, 32, 64, 128], 256, 512),
    32: ([32, 32, 64], 256, 512),
    16: ([32, 64], 128, 256),
    8: ([32], 64, 128),
}
_DECODER_CHAINS: dict[int, tuple[int, int, list[int]]] = {
    64: (128, 64, [32, 32, 32]),
    32: (128, 64, [32, 32]),
    16: (64, 32, [16]),
    8: (32, 16, []),
}


def standard_encoder_spec(in_shape: tuple[int, int, int], out_width: int,
                          batchnorm: bool = False) -> ConvEncoderSpec:
    """Downsampling chain for a supported square resolution."""
    c, h, w = in_shape
    if h != w or h not in _ENCODER_CHAINS:
        raise ValueError(f"unsupported resolution {h}x{w}; supported: {sorted(_ENCODER_CHAINS)}")
    stride2, mid, top = _ENCODER_CHAINS[h]
    stages = [ConvStage(4, 2, 1, ch) for ch in stride2]
    stages.append(ConvStage(4, 1, 0, mid))
    stages.append(ConvStage(1, 1, 0, top))
    return ConvEncoderSpec((c, h, w), stages, out_width, batchnorm)


def standard_decoder_spec(out_shape: tuple[int, int, int], in_width: int,
                          batchnorm: bool = False) -> DeconvDecoderSpec:
    """Upsampling chain mirroring standard_encoder_spec."""
    c, h, w = out_shape
    if h != w or h not in _DECODER_CHAINS:
        raise ValueError(f"unsupported resolution {h}x{w}; supported: {sorted(_DECODER_CHAINS)}")
    head, first4, stride2 = _DECODER_CHAINS[h]
    stages = [ConvStage(1, 1, 0, head), ConvStage(4, 1, 0, first4)]
    stages.extend(ConvStage(4, 2, 1, ch) for ch in stride2)
    stages.append(ConvStage(4, 2, 1, c))
    return DeconvDecoderSpec(in_width, stages, (c, h, w), batchnorm)
