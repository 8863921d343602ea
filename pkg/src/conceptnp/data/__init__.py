"""Synthetic dataset generation, rendering, serialization, and splits."""

from .boba import BobaConfig, GenerationError, generate_boba
from .crpm import CrpmConfig, CrpmRule, RuleError, audit_episode, generate_crpm
from .episode import Episode, SplitError, make_episode, split_context_target
from .physics import BallState, kinetic_energy, momentum, simulate, step_physics, step_physics_events
from .render import render_frame
from .storage import (
    DatasetFormatError,
    DatasetManifest,
    export_png,
    read_dataset,
    read_manifest,
    write_dataset,
)

__all__ = [
    "BallState",
    "BobaConfig",
    "CrpmConfig",
    "CrpmRule",
    "DatasetFormatError",
    "DatasetManifest",
    "Episode",
    "GenerationError",
    "RuleError",
    "SplitError",
    "audit_episode",
    "export_png",
    "generate_boba",
    "generate_crpm",
    "kinetic_energy",
    "make_episode",
    "momentum",
    "read_dataset",
    "read_manifest",
    "render_frame",
    "simulate",
    "split_context_target",
    "step_physics",
    "step_physics_events",
    "write_dataset",
]
