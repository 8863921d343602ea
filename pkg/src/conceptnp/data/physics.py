"""Elastic ball dynamics in the unit arena.

Everything runs in double precision: the conservation audits demand
relative errors around 1e-9, far below float32 resolution. Collision
handling is advance-then-resolve -- overlapping discs are projected apart
along the center line and an equal-mass elastic impulse is applied, which
conserves kinetic energy and momentum exactly (up to rounding).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class BallState:
    """Position/velocity in arena units, radius, RGB color in [0, 1]."""

    position: np.ndarray  # (2,) float64
    velocity: np.ndarray  # (2,) float64, arena units per frame
    radius: float
    color: np.ndarray  # (3,) float64

    def copy(self) -> "BallState":
        return BallState(self.position.copy(), self.velocity.copy(), self.radius, self.color.copy())


@dataclass
class BallCollision:
    """Record of one ball-ball impulse, kept for conservation audits."""

    i: int
    j: int
    normal: np.ndarray
    v_i_pre: np.ndarray
    v_j_pre: np.ndarray
    v_i_post: np.ndarray
    v_j_post: np.ndarray


def step_physics(states: list[BallState], dt: float) -> list[BallState]:
    """Advance one step: move, resolve ball-ball contacts, reflect off walls."""
    new_states, _ = step_physics_events(states, dt)
    return new_states


def step_physics_events(states: list[BallState], dt: float) -> tuple[list[BallState], list[BallCollision]]:
    """Like step_physics but also returns the ball-ball collision events."""
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    balls = [s.copy() for s in states]
    for b in balls:
        b.position = b.position + b.velocity * dt

    events: list[BallCollision] = []
    for i in range(len(balls)):
        for j in range(i + 1, len(balls)):
            bi, bj = balls[i], balls[j]
            delta = bj.position - bi.position
            dist = float(np.linalg.norm(delta))
            min_dist = bi.radius + bj.radius
            if dist >= min_dist:
                continue
            if dist == 0.0:
                normal = np.array([1.0, 0.0])  # exact coincidence: separate along +x
            else:
                normal = delta / dist
            shift = 0.5 * (min_dist - dist)
            bi.position = bi.position - normal * shift
            bj.position = bj.position + normal * shift
            # Impulse only for approaching balls; separating overlaps were
            # already resolved positionally.
            rel_normal_speed = float(np.dot(bj.velocity - bi.velocity, normal))
            if rel_normal_speed < 0:
                v_i_pre, v_j_pre = bi.velocity.copy(), bj.velocity.copy()
                vn_i = float(np.dot(bi.velocity, normal))
                vn_j = float(np.dot(bj.velocity, normal))
                bi.velocity = bi.velocity + (vn_j - vn_i) * normal
                bj.velocity = bj.velocity + (vn_i - vn_j) * normal
                events.append(
                    BallCollision(i, j, normal, v_i_pre, v_j_pre, bi.velocity.copy(), bj.velocity.copy())
                )

    for b in balls:
        for axis in range(2):
            lo, hi = b.radius, 1.0 - b.radius
            if lo > hi:
                raise ValueError(f"ball radius {b.radius} does not fit the unit arena")
            for _ in range(4):
                p = b.position[axis]
                if p < lo:
                    b.position[axis] = 2.0 * lo - p
                    b.velocity[axis] = abs(b.velocity[axis])
                elif p > hi:
                    b.position[axis] = 2.0 * hi - p
                    b.velocity[axis] = -abs(b.velocity[axis])
                else:
                    break
            b.position[axis] = min(max(b.position[axis], lo), hi)

    return balls, events


def kinetic_energy(states: list[BallState]) -> float:
    """Total kinetic energy at unit mass per ball."""
    return sum(0.5 * float(np.dot(s.velocity, s.velocity)) for s in states)


def momentum(states: list[BallState]) -> np.ndarray:
    """Total momentum at unit mass per ball."""
    total = np.zeros(2)
    for s in states:
        total = total + s.velocity
    return total


def simulate(states: list[BallState], n_frames: int, dt: float) -> tuple[list[list[BallState]], list[BallCollision]]:
    """Trajectory of n_frames states (frame 0 is the initial state)."""
    frames = [[s.copy() for s in states]]
    collisions: list[BallCollision] = []
    current = states
    for _ in range(n_frames - 1):
        current, events = step_physics_events(current, dt)
        collisions.extend(events)
        frames.append([s.copy() for s in current])
    return frames, collisions
