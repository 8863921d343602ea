import numpy as np
import pytest

from conceptnp.data import BallState, kinetic_energy, momentum, simulate, step_physics
from conceptnp.data.physics import step_physics_events


def ball(pos, vel, radius=0.1, color=(1.0, 0.0, 0.0)):
    return BallState(np.array(pos, dtype=float), np.array(vel, dtype=float), radius, np.array(color))


def elastic_collision_oracle(v1, v2, normal):
    """Solve the equal-mass elastic collision equations directly.

    Momentum: v1' + v2' = v1 + v2. Energy: |v1'|^2 + |v2'|^2 = |v1|^2 + |v2|^2.
    Tangential components unchanged. The normal components (a, b) map to the
    non-trivial root of the resulting quadratic, which is the swap (b, a).
    """
    normal = np.asarray(normal, dtype=float)
    tangent = np.array([-normal[1], normal[0]])
    a, b = np.dot(v1, normal), np.dot(v2, normal)
    t1, t2 = np.dot(v1, tangent), np.dot(v2, tangent)
    # Quadratic for a': 2a'^2 - 2(a+b)a' + 2ab = 0 -> roots a and b; collision takes b.
    roots = np.roots([2.0, -2.0 * (a + b), 2.0 * a * b])
    nontrivial = roots[np.argmax(np.abs(roots - a))]
    v1_post = float(np.real(nontrivial)) * normal + t1 * tangent
    v2_post = (a + b - float(np.real(nontrivial))) * normal + t2 * tangent
    return v1_post, v2_post


def test_wall_reflection_reflects_position_and_velocity():
    b = ball([0.95, 0.5], [0.2, 0.0])
    (out,) = step_physics([b], dt=1.0)
    # advance to x=1.15, reflect about the x=0.9 plane: 1.8 - 1.15 = 0.65
    assert out.velocity[0] == pytest.approx(-0.2)
    assert out.velocity[1] == 0.0
    assert out.position[0] == pytest.approx(0.65)


def test_head_on_equal_balls_swap_velocities():
    b1 = ball([0.45, 0.5], [0.05, 0.0])
    b2 = ball([0.63, 0.5], [-0.05, 0.0])
    out, events = step_physics_events([b1, b2], dt=1.0)
    assert len(events) == 1
    assert out[0].velocity[0] == pytest.approx(-0.05)
    assert out[1].velocity[0] == pytest.approx(0.05)


def test_off_center_collision_matches_conservation_oracle():
    rng = np.random.default_rng(7)
    for _ in range(50):
        p1 = rng.uniform(0.3, 0.7, size=2)
        offset_angle = rng.uniform(0, 2 * np.pi)
        p2 = p1 + 0.16 * np.array([np.cos(offset_angle), np.sin(offset_angle)])
        v1 = rng.uniform(-0.05, 0.05, size=2)
        v2 = rng.uniform(-0.05, 0.05, size=2)
        b1, b2 = ball(p1, v1, radius=0.1), ball(p2, v2, radius=0.1)
        out, events = step_physics_events([b1, b2], dt=1.0)
        if not events:
            continue
        ev = events[0]
        v1_oracle, v2_oracle = elastic_collision_oracle(ev.v_i_pre, ev.v_j_pre, ev.normal)
        np.testing.assert_allclose(ev.v_i_post, v1_oracle, rtol=1e-9, atol=1e-12)
        np.testing.assert_allclose(ev.v_j_post, v2_oracle, rtol=1e-9, atol=1e-12)


def test_collisions_conserve_energy_and_momentum():
    rng = np.random.default_rng(3)
    states = [
        ball(rng.uniform(0.2, 0.45, size=2), rng.uniform(-0.06, 0.06, size=2), radius=0.1),
        ball(rng.uniform(0.55, 0.8, size=2), rng.uniform(-0.06, 0.06, size=2), radius=0.1),
    ]
    frames, collisions = simulate(states, n_frames=500, dt=1.0)
    assert collisions, "expected at least one ball-ball collision in 500 frames"
    for ev in collisions:
        ke_pre = 0.5 * (np.dot(ev.v_i_pre, ev.v_i_pre) + np.dot(ev.v_j_pre, ev.v_j_pre))
        ke_post = 0.5 * (np.dot(ev.v_i_post, ev.v_i_post) + np.dot(ev.v_j_post, ev.v_j_post))
        assert abs(ke_post - ke_pre) <= 1e-9 * max(ke_pre, 1e-30)
        p_pre = ev.v_i_pre + ev.v_j_pre
        p_post = ev.v_i_post + ev.v_j_post
        np.testing.assert_allclose(p_post, p_pre, rtol=1e-9, atol=1e-15)
    # Walls preserve kinetic energy too, so total KE is constant over the run.
    ke0 = kinetic_energy(frames[0])
    for frame in frames:
        assert kinetic_energy(frame) == pytest.approx(ke0, rel=1e-9)


def test_balls_never_leave_arena():
    rng = np.random.default_rng(11)
    states = [
        ball(rng.uniform(0.3, 0.4, size=2), rng.uniform(-0.08, 0.08, size=2), radius=0.12),
        ball(rng.uniform(0.6, 0.7, size=2), rng.uniform(-0.08, 0.08, size=2), radius=0.08),
    ]
    frames, _ = simulate(states, n_frames=1000, dt=1.0)
    for frame in frames:
        for b in frame:
            assert b.position[0] >= b.radius - 1e-12
            assert b.position[0] <= 1 - b.radius + 1e-12
            assert b.position[1] >= b.radius - 1e-12
            assert b.position[1] <= 1 - b.radius + 1e-12


def test_momentum_constant_between_wall_hits():
    b1 = ball([0.4, 0.5], [0.02, 0.01])
    b2 = ball([0.6, 0.5], [-0.02, 0.01])
    before = momentum([b1, b2])
    out = step_physics([b1, b2], dt=1.0)
    np.testing.assert_allclose(momentum(out), before, rtol=1e-12)


def test_dt_must_be_positive():
    with pytest.raises(ValueError):
        step_physics([ball([0.5, 0.5], [0.0, 0.0])], dt=0.0)


def test_exact_overlap_tie_break_is_deterministic():
    b1 = ball([0.5, 0.5], [0.0, 0.0])
    b2 = ball([0.5, 0.5], [0.0, 0.0])
    out1, _ = step_physics_events([b1.copy(), b2.copy()], dt=1.0)
    out2, _ = step_physics_events([b1.copy(), b2.copy()], dt=1.0)
    assert out1[0].position[0] < out1[1].position[0]  # separated along +x
    np.testing.assert_array_equal(out1[0].position, out2[0].position)
