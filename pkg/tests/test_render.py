import numpy as np
import pytest

from conceptnp.data import BallState, render_frame


def ball(pos, radius, color):
    return BallState(np.array(pos, dtype=float), np.zeros(2), radius, np.array(color, dtype=float))


def reference_rasterize(states, resolution, shape="disc"):
    """Per-pixel scalar loop, independent of the vectorized implementation."""
    h, w = resolution
    img = np.zeros((3, h, w), dtype=np.float32)
    for row in range(h):
        for col in range(w):
            cx = (col + 0.5) / w
            cy = (row + 0.5) / h
            for b in states:  # later balls overwrite earlier ones
                dx, dy = cx - b.position[0], cy - b.position[1]
                if shape == "disc":
                    hit = dx * dx + dy * dy <= b.radius * b.radius
                else:
                    hit = abs(dx) <= b.radius and abs(dy) <= b.radius
                if hit:
                    img[:, row, col] = b.color
    return img


def test_zero_balls_gives_black_image():
    img = render_frame([], (16, 16))
    assert img.shape == (3, 16, 16)
    assert np.all(img == 0.0)


def test_centered_ball_colors_center_not_corner():
    img = render_frame([ball([0.5, 0.5], 0.2, [0.0, 1.0, 0.0])], (17, 17))
    np.testing.assert_array_equal(img[:, 8, 8], [0.0, 1.0, 0.0])
    np.testing.assert_array_equal(img[:, 0, 0], [0.0, 0.0, 0.0])


@pytest.mark.parametrize("shape", ["disc", "square"])
def test_overlapping_balls_match_reference_loop(shape):
    rng = np.random.default_rng(5)
    for _ in range(10):
        states = [
            ball(rng.uniform(0.2, 0.8, size=2), rng.uniform(0.08, 0.2), rng.uniform(0, 1, size=3))
            for _ in range(3)
        ]
        fast = render_frame(states, (24, 24), shape)
        slow = reference_rasterize(states, (24, 24), shape)
        np.testing.assert_array_equal(fast, slow)


def test_rejects_tiny_resolution():
    with pytest.raises(ValueError):
        render_frame([], (4, 4))
