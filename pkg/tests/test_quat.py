import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from deorbitsim import quat
from conftest import random_unit_quat

angles = st.floats(min_value=-179.0, max_value=179.0, allow_nan=False)
pitches = st.floats(min_value=-89.0, max_value=89.0, allow_nan=False)


def test_identity_rotation_leaves_vectors():
    v = np.array([0.3, -0.7, 0.64])
    assert np.allclose(quat.rotate(quat.IDENTITY, v), v)


def test_frame_rotation_transforms_coordinates():
    # Frame rotated +90 deg about Z: a vector on old X reads as -Y.
    q = quat.frame_rotation(np.array([0.0, 0.0, 1.0]), math.pi / 2)
    out = quat.rotate(q, np.array([1.0, 0.0, 0.0]))
    assert np.allclose(out, [0.0, -1.0, 0.0], atol=1e-12)


def test_mul_associative(rng):
    a, b, c = (random_unit_quat(rng) for _ in range(3))
    left = quat.mul(quat.mul(a, b), c)
    right = quat.mul(a, quat.mul(b, c))
    assert np.allclose(left, right, atol=1e-12)


def test_conj_inverts_rotation(rng):
    q = random_unit_quat(rng)
    v = rng.normal(size=3)
    assert np.allclose(quat.rotate(quat.conj(q), quat.rotate(q, v)), v, atol=1e-10)


def test_dcm_matches_rotate(rng):
    for _ in range(50):
        q = random_unit_quat(rng)
        v = rng.normal(size=3)
        assert np.allclose(quat.to_dcm(q) @ v, quat.rotate(q, v), atol=1e-12)


def test_dcm_round_trip(rng):
    for _ in range(200):
        q = random_unit_quat(rng)
        q2 = quat.from_dcm(quat.to_dcm(q))
        assert min(np.linalg.norm(q2 - q), np.linalg.norm(q2 + q)) < 1e-9


@given(yaw=angles, pitch=pitches, roll=angles)
def test_euler_compose_decompose(yaw, pitch, roll):
    q = quat.euler321_to_quat(yaw, pitch, roll)
    y2, p2, r2 = quat.quat_to_euler321(q)
    assert abs(y2 - yaw) < 1e-9
    assert abs(p2 - pitch) < 1e-9
    assert abs(r2 - roll) < 1e-9


def test_decompose_recompose_on_random_quats(rng):
    for _ in range(300):
        q = random_unit_quat(rng)
        y, p, r = quat.quat_to_euler321(q)
        q2 = quat.euler321_to_quat(y, p, r)
        assert min(np.linalg.norm(q2 - q), np.linalg.norm(q2 + q)) < 1e-9


def test_gimbal_lock_convention():
    # At pitch +/-90 roll is reported as 0 and yaw absorbs the remainder.
    q = quat.euler321_to_quat(30.0, 90.0, 20.0)
    y, p, r = quat.quat_to_euler321(q)
    assert r == 0.0
    assert p == 90.0
    q2 = quat.euler321_to_quat(y, p, r)
    assert min(np.linalg.norm(q2 - q), np.linalg.norm(q2 + q)) < 1e-9

    q = quat.euler321_to_quat(30.0, -90.0, 20.0)
    y, p, r = quat.quat_to_euler321(q)
    assert r == 0.0
    assert p == -90.0
    q2 = quat.euler321_to_quat(y, p, r)
    assert min(np.linalg.norm(q2 - q), np.linalg.norm(q2 + q)) < 1e-9


def test_angle_between():
    x = np.array([1.0, 0.0, 0.0])
    y = np.array([0.0, 1.0, 0.0])
    assert quat.angle_between(x, y) == pytest.approx(90.0)
    assert quat.angle_between(x, -x) == pytest.approx(180.0)
    assert quat.angle_between(x, x) == pytest.approx(0.0)
    with pytest.raises(ValueError):
        quat.angle_between(x, np.zeros(3))


def test_normalize_rejects_zero():
    with pytest.raises(ValueError):
        quat.normalize(np.zeros(4))
