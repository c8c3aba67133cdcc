import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ppflight import so3
from ppflight.errors import InvalidParameter, NearSingularAttitude, NonSkewInput

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)
vec3s = st.tuples(finite, finite, finite)


def test_hat_zero_is_zero_matrix():
    assert so3.hat((0.0, 0.0, 0.0)) == (0.0,) * 9


def test_hat_cross_product_component():
    # hat([1,0,0]) @ [0,1,0] = [0,0,1]
    assert so3.mat_vec(so3.hat((1.0, 0.0, 0.0)), (0.0, 1.0, 0.0)) == (0.0, 0.0, 1.0)


@given(vec3s, vec3s)
def test_hat_acts_as_cross_product(v, w):
    got = so3.mat_vec(so3.hat(v), w)
    want = np.cross(np.array(v), np.array(w))
    assert np.allclose(got, want, rtol=0, atol=1e-9)


def test_vee_hat_roundtrip_exact():
    v = (1.0, 2.0, 3.0)
    assert so3.vee(so3.hat(v)) == v
    assert so3.vee(so3.hat((3.0, -1.0, 2.0))) == (3.0, -1.0, 2.0)


@given(vec3s)
def test_vee_hat_roundtrip_randomized(v):
    got = so3.vee(so3.hat(v))
    assert max(abs(a - b) for a, b in zip(got, v)) <= 1e-12


def test_vee_zero_matrix():
    assert so3.vee((0.0,) * 9) == (0.0, 0.0, 0.0)


def test_vee_rejects_non_skew():
    with pytest.raises(NonSkewInput):
        so3.vee(so3.IDENTITY3)


def test_vee_of_rotation_antisymmetric_part():
    # Rodrigues: R - R^T = 2 sin(theta) [k]x for rotation theta about k
    r = so3.rotation_about((0.0, 0.0, 1.0), 0.1)
    m = so3.mat_sub(r, so3.mat_t(r))
    got = so3.vee(m)
    assert np.allclose(got, (0.0, 0.0, 2.0 * math.sin(0.1)), atol=1e-15)


def test_error_quaternion_identity():
    q = so3.error_quaternion(so3.IDENTITY3)
    assert q.q0 == 1.0
    assert q.qv == (0.0, 0.0, 0.0)


def test_error_quaternion_axis_angle():
    # rotation of 0.2 rad about x -> (cos 0.1, [sin 0.1, 0, 0])
    r = so3.rotation_about((1.0, 0.0, 0.0), 0.2)
    q = so3.error_quaternion(r)
    assert abs(q.q0 - math.cos(0.1)) < 1e-12
    assert abs(q.qv[0] - math.sin(0.1)) < 1e-12
    assert abs(q.qv[1]) < 1e-15 and abs(q.qv[2]) < 1e-15


def _quat_to_matrix_oracle(q0, qv):
    # independent reconstruction: R = I + 2 q0 [qv]x + 2 [qv]x^2
    k = np.array([[0.0, -qv[2], qv[1]], [qv[2], 0.0, -qv[0]], [-qv[1], qv[0], 0.0]])
    return np.eye(3) + 2.0 * q0 * k + 2.0 * (k @ k)


def test_error_quaternion_composes_back(rng):
    for _ in range(50):
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        angle = rng.uniform(-2.8, 2.8)
        r = so3.rotation_about(tuple(axis), angle)
        q = so3.error_quaternion(r)
        back = _quat_to_matrix_oracle(q.q0, q.qv)
        assert np.allclose(back, so3.to_array(r), atol=1e-9)


@given(st.floats(min_value=-3.0, max_value=3.0), vec3s)
def test_error_quaternion_unit_norm_scalar_positive(angle, axis):
    n = math.sqrt(sum(x * x for x in axis))
    if n < 1e-6 or abs(angle) > 3.0:
        return
    r = so3.rotation_about(axis, angle)
    q = so3.error_quaternion(r)
    assert abs(q.norm() - 1.0) <= 1e-9
    assert q.q0 > 0.0


def test_error_quaternion_near_singular_raises():
    r = so3.rotation_about((0.0, 1.0, 0.0), math.pi - 1e-9)
    with pytest.raises(NearSingularAttitude):
        so3.error_quaternion(r)


def test_q_matrix_identity():
    q = so3.ErrorQuaternion(1.0, (0.0, 0.0, 0.0))
    assert so3.q_matrix(q) == so3.IDENTITY3


def test_q_matrix_formula():
    q = so3.ErrorQuaternion(math.cos(0.1), (math.sin(0.1), 0.0, 0.0))
    got = so3.to_array(so3.q_matrix(q))
    want = math.cos(0.1) * np.eye(3) + so3.to_array(so3.hat((math.sin(0.1), 0.0, 0.0)))
    assert np.allclose(got, want, atol=0)


def test_q_matrix_determinant_positive(rng):
    # det(Q) = q0 for unit quaternions; positive whenever q0 > 0.1
    for _ in range(200):
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        angle = rng.uniform(-2.7, 2.7)
        q = so3.error_quaternion(so3.rotation_about(tuple(axis), angle))
        if q.q0 > 0.1:
            det = np.linalg.det(so3.to_array(so3.q_matrix(q)))
            assert det > 0.0
            assert abs(det - q.q0) < 1e-12


def test_q_matrix_norm_bound(rng):
    # ||Q|| <= |q0| + ||qv|| <= 2
    for _ in range(100):
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        q = so3.error_quaternion(so3.rotation_about(tuple(axis), rng.uniform(-3.0, 3.0)))
        opnorm = np.linalg.norm(so3.to_array(so3.q_matrix(q)), ord=2)
        bound = abs(q.q0) + math.sqrt(sum(x * x for x in q.qv))
        assert opnorm <= bound + 1e-12
        assert bound <= 2.0 + 1e-12


def test_q_matrix_inverse_closed_form(rng):
    for _ in range(100):
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        q = so3.error_quaternion(so3.rotation_about(tuple(axis), rng.uniform(-2.5, 2.5)))
        prod = so3.to_array(so3.mat_mul(so3.q_matrix(q), so3.q_matrix_inverse(q)))
        assert np.allclose(prod, np.eye(3), atol=1e-12)


def test_q_matrix_inverse_guards_small_determinant():
    q = so3.ErrorQuaternion(1e-8, (1.0, 0.0, 0.0))
    with pytest.raises(NearSingularAttitude):
        so3.q_matrix_inverse(q)


def test_orthonormalize_restores_rotation(rng):
    r = so3.rotation_about((0.3, -0.5, 0.8), 1.1)
    noisy = tuple(x + 1e-6 * rng.normal() for x in r)
    fixed = so3.orthonormalize(noisy)
    assert so3.orthonormality_error(fixed) < 1e-14
    assert so3.is_rotation(fixed, tol=1e-9)


def test_rotation_to_quaternion_handles_half_turn():
    r = so3.rotation_about((1.0, 0.0, 0.0), math.pi)
    q = so3.rotation_to_quaternion(r)
    assert abs(q.norm() - 1.0) < 1e-12
    back = _quat_to_matrix_oracle(q.q0, q.qv)
    assert np.allclose(back, so3.to_array(r), atol=1e-12)


def test_quaternion_to_rotation_matches_oracle(rng):
    for _ in range(50):
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        q = so3.error_quaternion(so3.rotation_about(tuple(axis), rng.uniform(-2.5, 2.5)))
        got = so3.to_array(so3.quaternion_to_rotation(q))
        assert np.allclose(got, _quat_to_matrix_oracle(q.q0, q.qv), atol=1e-12)


def test_rotation_about_rejects_zero_axis():
    with pytest.raises(InvalidParameter):
        so3.rotation_about((0.0, 0.0, 0.0), 1.0)
