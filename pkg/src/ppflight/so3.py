"""Three-dimensional vector/rotation algebra on plain float tuples.

Vectors are ``(x, y, z)`` tuples, matrices are row-major 9-tuples
``(m00, m01, m02, m10, ..., m22)``.  Everything here is allocation-light on
purpose: these helpers sit inside the 1 kHz control/integration loop, where
numpy's per-call overhead on 3-element arrays dominates the actual
arithmetic.  Use :func:`to_array` / :func:`from_array` at module boundaries
when numpy interop is wanted.

Attitude-error conventions used by the attitude controller:

* rotation error ``Rt = R_d^T R`` (desired to actual),
* error quaternion ``q0 = sqrt(1 + tr(Rt)) / 2``,
  ``qv = vee(Rt - Rt^T) / (4 q0)`` with the scalar-positive branch,
* ``Q = q0 * I + hat(qv)`` whose determinant equals ``q0`` for unit
  quaternions, so it stays invertible away from 180 deg errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidParameter, NearSingularAttitude, NonSkewInput

Vec3 = tuple[float, float, float]
Mat3 = tuple[float, float, float, float, float, float, float, float, float]

ZERO3: Vec3 = (0.0, 0.0, 0.0)
IDENTITY3: Mat3 = (1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0)


def vec3(x: float, y: float, z: float) -> Vec3:
    return (float(x), float(y), float(z))


def vadd(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def vsub(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def vscale(a: Vec3, s: float) -> Vec3:
    return (a[0] * s, a[1] * s, a[2] * s)


def vmul(a: Vec3, b: Vec3) -> Vec3:
    """Componentwise product; used for diagonal-matrix action on a vector."""
    return (a[0] * b[0], a[1] * b[1], a[2] * b[2])


def vdot(a: Vec3, b: Vec3) -> float:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def vcross(a: Vec3, b: Vec3) -> Vec3:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def vnorm(a: Vec3) -> float:
    return math.sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2])


def vmax_abs(a: Vec3) -> float:
    return max(abs(a[0]), abs(a[1]), abs(a[2]))


def vis_finite(a: Vec3) -> bool:
    return math.isfinite(a[0]) and math.isfinite(a[1]) and math.isfinite(a[2])


def mat3(rows: Iterable[Iterable[float]]) -> Mat3:
    flat = tuple(float(x) for row in rows for x in row)
    if len(flat) != 9:
        raise InvalidParameter("Mat3 needs exactly 9 entries")
    return flat  # type: ignore[return-value]


def diag3(d: Vec3) -> Mat3:
    return (d[0], 0.0, 0.0, 0.0, d[1], 0.0, 0.0, 0.0, d[2])


def mat_t(m: Mat3) -> Mat3:
    return (m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8])


def mat_vec(m: Mat3, v: Vec3) -> Vec3:
    return (
        m[0] * v[0] + m[1] * v[1] + m[2] * v[2],
        m[3] * v[0] + m[4] * v[1] + m[5] * v[2],
        m[6] * v[0] + m[7] * v[1] + m[8] * v[2],
    )


def mat_mul(a: Mat3, b: Mat3) -> Mat3:
    return (
        a[0] * b[0] + a[1] * b[3] + a[2] * b[6],
        a[0] * b[1] + a[1] * b[4] + a[2] * b[7],
        a[0] * b[2] + a[1] * b[5] + a[2] * b[8],
        a[3] * b[0] + a[4] * b[3] + a[5] * b[6],
        a[3] * b[1] + a[4] * b[4] + a[5] * b[7],
        a[3] * b[2] + a[4] * b[5] + a[5] * b[8],
        a[6] * b[0] + a[7] * b[3] + a[8] * b[6],
        a[6] * b[1] + a[7] * b[4] + a[8] * b[7],
        a[6] * b[2] + a[7] * b[5] + a[8] * b[8],
    )


def mat_add(a: Mat3, b: Mat3) -> Mat3:
    return tuple(x + y for x, y in zip(a, b))  # type: ignore[return-value]


def mat_sub(a: Mat3, b: Mat3) -> Mat3:
    return tuple(x - y for x, y in zip(a, b))  # type: ignore[return-value]


def mat_scale(a: Mat3, s: float) -> Mat3:
    return tuple(x * s for x in a)  # type: ignore[return-value]


def trace(m: Mat3) -> float:
    return m[0] + m[4] + m[8]


def mat_is_finite(m: Mat3) -> bool:
    return all(math.isfinite(x) for x in m)


def sym_inverse(m: Mat3) -> Mat3:
    """Inverse of a symmetric 3x3 matrix via the adjugate."""
    a, b, c = m[0], m[1], m[2]
    d, e = m[4], m[5]
    f = m[8]
    co00 = d * f - e * e
    co01 = c * e - b * f
    co02 = b * e - c * d
    det = a * co00 + b * co01 + c * co02
    if det == 0.0 or not math.isfinite(det):
        raise InvalidParameter("matrix is singular")
    co11 = a * f - c * c
    co12 = b * c - a * e
    co22 = a * d - b * b
    s = 1.0 / det
    return (
        co00 * s, co01 * s, co02 * s,
        co01 * s, co11 * s, co12 * s,
        co02 * s, co12 * s, co22 * s,
    )


def to_array(t: Sequence[float]):
    """Vec3/Mat3 to numpy (3,) or (3, 3). Import deferred: hot paths never call this."""
    import numpy as np

    arr = np.asarray(t, dtype=float)
    return arr.reshape(3, 3) if arr.size == 9 else arr


def from_array(a) -> tuple[float, ...]:
    flat = [float(x) for x in a.reshape(-1)] if hasattr(a, "reshape") else [float(x) for x in a]
    return tuple(flat)


# ---------------------------------------------------------------------------
# hat / vee
# ---------------------------------------------------------------------------

def hat(v: Vec3) -> Mat3:
    """Skew-symmetric matrix [v]x with hat(v) @ w == v x w."""
    x, y, z = v
    return (0.0, -z, y, z, 0.0, -x, -y, x, 0.0)


def vee(m: Mat3, tol: float = 1e-9) -> Vec3:
    """Inverse of :func:`hat` on skew-symmetric matrices.

    Raises :class:`NonSkewInput` when the symmetry residual ``max|m + m^T|``
    exceeds ``tol``.  The returned components average the two off-diagonal
    entries, which is exact for genuinely skew input.
    """
    resid = max(
        abs(m[0] + m[0]), abs(m[4] + m[4]), abs(m[8] + m[8]),
        abs(m[1] + m[3]), abs(m[2] + m[6]), abs(m[5] + m[7]),
    )
    if resid > tol:
        raise NonSkewInput(f"symmetry residual {resid:.3e} exceeds {tol:.1e}")
    return (
        0.5 * (m[7] - m[5]),
        0.5 * (m[2] - m[6]),
        0.5 * (m[3] - m[1]),
    )


def skew_part(m: Mat3) -> Mat3:
    """(m - m^T) / 2, exactly skew-symmetric in floating point."""
    return (
        0.0, 0.5 * (m[1] - m[3]), 0.5 * (m[2] - m[6]),
        0.5 * (m[3] - m[1]), 0.0, 0.5 * (m[5] - m[7]),
        0.5 * (m[6] - m[2]), 0.5 * (m[7] - m[5]), 0.0,
    )


# ---------------------------------------------------------------------------
# Rotations
# ---------------------------------------------------------------------------

def orthonormality_error(r: Mat3) -> float:
    """max-abs entry of R^T R - I."""
    err = 0.0
    for i in range(3):
        for j in range(3):
            s = r[i] * r[j] + r[3 + i] * r[3 + j] + r[6 + i] * r[6 + j]
            if i == j:
                s -= 1.0
            err = max(err, abs(s))
    return err


def polar_orthonormalize_step(r: Mat3) -> Mat3:
    """One Newton step R (3 I - R^T R) / 2 toward the nearest rotation.

    Converges quadratically; a single step per integrator tick keeps the
    orthogonality defect at rounding level because the per-step drift is tiny.
    """
    m00 = r[0] * r[0] + r[3] * r[3] + r[6] * r[6]
    m01 = r[0] * r[1] + r[3] * r[4] + r[6] * r[7]
    m02 = r[0] * r[2] + r[3] * r[5] + r[6] * r[8]
    m11 = r[1] * r[1] + r[4] * r[4] + r[7] * r[7]
    m12 = r[1] * r[2] + r[4] * r[5] + r[7] * r[8]
    m22 = r[2] * r[2] + r[5] * r[5] + r[8] * r[8]
    a00 = 1.5 - 0.5 * m00
    a01 = -0.5 * m01
    a02 = -0.5 * m02
    a11 = 1.5 - 0.5 * m11
    a12 = -0.5 * m12
    a22 = 1.5 - 0.5 * m22
    return (
        r[0] * a00 + r[1] * a01 + r[2] * a02,
        r[0] * a01 + r[1] * a11 + r[2] * a12,
        r[0] * a02 + r[1] * a12 + r[2] * a22,
        r[3] * a00 + r[4] * a01 + r[5] * a02,
        r[3] * a01 + r[4] * a11 + r[5] * a12,
        r[3] * a02 + r[4] * a12 + r[5] * a22,
        r[6] * a00 + r[7] * a01 + r[8] * a02,
        r[6] * a01 + r[7] * a11 + r[8] * a12,
        r[6] * a02 + r[7] * a12 + r[8] * a22,
    )


def orthonormalize(r: Mat3, tol: float = 1e-15, max_iter: int = 10) -> Mat3:
    """Iterate the polar Newton step until the defect drops below ``tol``."""
    out = r
    for _ in range(max_iter):
        if orthonormality_error(out) <= tol:
            break
        out = polar_orthonormalize_step(out)
    return out


def is_rotation(r: Mat3, tol: float = 1e-9) -> bool:
    if orthonormality_error(r) > tol:
        return False
    det = (
        r[0] * (r[4] * r[8] - r[5] * r[7])
        - r[1] * (r[3] * r[8] - r[5] * r[6])
        + r[2] * (r[3] * r[7] - r[4] * r[6])
    )
    return abs(det - 1.0) <= tol


def rotation_about(axis: Vec3, angle: float) -> Mat3:
    """Rodrigues formula for a rotation of ``angle`` about a unit ``axis``."""
    n = vnorm(axis)
    if n == 0.0:
        raise InvalidParameter("rotation axis must be nonzero")
    k = (axis[0] / n, axis[1] / n, axis[2] / n)
    s, c = math.sin(angle), math.cos(angle)
    kx = hat(k)
    kx2 = mat_mul(kx, kx)
    out = list(IDENTITY3)
    for i in range(9):
        out[i] += s * kx[i] + (1.0 - c) * kx2[i]
    return tuple(out)  # type: ignore[return-value]


def rotation_from_yaw(psi: float) -> Mat3:
    return rotation_about((0.0, 0.0, 1.0), psi)


# ---------------------------------------------------------------------------
# Error quaternion and the Q matrix
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ErrorQuaternion:
    """Unit quaternion (scalar-positive branch) of a rotation error matrix."""

    q0: float
    qv: Vec3

    def norm(self) -> float:
        return math.sqrt(self.q0 * self.q0 + vdot(self.qv, self.qv))


#: trace(Rt) must exceed -1 by this much; below it the error angle is within
#: ~2e-3 rad of 180 deg and the scalar part underflows usefulness.
NEAR_SINGULAR_TRACE_MARGIN = 1e-6


def error_quaternion(rot_err: Mat3) -> ErrorQuaternion:
    """Quaternion of a rotation-error matrix, scalar-positive branch.

    ``q0 = sqrt(1 + tr(Rt)) / 2`` and ``qv = vee(Rt - Rt^T) / (4 q0)``.
    Raises :class:`NearSingularAttitude` when ``tr(Rt) <= -1 + 1e-6``
    (error at or near 180 deg, where the scalar square root branches).
    """
    tr = trace(rot_err)
    if tr <= -1.0 + NEAR_SINGULAR_TRACE_MARGIN:
        raise NearSingularAttitude(f"trace {tr:.9f} too close to -1")
    q0 = 0.5 * math.sqrt(1.0 + tr)
    s = 0.25 / q0
    qv = (
        s * (rot_err[7] - rot_err[5]),
        s * (rot_err[2] - rot_err[6]),
        s * (rot_err[3] - rot_err[1]),
    )
    return ErrorQuaternion(q0, qv)


def q_matrix(q: ErrorQuaternion) -> Mat3:
    """Q = q0 I + hat(qv); maps body angular-velocity error to d(qv)/dt via 1/2 Q."""
    q0 = q.q0
    x, y, z = q.qv
    return (q0, -z, y, z, q0, -x, -y, x, q0)


def q_matrix_inverse(q: ErrorQuaternion, det_floor: float = 1e-6) -> Mat3:
    """Closed-form inverse of :func:`q_matrix`.

    For ``A = a I + hat(v)`` the adjugate identity gives
    ``A^-1 = (a^2 I - a hat(v) + v v^T) / (a (a^2 + |v|^2))``; with a unit
    quaternion the determinant reduces to ``q0``, guarded at ``det_floor``.
    """
    a = q.q0
    v = q.qv
    det = a * (a * a + vdot(v, v))
    if abs(det) < det_floor:
        raise NearSingularAttitude(f"det(Q) = {det:.3e} below {det_floor:.1e}")
    s = 1.0 / det
    a2 = a * a
    x, y, z = v
    return (
        (a2 + x * x) * s, (a * z + x * y) * s, (-a * y + x * z) * s,
        (-a * z + x * y) * s, (a2 + y * y) * s, (a * x + y * z) * s,
        (a * y + x * z) * s, (-a * x + y * z) * s, (a2 + z * z) * s,
    )


def rotation_to_quaternion(m: Mat3) -> ErrorQuaternion:
    """Quaternion of an arbitrary rotation matrix (max-pivot extraction).

    Unlike :func:`error_quaternion` this has no 180-deg restriction; it is
    meant for logging and test construction, not for the control path (which
    needs the guarded variant).  Scalar-positive branch.
    """
    tr = trace(m)
    if tr > 0.0:
        s = math.sqrt(1.0 + tr) * 2.0
        q0 = 0.25 * s
        qv = ((m[7] - m[5]) / s, (m[2] - m[6]) / s, (m[3] - m[1]) / s)
    elif m[0] >= m[4] and m[0] >= m[8]:
        s = math.sqrt(1.0 + m[0] - m[4] - m[8]) * 2.0
        q0 = (m[7] - m[5]) / s
        qv = (0.25 * s, (m[1] + m[3]) / s, (m[2] + m[6]) / s)
    elif m[4] >= m[8]:
        s = math.sqrt(1.0 + m[4] - m[0] - m[8]) * 2.0
        q0 = (m[2] - m[6]) / s
        qv = ((m[1] + m[3]) / s, 0.25 * s, (m[5] + m[7]) / s)
    else:
        s = math.sqrt(1.0 + m[8] - m[0] - m[4]) * 2.0
        q0 = (m[3] - m[1]) / s
        qv = ((m[2] + m[6]) / s, (m[5] + m[7]) / s, 0.25 * s)
    if q0 < 0.0:
        q0 = -q0
        qv = (-qv[0], -qv[1], -qv[2])
    return ErrorQuaternion(q0, qv)


def quaternion_to_rotation(q: ErrorQuaternion) -> Mat3:
    """Rotation matrix of a unit quaternion: (q0^2 - |qv|^2) I + 2 qv qv^T + 2 q0 hat(qv)."""
    a = q.q0
    x, y, z = q.qv
    d = a * a - (x * x + y * y + z * z)
    return (
        d + 2.0 * x * x, 2.0 * (x * y - a * z), 2.0 * (x * z + a * y),
        2.0 * (x * y + a * z), d + 2.0 * y * y, 2.0 * (y * z - a * x),
        2.0 * (x * z - a * y), 2.0 * (y * z + a * x), d + 2.0 * z * z,
    )
