# coding=utf-8
#
# wigner-rotation - numerical checks of the Wigner rotation
#
# SPDX-License-Identifier: GPL-2.0-or-later
"""
Lorentz transformations in the vector (4x4) and spinor (2x2) representations.

Conventions:
 - natural units, c = 1; velocities are fractions of c,
 - metric eta = diag(+1, -1, -1, -1), coordinate order (t, x, y, z),
 - transforms act on column vectors, X' = L X,
 - a boost B(v) is active: it maps the rest 4-velocity (1, 0, 0, 0)
   to (gamma, gamma v),
 - rotations are active rotations of spatial vectors; `RotationAxisAngle`
   carries a non-negative angle and the axis carries the sense.

A composition of boosts is factored as t = W B(v3), rotation on the left.
"""
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

import numpy as np
import scipy.linalg
from scipy.spatial.transform import Rotation

from ..common.errors import ConsistencyError, DomainError

ETA = np.diag([1.0, -1.0, -1.0, -1.0])
_SIGNATURE = np.array([1.0, -1.0, -1.0, -1.0])

# identity, sigma_x, sigma_y, sigma_z
PAULI = np.array([
    [[1, 0], [0, 1]],
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=np.complex128)

ANGLE_ZERO = 1e-9  # below this the axis is reported as DEFAULT_AXIS
METRIC_TOLERANCE = 1e-12
ORTHOGONALITY_TOLERANCE = 1e-8
DETERMINANT_TOLERANCE = 1e-8
DEFAULT_AXIS = np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True)
class Velocity3:
    """
    A subluminal 3-velocity, a point of the open unit ball.
    """
    vx: float = 0.0
    vy: float = 0.0
    vz: float = 0.0

    def __post_init__(self):
        for name in ("vx", "vy", "vz"):
            object.__setattr__(self, name, float(getattr(self, name)))
        speed = self.speed
        if not speed < 1.0:
            raise DomainError(f"superluminal velocity: speed {speed!r} >= 1")

    @classmethod
    def of(cls, value: "VelocityLike") -> "Velocity3":
        if isinstance(value, Velocity3):
            return value
        components = np.asarray(value, dtype=np.float64).reshape(-1)
        if components.shape != (3,):
            raise DomainError(
                f"a velocity needs 3 components, got {components.size}")
        return cls(*components.tolist())

    @property
    def array(self) -> np.ndarray:
        return np.array([self.vx, self.vy, self.vz])

    @property
    def speed(self) -> float:
        return math.hypot(self.vx, self.vy, self.vz)

    @property
    def gamma(self) -> float:
        return 1.0 / math.sqrt(1.0 - self.speed ** 2)

    @property
    def direction(self) -> np.ndarray:
        """Unit vector along the velocity, zero for the rest velocity."""
        speed = self.speed
        if speed == 0.0:
            return np.zeros(3)
        return self.array / speed

    def __neg__(self) -> "Velocity3":
        return Velocity3(-self.vx, -self.vy, -self.vz)


VelocityLike = Union[Velocity3, Sequence[float], np.ndarray]


@dataclass(frozen=True, eq=False)
class LorentzTransform:
    """
    A 4x4 real matrix preserving the Minkowski metric.

    The matrix is stored read-only. Construction does not validate the
    group invariants; use `check` on transforms coming from outside.
    """
    m: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.m, dtype=np.float64)
        if matrix.shape != (4, 4):
            raise DomainError(
                f"a Lorentz transform is 4x4, got shape {matrix.shape}")
        matrix.setflags(write=False)
        object.__setattr__(self, "m", matrix)

    @classmethod
    def identity(cls) -> "LorentzTransform":
        return cls(np.eye(4))

    def __matmul__(self, other: "LorentzTransform") -> "LorentzTransform":
        return compose(self, other)

    def apply(self, four_vector) -> np.ndarray:
        return self.m @ np.asarray(four_vector, dtype=np.float64)

    @property
    def metric_defect(self) -> float:
        """max |m^T eta m - eta|"""
        return float(np.max(np.abs(self.m.T @ ETA @ self.m - ETA)))

    def is_proper_orthochronous(self, tol: float = METRIC_TOLERANCE) -> bool:
        """Time-preserving with positive determinant."""
        return bool(self.m[0, 0] >= 1.0 - tol and np.linalg.det(self.m) > 0)

    def allclose(self, other: "LorentzTransform", atol: float) -> bool:
        return bool(np.max(np.abs(self.m - other.m)) <= atol)


@dataclass(frozen=True)
class SpinorTransform:
    """
    A unit-determinant complex 2x2 matrix [[a, b], [c, d]].
    """
    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    @classmethod
    def from_matrix(cls, matrix) -> "SpinorTransform":
        matrix = np.asarray(matrix, dtype=np.complex128)
        if matrix.shape != (2, 2):
            raise DomainError(
                f"a spinor transform is 2x2, got shape {matrix.shape}")
        return cls(matrix[0, 0], matrix[0, 1], matrix[1, 0], matrix[1, 1])

    @classmethod
    def identity(cls) -> "SpinorTransform":
        return cls(1, 0, 0, 1)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]],
                        dtype=np.complex128)

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def is_unitary(self, tol: float = 1e-12) -> bool:
        product = self.matrix @ self.matrix.conj().T
        return bool(np.max(np.abs(product - np.eye(2))) <= tol)

    def is_hermitian_positive(self, tol: float = 1e-12) -> bool:
        matrix = self.matrix
        if np.max(np.abs(matrix - matrix.conj().T)) > tol:
            return False
        return bool(np.all(np.linalg.eigvalsh(matrix) > 0))

    def __matmul__(self, other: "SpinorTransform") -> "SpinorTransform":
        return SpinorTransform.from_matrix(self.matrix @ other.matrix)

    def __neg__(self) -> "SpinorTransform":
        return SpinorTransform(-self.a, -self.b, -self.c, -self.d)


@dataclass(frozen=True, eq=False)
class RotationAxisAngle:
    """
    Active rotation by `angle` radians about the unit vector `axis`.
    """
    axis: np.ndarray
    angle: float

    def __post_init__(self):
        axis = np.array(self.axis, dtype=np.float64).reshape(3)
        angle = float(self.angle)
        if abs(angle) > ANGLE_ZERO:
            norm = np.linalg.norm(axis)
            if abs(norm - 1.0) > 1e-9:
                raise DomainError(
                    f"rotation axis must be a unit vector, norm is {norm!r}")
            axis = axis / norm
        axis.setflags(write=False)
        object.__setattr__(self, "axis", axis)
        object.__setattr__(self, "angle", angle)

    @classmethod
    def identity(cls) -> "RotationAxisAngle":
        return cls(DEFAULT_AXIS, 0.0)

    @classmethod
    def from_matrix(cls, rotation: np.ndarray) -> "RotationAxisAngle":
        """
        Axis-angle of an orthogonal 3x3 matrix, angle in [0, pi].
        """
        rotvec = Rotation.from_matrix(rotation).as_rotvec()
        angle = float(np.linalg.norm(rotvec))
        if angle < ANGLE_ZERO:
            # the angle is kept, only the axis is a convention here
            return cls(DEFAULT_AXIS, angle)
        return cls(rotvec / angle, angle)

    @property
    def degrees(self) -> float:
        return math.degrees(self.angle)

    @property
    def rotvec(self) -> np.ndarray:
        return self.axis * self.angle

    def matrix(self) -> np.ndarray:
        return Rotation.from_rotvec(self.rotvec).as_matrix()

    def is_close(self, other: "RotationAxisAngle", atol: float) -> bool:
        return bool(np.max(np.abs(self.matrix() - other.matrix())) <= atol)


class BoostRotation(NamedTuple):
    boost: Velocity3
    rotation: RotationAxisAngle


def gamma_minus_one(speed: float) -> float:
    """
    gamma - 1 without cancellation, as beta^2 gamma^2 / (gamma + 1).
    """
    speed = float(speed)
    if not 0.0 <= speed < 1.0:
        raise DomainError(f"speed must lie in [0, 1), got {speed!r}")
    beta2 = speed * speed
    gamma = 1.0 / math.sqrt(1.0 - beta2)
    return beta2 * gamma * gamma / (gamma + 1.0)


def rapidity(v: VelocityLike) -> float:
    return math.atanh(Velocity3.of(v).speed)


def boost_matrix(u: np.ndarray) -> np.ndarray:
    """
    Raw pure-boost matrix for a 3-vector of speed < 1 (unchecked).
    """
    speed2 = float(u @ u)
    matrix = np.eye(4)
    if speed2 == 0.0:
        return matrix
    gamma = 1.0 / math.sqrt(1.0 - speed2)
    matrix[0, 0] = gamma
    matrix[0, 1:] = gamma * u
    matrix[1:, 0] = gamma * u
    # (gamma - 1) / beta^2 == gamma^2 / (gamma + 1)
    matrix[1:, 1:] += (gamma * gamma / (gamma + 1.0)) * np.outer(u, u)
    return matrix


def inverse_matrix(matrix: np.ndarray) -> np.ndarray:
    """eta m^T eta, the inverse of any Lorentz matrix."""
    return _SIGNATURE[:, None] * matrix.T * _SIGNATURE[None, :]


def embed_rotation(rotation: np.ndarray) -> np.ndarray:
    matrix = np.eye(4)
    matrix[1:, 1:] = rotation
    return matrix


def boost_from_velocity(v: VelocityLike) -> LorentzTransform:
    return LorentzTransform(boost_matrix(Velocity3.of(v).array))


def spinor_boost_from_velocity(v: VelocityLike) -> SpinorTransform:
    """
    exp(rho v.sigma / 2) with rho the rapidity.
    """
    velocity = Velocity3.of(v)
    speed = velocity.speed
    if speed == 0.0:
        return SpinorTransform.identity()
    half = 0.5 * math.atanh(speed)
    n_sigma = np.tensordot(velocity.direction, PAULI[1:], axes=1)
    return SpinorTransform.from_matrix(
        math.cosh(half) * PAULI[0] + math.sinh(half) * n_sigma)


def rotation_matrix(rotation: RotationAxisAngle) -> LorentzTransform:
    return LorentzTransform(embed_rotation(rotation.matrix()))


def compose(a: LorentzTransform, b: LorentzTransform) -> LorentzTransform:
    return LorentzTransform(a.m @ b.m)


def inverse(t: LorentzTransform) -> LorentzTransform:
    return LorentzTransform(inverse_matrix(t.m))


def _split(matrix: np.ndarray):
    # the time row of W B(v3) is the time row of B(v3)
    v3 = matrix[0, 1:] / matrix[0, 0]
    return v3, matrix @ boost_matrix(-v3)


def decompose_boost_rotation(t: LorentzTransform) -> BoostRotation:
    """
    Factor a proper orthochronous transform as t = W B(v3).
    """
    matrix = t.m
    if not t.is_proper_orthochronous():
        raise DomainError("transform is not proper orthochronous")
    try:
        v3, w = _split(matrix)
        boost = Velocity3.of(v3)
    except DomainError as err:
        raise ConsistencyError("input is not a Lorentz transform") from err

    block = w[1:, 1:]
    defect = max(
        float(np.max(np.abs(block.T @ block - np.eye(3)))),
        float(np.max(np.abs(w[0, 1:]))),
        float(np.max(np.abs(w[1:, 0]))),
        abs(w[0, 0] - 1.0),
    )
    if defect > ORTHOGONALITY_TOLERANCE:
        raise ConsistencyError("input is not a Lorentz transform")
    return BoostRotation(boost, RotationAxisAngle.from_matrix(block))


def reproject_matrix(matrix: np.ndarray):
    """
    Pull a drifted matrix back onto the Lorentz group.

    The rotation block of its W B(v3) factoring is replaced by the nearest
    orthogonal matrix and the product rebuilt. Returns the new matrix and the
    largest entry change.
    """
    v3, w = _split(matrix)
    orthogonal, _ = scipy.linalg.polar(w[1:, 1:])
    rebuilt = embed_rotation(orthogonal) @ boost_matrix(v3)
    return rebuilt, float(np.max(np.abs(rebuilt - matrix)))


def reproject(t: LorentzTransform) -> LorentzTransform:
    return LorentzTransform(reproject_matrix(t.m)[0])


def wigner_angle_two_boosts(v1: VelocityLike,
                            v2: VelocityLike) -> RotationAxisAngle:
    """
    Rotation part of B(v2) B(v1).

    The axis is parallel to v2 x v1; as an active rotation it points along
    v1 x v2 for a positive angle.
    """
    composed = compose(boost_from_velocity(v2), boost_from_velocity(v1))
    return decompose_boost_rotation(composed).rotation


def wigner_angle_orthogonal(beta1: float, beta2: float) -> float:
    """
    Closed form for orthogonal boosts: tan w = g1 g2 b1 b2 / (g1 + g2).
    """
    gamma1 = Velocity3(beta1).gamma
    gamma2 = Velocity3(beta2).gamma
    return math.atan2(gamma1 * gamma2 * beta1 * beta2, gamma1 + gamma2)


def signed_angle_about(rotation: RotationAxisAngle, reference) -> float:
    """
    Angle of the rotation, signed by the orientation of its axis relative to
    a fixed reference direction.
    """
    if rotation.angle == 0.0:
        return 0.0
    projection = float(np.dot(rotation.axis, reference))
    return math.copysign(rotation.angle, projection)


def einstein_add(u: VelocityLike, v: VelocityLike) -> Velocity3:
    """
    u (+) v: velocity of a body moving at v in a frame that moves at u.
    """
    u = Velocity3.of(u)
    v = Velocity3.of(v)
    ua, va = u.array, v.array
    dot = float(ua @ va)
    gamma_u = u.gamma
    numerator = (ua + va / gamma_u
                 + (gamma_u / (1.0 + gamma_u)) * dot * ua)
    return Velocity3.of(numerator / (1.0 + dot))


def spinor_to_vector(s: SpinorTransform) -> LorentzTransform:
    """
    4x4 image of X -> s X s^dagger with X = t I + x sx + y sy + z sz.
    """
    if abs(s.det - 1.0) > DETERMINANT_TOLERANCE:
        raise DomainError(f"spinor transform has det {s.det!r}, not 1")
    matrix = s.matrix
    image = np.einsum("aij,jk,bkl,li->ab",
                      PAULI, matrix, PAULI, matrix.conj().T)
    return LorentzTransform(0.5 * image.real)
