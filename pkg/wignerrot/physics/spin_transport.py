# coding=utf-8
#
# wigner-rotation - numerical checks of the Wigner rotation
#
# SPDX-License-Identifier: GPL-2.0-or-later
"""
Spin-1/2 states under the accumulated Wigner rotation, and the detector.

Only the spin factor of |p> (x) |s> evolves, so the momentum is not stored.
Observable comparisons go through Bloch vectors; global phases never matter.
"""
import math
from dataclasses import dataclass

import numpy as np

from ..common.errors import DomainError
from .lorentz_core import PAULI, SpinorTransform

NORM_TOLERANCE = 1e-12
AXIS_TOLERANCE = 1e-9
UNITARITY_TOLERANCE = 1e-10


@dataclass(frozen=True)
class SpinState:
    """
    Normalized amplitudes in the sigma_z basis.
    """
    up_amp: complex
    down_amp: complex

    def __post_init__(self):
        object.__setattr__(self, "up_amp", complex(self.up_amp))
        object.__setattr__(self, "down_amp", complex(self.down_amp))
        norm2 = abs(self.up_amp) ** 2 + abs(self.down_amp) ** 2
        if abs(norm2 - 1.0) > NORM_TOLERANCE:
            raise DomainError(f"spin state is not normalized: |psi|^2 = "
                              f"{norm2!r}")

    @classmethod
    def normalized(cls, up_amp: complex, down_amp: complex) -> "SpinState":
        norm = math.sqrt(abs(up_amp) ** 2 + abs(down_amp) ** 2)
        if norm == 0.0:
            raise DomainError("the zero vector is not a spin state")
        return cls(up_amp / norm, down_amp / norm)

    @classmethod
    def up(cls) -> "SpinState":
        return cls(1.0, 0.0)

    @classmethod
    def down(cls) -> "SpinState":
        return cls(0.0, 1.0)

    @classmethod
    def along(cls, direction) -> "SpinState":
        """
        The pure state whose Bloch vector points along `direction`.
        """
        direction = np.asarray(direction, dtype=np.float64)
        norm = np.linalg.norm(direction)
        if norm == 0.0:
            raise DomainError("spin direction must be non-zero")
        x, y, z = direction / norm
        theta = math.acos(max(-1.0, min(1.0, z)))
        phi = math.atan2(y, x)
        return cls.normalized(math.cos(theta / 2),
                              complex(math.cos(phi), math.sin(phi))
                              * math.sin(theta / 2))

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.up_amp, self.down_amp], dtype=np.complex128)


@dataclass(frozen=True)
class BlochVector:
    sx: float
    sy: float
    sz: float

    @property
    def array(self) -> np.ndarray:
        return np.array([self.sx, self.sy, self.sz])

    @property
    def norm(self) -> float:
        return math.hypot(self.sx, self.sy, self.sz)


@dataclass(frozen=True)
class DetectorReading:
    """
    Simulated polarimeter counts for one run.
    """
    counts: int
    surviving: int
    aligned: int
    estimated_angle: float
    standard_error: float

    @property
    def estimated_degrees(self) -> float:
        return math.degrees(self.estimated_angle)


def rotation_operator(angle: float, axis) -> SpinorTransform:
    """
    U = exp(-i angle n.sigma / 2) = cos(angle/2) I - i sin(angle/2) n.sigma
    """
    axis = np.asarray(axis, dtype=np.float64).reshape(3)
    norm = np.linalg.norm(axis)
    if abs(norm - 1.0) > AXIS_TOLERANCE:
        raise DomainError(f"rotation axis must be a unit vector, "
                          f"norm is {norm!r}")
    n_sigma = np.tensordot(axis, PAULI[1:], axes=1)
    half = 0.5 * angle
    return SpinorTransform.from_matrix(
        math.cos(half) * PAULI[0] - 1j * math.sin(half) * n_sigma)


def apply_rotation(state: SpinState, u: SpinorTransform) -> SpinState:
    if not u.is_unitary(UNITARITY_TOLERANCE):
        raise DomainError("spin evolution operator is not unitary")
    up_amp, down_amp = u.matrix @ state.vector
    return SpinState.normalized(up_amp, down_amp)


def bloch_vector(state: SpinState) -> BlochVector:
    up_amp, down_amp = state.up_amp, state.down_amp
    coherence = up_amp.conjugate() * down_amp
    return BlochVector(
        sx=2.0 * coherence.real,
        sy=2.0 * coherence.imag,
        sz=abs(up_amp) ** 2 - abs(down_amp) ** 2,
    )


def measured_rotation_angle(initial: SpinState, final: SpinState) -> float:
    """
    Angle between the two spin directions, in [0, pi].
    """
    a = bloch_vector(initial).array
    b = bloch_vector(final).array
    # atan2 keeps full precision for tiny angles where acos does not
    return math.atan2(float(np.linalg.norm(np.cross(a, b))),
                      float(np.dot(a, b)))


def sample_detector(
        initial: SpinState,
        final: SpinState,
        counts: int,
        rng: np.random.Generator,
        survival: float = 1.0,
) -> DetectorReading:
    """
    Shot-noise model of the spin measurement.

    Of `counts` neutrons a binomial fraction `survival` reaches the
    detector; each is found aligned with the initial spin with probability
    cos^2(delta / 2). The angle is estimated from the aligned fraction; its
    standard error is 1 / sqrt(surviving) independently of delta.
    """
    if int(counts) != counts or counts < 1:
        raise DomainError(f"count budget must be a positive integer, "
                          f"got {counts!r}")
    if not 0.0 < survival <= 1.0:
        raise DomainError(f"survival fraction must lie in (0, 1], "
                          f"got {survival!r}")
    delta = measured_rotation_angle(initial, final)
    surviving = int(rng.binomial(int(counts), survival))
    if surviving == 0:
        return DetectorReading(int(counts), 0, 0, math.nan, math.inf)
    aligned = int(rng.binomial(surviving, math.cos(delta / 2.0) ** 2))
    estimated = 2.0 * math.acos(math.sqrt(aligned / surviving))
    return DetectorReading(
        counts=int(counts),
        surviving=surviving,
        aligned=aligned,
        estimated_angle=estimated,
        standard_error=1.0 / math.sqrt(surviving),
    )


def counts_for_precision(precision: float, survival: float = 1.0) -> int:
    """
    Count budget whose shot-noise standard error reaches `precision` radians.
    """
    if not precision > 0.0:
        raise DomainError(f"precision must be positive, got {precision!r}")
    if not 0.0 < survival <= 1.0:
        raise DomainError(f"survival fraction must lie in (0, 1], "
                          f"got {survival!r}")
    return math.ceil(1.0 / (precision * precision * survival))


def default_initial_spin() -> SpinState:
    """|+x>, a spin lying in the orbit plane."""
    return SpinState(1 / math.sqrt(2), 1 / math.sqrt(2))
