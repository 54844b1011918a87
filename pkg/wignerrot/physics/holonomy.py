# coding=utf-8
#
# wigner-rotation - numerical checks of the Wigner rotation
#
# SPDX-License-Identifier: GPL-2.0-or-later
"""
Wigner rotation accumulated around a circle in velocity space.

Two independent routes:
 - the area integral of the velocity-space curvature over the disk,
   closed form 2 pi (gamma - 1) per revolution,
 - a discrete transport: the circle is sampled at N points and the spin frame
   is carried from sample to sample by pure boosts expressed in the current
   frame, i.e. along the geodesic chords of the circle.

The discrete loop is a regular geodesic N-gon, whose holonomy is known in
closed form (`wigner_angle_polygon`); it approaches the circle value from
below with a relative deficit of about pi^2 gamma (gamma + 1) / (3 N^2).
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.integrate import simpson

from ..common.errors import DomainError, NumericalError
from ..common.progress import Progress
from .lorentz_core import (
    ANGLE_ZERO, DEFAULT_AXIS, LorentzTransform, RotationAxisAngle,
    boost_matrix, decompose_boost_rotation, gamma_minus_one, inverse_matrix,
    reproject_matrix,
)

CLOSURE_TOLERANCE = 1e-8
REPROJECT_EVERY = 1024
DEFAULT_QUADRATURE_POINTS = 10_000
MIN_QUADRATURE_POINTS = 8
MAX_TOTAL_STEPS = 10_000_000
DRIFT_WARNING = 1e-10
PROGRESS_EVERY = 1024

log = logging.getLogger('wigner-rotation.holonomy')


@dataclass(frozen=True)
class CircleLoop:
    speed: float
    turns: int = 1
    steps_per_turn: int = 1000

    def __post_init__(self):
        if not 0.0 < self.speed < 1.0:
            raise DomainError(
                f"loop speed must lie in (0, 1), got {self.speed!r}")
        if int(self.turns) != self.turns or self.turns < 1:
            raise DomainError(f"turns must be a positive integer, "
                              f"got {self.turns!r}")
        if int(self.steps_per_turn) != self.steps_per_turn \
                or self.steps_per_turn < 3:
            raise DomainError(f"steps per turn must be an integer >= 3, "
                              f"got {self.steps_per_turn!r}")
        if self.total_steps > MAX_TOTAL_STEPS:
            raise DomainError(f"{self.total_steps} steps requested, "
                              f"at most {MAX_TOTAL_STEPS} are supported")

    @property
    def total_steps(self) -> int:
        return int(self.turns) * int(self.steps_per_turn)


@dataclass(frozen=True, eq=False)
class HolonomyResult:
    loop: CircleLoop
    analytic_angle: float
    discrete_angle: float
    axis: np.ndarray
    residual_boost_speed: float
    metric_defect: float = 0.0

    @property
    def relative_error(self) -> float:
        return self.discrete_angle / self.analytic_angle - 1.0


@dataclass(frozen=True)
class QuadratureEstimate:
    value: float
    error: float
    points: int


def _check_speed(speed: float):
    if not 0.0 <= speed < 1.0:
        raise DomainError(f"speed must lie in [0, 1), got {speed!r}")


def velocity_area_element(u):
    """
    Radial density u / (1 - u^2)^(3/2) of the velocity-space area element.

    Works elementwise on arrays.
    """
    values = np.asarray(u, dtype=np.float64)
    if np.any(values < 0.0) or np.any(values >= 1.0) \
            or np.any(np.isnan(values)):
        raise DomainError("area element is defined on [0, 1) only")
    density = values / (1.0 - values * values) ** 1.5
    if density.ndim == 0:
        return float(density)
    return density


def wigner_angle_circle(speed: float) -> float:
    """
    Wigner angle of one revolution at constant speed: 2 pi (gamma - 1).
    """
    return 2.0 * math.pi * gamma_minus_one(speed)


def wigner_angle_polygon(speed: float, steps: int) -> float:
    """
    Holonomy of the regular geodesic polygon with `steps` vertices on the
    velocity circle of radius `speed`.

    Each of the N isosceles triangles around the centre has area
    2 [atan(gamma t) - atan(t)], t = tan(pi / N); the difference of
    arctangents is folded into one to avoid cancellation.
    """
    _check_speed(speed)
    if int(steps) != steps or steps < 3:
        raise DomainError(f"a polygon needs >= 3 vertices, got {steps!r}")
    g1 = gamma_minus_one(speed)
    t = math.tan(math.pi / steps)
    return 2.0 * steps * math.atan(g1 * t / (1.0 + (1.0 + g1) * t * t))


def holonomy_area_integral_estimate(
        speed: float,
        quadrature_points: int = DEFAULT_QUADRATURE_POINTS,
) -> QuadratureEstimate:
    """
    Integrate K dS over the disk of radius `speed`, K = 1.

    The angular integral is exact (2 pi); the radial one uses the composite
    Simpson rule, with the error estimated from the same samples at twice the
    spacing.
    """
    _check_speed(speed)
    if quadrature_points < MIN_QUADRATURE_POINTS:
        raise DomainError(f"at least {MIN_QUADRATURE_POINTS} quadrature "
                          f"points required, got {quadrature_points!r}")
    # both the fine and the coarse rule need an even number of intervals
    intervals = 4 * math.ceil(quadrature_points / 4)
    if speed == 0.0:
        return QuadratureEstimate(0.0, 0.0, intervals)

    nodes = np.linspace(0.0, speed, intervals + 1)
    density = velocity_area_element(nodes)
    fine = simpson(density, x=nodes)
    coarse = simpson(density[::2], x=nodes[::2])
    log.debug("area integral at speed %g with %d intervals: %.17g",
              speed, intervals, fine)
    return QuadratureEstimate(
        value=2.0 * math.pi * fine,
        error=2.0 * math.pi * abs(fine - coarse) / 15.0,
        points=intervals,
    )


def holonomy_area_integral(
        speed: float,
        quadrature_points: int = DEFAULT_QUADRATURE_POINTS) -> float:
    return holonomy_area_integral_estimate(speed, quadrature_points).value


def transport_loop(
        loop: CircleLoop,
        closure_tolerance: float = CLOSURE_TOLERANCE,
        reproject_every: int = REPROJECT_EVERY,
        observer: Optional[Callable[[int, float, float], None]] = None,
        progress: Optional[Progress] = None,
) -> HolonomyResult:
    """
    Carry a spin frame `turns` times around the velocity circle.

    L is the rest-to-lab transform, initially B(u_0). At every step the next
    4-velocity is expressed in the current frame, U~ = L^-1 U_{n+1}, and the
    frame is advanced by the pure boost to it, L <- L B(u~). Then
    L = B(u_n) R_n where R_n is the rotation accumulated so far; its angle
    about the orbit normal is tracked and unwrapped every step.

    :param loop: the orbit in velocity space
    :param closure_tolerance: largest acceptable residual boost speed of
                              B(u_0)^-1 L after the last step
    :param reproject_every: steps between projections of L back onto the
                            Lorentz group, 0 disables
    :param observer: called as observer(step, theta, accumulated_angle)
    :param progress: fed with the fraction of steps done
    :return: discrete and closed-form angles, axis and residual boost
    """
    speed = float(loop.speed)
    steps = int(loop.steps_per_turn)
    total = loop.total_steps
    gamma = 1.0 / math.sqrt(1.0 - speed * speed)
    signature = np.array([1.0, -1.0, -1.0, -1.0])

    def velocity(step: int) -> np.ndarray:
        # exact closure: the last step lands on u_0 bit for bit
        theta = 2.0 * math.pi * (step % steps) / steps
        return np.array([speed * math.cos(theta), speed * math.sin(theta), 0.])

    log.debug("transport: speed %g, %d turns, %d steps per turn",
              speed, loop.turns, steps)
    start = velocity(0)
    lab = boost_matrix(start)
    accumulated = 0.0
    last_angle = 0.0
    four_velocity = np.empty(4)

    for step in range(1, total + 1):
        u = velocity(step)
        four_velocity[0] = gamma
        four_velocity[1:] = gamma * u
        local = (lab.T @ (four_velocity * signature)) * signature
        lab = lab @ boost_matrix(local[1:] / local[0])

        if reproject_every and step % reproject_every == 0:
            lab, drift = reproject_matrix(lab)
            if drift > DRIFT_WARNING:
                log.warning("transport drifted by %.3g at step %d",
                            drift, step)

        spin_frame = boost_matrix(-u) @ lab
        angle = math.atan2(spin_frame[2, 1] - spin_frame[1, 2],
                           spin_frame[1, 1] + spin_frame[2, 2])
        delta = angle - last_angle
        if delta > math.pi:
            delta -= 2.0 * math.pi
        elif delta <= -math.pi:
            delta += 2.0 * math.pi
        accumulated += delta
        last_angle = angle

        if observer is not None:
            observer(step, 2.0 * math.pi * step / steps, abs(accumulated))
        if progress is not None and (step % PROGRESS_EVERY == 0
                                     or step == total):
            progress.notify_steps(step, total)

    closing = LorentzTransform(inverse_matrix(boost_matrix(start)) @ lab)
    residual_speed = float(np.linalg.norm(closing.m[0, 1:]) / closing.m[0, 0])
    if residual_speed > closure_tolerance:
        raise NumericalError(
            f"loop did not close: residual boost speed {residual_speed:.3g} "
            f"exceeds {closure_tolerance:.3g}")

    rotation = decompose_boost_rotation(closing).rotation
    axis = rotation.axis if rotation.angle > ANGLE_ZERO else DEFAULT_AXIS
    if axis[2] * accumulated < 0:
        axis = -axis

    result = HolonomyResult(
        loop=loop,
        analytic_angle=loop.turns * wigner_angle_circle(speed),
        discrete_angle=abs(accumulated),
        axis=np.array(axis),
        residual_boost_speed=residual_speed,
        metric_defect=closing.metric_defect,
    )
    log.debug("transport done: discrete %.17g, analytic %.17g",
              result.discrete_angle, result.analytic_angle)
    return result


def estimate_convergence_order(speed: float,
                               steps_sequence: Sequence[int]) -> float:
    """
    Least-squares slope of log|relative error| against log N.
    """
    if len(steps_sequence) < 2:
        raise DomainError("at least two step counts are needed")
    errors = []
    for steps in steps_sequence:
        result = transport_loop(CircleLoop(speed, 1, steps))
        errors.append(abs(result.relative_error))
    slope, _ = np.polyfit(np.log(steps_sequence), np.log(errors), 1)
    return float(-slope)


def richardson_extrapolate(coarse: float, fine: float,
                           ratio: float, order: float) -> float:
    """
    Remove the leading error term of two runs whose step sizes differ by
    `ratio`.
    """
    return fine + (fine - coarse) / (ratio ** order - 1.0)
