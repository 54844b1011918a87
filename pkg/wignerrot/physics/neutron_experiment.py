# coding=utf-8
#
# wigner-rotation - numerical checks of the Wigner rotation
#
# SPDX-License-Identifier: GPL-2.0-or-later
"""
Thermal neutrons kept on a circular orbit: the Wigner rotation their spin
accumulates over a run, with beta decay thinning the beam.

A neutron at speed v on a ring of radius r makes v t / (2 pi r) revolutions
in time t, each rotating the spin by 2 pi (gamma - 1) about the orbit
normal, here the lab z axis.
"""
import dataclasses
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from scipy import constants

from ..common.errors import ArgumentError, DomainError
from ..sweep_manager import SweepManager
from .holonomy import wigner_angle_circle
from .spin_transport import (
    DetectorReading, SpinState, apply_rotation, bloch_vector,
    default_initial_spin, measured_rotation_angle, rotation_operator,
    sample_detector,
)

C_SI = constants.c  # 299 792 458 m/s, exact
NEUTRON_LIFETIME = 887.0
THERMAL_SPEED = 2.0e3
ORBIT_AXIS = np.array([0.0, 0.0, 1.0])
SPACINGS = ("log", "linear")

log = logging.getLogger('wigner-rotation.experiment')


@dataclass(frozen=True)
class ExperimentConfig:
    """
    One run: SI speed, ring radius, duration and mean lifetime.

    With `shot_noise` set to a count budget the detector is simulated as
    well.
    """
    speed_si: float
    radius_si: float
    duration_si: float
    lifetime_si: float = NEUTRON_LIFETIME
    initial_spin: SpinState = field(default_factory=default_initial_spin)
    shot_noise: Optional[int] = None

    def __post_init__(self):
        for name in ("speed_si", "radius_si", "duration_si", "lifetime_si"):
            value = float(getattr(self, name))
            if not value > 0.0 or math.isinf(value):
                raise DomainError(f"{name} must be positive and finite, "
                                  f"got {getattr(self, name)!r}")
            object.__setattr__(self, name, value)
        if not self.speed_si < C_SI:
            raise DomainError(f"superluminal speed {self.speed_si!r} m/s")
        if self.shot_noise is not None:
            if int(self.shot_noise) != self.shot_noise or self.shot_noise < 1:
                raise DomainError(f"count budget must be a positive integer, "
                                  f"got {self.shot_noise!r}")
            object.__setattr__(self, "shot_noise", int(self.shot_noise))

    @property
    def beta(self) -> float:
        return self.speed_si / C_SI

    def replace(self, **changes) -> "ExperimentConfig":
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class ExperimentResult:
    config: ExperimentConfig
    revolutions: float
    angle_per_revolution: float
    total_angle: float
    survival_fraction: float
    final_spin: SpinState
    measured_angle: float  # degrees
    detector: Optional[DetectorReading] = None

    @property
    def total_angle_deg(self) -> float:
        return math.degrees(self.total_angle)

    def as_record(self) -> Dict[str, Any]:
        cfg = self.config
        final = bloch_vector(self.final_spin)
        record = {
            "speed_mps": cfg.speed_si,
            "beta": cfg.beta,
            "radius_m": cfg.radius_si,
            "duration_s": cfg.duration_si,
            "lifetime_s": cfg.lifetime_si,
            "revolutions": self.revolutions,
            "angle_per_revolution_rad": self.angle_per_revolution,
            "omega_T_rad": self.total_angle,
            "omega_T_deg": self.total_angle_deg,
            "survival_fraction": self.survival_fraction,
            "measured_angle_deg": self.measured_angle,
            "final_bloch": [final.sx, final.sy, final.sz],
        }
        if self.detector is not None:
            record.update({
                "counts": self.detector.counts,
                "detected_counts": self.detector.surviving,
                "aligned_counts": self.detector.aligned,
                "estimated_omega_T_deg": self.detector.estimated_degrees,
                "standard_error_deg":
                    math.degrees(self.detector.standard_error),
            })
        return record


def survival_fraction(duration_si: float, lifetime_si: float) -> float:
    if not duration_si > 0.0 or not lifetime_si > 0.0:
        raise DomainError(f"duration and lifetime must be positive, got "
                          f"{duration_si!r} and {lifetime_si!r}")
    return math.exp(-duration_si / lifetime_si)


def revolutions(cfg: ExperimentConfig) -> float:
    return cfg.speed_si * cfg.duration_si / (2.0 * math.pi * cfg.radius_si)


def total_wigner_rotation(
        cfg: ExperimentConfig,
        rng: Optional[np.random.Generator] = None,
) -> ExperimentResult:
    """
    Total rotation omega_T = (v / 2 pi r) t omega(v) and the spin it leaves.

    :param cfg: the run
    :param rng: random generator for the detector, needed with shot noise
    """
    if cfg.shot_noise is not None and rng is None:
        raise DomainError("shot-noise mode needs a random generator")
    per_revolution = wigner_angle_circle(cfg.beta)
    turns = revolutions(cfg)
    total = turns * per_revolution
    final = apply_rotation(cfg.initial_spin,
                           rotation_operator(total, ORBIT_AXIS))
    survival = survival_fraction(cfg.duration_si, cfg.lifetime_si)

    detector = None
    if cfg.shot_noise is not None:
        detector = sample_detector(cfg.initial_spin, final, cfg.shot_noise,
                                   rng, survival)
    log.debug("r=%g m t=%g s: %.6g revolutions, omega_T %.9g rad",
              cfg.radius_si, cfg.duration_si, turns, total)
    return ExperimentResult(
        config=cfg,
        revolutions=turns,
        angle_per_revolution=per_revolution,
        total_angle=total,
        survival_fraction=survival,
        final_spin=final,
        measured_angle=math.degrees(
            measured_rotation_angle(cfg.initial_spin, final)),
        detector=detector,
    )


def nonrelativistic_total_rotation(cfg: ExperimentConfig) -> float:
    """Leading order of omega_T in v / c: v^3 t / (2 r c^2)."""
    return (cfg.speed_si ** 3 * cfg.duration_si
            / (2.0 * cfg.radius_si * C_SI * C_SI))


def radius_for_angle(cfg: ExperimentConfig, target_angle: float) -> float:
    """
    Ring radius giving `target_angle` radians with cfg's speed and duration.
    """
    if not target_angle > 0.0:
        raise DomainError(f"target angle must be positive, "
                          f"got {target_angle!r}")
    return (cfg.speed_si * cfg.duration_si * wigner_angle_circle(cfg.beta)
            / (2.0 * math.pi * target_angle))


def radius_grid(
        minimum: float,
        maximum: float,
        count: int,
        spacing: str = "log",
        include: Sequence[float] = (),
) -> List[float]:
    """
    Ascending radii from `minimum` to `maximum`, plus any `include` values.
    """
    if not 0.0 < minimum <= maximum:
        raise DomainError(f"radius range must satisfy 0 < min <= max, "
                          f"got [{minimum!r}, {maximum!r}]")
    if int(count) != count or count < 1:
        raise DomainError(f"radius count must be a positive integer, "
                          f"got {count!r}")
    if spacing not in SPACINGS:
        raise DomainError(f"spacing must be one of {', '.join(SPACINGS)}, "
                          f"got {spacing!r}")
    if count == 1:
        grid = np.array([minimum])
    elif spacing == "log":
        grid = np.geomspace(minimum, maximum, int(count))
    else:
        grid = np.linspace(minimum, maximum, int(count))
    extra = np.asarray(list(include), dtype=np.float64)
    if np.any(extra <= 0.0):
        raise DomainError("included radii must be positive")
    return np.unique(np.concatenate([grid, extra])).tolist()


def _evaluate_cell(cfg: ExperimentConfig,
                   seed: Optional[np.random.SeedSequence]) -> ExperimentResult:
    rng = np.random.default_rng(seed) if seed is not None else None
    return total_wigner_rotation(cfg, rng)


def sweep_radius(
        cfg_base: ExperimentConfig,
        radii: Sequence[float],
        durations: Sequence[float],
        seed: Optional[int] = None,
        max_concurrency: int = 1,
        show_progress: bool = False,
) -> List[ExperimentResult]:
    """
    Evaluate the grid durations x radii, durations in the outer loop.

    In shot-noise mode every cell draws from its own child of
    SeedSequence(seed), so the table does not depend on how cells are
    spread over processes.
    """
    radii = list(radii)
    durations = list(durations)
    if not radii or not durations:
        raise ArgumentError("a sweep needs at least one radius "
                            "and one duration")
    if cfg_base.shot_noise is not None and seed is None:
        raise DomainError("shot-noise sweeps need an explicit seed")

    configs = [cfg_base.replace(radius_si=radius, duration_si=duration)
               for duration in durations for radius in radii]
    if cfg_base.shot_noise is not None:
        seeds = np.random.SeedSequence(seed).spawn(len(configs))
    else:
        seeds = [None] * len(configs)

    log.info("sweep: %d durations x %d radii", len(durations), len(radii))
    manager = SweepManager(max_concurrency=max_concurrency,
                           show_progress=show_progress, log=log)
    return manager.run(_evaluate_cell, list(zip(configs, seeds)))
