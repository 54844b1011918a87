# coding=utf-8
#
# wigner-rotation - numerical checks of the Wigner rotation
#
# SPDX-License-Identifier: GPL-2.0-or-later
import math

import numpy as np
import pytest

from wignerrot.physics.lorentz_core import RotationAxisAngle, Velocity3
from wignerrot.physics.neutron_experiment import (
    NEUTRON_LIFETIME, THERMAL_SPEED, ExperimentConfig,
)
from wignerrot.wignerrot import main

ANCHOR_RADIUS = 2e-3


def random_direction(rng) -> np.ndarray:
    direction = rng.normal(size=3)
    return direction / np.linalg.norm(direction)


def random_velocity(rng, max_speed: float = 0.9) -> Velocity3:
    return Velocity3.of(random_direction(rng) * rng.uniform(0.0, max_speed))


def random_rotation(rng) -> RotationAxisAngle:
    return RotationAxisAngle(random_direction(rng), rng.uniform(0.0, math.pi))


@pytest.fixture
def rng():
    return np.random.default_rng(1729)


@pytest.fixture
def thermal_config():
    return ExperimentConfig(
        speed_si=THERMAL_SPEED,
        radius_si=ANCHOR_RADIUS,
        duration_si=NEUTRON_LIFETIME,
    )


@pytest.fixture
def cli(capsys):
    """
    Run the command line and return (exit code, stdout, stderr).
    """
    def run(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run
