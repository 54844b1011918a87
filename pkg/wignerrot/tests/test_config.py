# coding=utf-8
#
# wigner-rotation - numerical checks of the Wigner rotation
#
# SPDX-License-Identifier: GPL-2.0-or-later
import json

import pytest

from wignerrot.common.errors import ConfigError
from wignerrot.config import SweepConfig


def test_default_grid():
    config = SweepConfig.default()
    assert config.speed_mps == 2000.0
    assert config.lifetime_s == 887.0
    assert config.durations_s == (887.0, 1774.0, 2661.0, 3548.0)
    assert len(config.radii_m) == 65
    assert 2e-3 in config.radii_m
    assert config.radii_m[0] == pytest.approx(0.5e-3)
    assert config.radii_m[-1] == pytest.approx(10e-3)
    assert config.counts is None and config.seed is None


def test_empty_object_is_the_default():
    assert SweepConfig.from_dict({}) == SweepConfig.default()


def test_lists_and_multiples():
    config = SweepConfig.from_dict({
        "speed_mps": 1500,
        "radii_m": [1e-3, 3e-3],
        "durations_s": {"multiples_of_lifetime": [1, 0.5]},
        "lifetime_s": 880,
        "counts": 1000,
        "seed": 3,
    })
    assert config.speed_mps == 1500.0
    assert config.radii_m == (1e-3, 3e-3)
    assert config.durations_s == (880.0, 440.0)
    assert (config.counts, config.seed) == (1000, 3)


def test_radius_grid_object():
    config = SweepConfig.from_dict({"radii_m": {
        "min": 1e-3, "max": 4e-3, "count": 4, "spacing": "linear",
        "include": [2.5e-3],
    }})
    assert config.radii_m == pytest.approx(
        (1e-3, 2e-3, 2.5e-3, 3e-3, 4e-3))


def test_lifetime_alone_rescales_default_durations():
    config = SweepConfig.from_dict({"lifetime_s": 900})
    assert config.durations_s == (900.0, 1800.0, 2700.0, 3600.0)


@pytest.mark.parametrize("data, message", [
    ({"speed": 2000}, "unknown key speed"),
    ({"radii_m": {"min": 1e-3, "max": 2e-3, "count": 3, "step": 1}},
     "unknown key step"),
    ({"durations_s": {"multiples": [1]}}, "unknown key multiples"),
    ({"radii_m": []}, "non-empty list"),
    ({"radii_m": [1e-3, -1e-3]}, "positive"),
    ({"radii_m": {"min": 1e-3, "count": 3}}, "missing key max"),
    ({"radii_m": {"min": 1e-3, "max": 2e-3, "count": 3,
                  "spacing": "cubic"}}, "spacing"),
    ({"speed_mps": True}, "expected a number"),
    ({"speed_mps": "fast"}, "expected a number"),
    ({"counts": 1.5}, "expected an integer"),
    ({"counts": 0}, "positive integer"),
    ({"seed": -1}, "non-negative"),
])
def test_malformed_configs(data, message):
    with pytest.raises(ConfigError, match=message):
        SweepConfig.from_dict(data)


def test_config_must_be_an_object():
    with pytest.raises(ConfigError):
        SweepConfig.from_dict([1, 2, 3])


def test_load(tmp_path):
    path = tmp_path / "sweep.json"
    path.write_text(json.dumps({"radii_m": [2e-3], "seed": 1}))
    config = SweepConfig.load(str(path))
    assert config.radii_m == (2e-3,)
    assert config.as_dict()["seed"] == 1


def test_load_invalid_json(tmp_path):
    path = tmp_path / "sweep.json"
    path.write_text("{radii_m: [")
    with pytest.raises(ConfigError, match="not valid JSON"):
        SweepConfig.load(str(path))


def test_load_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        SweepConfig.load(str(tmp_path / "missing.json"))


def test_as_dict_round_trip():
    config = SweepConfig.from_dict({"radii_m": [1e-3], "counts": 10})
    assert SweepConfig.from_dict(config.as_dict()) == config


def test_durations_remember_their_origin():
    assert SweepConfig.default().durations_from_lifetime
    assert SweepConfig.from_dict({"lifetime_s": 900}).durations_from_lifetime
    assert SweepConfig.from_dict({
        "durations_s": {"multiples_of_lifetime": [1]},
    }).durations_from_lifetime
    assert not SweepConfig.from_dict({
        "durations_s": [1000, 2000],
    }).durations_from_lifetime
