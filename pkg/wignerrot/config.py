# coding=utf-8
#
# wigner-rotation - numerical checks of the Wigner rotation
#
# SPDX-License-Identifier: GPL-2.0-or-later
"""
Sweep configuration files.

    {
      "speed_mps": 2000,
      "radii_m": {"min": 5e-4, "max": 1e-2, "count": 64,
                  "spacing": "log", "include": [2e-3]},
      "durations_s": {"multiples_of_lifetime": [1, 2, 3, 4]},
      "lifetime_s": 887,
      "counts": null,
      "seed": null
    }

`radii_m` and `durations_s` may also be plain lists. Any key not listed
here is rejected.
"""
import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

from .common.errors import ConfigError, DomainError
from .physics.neutron_experiment import (
    NEUTRON_LIFETIME, THERMAL_SPEED, radius_grid,
)

TOP_LEVEL_KEYS = frozenset(
    ("speed_mps", "radii_m", "durations_s", "lifetime_s", "counts", "seed"))
RADIUS_GRID_KEYS = frozenset(("min", "max", "count", "spacing", "include"))
DURATION_KEYS = frozenset(("multiples_of_lifetime",))

DEFAULT_RADIUS_MIN = 0.5e-3
DEFAULT_RADIUS_MAX = 10e-3
DEFAULT_RADIUS_COUNT = 64
ANCHOR_RADIUS = 2e-3
DEFAULT_LIFETIME_MULTIPLES = (1, 2, 3, 4)


def _number(value: Any, where: str) -> float:
    # bool is an int subclass, reject it explicitly
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}: expected a number, got {value!r}")
    if not math.isfinite(value) or value <= 0:
        raise ConfigError(f"{where}: expected a positive number, "
                          f"got {value!r}")
    return float(value)


def _integer(value: Any, where: str) -> Optional[int]:
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{where}: expected an integer, got {value!r}")
    return value


def _numbers(values: Any, where: str) -> Tuple[float, ...]:
    if not isinstance(values, list) or not values:
        raise ConfigError(f"{where}: expected a non-empty list")
    return tuple(_number(value, f"{where}[{i}]")
                 for i, value in enumerate(values))


def _unknown(data: Dict, allowed, where: str):
    unknown = sorted(set(data) - allowed)
    if unknown:
        plural = "s" if len(unknown) > 1 else ""
        raise ConfigError(f"{where}: unknown key{plural} "
                          f"{', '.join(unknown)}")


@dataclass(frozen=True)
class SweepConfig:
    speed_mps: float = THERMAL_SPEED
    radii_m: Tuple[float, ...] = field(default_factory=lambda: tuple(
        radius_grid(DEFAULT_RADIUS_MIN, DEFAULT_RADIUS_MAX,
                    DEFAULT_RADIUS_COUNT, "log", (ANCHOR_RADIUS,))))
    durations_s: Tuple[float, ...] = tuple(
        k * NEUTRON_LIFETIME for k in DEFAULT_LIFETIME_MULTIPLES)
    lifetime_s: float = NEUTRON_LIFETIME
    counts: Optional[int] = None
    seed: Optional[int] = None
    # false once durations were given in seconds
    durations_from_lifetime: bool = field(default=True, compare=False)

    @classmethod
    def default(cls) -> "SweepConfig":
        return cls()

    @classmethod
    def from_dict(cls, data: Any) -> "SweepConfig":
        if not isinstance(data, dict):
            raise ConfigError("sweep config must be a JSON object")
        _unknown(data, TOP_LEVEL_KEYS, "config")
        default = cls.default()

        speed = _number(data.get("speed_mps", default.speed_mps), "speed_mps")
        lifetime = _number(data.get("lifetime_s", default.lifetime_s),
                           "lifetime_s")

        radii = default.radii_m
        if "radii_m" in data:
            radii = cls._radii(data["radii_m"])

        durations = default.durations_s
        from_lifetime = True
        if "durations_s" in data:
            durations = cls._durations(data["durations_s"], lifetime)
            from_lifetime = not isinstance(data["durations_s"], list)
        elif "lifetime_s" in data:
            durations = tuple(k * lifetime for k in DEFAULT_LIFETIME_MULTIPLES)

        counts = _integer(data.get("counts"), "counts")
        if counts is not None and counts < 1:
            raise ConfigError(f"counts: expected a positive integer, "
                              f"got {counts!r}")
        seed = _integer(data.get("seed"), "seed")
        if seed is not None and seed < 0:
            raise ConfigError(f"seed: expected a non-negative integer, "
                              f"got {seed!r}")
        return cls(speed, radii, durations, lifetime, counts, seed,
                   from_lifetime)

    @staticmethod
    def _radii(value: Any) -> Tuple[float, ...]:
        if isinstance(value, list):
            return _numbers(value, "radii_m")
        if not isinstance(value, dict):
            raise ConfigError("radii_m: expected a list or a grid object")
        _unknown(value, RADIUS_GRID_KEYS, "radii_m")
        for key in ("min", "max", "count"):
            if key not in value:
                raise ConfigError(f"radii_m: missing key {key}")
        count = _integer(value["count"], "radii_m.count")
        if count is None:
            raise ConfigError("radii_m.count: expected an integer")
        include = value.get("include", [])
        if not isinstance(include, list):
            raise ConfigError("radii_m.include: expected a list")
        try:
            return tuple(radius_grid(
                _number(value["min"], "radii_m.min"),
                _number(value["max"], "radii_m.max"),
                count,
                value.get("spacing", "log"),
                [_number(r, "radii_m.include") for r in include],
            ))
        except DomainError as err:
            raise ConfigError(f"radii_m: {err}") from err

    @staticmethod
    def _durations(value: Any, lifetime: float) -> Tuple[float, ...]:
        if isinstance(value, list):
            return _numbers(value, "durations_s")
        if not isinstance(value, dict):
            raise ConfigError("durations_s: expected a list or "
                              "{\"multiples_of_lifetime\": [...]}")
        _unknown(value, DURATION_KEYS, "durations_s")
        if "multiples_of_lifetime" not in value:
            raise ConfigError("durations_s: missing key multiples_of_lifetime")
        multiples = _numbers(value["multiples_of_lifetime"],
                             "durations_s.multiples_of_lifetime")
        return tuple(k * lifetime for k in multiples)

    @classmethod
    def load(cls, path: str) -> "SweepConfig":
        try:
            with open(path, encoding='utf-8') as config_file:
                data = json.load(config_file)
        except OSError as err:
            raise ConfigError(f"cannot read {path}: {err.strerror}") from err
        except json.JSONDecodeError as err:
            raise ConfigError(f"{path} is not valid JSON: {err}") from err
        return cls.from_dict(data)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "speed_mps": self.speed_mps,
            "radii_m": list(self.radii_m),
            "durations_s": list(self.durations_s),
            "lifetime_s": self.lifetime_s,
            "counts": self.counts,
            "seed": self.seed,
        }
