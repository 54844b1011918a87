#!/usr/bin/python3
# coding=utf-8
#
# wigner-rotation - numerical checks of the Wigner rotation
#
# SPDX-License-Identifier: GPL-2.0-or-later
"""
Compose boosts, carry spins around velocity-space loops and predict the
thermal-neutron rotation.
"""
import argparse
import math
import os
import sys
from typing import List

import numpy as np
from tqdm import tqdm

from . import __version__
from .args import CommonArgs
from .common.errors import (
    ArgumentError, ConfigError, ConsistencyError, DomainError, NumericalError,
)
from .common.exit_codes import EXIT
from .common.progress import Progress
from .config import (
    DEFAULT_RADIUS_COUNT, DEFAULT_RADIUS_MAX, DEFAULT_RADIUS_MIN, SweepConfig,
)
from .log_config import init_logs
from .output import RunManifest, emit_record, emit_table, format_number
from .physics import holonomy, lorentz_core, neutron_experiment

PROG = 'wigner-rotation'
SWEEP_HEADER = ("radius_m", "duration_s", "omega_T_deg", "survival_fraction")
SHOT_NOISE_HEADER = ("detected_counts", "estimated_omega_T_deg")
ORBIT_HEADER = ("step", "theta_rad", "accumulated_angle_rad")
RECORD_FORMATS = ("text", "csv", "json")
TABLE_FORMATS = ("csv", "json")
FORMAT_SUFFIXES = {".txt": "text", ".csv": "csv", ".json": "json"}


def main(args=None) -> int:
    try:
        args = parse_args(args)
    except SystemExit as err:
        # --help and --version exit with 0, parse errors with 2
        return EXIT.OK if not err.code else EXIT.ERR_USAGE

    log, log_handler, _, _, _ = init_logs(path=args.log_file, level=args.log)
    log.info("%s %s %s", PROG, args.command,
             " ".join(str(arg) for arg in CommonArgs.to_cli_args(args)))
    try:
        return args.func(args, log)
    except (DomainError, ConfigError, ArgumentError) as err:
        _report(args, log, err)
        return EXIT.ERR_USAGE
    except (NumericalError, ConsistencyError) as err:
        _report(args, log, err)
        return EXIT.ERR_NUMERICAL
    except OSError as err:
        _report(args, log, err)
        return EXIT.ERR
    except KeyboardInterrupt:
        _report(args, log, "interrupted")
        return EXIT.SIGINT
    finally:
        log.removeHandler(log_handler)
        log_handler.close()


def _report(args, log, err):
    log.error("%s failed: %s", args.command, err)
    if args.log_file is not None:
        # without a log file the error above already went to stderr
        print(f"{PROG}: error: {err}", file=sys.stderr)


def _summary(args, text: str):
    if args.quiet:
        return
    # keep stdout clean for the data unless the data went to a file
    stream = sys.stdout if args.out is not None else sys.stderr
    print(text, file=stream)


def output_format(args, supported) -> str:
    """
    The explicit --format, else the one implied by the --out suffix, else
    the first supported format.
    """
    if args.format is not None:
        if args.format not in supported:
            raise ArgumentError(
                f"{args.command} cannot write {args.format} output, "
                f"use one of {', '.join(supported)}")
        return args.format
    if args.out is not None:
        suffix = os.path.splitext(args.out)[1].lower()
        if FORMAT_SUFFIXES.get(suffix) in supported:
            return FORMAT_SUFFIXES[suffix]
    return supported[0]


def _progress_bar(args, desc: str) -> tqdm:
    return tqdm(total=100, desc=desc, unit="%", file=sys.stderr,
                disable=args.quiet or args.no_progress)


def cmd_wigner_angle(args, log) -> int:
    format_ = output_format(args, RECORD_FORMATS)
    scale = 1.0 / neutron_experiment.C_SI if args.units == "mps" else 1.0
    v1 = lorentz_core.Velocity3.of([scale * x for x in args.v1])
    v2 = lorentz_core.Velocity3.of([scale * x for x in args.v2])

    composed = lorentz_core.compose(lorentz_core.boost_from_velocity(v2),
                                    lorentz_core.boost_from_velocity(v1))
    boost, rotation = lorentz_core.decompose_boost_rotation(composed)
    log.debug("B(v2) B(v1) metric defect %.3g", composed.metric_defect)

    normal = np.cross(v2.array, v1.array)
    length = float(np.linalg.norm(normal))
    normal = normal / length if length > 0.0 else lorentz_core.DEFAULT_AXIS
    # sense of the reference frame turning about v2 x v1
    signed = -lorentz_core.signed_angle_about(rotation, normal) or 0.0

    record = {
        "v1": v1.array.tolist(),
        "v2": v2.array.tolist(),
        "v3": boost.array.tolist(),
        "v3_speed": boost.speed,
        "axis": rotation.axis.tolist(),
        "angle_rad": rotation.angle,
        "angle_deg": rotation.degrees,
        "normal": normal.tolist(),
        "signed_angle_rad": signed,
        "signed_angle_deg": math.degrees(signed),
    }
    manifest = RunManifest(
        command="wigner-angle",
        parameters={"v1": record["v1"], "v2": record["v2"], "units": "c"})
    emit_record(record, format_, args.out, manifest)
    if args.verbose:
        _summary(args, f"Wigner rotation {format_number(rotation.degrees)} "
                       f"deg about ("
                       + ", ".join(format_number(x) for x in rotation.axis)
                       + ")")
    return EXIT.OK


def cmd_orbit(args, log) -> int:
    format_ = output_format(args, TABLE_FORMATS)
    loop = holonomy.CircleLoop(args.speed, args.turns, args.steps)
    rows = [(0, 0.0, 0.0)]

    def observer(step, theta, accumulated):
        if step % args.stride == 0:
            rows.append((step, theta, accumulated))

    progress_bar = _progress_bar(args, "orbit")
    progress = Progress().init(
        0, 100, lambda percent: progress_bar.update(percent - progress_bar.n))
    try:
        result = holonomy.transport_loop(
            loop,
            closure_tolerance=args.closure_tolerance,
            reproject_every=args.reproject_every,
            observer=observer,
            progress=progress,
        )
    finally:
        progress_bar.close()

    manifest = RunManifest(command="orbit", parameters={
        "speed": args.speed,
        "turns": args.turns,
        "steps": args.steps,
        "stride": args.stride,
        "closure_tolerance": args.closure_tolerance,
        "reproject_every": args.reproject_every,
    })
    log.info("orbit: discrete %.9g rad, analytic %.9g rad",
             result.discrete_angle, result.analytic_angle)
    emit_table(ORBIT_HEADER, rows, format_, args.out, manifest)
    _summary(args,
             f"discrete {format_number(result.discrete_angle)} rad, "
             f"analytic {format_number(result.analytic_angle)} rad, "
             f"relative error {format_number(result.relative_error)}, "
             f"residual boost {format_number(result.residual_boost_speed)}")
    return EXIT.OK


def cmd_experiment(args, log) -> int:
    format_ = output_format(args, RECORD_FORMATS)
    seed = args.seed
    if args.counts is not None and seed is None:
        seed = 0
    cfg = neutron_experiment.ExperimentConfig(
        speed_si=args.speed,
        radius_si=args.radius,
        duration_si=args.duration,
        lifetime_si=args.lifetime,
        shot_noise=args.counts,
    )
    rng = None
    if args.counts is not None:
        rng = np.random.default_rng(seed)
    result = neutron_experiment.total_wigner_rotation(cfg, rng)
    log.info("omega_T = %.9g deg", result.total_angle_deg)

    manifest = RunManifest(command="experiment", seed=seed, parameters={
        "speed_mps": cfg.speed_si,
        "beta": cfg.beta,
        "radius_m": cfg.radius_si,
        "duration_s": cfg.duration_si,
        "lifetime_s": cfg.lifetime_si,
        "counts": cfg.shot_noise,
    })
    emit_record(result.as_record(), format_, args.out, manifest)
    if args.verbose:
        _summary(args,
                 f"total Wigner rotation "
                 f"{format_number(result.total_angle_deg)} deg after"
                 f" {format_number(result.revolutions)} revolutions,"
                 f" {format_number(100 * result.survival_fraction)} % "
                 f"of the neutrons left")
    return EXIT.OK


def sweep_config(args) -> SweepConfig:
    """
    The config file (or the default grid) with the command-line overrides.
    """
    base = SweepConfig.load(args.config) if args.config else \
        SweepConfig.default()
    data = base.as_dict()

    if args.speed is not None:
        data["speed_mps"] = args.speed
    if args.counts is not None:
        data["counts"] = args.counts
    if args.seed is not None:
        data["seed"] = args.seed

    grid_flags = (args.radius_min, args.radius_max, args.radius_count,
                  args.spacing)
    if args.radii is not None and any(flag is not None for flag in grid_flags):
        raise ArgumentError("--radii cannot be combined with a radius grid")
    if args.radii is not None:
        data["radii_m"] = args.radii
    elif any(flag is not None for flag in grid_flags):
        data["radii_m"] = {
            "min": args.radius_min if args.radius_min is not None
            else DEFAULT_RADIUS_MIN,
            "max": args.radius_max if args.radius_max is not None
            else DEFAULT_RADIUS_MAX,
            "count": args.radius_count if args.radius_count is not None
            else DEFAULT_RADIUS_COUNT,
            "spacing": args.spacing or "log",
        }

    if args.durations is not None:
        data["durations_s"] = args.durations
    elif args.lifetime_multiples is not None:
        data["durations_s"] = {"multiples_of_lifetime":
                               args.lifetime_multiples}
    elif args.lifetime is not None and base.durations_from_lifetime:
        # multiples of the lifetime follow it, seconds stay as given
        data["durations_s"] = {"multiples_of_lifetime": [
            duration / base.lifetime_s for duration in base.durations_s]}
    if args.lifetime is not None:
        data["lifetime_s"] = args.lifetime
    return SweepConfig.from_dict(data)


def cmd_sweep(args, log) -> int:
    format_ = output_format(args, TABLE_FORMATS)
    config = sweep_config(args)
    seed = config.seed
    if config.counts is not None and seed is None:
        seed = 0
    cfg_base = neutron_experiment.ExperimentConfig(
        speed_si=config.speed_mps,
        radius_si=config.radii_m[0],
        duration_si=config.durations_s[0],
        lifetime_si=config.lifetime_s,
        shot_noise=config.counts,
    )
    results = neutron_experiment.sweep_radius(
        cfg_base, config.radii_m, config.durations_s,
        seed=seed,
        max_concurrency=args.max_concurrency,
        show_progress=not (args.quiet or args.no_progress),
    )

    header: List[str] = list(SWEEP_HEADER)
    if config.counts is not None:
        header.extend(SHOT_NOISE_HEADER)
    rows = []
    for result in results:
        row = [result.config.radius_si, result.config.duration_si,
               result.total_angle_deg, result.survival_fraction]
        if result.detector is not None:
            row.extend((result.detector.surviving,
                        result.detector.estimated_degrees))
        rows.append(row)

    parameters = config.as_dict()
    parameters["seed"] = seed
    manifest = RunManifest(command="sweep", parameters=parameters, seed=seed)
    emit_table(header, rows, format_, args.out, manifest)
    if args.verbose:
        _summary(args, f"{len(rows)} rows: {len(config.durations_s)} "
                       f"durations x {len(config.radii_m)} radii")
    return EXIT.OK


def velocity_triple(text: str) -> List[float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"expected three comma separated components, got {text!r}")
    try:
        return [float(part) for part in parts]
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err)) from err


def positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err)) from err
    if not value > 0.0 or math.isinf(value):
        raise argparse.ArgumentTypeError(f"expected a positive number, "
                                         f"got {text!r}")
    return value


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err)) from err
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, "
                                         f"got {text!r}")
    return value


def non_negative_int(text: str) -> int:
    if text == "0":
        return 0
    return positive_int(text)


def step_count(text: str) -> int:
    value = positive_int(text)
    if value < 3:
        raise argparse.ArgumentTypeError(
            f"a loop needs at least 3 steps, got {value}")
    return value


def float_list(text: str) -> List[float]:
    return [positive_float(part) for part in text.split(",")]


def parse_args(args=None):
    parser = argparse.ArgumentParser(
        prog=PROG,
        description='Numerical checks of the Wigner rotation.')
    parser.add_argument('--version', action='version',
                        version=f'%(prog)s {__version__}')
    CommonArgs.add_global_arguments(parser)
    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True

    angle = commands.add_parser(
        'wigner-angle', help='Decompose B(v2) B(v1) into rotation and boost.')
    angle.add_argument('--v1', type=velocity_triple, required=True,
                       metavar='X,Y,Z', help='First boost velocity.')
    angle.add_argument('--v2', type=velocity_triple, required=True,
                       metavar='X,Y,Z', help='Second boost velocity.')
    angle.add_argument('--units', choices=('c', 'mps'), default='c',
                       help='Velocities as fractions of c (default) '
                            'or in m/s.')
    CommonArgs.add_arguments(angle)
    angle.set_defaults(func=cmd_wigner_angle)

    orbit = commands.add_parser(
        'orbit', help='Carry a spin frame around a velocity-space circle.')
    orbit.add_argument('--speed', type=float, required=True,
                       help='Orbit speed as a fraction of c, in (0, 1).')
    orbit.add_argument('--turns', type=positive_int, default=1,
                       help='Number of revolutions (default: %(default)d).')
    orbit.add_argument('--steps', type=step_count, default=1000,
                       help='Steps per revolution, at least 3 '
                            '(default: %(default)d).')
    orbit.add_argument('--stride', type=positive_int, default=1,
                       help='Write every M-th step (default: %(default)d).')
    orbit.add_argument('--closure-tolerance', type=positive_float,
                       default=holonomy.CLOSURE_TOLERANCE,
                       help='Largest residual boost speed accepted at the '
                            'end of the loop (default: %(default)g).')
    orbit.add_argument('--reproject-every', type=non_negative_int,
                       default=holonomy.REPROJECT_EVERY,
                       help='Steps between projections back onto the '
                            'Lorentz group, 0 disables '
                            '(default: %(default)d).')
    CommonArgs.add_arguments(orbit)
    orbit.set_defaults(func=cmd_orbit)

    experiment = commands.add_parser(
        'experiment', help='Total rotation of a neutron kept on a ring.')
    experiment.add_argument('--speed', type=positive_float,
                            default=neutron_experiment.THERMAL_SPEED,
                            help='Speed in m/s (default: %(default)g).')
    experiment.add_argument('--radius', type=positive_float, default=2e-3,
                            help='Ring radius in m (default: %(default)g).')
    experiment.add_argument('--duration', type=positive_float,
                            default=neutron_experiment.NEUTRON_LIFETIME,
                            help='Duration in s (default: %(default)g).')
    experiment.add_argument('--lifetime', type=positive_float,
                            default=neutron_experiment.NEUTRON_LIFETIME,
                            help='Mean neutron lifetime in s '
                                 '(default: %(default)g).')
    experiment.add_argument('--counts', type=positive_int,
                            help='Simulate a detector with this many '
                                 'neutrons.')
    experiment.add_argument('--seed', type=int,
                            help='Seed of the detector simulation '
                                 '(default: 0).')
    CommonArgs.add_arguments(experiment)
    experiment.set_defaults(func=cmd_experiment)

    sweep = commands.add_parser(
        'sweep', help='Total rotation over a grid of radii and durations.')
    sweep.add_argument('--config', help='JSON sweep configuration.')
    sweep.add_argument('--max-concurrency', '-x', type=positive_int,
                       default=1,
                       help='Number of worker processes '
                            '(default: %(default)d, in process).')
    sweep.add_argument('--radius-min', type=positive_float,
                       help='Smallest radius in m.')
    sweep.add_argument('--radius-max', type=positive_float,
                       help='Largest radius in m.')
    sweep.add_argument('--radius-count', type=positive_int,
                       help='Number of radii in the grid.')
    sweep.add_argument('--spacing', choices=neutron_experiment.SPACINGS,
                       help='Grid spacing (default: log).')
    sweep.add_argument('--radii', type=float_list, metavar='R1,R2,...',
                       help='Explicit radii in m.')
    durations = sweep.add_mutually_exclusive_group()
    durations.add_argument('--durations', type=float_list,
                           metavar='T1,T2,...',
                           help='Explicit durations in s.')
    durations.add_argument('--lifetime-multiples', type=float_list,
                           metavar='K1,K2,...',
                           help='Durations as multiples of the lifetime.')
    sweep.add_argument('--speed', type=positive_float,
                       help='Speed in m/s.')
    sweep.add_argument('--lifetime', type=positive_float,
                       help='Mean neutron lifetime in s. Durations '
                            'given in lifetimes follow it.')
    sweep.add_argument('--counts', type=positive_int,
                       help='Simulate a detector for every cell.')
    sweep.add_argument('--seed', type=int,
                       help='Seed of the detector simulation (default: 0).')
    CommonArgs.add_arguments(sweep)
    sweep.set_defaults(func=cmd_sweep)

    return parser.parse_args(args)


if __name__ == '__main__':
    sys.exit(main())
