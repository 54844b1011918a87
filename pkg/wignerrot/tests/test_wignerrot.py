# coding=utf-8
#
# wigner-rotation - numerical checks of the Wigner rotation
#
# SPDX-License-Identifier: GPL-2.0-or-later
import json
import math
from unittest.mock import patch

import numpy as np
import pytest

from wignerrot.common.exit_codes import EXIT
from wignerrot.physics.lorentz_core import boost_matrix


def read_csv(path):
    lines = path.read_text().splitlines()
    return lines[0].split(","), [line.split(",") for line in lines[1:]]


def test_version(cli):
    code, out, _ = cli("--version")
    assert code == EXIT.OK
    assert out.startswith("wigner-rotation ")


def test_missing_command(cli):
    code, _, err = cli()
    assert code == EXIT.ERR_USAGE
    assert "required" in err


@pytest.mark.parametrize("v1, v2, expected", [
    ("0.5,0,0", "0,0.5,0", 8.2132),
    ("0.1,0,0", "0,0.1,0", 0.28792),
    ("0.3,0,0", "0.6,0,0", 0.0),
])
def test_wigner_angle_json(cli, v1, v2, expected):
    code, out, _ = cli("wigner-angle", "--v1", v1, "--v2", v2,
                       "--format", "json")
    assert code == EXIT.OK
    payload = json.loads(out)
    assert payload["result"]["angle_deg"] == pytest.approx(expected,
                                                           abs=1e-4)
    assert payload["manifest"]["command"] == "wigner-angle"


def test_wigner_angle_signed_about_normal(cli):
    code, out, _ = cli("wigner-angle", "--v1", "0.5,0,0", "--v2", "0,0.5,0",
                       "--format", "json")
    assert code == EXIT.OK
    result = json.loads(out)["result"]
    np.testing.assert_allclose(result["normal"], [0, 0, -1], atol=1e-15)
    assert result["signed_angle_deg"] == pytest.approx(8.2132, abs=1e-4)

    code, out, _ = cli("wigner-angle", "--v1", "0,0.5,0", "--v2", "0.5,0,0",
                       "--format", "json")
    swapped = json.loads(out)["result"]
    np.testing.assert_allclose(swapped["normal"], [0, 0, 1], atol=1e-15)
    assert swapped["signed_angle_deg"] == pytest.approx(
        result["signed_angle_deg"], rel=1e-12)
    # both orders turn the frame the same way about their own normal, so
    # about one fixed axis the sign flips
    assert np.dot(swapped["normal"], result["normal"]) == pytest.approx(-1)


def test_wigner_angle_text(cli):
    code, out, _ = cli("wigner-angle", "--v1", "0.5,0,0", "--v2", "0,0.5,0")
    assert code == EXIT.OK
    fields = dict(line.split(None, 1) for line in out.splitlines())
    assert float(fields["angle_deg"]) == pytest.approx(8.2132, abs=1e-4)
    np.testing.assert_allclose(
        [float(x) for x in fields["axis"].split(",")], [0, 0, 1],
        atol=1e-12)


def test_wigner_angle_in_metres_per_second(cli):
    code, out, _ = cli("wigner-angle", "--v1", "2000,0,0",
                       "--v2", "0,2000,0", "--units", "mps",
                       "--format", "json")
    assert code == EXIT.OK
    angle = json.loads(out)["result"]["angle_rad"]
    beta = 2000 / 299_792_458.0
    assert angle == pytest.approx(beta ** 2 / 2, rel=1e-6)


def test_superluminal_velocity(cli):
    code, out, err = cli("wigner-angle", "--v1", "1.2,0,0",
                         "--v2", "0,0.1,0")
    assert code == EXIT.ERR_USAGE
    assert out == ""
    assert "superluminal" in err


def test_malformed_velocity(cli):
    code, _, err = cli("wigner-angle", "--v1", "0.1,0", "--v2", "0,0.1,0")
    assert code == EXIT.ERR_USAGE
    assert "three comma separated components" in err


def test_orbit_needs_three_steps(cli):
    code, _, _ = cli("orbit", "--speed", "0.5", "--steps", "2")
    assert code == EXIT.ERR_USAGE


def test_orbit_to_file(cli, tmp_path):
    out_file = tmp_path / "orbit.csv"
    code, out, _ = cli("orbit", "--speed", "0.5", "--steps", "100",
                       "--turns", "2", "--stride", "10", "--no-progress",
                       "--out", str(out_file))
    assert code == EXIT.OK
    header, rows = read_csv(out_file)
    assert header == ["step", "theta_rad", "accumulated_angle_rad"]
    assert len(rows) == 21
    assert rows[0] == ["0", "0", "0"]
    assert int(rows[-1][0]) == 200
    assert float(rows[-1][1]) == pytest.approx(4 * math.pi)

    manifest = json.loads((tmp_path / "orbit.csv.manifest.json").read_text())
    assert manifest["parameters"]["steps"] == 100
    # the summary follows the data to stdout once the data went to a file
    assert "relative error" in out


def test_orbit_quiet(cli):
    code, out, err = cli("orbit", "--speed", "0.5", "--steps", "50", "-q")
    assert code == EXIT.OK
    assert len(out.splitlines()) == 52
    assert err == ""


@patch('wignerrot.physics.holonomy.reproject_matrix')
def test_orbit_that_does_not_close(reproject, cli):
    kick = boost_matrix(np.array([1e-3, 0.0, 0.0]))
    reproject.side_effect = lambda matrix: (matrix @ kick, 0.0)
    code, _, err = cli("orbit", "--speed", "0.5", "--steps", "100",
                       "--reproject-every", "1", "--no-progress")
    assert code == EXIT.ERR_NUMERICAL
    assert "loop did not close" in err


def test_experiment_default(cli):
    code, out, _ = cli("experiment", "--format", "json")
    assert code == EXIT.OK
    result = json.loads(out)["result"]
    assert result["omega_T_deg"] == pytest.approx(1.1309, abs=1e-4)
    assert result["survival_fraction"] == pytest.approx(math.exp(-1))
    assert "detected_counts" not in result


def test_experiment_larger_ring(cli):
    code, out, _ = cli("experiment", "--radius", "4e-3", "--format", "json")
    assert code == EXIT.OK
    assert json.loads(out)["result"]["omega_T_deg"] == pytest.approx(
        0.5655, abs=1e-4)


def test_experiment_with_detector(cli):
    code, out, _ = cli("experiment", "--counts", "100000", "--format",
                       "json")
    assert code == EXIT.OK
    payload = json.loads(out)
    result = payload["result"]
    assert result["counts"] == 100000
    assert 0 < result["detected_counts"] <= 100000
    assert abs(result["estimated_omega_T_deg"] - result["omega_T_deg"]) \
        < 5 * result["standard_error_deg"]
    assert payload["manifest"]["seed"] == 0


def test_experiment_superluminal(cli):
    code, _, err = cli("experiment", "--speed", "3e8")
    assert code == EXIT.ERR_USAGE
    assert "superluminal" in err


def test_default_sweep(cli, tmp_path):
    out_file = tmp_path / "sweep.csv"
    code, _, _ = cli("sweep", "--no-progress", "--out", str(out_file))
    assert code == EXIT.OK
    header, rows = read_csv(out_file)
    assert header == ["radius_m", "duration_s", "omega_T_deg",
                      "survival_fraction"]
    assert len(rows) == 260

    anchor = [row for row in rows if row[:2] == ["0.002", "887"]]
    assert len(anchor) == 1
    assert float(anchor[0][2]) == pytest.approx(1.13092, abs=1e-5)
    assert anchor[0][3] == "0.367879441"


def test_sweep_is_reproducible(cli, tmp_path):
    outputs = []
    for name, workers in (("first.csv", "1"), ("second.csv", "2")):
        out_file = tmp_path / name
        code, _, _ = cli("sweep", "--radii", "1e-3,2e-3,4e-3",
                         "--counts", "20000", "--seed", "4",
                         "-x", workers, "--no-progress",
                         "--out", str(out_file))
        assert code == EXIT.OK
        manifest = tmp_path / (name + ".manifest.json")
        outputs.append((out_file.read_bytes(),
                        json.loads(manifest.read_text())))

    (first, first_manifest), (second, second_manifest) = outputs
    assert first == second
    assert first_manifest["parameters_sha256"] == \
        second_manifest["parameters_sha256"]
    assert first_manifest["seed"] == 4


def test_sweep_with_detector_columns(cli, tmp_path):
    out_file = tmp_path / "sweep.csv"
    code, _, _ = cli("sweep", "--radii", "2e-3", "--durations", "887",
                     "--counts", "1000", "--seed", "1", "-q",
                     "--out", str(out_file))
    assert code == EXIT.OK
    header, rows = read_csv(out_file)
    assert header[-2:] == ["detected_counts", "estimated_omega_T_deg"]
    assert len(rows) == 1


def test_sweep_lifetime_multiples(cli):
    code, out, _ = cli("sweep", "--radii", "2e-3",
                       "--lifetime-multiples", "1,2,3,4", "--format", "json",
                       "--no-progress")
    assert code == EXIT.OK
    rows = json.loads(out)["rows"]
    angles = [row["omega_T_deg"] for row in rows]
    assert [angle / angles[0] for angle in angles] == pytest.approx(
        [1, 2, 3, 4], rel=1e-8)


def test_sweep_lifetime_keeps_multiples(cli):
    code, out, _ = cli("sweep", "--radii", "2e-3", "--lifetime", "900",
                       "--format", "json", "--no-progress")
    assert code == EXIT.OK
    durations = [row["duration_s"] for row in json.loads(out)["rows"]]
    assert durations == pytest.approx([900, 1800, 2700, 3600])


def test_sweep_rejects_radii_with_grid(cli):
    code, _, err = cli("sweep", "--radii", "2e-3", "--radius-count", "10")
    assert code == EXIT.ERR_USAGE
    assert "--radii" in err


def test_sweep_config_file(cli, tmp_path):
    config = tmp_path / "sweep.json"
    config.write_text(json.dumps({
        "radii_m": {"min": 1e-3, "max": 4e-3, "count": 4,
                    "spacing": "linear"},
        "durations_s": [887],
    }))
    code, out, _ = cli("sweep", "--config", str(config), "--no-progress")
    assert code == EXIT.OK
    assert len(out.splitlines()) == 5


def test_sweep_config_with_unknown_key(cli, tmp_path):
    config = tmp_path / "sweep.json"
    config.write_text(json.dumps({"radii": [2e-3]}))
    code, out, err = cli("sweep", "--config", str(config))
    assert code == EXIT.ERR_USAGE
    assert out == ""
    assert "unknown key radii" in err


def test_log_file(cli, tmp_path):
    log_file = tmp_path / "logs" / "wigner-rotation.log"
    code, _, err = cli("--log", "INFO", "--log-file", str(log_file),
                       "experiment", "--radius", "-1")
    # argparse rejects the radius before any logging is set up
    assert code == EXIT.ERR_USAGE
    assert not log_file.exists()

    code, _, err = cli("--log", "INFO", "--log-file", str(log_file),
                       "experiment", "--speed", "3e8")
    assert code == EXIT.ERR_USAGE
    content = log_file.read_text()
    assert "wigner-rotation experiment" in content
    assert "experiment failed" in content
    assert "wigner-rotation: error:" in err


def test_sweep_keeps_durations_given_in_seconds(cli, tmp_path):
    config = tmp_path / "sweep.json"
    config.write_text(json.dumps({"radii_m": [2e-3],
                                  "durations_s": [1000, 2000]}))
    code, out, _ = cli("sweep", "--config", str(config), "--lifetime", "880",
                       "--format", "json", "--no-progress")
    assert code == EXIT.OK
    rows = json.loads(out)["rows"]
    assert [row["duration_s"] for row in rows] == [1000, 2000]
    assert rows[0]["survival_fraction"] == pytest.approx(
        math.exp(-1000 / 880), rel=1e-8)


def test_sweep_config_multiples_follow_new_lifetime(cli, tmp_path):
    config = tmp_path / "sweep.json"
    config.write_text(json.dumps({
        "radii_m": [2e-3],
        "durations_s": {"multiples_of_lifetime": [1, 2]},
    }))
    code, out, _ = cli("sweep", "--config", str(config), "--lifetime", "880",
                       "--format", "json", "--no-progress")
    assert code == EXIT.OK
    durations = [row["duration_s"] for row in json.loads(out)["rows"]]
    assert durations == pytest.approx([880, 1760])


@pytest.mark.parametrize("argv", [
    ("sweep", "--radii", "2e-3", "--durations", "887", "--format", "text"),
    ("orbit", "--speed", "0.5", "--steps", "10", "--format", "text"),
])
def test_tables_refuse_text_format(cli, argv):
    code, out, err = cli(*argv)
    assert code == EXIT.ERR_USAGE
    assert out == ""
    assert "cannot write text output" in err


@pytest.mark.parametrize("name, check", [
    ("result.csv", lambda text: text.splitlines()[0].startswith("speed_mps,")),
    ("result.json", lambda text: "manifest" in json.loads(text)),
    ("result.dat", lambda text: text.startswith("speed_mps ")),
])
def test_experiment_format_follows_out_suffix(cli, tmp_path, name, check):
    out_file = tmp_path / name
    code, _, _ = cli("experiment", "-q", "--out", str(out_file))
    assert code == EXIT.OK
    assert check(out_file.read_text())


def test_explicit_format_wins_over_suffix(cli, tmp_path):
    out_file = tmp_path / "sweep.csv"
    code, _, _ = cli("sweep", "--radii", "2e-3", "--durations", "887",
                     "--format", "json", "-q", "--out", str(out_file))
    assert code == EXIT.OK
    assert json.loads(out_file.read_text())["rows"][0]["radius_m"] == 0.002
