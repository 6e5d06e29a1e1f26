"""Tests for the command line interface

"""

# Standard library imports
import io
import json
import pathlib

# Third party imports
from click.testing import CliRunner
import pandas as pd
import pytest

# Eddyscan imports
import eddyscan
from eddyscan import workflows
from eddyscan import writers
from eddyscan.__main__ import cli
from eddyscan.data import OceanFrame


@pytest.fixture
def run():
    """Run the command line tool with the given arguments"""
    runner = CliRunner()

    def _run(*args):
        return runner.invoke(cli, [str(a) for a in args])

    return _run


@pytest.fixture
def frame_path(tmpdir, single_eddy):
    """Raw frame file with one cyclonic eddy"""
    file_path = pathlib.Path(tmpdir) / "frame_0000.json"
    writers.write_file(file_path, "raw", single_eddy())
    return file_path


#
# General
#
def test_help(run):
    result = run("--help")
    assert result.exit_code == 0
    for name in ("hybrid", "ow", "wa", "detect", "sweep", "bench", "track", "synth"):
        assert name in result.output


def test_version(run):
    result = run("--version")
    assert result.exit_code == 0
    assert eddyscan.__version__ in result.output


#
# Detect
#
def test_detect_to_stdout(run, frame_path):
    result = run("detect", frame_path)
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["method"] == "hybrid"
    assert report["accepted"] == 1
    assert report["eddies"][0]["polarity"] == "cyclonic"


def test_detect_to_files(run, frame_path, tmpdir):
    directory = pathlib.Path(tmpdir)
    result = run(
        "detect", frame_path, "-o", directory / "report.json", "--table", directory / "eddies.csv",
        "--rings", directory / "rings",
    )
    assert result.exit_code == 0
    assert json.loads((directory / "report.json").read_text())["accepted"] == 1
    assert len(pd.read_csv(directory / "eddies.csv")) == 1
    assert [p.name for p in (directory / "rings").iterdir()] == ["ring_0001.csv"]


def test_detect_other_method(run, frame_path):
    result = run("detect", frame_path, "--method", "ow", "--ow-k", "0.5")
    assert result.exit_code == 0
    assert json.loads(result.output)["method"] == "ow"


def test_config_file(run, frame_path, tmpdir):
    config_path = pathlib.Path(tmpdir) / "config.json"
    config_path.write_text(json.dumps(dict(method="wa", wa=dict(spacing=6.0))))
    result = run("-c", config_path, "detect", frame_path)
    assert result.exit_code == 0
    assert json.loads(result.output)["method"] == "wa"


#
# Errors
#
def test_missing_frame(run, tmpdir):
    result = run("detect", pathlib.Path(tmpdir) / "missing.json")
    assert result.exit_code == 3
    assert "eddyscan-error[io]:" in result.output


@pytest.mark.parametrize(
    "args",
    [
        ("detect", "--sv", "0.5"),
        ("detect", "--method", "lagrangian"),
        ("detect", "--re", "4"),
        ("sweep", "radius", "1", "2"),
    ],
)
def test_config_errors(run, frame_path, args):
    command, *rest = args
    result = run(command, frame_path, *rest)
    assert result.exit_code == 2
    assert "eddyscan-error[config]:" in result.output


def test_invalid_config_file(run, frame_path, tmpdir):
    config_path = pathlib.Path(tmpdir) / "config.json"
    config_path.write_text(json.dumps(dict(verify=dict(speed=3))))
    result = run("-c", config_path, "detect", frame_path)
    assert result.exit_code == 2


def test_frame_without_velocity(run, tmpdir, single_eddy):
    frame = single_eddy()
    file_path = pathlib.Path(tmpdir) / "ssh_only.json"
    writers.write_file(file_path, "raw", OceanFrame(frame.grid, ssh=frame.ssh))
    result = run("detect", file_path)
    assert result.exit_code == 4
    assert "eddyscan-error[data]: Frame is missing variable 'u'" in result.output


@pytest.mark.parametrize(
    "header_fields, message",
    [
        (dict(dz=5), "Header field 'dz' must be a list of numbers"),
        (dict(dx="abc"), "Header field 'dx' must be a number"),
        (dict(dz=[1.0, 2.0]), "Header field 'dz' has 2 layer thicknesses, expected nz=1"),
    ],
)
def test_malformed_header(run, frame_path, header_fields, message):
    header = json.loads(frame_path.read_text())
    header.update(header_fields)
    frame_path.write_text(json.dumps(header))

    result = run("detect", frame_path)
    assert result.exit_code == 3
    assert f"eddyscan-error[io]: {message}" in result.output
    assert "Traceback" not in result.output


def test_unexpected_error(run, frame_path, monkeypatch):
    def broken_detect(frame, config):
        raise ValueError("operands could not be broadcast")

    monkeypatch.setattr(workflows, "detect", broken_detect)
    result = run("detect", frame_path)
    assert result.exit_code == 1
    assert "eddyscan-error[internal]: ValueError: operands could not be broadcast" in result.output


#
# Sweep, bench and track
#
def test_sweep(run, frame_path):
    result = run("sweep", frame_path, "sv", "1", "3")
    assert result.exit_code == 0
    table = pd.read_csv(io.StringIO(result.output))
    assert table.sv.tolist() == [1.0, 3.0]
    assert table.accepted.tolist()[-1] == 1


def test_sweep_without_values(run, frame_path, tmpdir):
    output = pathlib.Path(tmpdir) / "sweep.csv"
    result = run("sweep", frame_path, "re", "-o", output)
    assert result.exit_code == 0
    assert output.read_text().splitlines() == ["re,candidates,accepted,C1,C2,C2a,C3,C4,masked_ring,duplicate"]


def test_bench(run, frame_path):
    result = run("bench", frame_path, "-m", "hybrid", "-m", "ow", "-r", "1")
    assert result.exit_code == 0
    table = pd.read_csv(io.StringIO(result.output))
    assert table.method.tolist() == ["hybrid", "ow"]
    assert table.eddies.tolist() == [1, 1]


def test_track_needs_two_frames(run, frame_path):
    result = run("track", frame_path)
    assert result.exit_code == 2
    assert "at least 2 frames" in result.output


def test_synth_and_track(run, tmpdir):
    directory = pathlib.Path(tmpdir)
    scene = dict(grid=dict(nx=81, ny=61), eddies=[dict(center=[20, 30], advection=[2, 0])], frames=3)
    (directory / "scene.json").write_text(json.dumps(scene))

    result = run("synth", directory / "scene.json", directory / "frames")
    assert result.exit_code == 0
    paths = result.output.split()
    assert [pathlib.Path(p).name for p in paths] == ["frame_0000.json", "frame_0001.json", "frame_0002.json"]

    result = run("track", *paths, "--top", "1")
    assert result.exit_code == 0
    table = pd.read_csv(io.StringIO(result.output))
    assert table.track_id.tolist() == [1, 1, 1]
    assert table.x.tolist() == [20, 22, 24]


def test_synth_invalid_scene(run, tmpdir):
    directory = pathlib.Path(tmpdir)
    (directory / "scene.json").write_text(json.dumps(dict(grid=dict(nx=10, ny=10), eddies=[dict(center=[20, 5])])))
    result = run("synth", directory / "scene.json", directory / "frames")
    assert result.exit_code == 4
    assert "eddyscan-error[data]:" in result.output
