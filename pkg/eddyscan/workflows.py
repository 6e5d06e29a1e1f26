"""Workflows behind the command line tool

Description:
------------

Each workflow takes loaded frames (or paths) and a RunConfig and returns a
report or a table. The command line tool only parses options, calls one
workflow and writes the result. Timings cover the detection phases only,
loading frames is never timed.
"""

# Standard library imports
from dataclasses import replace
import logging
import pathlib
import statistics
import time
from typing import Any, List, Optional, Sequence, Union

# Third party imports
import pandas as pd

# Eddyscan imports
from eddyscan import detectors
from eddyscan import readers
from eddyscan import synth
from eddyscan import track as tracking
from eddyscan import writers
from eddyscan.data import Criterion, DetectionReport, OceanFrame
from eddyscan.lib import exceptions
from eddyscan.lib.config import RunConfig, parameter_names, parse_value
from eddyscan.verify import ring_table, sample_ring

log = logging.getLogger(__name__)

PathType = Union[str, pathlib.Path]


def detect(frame: OceanFrame, config: RunConfig) -> DetectionReport:
    """Run the configured detector on one frame"""
    log.info(f"Detecting eddies in {frame} with the {config.method} detector")
    return detectors.detect(frame, config)


def write_rings(frame: OceanFrame, report: DetectionReport, directory: PathType) -> List[pathlib.Path]:
    """Write the ring diagnostics of each eddy at its surface radius

    One CSV file per eddy is written, named `ring_<id>.csv`. Eddies whose ring
    cannot be sampled are skipped with a warning.

    Returns:
        Paths of the files written.
    """
    directory = pathlib.Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for eddy in report.eddies:
        surface = eddy.surface
        try:
            ring = sample_ring(frame, 0, surface.center, surface.radius)
        except exceptions.DataValidationError as err:
            log.warning(f"No ring diagnostics for eddy {eddy.id}: {err}")
            continue
        path = directory / f"ring_{eddy.id:04d}.csv"
        writers.write_file(path, "csv", ring_table(ring, eddy.polarity))
        paths.append(path)
    return paths


def sweep(frame: OceanFrame, config: RunConfig, parameter: str, values: Sequence[Any]) -> pd.DataFrame:
    """Detection counts for each value of one parameter

    Args:
        frame:      Frame to analyse.
        config:     Configuration of everything but the swept parameter.
        parameter:  Flat parameter name, for instance 're' or 'ow_k'.
        values:     Values of the parameter, as text or typed values.

    Returns:
        One row per value with the candidate, acceptance and rejection counts.
    """
    if parameter not in parameter_names():
        raise exceptions.ConfigError(
            f"Unknown parameter '{parameter}'. Use one of {', '.join(sorted(parameter_names()))}"
        )
    typed = [parse_value(parameter, v) if isinstance(v, str) else v for v in values]

    rows = []
    for value in typed:
        report = detect(frame, config.with_overrides(**{parameter: value}))
        row = {parameter: value, "candidates": report.candidates_total, "accepted": report.accepted}
        row.update({c.value: report.rejections_by_criterion.get(c, 0) for c in Criterion})
        rows.append(row)
        log.info(f"{parameter}={value}: {report.candidates_total} candidates, {report.accepted} accepted")

    columns = [parameter, "candidates", "accepted"] + [c.value for c in Criterion]
    return pd.DataFrame(rows, columns=columns)


def bench(
    frame: OceanFrame, config: RunConfig, methods: Sequence[str], repetitions: int = 3
) -> pd.DataFrame:
    """Median wall-clock time of detectors on one frame, single-threaded

    Args:
        frame:        Frame to analyse.
        config:       Configuration, the method and workers are overridden.
        methods:      Names of the detectors to compare.
        repetitions:  Number of runs per detector.

    Returns:
        One row per method with the median and fastest run and the eddy count.
    """
    if repetitions < 1:
        raise exceptions.ConfigError(f"Repetitions must be at least 1, got {repetitions}")
    for method in methods:
        if not detectors.exists(method):
            raise exceptions.UnknownPluginError(
                f"Unknown method '{method}'. Use one of {', '.join(detectors.names())}"
            )

    rows = []
    for method in methods:
        method_config = replace(config, method=method, workers=1)
        seconds = []
        for _ in range(repetitions):
            report = detectors.detect(frame, method_config)
            seconds.append(sum(report.timing.values()))
        rows.append(
            dict(
                method=method,
                repetitions=repetitions,
                median_seconds=statistics.median(seconds),
                min_seconds=min(seconds),
                eddies=report.accepted,
            )
        )
        log.info(f"{method}: median {statistics.median(seconds):.4f} s over {repetitions} runs")
    return pd.DataFrame(rows, columns=["method", "repetitions", "median_seconds", "min_seconds", "eddies"])


def track(frames: Sequence[OceanFrame], config: RunConfig, top: Optional[int] = None) -> pd.DataFrame:
    """Detect eddies on each frame and follow them through time

    Args:
        frames:  At least two frames, in any order.
        config:  Run configuration.
        top:     Keep only this many tracks, those with the largest radius.

    Returns:
        One row per observation of each track.
    """
    if len(frames) < 2:
        raise exceptions.ConfigError(f"Tracking needs at least 2 frames, got {len(frames)}")
    ordered = sorted(frames, key=lambda f: f.frame_index)
    reports = [detect(f, config) for f in ordered]
    tracks = tracking.associate(reports, config.track)
    if top is not None:
        tracks = tracking.top_n(tracks, top)
    return tracking.tracks_dataframe(tracks)


def load_frames(paths: Sequence[PathType]) -> List[OceanFrame]:
    """Load frames, timing excluded from every workflow"""
    start = time.perf_counter()
    frames = [readers.load_frame(p) for p in paths]
    log.info(f"Loaded {len(frames)} frames in {time.perf_counter() - start:.2f} s")
    return frames


def write_scene(scene_path: PathType, directory: PathType) -> List[pathlib.Path]:
    """Write every frame of a synthetic scene as raw frame files

    Args:
        scene_path:  JSON description of the scene.
        directory:   Directory for the frame files.

    Returns:
        Paths of the frame headers, `frame_<index>.json`.
    """
    scene = synth.read_scene(scene_path)
    directory = pathlib.Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for frame in synth.compose_scene(scene):
        path = directory / f"frame_{frame.frame_index:04d}.json"
        writers.write_file(path, "raw", frame)
        paths.append(path)
    log.info(f"Wrote {len(paths)} frames to {directory}")
    return paths
