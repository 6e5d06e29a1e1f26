#!/usr/bin/env python3
"""Eddyscan, detecting three-dimensional ocean eddies in gridded model output

Eddyscan finds eddies in frames of SSH and velocity, compares detectors,
sweeps parameters and tracks eddies over time. Frames are JSON headers with
raw float payloads, see `eddyscan synth` for a way to create some.

\b
Examples:
---------

Create frames from a synthetic scene and detect eddies in the first one:

  $ eddyscan synth scene.json frames/
  $ eddyscan detect frames/frame_0000.json -o report.json

Count accepted eddies for several values of a threshold:

  $ eddyscan sweep frames/frame_0000.json sv 1 2 3 5 8

\b
Detectors:
----------

\b
{detectors}

\b
About Eddyscan:
---------------

Eddyscan, v{version}, MIT License {copyright}

Currently maintained by:

\b
{maintainers}

Contributions are welcome at {url}.

"""

# Standard library imports
import functools
import logging
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

# Third party imports
import click

# Eddyscan imports
import eddyscan
from eddyscan import detectors
from eddyscan import workflows
from eddyscan import writers
from eddyscan.lib import exceptions
from eddyscan.lib import log as eddyscan_log
from eddyscan.lib.config import RunConfig

log = logging.getLogger(__name__)


def help_str() -> str:
    """Add information to the module doc-string for a complete help message"""
    maintainers = [
        f"  + {name} <{email}>"
        for name, email in zip(eddyscan.__author__.split(", "), eddyscan.__contact__.split(", "))
    ]
    return __doc__.format(
        detectors="\n".join(f"  + {name} - {doc}" for name, doc in detectors.short_docs()),
        maintainers="\n".join(maintainers),
        url=eddyscan.__url__,
        copyright=eddyscan.__copyright__,
        version=eddyscan.__version__,
    )


# Command line flags overriding parameters: (flag, flat parameter name, type, help)
PARAMETER_FLAGS: Tuple[Tuple[str, str, type, str], ...] = (
    ("--re", "re", int, "Width of the SSH extremum window."),
    ("--rv", "rv", int, "Width of the velocity minimum window."),
    ("--rc", "rc", int, "Width of the center window on deeper layers."),
    ("--rs", "rs", int, "Initial radius of the test path."),
    ("--smooth", "smooth", int, "Width of the velocity average used to locate minima, 1 for none."),
    ("--sv", "sv", float, "Largest speed ratio of consecutive ring samples."),
    ("--sa", "sa", float, "Largest negative angular difference, degrees."),
    ("--sae", "sae", float, "Largest positive angular difference, degrees."),
    ("--san", "san", int, "Number of positive angular differences tolerated."),
    ("--sd", "sd", float, "Largest deviation from the tangent, degrees."),
    ("--sy", "sy", float, "Tolerance of the symmetry angle, degrees."),
    ("--ow-k", "ow_k", float, "Okubo-Weiss threshold constant."),
    ("--ow-window", "ow_window", int, "Width of the Okubo-Weiss minimum window."),
    ("--ow-connectivity", "ow_connectivity", int, "Okubo-Weiss region connectivity, 4 or 8."),
    ("--wa-spacing", "wa_spacing", float, "Distance between streamline seeds."),
    ("--wa-step", "wa_step", float, "Streamline integration step."),
    ("--wa-max-steps", "wa_max_steps", int, "Largest number of integration steps."),
    ("--wa-threshold", "wa_threshold", float, "Smallest winding angle, degrees."),
    ("--wa-closure", "wa_closure_distance", float, "Streamline closure distance."),
    ("--wa-merge", "wa_merge_distance", float, "Streamline cluster merge distance."),
    ("--max-displacement", "max_displacement", float, "Largest eddy displacement per frame."),
    ("--max-missed", "max_missed_frames", int, "Frames an eddy may be missing from a track."),
    ("--workers", "workers", int, "Number of parallel workers."),
    ("--method", "method", str, "Detector to run."),
)


def parameter_options(func: Callable) -> Callable:
    """Add the parameter override flags to a command"""
    for flag, name, flag_type, help_text in reversed(PARAMETER_FLAGS):
        func = click.option(flag, name, type=flag_type, default=None, help=help_text)(func)
    return func


def handle_errors(func: Callable) -> Callable:
    """Report errors on one line and exit with their exit code

    Eddyscan errors exit with the code of their category. Any other error is
    reported as an internal error with exit code 1, the traceback is logged at
    debug level.
    """

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except (click.exceptions.Exit, click.ClickException, click.Abort):
            raise
        except exceptions.EddyscanException as err:
            category, exit_code = err.category, err.exit_code
            message = " ".join(str(err).split())
        except Exception as err:
            log.debug("Unexpected error", exc_info=True)
            category, exit_code = "internal", 1
            message = " ".join(f"{type(err).__name__}: {err}".split())
        click.echo(f"eddyscan-error[{category}]: {message}", err=True)
        click.get_current_context().exit(exit_code)

    return wrapper


def _config(ctx: click.Context, overrides: Dict[str, Any]) -> RunConfig:
    """The configuration file, if any, with command line overrides"""
    config_path = ctx.obj.get("config_path")
    config = RunConfig() if config_path is None else RunConfig.from_file(config_path)
    return config.with_overrides(**overrides)


def _write_table(table: Any, output: Optional[str]) -> None:
    if output is None:
        writers.write_stream(click.get_binary_stream("stdout"), "csv", table)
    else:
        writers.write_file(output, "csv", table)
        log.info(f"Wrote {output}")


#
# Starting Point of Command Line Tool
#
@click.group(help=help_str())
@click.option("-c", "--config", "config_path", help="JSON configuration file.")
@click.option("-V", "--verbose", is_flag=True, help="Say what is happening.")
@click.option("--debug", is_flag=True, help="Also log every rejected candidate.")
@click.version_option(eddyscan.__version__, "-v", "--version")
@click.help_option("-h", "--help")
@click.pass_context
def cli(ctx: click.Context, config_path: Optional[str], verbose: bool, debug: bool) -> None:
    """The command line interface for Eddyscan

    Implemented using click: http://click.pocoo.org
    """
    eddyscan_log.setup(verbose=verbose, debug=debug)
    ctx.obj = dict(config_path=config_path)


@cli.command()
@click.argument("frame_path")
@click.option("-o", "--output", help="Path of the JSON report. Default is stdout.")
@click.option("--table", help="Also write the eddies as a CSV table.")
@click.option("--rings", help="Directory for ring diagnostics of each eddy.")
@parameter_options
@click.pass_context
@handle_errors
def detect(
    ctx: click.Context, frame_path: str, output: Optional[str], table: Optional[str], rings: Optional[str], **overrides: Any
) -> None:
    """Detect eddies in one frame"""
    config = _config(ctx, overrides)
    frame = workflows.load_frames([frame_path])[0]
    report = workflows.detect(frame, config)

    output = output or config.report
    if output is None:
        writers.write_stream(click.get_binary_stream("stdout"), "json", report)
    else:
        writers.write_file(output, "json", report)
    if table is not None:
        writers.write_file(table, "csv", report)

    rings = rings or config.rings
    if rings is not None:
        workflows.write_rings(frame, report, rings)


@cli.command()
@click.argument("frame_path")
@click.argument("parameter")
@click.argument("values", nargs=-1)
@click.option("-o", "--output", help="Path of the CSV table. Default is stdout.")
@parameter_options
@click.pass_context
@handle_errors
def sweep(
    ctx: click.Context, frame_path: str, parameter: str, values: Sequence[str], output: Optional[str], **overrides: Any
) -> None:
    """Count detections for each value of one parameter"""
    config = _config(ctx, overrides)
    frame = workflows.load_frames([frame_path])[0]
    _write_table(workflows.sweep(frame, config, parameter, values), output)


@cli.command()
@click.argument("frame_path")
@click.option(
    "-m", "--methods", multiple=True, default=("hybrid", "ow", "wa"), show_default=True, help="Detectors to compare."
)
@click.option("-r", "--repetitions", type=int, default=3, show_default=True, help="Runs per detector.")
@click.option("-o", "--output", help="Path of the CSV table. Default is stdout.")
@parameter_options
@click.pass_context
@handle_errors
def bench(
    ctx: click.Context,
    frame_path: str,
    methods: Sequence[str],
    repetitions: int,
    output: Optional[str],
    **overrides: Any,
) -> None:
    """Compare the run time of detectors, single-threaded"""
    config = _config(ctx, overrides)
    frame = workflows.load_frames([frame_path])[0]
    _write_table(workflows.bench(frame, config, methods, repetitions), output)


@cli.command()
@click.argument("frame_paths", nargs=-1)
@click.option("--top", type=int, help="Keep only the tracks of the largest eddies.")
@click.option("-o", "--output", help="Path of the CSV table. Default is stdout.")
@parameter_options
@click.pass_context
@handle_errors
def track(
    ctx: click.Context, frame_paths: Sequence[str], top: Optional[int], output: Optional[str], **overrides: Any
) -> None:
    """Follow eddies through a series of frames"""
    config = _config(ctx, overrides)
    if len(frame_paths) < 2:
        raise exceptions.ConfigError(f"Tracking needs at least 2 frames, got {len(frame_paths)}")
    frames = workflows.load_frames(frame_paths)
    _write_table(workflows.track(frames, config, top), output)


@cli.command()
@click.argument("scene_path")
@click.argument("directory")
@handle_errors
def synth(scene_path: str, directory: str) -> None:
    """Write the frames of a synthetic scene"""
    for path in workflows.write_scene(scene_path, directory):
        click.echo(str(path))


if __name__ == "__main__":
    cli()
