"""Eddy detectors

Description:
------------

To add a new detector, create a new .py-file with a function `detect` that
takes a frame and a run configuration and returns a DetectionReport. The
function must be decorated with the `eddyscan.lib.plugins.register`
decorator:

    from eddyscan.lib import plugins

    @plugins.register
    def detect(frame, config):
        ...

To run a detector, use :func:`detect`:

    from eddyscan import detectors
    report = detectors.detect(frame, config)

The detector is picked by `config.method`, which is the name of the module
(file) containing the detector.
"""

# Standard library imports
from typing import List, Tuple

# Eddyscan imports
from eddyscan.data import DetectionReport, OceanFrame
from eddyscan.lib import plugins
from eddyscan.lib.config import RunConfig


def names() -> Tuple[str, ...]:
    """List the names of available detectors

    Note that this will import all detectors.

    Returns:
        Names of the available detectors.
    """
    return plugins.names(__name__)


def exists(method: str) -> bool:
    """Check whether the given detector exists"""
    return plugins.exists(__name__, method)


def short_docs(*methods: str) -> List[Tuple[str, str]]:
    """One line documentation for detectors, all of them if none are named"""
    return plugins.short_docs(__name__, *methods)


def detect(frame: OceanFrame, config: RunConfig) -> DetectionReport:
    """Run the detector named by config.method on one frame

    Args:
        frame:   Frame to analyse.
        config:  Run configuration.

    Returns:
        The detection report.
    """
    return plugins.call(__name__, config.method, frame=frame, config=config)
