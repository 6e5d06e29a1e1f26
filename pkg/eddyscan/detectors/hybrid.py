"""Hybrid SSH and velocity detector with 3D footprints

Description:
------------

Candidate centers are net-velocity minima next to SSH extrema. Each candidate
is verified on a circular test path, grown into a disk and followed down
through the layers. See `eddyscan.extract` for the details.
"""

# Eddyscan imports
from eddyscan import extract
from eddyscan.data import DetectionReport, OceanFrame
from eddyscan.lib import plugins
from eddyscan.lib.config import RunConfig


@plugins.register
def detect(frame: OceanFrame, config: RunConfig) -> DetectionReport:
    return extract.detect_hybrid(frame, config.search, config.verify, workers=config.workers)
