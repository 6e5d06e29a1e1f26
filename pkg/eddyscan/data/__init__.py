"""Data structures of Eddyscan

The gridded ocean fields that are analysed, and the candidates, eddies and
reports that the detectors produce.
"""

from eddyscan.data.fields import GridSpec, OceanFrame, ScalarField2D, ScalarField3D, VectorField3D  # noqa
from eddyscan.data.eddy import (  # noqa
    Cell,
    CenterCandidate,
    Criterion,
    DetectionReport,
    Eddy3D,
    EddyLayer,
    Polarity,
    PropertyStats,
)
