"""Common functions for all writers tests

"""

# Standard library imports
import sys

# Third party imports
import pytest

# Eddyscan imports
from eddyscan import writers
from eddyscan.data import Criterion, DetectionReport, Eddy3D, EddyLayer, Polarity, PropertyStats


@pytest.fixture
def write_and_read(tmpdir):
    """Factory for write and read functions

    Creates a function that can write a report or table to a temporary file
    using the given writer, and then reads back the file as a string.
    """

    def _write_and_read(writer, data, encoding="utf-8"):
        file_path = tmpdir.join(f"test_{writer}")
        writers.write_file(file_path, writer, data)
        return file_path.read_text(encoding=encoding)

    return _write_and_read


@pytest.fixture
def write_to_stdout():
    """Factory for functions that write to stdout

    This is needed as a workaround because Pytest mocks out standard out
    """

    def _write_to_stdout(writer, data, encoding="utf-8"):
        writers.write_stream(sys.stdout.buffer, writer, data)

    return _write_to_stdout


@pytest.fixture
def report():
    """A report with one two-layer eddy and one single-layer eddy"""
    stats = PropertyStats(mean=20.5, min=19.0, max=22.0, count=13)
    first = Eddy3D(
        1,
        Polarity.CYCLONIC,
        (EddyLayer(0, (50, 60), 11), EddyLayer(1, (51, 60), 10)),
        ({"temperature": stats}, {"temperature": None}),
    )
    second = Eddy3D(2, Polarity.ANTICYCLONIC, (EddyLayer(0, (120, 80), 9),))
    report = DetectionReport(
        eddies=[first, second],
        candidates_total=5,
        timing=dict(verify=0.25, centers=0.5),
        frame_index=4,
    )
    report.count_rejections([Criterion.C3, Criterion.C3, Criterion.DUPLICATE])
    return report
