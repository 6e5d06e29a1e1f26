"""Common functions for all readers tests

"""

# Standard library imports
import json
import pathlib

# Third party imports
import numpy as np
import pytest


@pytest.fixture
def write_raw_frame(tmpdir):
    """Factory writing a header and payload files by hand

    Payloads are given as arrays and written as little-endian 32-bit floats.
    Header fields can be overridden or removed (by giving None).
    """

    def _write_raw_frame(payloads, stem="frame", **header_fields):
        directory = pathlib.Path(tmpdir)
        variables = dict()
        for variable, values in payloads.items():
            file_name = f"{stem}.{variable}.f32"
            np.asarray(values, dtype="<f4").tofile(directory / file_name)
            variables[variable] = file_name

        header = dict(nx=4, ny=3, nz=2, variables=variables)
        header.update(header_fields)
        header = {k: v for k, v in header.items() if v is not None}
        header_path = directory / f"{stem}.json"
        header_path.write_text(json.dumps(header))
        return header_path

    return _write_raw_frame


@pytest.fixture
def toy_payloads():
    """SSH and velocity on a 4 x 3 x 2 grid, with one u-value set to the fill value"""
    u = np.arange(24, dtype=float).reshape(2, 3, 4) / 4
    u[1, 2, 3] = -9999.0
    return dict(
        ssh=np.arange(12, dtype=float).reshape(3, 4) / 8,
        u=u,
        v=-np.arange(24, dtype=float).reshape(2, 3, 4) / 2,
    )
