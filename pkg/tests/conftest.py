"""Common functions for all tests

"""

# Third party imports
import numpy as np
import pytest

# Eddyscan imports
from eddyscan import synth
from eddyscan.data import GridSpec, OceanFrame, Polarity, ScalarField2D, VectorField3D


@pytest.fixture
def single_eddy():
    """Factory for frames holding one Rankine eddy and nothing else"""

    def _single_eddy(center=(30, 30), polarity=Polarity.CYCLONIC, nx=61, ny=61, nz=1, **spec_args):
        spec = synth.SyntheticEddySpec(center=center, polarity=polarity, **spec_args)
        return synth.rankine_eddy(spec, GridSpec(nx, ny, nz))

    return _single_eddy


@pytest.fixture
def solid_body():
    """Factory for frames of solid-body rotation inside a disk, at rest outside

    The SSH has a parabolic dip (or bump) at the center matching the rotation
    sense.
    """

    def _solid_body(center=(30, 30), radius=8.0, omega=0.1, nx=61, ny=61, nz=1):
        jj, ii = np.mgrid[0:ny, 0:nx].astype(float)
        dx, dy = ii - center[0], jj - center[1]
        inside = np.hypot(dx, dy) <= radius
        u = np.where(inside, -omega * dy, 0.0)
        v = np.where(inside, omega * dx, 0.0)
        ssh = np.sign(omega) * 0.01 * np.minimum(dx ** 2 + dy ** 2, radius ** 2)
        grid = GridSpec(nx, ny, nz)
        return OceanFrame(
            grid,
            ssh=ScalarField2D(ssh),
            vel=VectorField3D(np.broadcast_to(u, grid.shape3d), np.broadcast_to(v, grid.shape3d)),
        )

    return _solid_body


@pytest.fixture
def three_eddy_scene():
    """Two cyclonic and one anticyclonic eddy with a meandering jet and noise"""
    return synth.SceneSpec(
        grid=GridSpec(200, 200, 10),
        eddies=(
            synth.SyntheticEddySpec(center=(50, 50), polarity=Polarity.CYCLONIC),
            synth.SyntheticEddySpec(center=(150, 50), polarity=Polarity.ANTICYCLONIC),
            synth.SyntheticEddySpec(center=(100, 105), polarity=Polarity.CYCLONIC),
        ),
        background=synth.BackgroundSpec(
            kind="meander", magnitude=0.5, amplitude=5, wavelength=60, y_center=172, ssh_amplitude=0.05
        ),
        noise_std=0.05,
        seed=7,
    )


@pytest.fixture
def three_eddy_frame(three_eddy_scene):
    return synth.compose_frame(three_eddy_scene, 0)
