"""Tests for the lib.grid-module

"""

# Third party imports
import numpy as np
import pytest

# Eddyscan imports
from eddyscan.data import ScalarField2D, VectorField3D
from eddyscan.lib import exceptions
from eddyscan.lib import grid


@pytest.fixture
def square():
    """2x2 field with values 0, 1 on the first row and 2, 3 on the second"""
    return ScalarField2D(np.array([[0.0, 1.0], [2.0, 3.0]]))


def _velocity(u, v):
    return VectorField3D(u[None], v[None])


#
# Interpolation
#
def test_bilinear_center(square):
    assert grid.bilinear_sample(square, 0.5, 0.5) == pytest.approx(1.5)


def test_bilinear_nodes(square):
    assert grid.bilinear_sample(square, 1.0, 0.0) == 1.0
    assert grid.bilinear_sample(square, 0.0, 1.0) == 2.0
    assert grid.bilinear_sample(square, 1.0, 1.0) == 3.0


def test_bilinear_linear_field_is_exact():
    jj, ii = np.mgrid[0:10, 0:12].astype(float)
    field = ScalarField2D(2 * ii + 3 * jj)
    xs, ys = np.array([0.3, 5.75, 10.9]), np.array([8.2, 0.1, 4.4])
    values, valid = grid.bilinear_sample_points(field, xs, ys)
    assert valid.all()
    assert np.allclose(values, 2 * xs + 3 * ys)


def test_bilinear_masked_node_renormalizes():
    """A masked node drops out and the other weights are renormalized"""
    field = ScalarField2D(np.array([[0.0, 1.0], [2.0, 99.0]]), np.array([[True, True], [True, False]]))
    assert grid.bilinear_sample(field, 0.5, 0.5) == pytest.approx(1.0)


def test_bilinear_masked_nan_does_not_leak():
    field = ScalarField2D(np.array([[0.0, 1.0], [2.0, np.nan]]), np.array([[True, True], [True, False]]))
    values, valid = grid.bilinear_sample_points(field, np.array([0.25]), np.array([0.25]))
    assert valid[0]
    assert np.isfinite(values[0])


def test_bilinear_all_weight_on_masked_node():
    field = ScalarField2D(np.array([[0.0, 1.0], [2.0, 3.0]]), np.array([[True, True], [True, False]]))
    with pytest.raises(exceptions.MaskedRegionError):
        grid.bilinear_sample(field, 1.0, 1.0)


@pytest.mark.parametrize("x, y", [(-0.1, 0.5), (0.5, 1.01), (2.0, 0.0)])
def test_bilinear_outside(square, x, y):
    with pytest.raises(exceptions.SampleOutOfDomainError):
        grid.bilinear_sample(square, x, y)


#
# Derivatives
#
def test_central_gradient_linear():
    jj, ii = np.mgrid[0:6, 0:7].astype(float)
    dfdx, dfdy = grid.central_gradient(ScalarField2D(2 * ii - 5 * jj), dx=2.0, dy=0.5)
    assert np.allclose(dfdx.values, 1.0)
    assert np.allclose(dfdy.values, -10.0)
    assert dfdx.mask.all() and dfdy.mask.all()


@pytest.mark.parametrize("ny, nx", [(3, 3), (3, 9), (11, 4), (61, 61)])
def test_central_gradient_keeps_shape(ny, nx):
    """Derivatives cover every cell, including the rows and columns at the edges"""
    jj, ii = np.mgrid[0:ny, 0:nx].astype(float)
    dfdx, dfdy = grid.central_gradient(ScalarField2D(ii * jj))

    assert dfdx.shape == dfdy.shape == (ny, nx)
    assert dfdx.mask.all() and dfdy.mask.all()
    assert np.allclose(dfdx.values, jj)
    assert np.allclose(dfdy.values, ii)


def test_central_gradient_one_sided_next_to_land():
    """Next to a masked cell the derivative uses the valid side only"""
    values = np.tile(np.array([0.0, 1.0, 4.0, 9.0, 16.0]), (3, 1))
    mask = np.ones(values.shape, dtype=bool)
    mask[:, 3] = False
    dfdx, _ = grid.central_gradient(ScalarField2D(values, mask))

    assert dfdx.values[1, 1] == pytest.approx(2.0)  # (4 - 0) / 2
    assert dfdx.values[1, 2] == pytest.approx(3.0)  # (4 - 1) / 1
    assert not dfdx.mask[1, 3]
    assert not dfdx.mask[1, 4]  # no valid neighbour along x


def test_central_gradient_too_small():
    with pytest.raises(exceptions.GridError):
        grid.central_gradient(ScalarField2D(np.zeros((2, 5))))


#
# Derived fields
#
@pytest.mark.parametrize("omega", [0.3, -0.05, 2.0])
def test_okubo_weiss_solid_body(omega):
    """W = -4 omega**2 for solid-body rotation"""
    jj, ii = np.mgrid[0:20, 0:20].astype(float)
    vel = _velocity(-omega * (jj - 9.5), omega * (ii - 9.5))
    ow = grid.okubo_weiss(vel, 0)
    assert np.allclose(ow.values[2:-2, 2:-2], -4 * omega ** 2, rtol=0, atol=1e-6 * omega ** 2)


@pytest.mark.parametrize("gamma", [0.1, 3.0])
def test_okubo_weiss_pure_shear(gamma):
    """Shear strain and vorticity cancel"""
    jj, _ = np.mgrid[0:15, 0:15].astype(float)
    vel = _velocity(gamma * jj, np.zeros_like(jj))
    ow = grid.okubo_weiss(vel, 0)
    assert np.abs(ow.values).max() <= 1e-9 * gamma ** 2


def test_okubo_weiss_pure_strain():
    jj, ii = np.mgrid[0:15, 0:15].astype(float)
    vel = _velocity(0.5 * ii, -0.5 * jj)
    ow = grid.okubo_weiss(vel, 0)
    assert np.allclose(ow.values, 1.0)


def test_vorticity_sign():
    jj, ii = np.mgrid[0:10, 0:10].astype(float)
    ccw = grid.vorticity(_velocity(-(jj - 5), ii - 5), 0)
    cw = grid.vorticity(_velocity(jj - 5, -(ii - 5)), 0)
    assert np.allclose(ccw.values, 2.0)
    assert np.allclose(cw.values, -2.0)


def test_okubo_weiss_land_is_masked():
    u = np.ones((1, 8, 8))
    mask = np.ones(u.shape, dtype=bool)
    mask[0, 4, 4] = False
    u[0, 4, 4] = np.nan
    ow = grid.okubo_weiss(VectorField3D(u, np.zeros_like(u), mask=mask), 0)
    assert not ow.mask[4, 4]
    assert np.isfinite(ow.values).all()


def test_speed():
    u = np.full((2, 3, 4), 3.0)
    v = np.full((2, 3, 4), -4.0)
    net = grid.speed(VectorField3D(u, v), 1)
    assert net.shape == (3, 4)
    assert np.all(net.values == 5.0)


#
# Smoothed net velocity
#
def test_smoothed_speed_keeps_linear_field():
    """Averaging solid-body rotation leaves the interior unchanged"""
    jj, ii = np.mgrid[0:12, 0:14].astype(float)
    vel = _velocity(-(jj - 6), ii - 7)
    smoothed = grid.smoothed_speed(vel, 0, 3)
    assert np.allclose(smoothed.values[1:-1, 1:-1], grid.speed(vel, 0).values[1:-1, 1:-1])
    assert smoothed.values[6, 7] == pytest.approx(0.0)


def test_smoothed_speed_width_one_is_speed():
    rng = np.random.default_rng(5)
    vel = _velocity(rng.standard_normal((8, 9)), rng.standard_normal((8, 9)))
    assert np.array_equal(grid.smoothed_speed(vel, 0, 1).values, grid.speed(vel, 0).values)


def test_smoothed_speed_damps_noise():
    rng = np.random.default_rng(5)
    vel = _velocity(rng.standard_normal((40, 40)), rng.standard_normal((40, 40)))
    assert grid.smoothed_speed(vel, 0, 3).values.mean() < 0.5 * grid.speed(vel, 0).values.mean()


def test_smoothed_speed_skips_land():
    u = np.ones((1, 7, 7))
    u[0, 3, 3] = np.nan
    mask = np.ones(u.shape, dtype=bool)
    mask[0, 3, 3] = False
    smoothed = grid.smoothed_speed(VectorField3D(u, np.zeros_like(u), mask=mask), 0, 3)

    assert not smoothed.mask[3, 3]
    assert np.isfinite(smoothed.values).all()
    assert np.allclose(smoothed.values[smoothed.mask], 1.0)
