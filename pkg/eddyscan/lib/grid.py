"""Numerics on gridded fields

Description:
------------

Bilinear interpolation with land masks, finite-difference derivatives and the
derived scalar fields used by the detectors: net velocity (speed), vorticity
and the Okubo-Weiss parameter

    W = s_n**2 + s_s**2 - omega**2,

with normal strain s_n = du/dx - dv/dy, shear strain s_s = dv/dx + du/dy and
vorticity omega = dv/dx - du/dy. W is negative where rotation dominates
deformation.

Distances are measured in cells unless an explicit spacing is given. Masked
cells are replaced by zeros before any arithmetic and are dropped from the
result, so invalid values (even NaN) never leak into valid output.
"""

# Standard library imports
from typing import NamedTuple, Tuple

# Third party imports
import numpy as np
from scipy import ndimage

# Eddyscan imports
from eddyscan.data import ScalarField2D, VectorField3D
from eddyscan.lib import exceptions


#
# Interpolation
#
def bilinear_sample_points(
    field: ScalarField2D, xs: np.ndarray, ys: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """Bilinear interpolation at many cell coordinates

    Nodes are at integer coordinates. When some of the four surrounding nodes
    are masked the weights of the valid nodes are renormalized. Points where no
    valid node carries weight are returned as NaN and flagged invalid.

    Args:
        field:  Field to sample.
        xs:     Cell coordinates along x (columns).
        ys:     Cell coordinates along y (rows).

    Returns:
        Sampled values and a boolean array that is True where the sample is valid.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    outside = ~((xs >= 0) & (xs <= field.nx - 1) & (ys >= 0) & (ys <= field.ny - 1))
    if outside.any():
        idx = np.flatnonzero(outside)[0]
        raise exceptions.SampleOutOfDomainError(
            f"Sample ({xs.flat[idx]:.3f}, {ys.flat[idx]:.3f}) outside grid "
            f"{field.nx}x{field.ny}"
        )

    i0 = np.clip(np.floor(xs).astype(int), 0, max(field.nx - 2, 0))
    j0 = np.clip(np.floor(ys).astype(int), 0, max(field.ny - 2, 0))
    i1 = np.minimum(i0 + 1, field.nx - 1)
    j1 = np.minimum(j0 + 1, field.ny - 1)
    fx = xs - i0
    fy = ys - j0

    total = np.zeros(xs.shape)
    weight_sum = np.zeros(xs.shape)
    num_valid = np.zeros(xs.shape, dtype=int)
    nodes = (
        (j0, i0, (1 - fx) * (1 - fy)),
        (j0, i1, fx * (1 - fy)),
        (j1, i0, (1 - fx) * fy),
        (j1, i1, fx * fy),
    )
    for j, i, weight in nodes:
        is_valid = field.mask[j, i]
        weight = np.where(is_valid, weight, 0.0)
        total += weight * np.where(is_valid, field.values[j, i], 0.0)
        weight_sum += weight
        num_valid += is_valid

    valid = weight_sum > 0
    renormalized = total / np.where(valid, weight_sum, 1.0)
    values = np.where(num_valid == 4, total, renormalized)
    return np.where(valid, values, np.nan), valid


def bilinear_sample(field: ScalarField2D, x: float, y: float) -> float:
    """Bilinear interpolation at one cell coordinate

    Args:
        field:  Field to sample.
        x:      Cell coordinate along x (columns).
        y:      Cell coordinate along y (rows).

    Returns:
        Interpolated value.
    """
    values, valid = bilinear_sample_points(field, np.array([x]), np.array([y]))
    if not valid[0]:
        raise exceptions.MaskedRegionError(f"No valid node around ({x:.3f}, {y:.3f})")
    return float(values[0])


#
# Derivatives
#
def _axis_derivative(field: ScalarField2D, axis: int, step: float) -> Tuple[np.ndarray, np.ndarray]:
    """Derivative along one axis with one-sided differences next to gaps"""
    pad = [(0, 0), (0, 0)]
    pad[axis] = (1, 1)
    values = np.pad(field.filled(0.0), pad, mode="constant")
    mask = np.pad(field.mask, pad, mode="constant", constant_values=False)

    ahead = [slice(None), slice(None)]
    behind = [slice(None), slice(None)]
    ahead[axis] = slice(2, None)
    behind[axis] = slice(None, -2)
    f, f_next, f_prev = field.filled(0.0), values[tuple(ahead)], values[tuple(behind)]
    m_next, m_prev = mask[tuple(ahead)], mask[tuple(behind)]

    derivative = np.where(
        m_next & m_prev,
        (f_next - f_prev) / (2 * step),
        np.where(m_next, (f_next - f) / step, (f - f_prev) / step),
    )
    valid = field.mask & (m_next | m_prev)
    return np.where(valid, derivative, 0.0), valid


def central_gradient(
    field: ScalarField2D, dx: float = 1.0, dy: float = 1.0
) -> Tuple[ScalarField2D, ScalarField2D]:
    """Gradient by centered differences

    Centered differences are used in the interior, one-sided differences at the
    grid boundary and next to masked cells. Cells without a valid neighbour
    along an axis are masked in the output.

    Args:
        field:  Field to differentiate, at least 3x3 cells.
        dx:     Spacing along x.
        dy:     Spacing along y.

    Returns:
        The derivatives along x and along y.
    """
    if field.nx < 3 or field.ny < 3:
        raise exceptions.GridError(f"Gradient needs at least 3x3 cells, got {field.nx}x{field.ny}")

    dfdx, mask_x = _axis_derivative(field, axis=1, step=dx)
    dfdy, mask_y = _axis_derivative(field, axis=0, step=dy)
    return ScalarField2D(dfdx, mask_x), ScalarField2D(dfdy, mask_y)


class VelocityGradients(NamedTuple):
    """Horizontal velocity gradient tensor on one layer"""

    dudx: np.ndarray
    dudy: np.ndarray
    dvdx: np.ndarray
    dvdy: np.ndarray
    mask: np.ndarray


def velocity_gradients(
    vel: VectorField3D, layer: int, spacing: Tuple[float, float] = (1.0, 1.0)
) -> VelocityGradients:
    """Horizontal velocity gradients on one layer

    Args:
        vel:      Velocity field.
        layer:    Index of the layer.
        spacing:  Grid spacing (dx, dy), cells by default.

    Returns:
        The four gradient components and the mask where all of them are valid.
    """
    u, v = vel.layer(layer)
    dudx, dudy = central_gradient(u, *spacing)
    dvdx, dvdy = central_gradient(v, *spacing)
    mask = dudx.mask & dudy.mask & dvdx.mask & dvdy.mask
    return VelocityGradients(dudx.values, dudy.values, dvdx.values, dvdy.values, mask)


def okubo_weiss(
    vel: VectorField3D, layer: int, spacing: Tuple[float, float] = (1.0, 1.0)
) -> ScalarField2D:
    """The Okubo-Weiss parameter on one layer

    Args:
        vel:      Velocity field.
        layer:    Index of the layer.
        spacing:  Grid spacing (dx, dy), cells by default.

    Returns:
        W = normal strain**2 + shear strain**2 - vorticity**2.
    """
    g = velocity_gradients(vel, layer, spacing)
    normal_strain = g.dudx - g.dvdy
    shear_strain = g.dvdx + g.dudy
    omega = g.dvdx - g.dudy
    ow = normal_strain ** 2 + shear_strain ** 2 - omega ** 2
    return ScalarField2D(np.where(g.mask, ow, 0.0), g.mask)


def vorticity(
    vel: VectorField3D, layer: int, spacing: Tuple[float, float] = (1.0, 1.0)
) -> ScalarField2D:
    """Relative vorticity dv/dx - du/dy on one layer, positive counterclockwise"""
    g = velocity_gradients(vel, layer, spacing)
    return ScalarField2D(np.where(g.mask, g.dvdx - g.dudy, 0.0), g.mask)


def speed(vel: VectorField3D, layer: int) -> ScalarField2D:
    """Net horizontal velocity sqrt(u**2 + v**2) on one layer"""
    u, v = vel.layer(layer)
    return ScalarField2D(np.hypot(u.filled(0.0), v.filled(0.0)), u.mask)


def smoothed_speed(vel: VectorField3D, layer: int, width: int = 3) -> ScalarField2D:
    """Net velocity of the velocity averaged over a width x width window

    The components are averaged over the valid cells of each window before the
    net velocity is taken, so noise does not add up in the magnitude. A linear
    velocity field, like solid-body rotation, is unchanged away from land and
    the grid boundary.

    Args:
        vel:    Velocity field.
        layer:  Index of the layer.
        width:  Width of the window, 1 gives the plain net velocity.

    Returns:
        Net velocity of the averaged components, masked like the velocity.
    """
    if width <= 1:
        return speed(vel, layer)

    u, v = vel.layer(layer)
    weight = ndimage.uniform_filter(u.mask.astype(float), size=width, mode="constant")
    weight = np.where(weight > 0, weight, 1.0)
    u_mean = ndimage.uniform_filter(u.filled(0.0), size=width, mode="constant") / weight
    v_mean = ndimage.uniform_filter(v.filled(0.0), size=width, mode="constant") / weight
    return ScalarField2D(np.where(u.mask, np.hypot(u_mean, v_mean), 0.0), u.mask)
