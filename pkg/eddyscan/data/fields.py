"""Gridded ocean fields

Description:
------------

The field types hold one time step of model output on a rectilinear grid:
the sea surface height (SSH) on the surface layer and the horizontal (and
optionally vertical) velocity, temperature and salinity on every layer.

Arrays are indexed `[row, column]` for 2D fields and `[layer, row, column]`
for 3D fields. The cell coordinate `(x, y)` of node `[j, i]` is `(i, j)`, so
x runs along columns (eastwards) and y along rows (northwards). Every field
carries a boolean mask where False marks land or missing data. Values at
masked cells are never used by any computation.

All field types are immutable: their arrays are copied on construction and
marked read-only.
"""

# Standard library imports
from dataclasses import dataclass, field
from typing import Optional, Tuple

# Third party imports
import numpy as np

# Eddyscan imports
from eddyscan.lib import exceptions


def _frozen_array(values: np.ndarray, dtype: type) -> np.ndarray:
    """Copy values into a read-only array"""
    array = np.array(values, dtype=dtype, copy=True)
    array.flags.writeable = False
    return array


@dataclass(frozen=True)
class GridSpec:
    """Geometry of a rectilinear grid

    Horizontal distances used by the detectors are measured in cells. The
    physical cell sizes dx, dy and the layer thicknesses dz are metadata.

    Attributes:
        nx:      Number of cells along x (columns).
        ny:      Number of cells along y (rows).
        nz:      Number of layers, layer 0 is the surface.
        dx:      Horizontal cell size along x.
        dy:      Horizontal cell size along y.
        dz:      Thickness of each layer.
        origin:  Optional (lon0, lat0) of node (0, 0).
    """

    nx: int
    ny: int
    nz: int = 1
    dx: float = 1.0
    dy: float = 1.0
    dz: Optional[Tuple[float, ...]] = None
    origin: Optional[Tuple[float, float]] = None

    def __post_init__(self) -> None:
        if self.nx < 1 or self.ny < 1 or self.nz < 1:
            raise exceptions.GridError(
                f"Grid must have at least one cell along every axis, got "
                f"nx={self.nx}, ny={self.ny}, nz={self.nz}"
            )
        if not (self.dx > 0 and self.dy > 0):
            raise exceptions.GridError(f"Cell sizes must be positive, got dx={self.dx}, dy={self.dy}")

        dz = (1.0,) * self.nz if self.dz is None else tuple(float(d) for d in self.dz)
        if len(dz) != self.nz:
            raise exceptions.GridError(f"Expected {self.nz} layer thicknesses, got {len(dz)}")
        if any(not d > 0 for d in dz):
            raise exceptions.GridError("Every layer thickness must be positive")
        object.__setattr__(self, "dz", dz)
        if self.origin is not None:
            object.__setattr__(self, "origin", tuple(float(o) for o in self.origin))

    @property
    def shape2d(self) -> Tuple[int, int]:
        return (self.ny, self.nx)

    @property
    def shape3d(self) -> Tuple[int, int, int]:
        return (self.nz, self.ny, self.nx)

    def contains(self, x: float, y: float) -> bool:
        """Check whether a cell coordinate lies inside the grid"""
        return 0 <= x <= self.nx - 1 and 0 <= y <= self.ny - 1


@dataclass(frozen=True, eq=False)
class ScalarField2D:
    """A scalar field on one horizontal layer

    Attributes:
        values:  Values indexed [row, column].
        mask:    True where the value is valid.
    """

    values: np.ndarray
    mask: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        values = _frozen_array(self.values, float)
        if values.ndim != 2:
            raise exceptions.GridError(f"Expected a 2D array, got shape {values.shape}")
        mask = np.ones(values.shape, dtype=bool) if self.mask is None else self.mask
        mask = _frozen_array(mask, bool)
        if mask.shape != values.shape:
            raise exceptions.GridError(
                f"Mask shape {mask.shape} does not match values shape {values.shape}"
            )
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "mask", mask)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.values.shape

    @property
    def ny(self) -> int:
        return self.values.shape[0]

    @property
    def nx(self) -> int:
        return self.values.shape[1]

    def filled(self, fill_value: float = 0.0) -> np.ndarray:
        """Values with every masked cell replaced by fill_value"""
        return np.where(self.mask, self.values, fill_value)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.ny}x{self.nx}, {int(self.mask.sum())} valid)"


@dataclass(frozen=True, eq=False)
class ScalarField3D:
    """A scalar field on every layer

    Attributes:
        values:  Values indexed [layer, row, column].
        mask:    True where the value is valid.
    """

    values: np.ndarray
    mask: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        values = _frozen_array(self.values, float)
        if values.ndim != 3:
            raise exceptions.GridError(f"Expected a 3D array, got shape {values.shape}")
        mask = np.ones(values.shape, dtype=bool) if self.mask is None else self.mask
        mask = _frozen_array(mask, bool)
        if mask.shape != values.shape:
            raise exceptions.GridError(
                f"Mask shape {mask.shape} does not match values shape {values.shape}"
            )
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "mask", mask)

    @property
    def shape(self) -> Tuple[int, int, int]:
        return self.values.shape

    def layer(self, layer: int) -> ScalarField2D:
        """View of one layer as a 2D field"""
        return ScalarField2D(self.values[layer], self.mask[layer])

    def __repr__(self) -> str:
        nz, ny, nx = self.shape
        return f"{self.__class__.__name__}({nz}x{ny}x{nx})"


@dataclass(frozen=True, eq=False)
class VectorField3D:
    """Velocity on every layer

    Attributes:
        u:     Eastward velocity, indexed [layer, row, column].
        v:     Northward velocity.
        w:     Optional vertical velocity.
        mask:  True where the velocity is valid, shared by all components.
    """

    u: np.ndarray
    v: np.ndarray
    w: Optional[np.ndarray] = None
    mask: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        u = _frozen_array(self.u, float)
        v = _frozen_array(self.v, float)
        if u.ndim != 3 or u.shape != v.shape:
            raise exceptions.GridError(
                f"u and v must be 3D arrays of equal shape, got {u.shape} and {v.shape}"
            )
        mask = np.ones(u.shape, dtype=bool) if self.mask is None else self.mask
        mask = _frozen_array(mask, bool)
        if mask.shape != u.shape:
            raise exceptions.GridError(f"Mask shape {mask.shape} does not match velocity {u.shape}")
        if not (np.isfinite(u[mask]).all() and np.isfinite(v[mask]).all()):
            raise exceptions.GridError("Velocity must be finite at every valid cell")

        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "mask", mask)
        if self.w is not None:
            w = _frozen_array(self.w, float)
            if w.shape != u.shape:
                raise exceptions.GridError(f"w has shape {w.shape}, expected {u.shape}")
            object.__setattr__(self, "w", w)

    @property
    def shape(self) -> Tuple[int, int, int]:
        return self.u.shape

    @property
    def nz(self) -> int:
        return self.u.shape[0]

    def layer(self, layer: int) -> Tuple[ScalarField2D, ScalarField2D]:
        """The horizontal components on one layer"""
        if not 0 <= layer < self.nz:
            raise exceptions.GridError(f"Layer {layer} outside 0..{self.nz - 1}")
        return (
            ScalarField2D(self.u[layer], self.mask[layer]),
            ScalarField2D(self.v[layer], self.mask[layer]),
        )

    def w_field(self) -> Optional[ScalarField3D]:
        """The vertical velocity as a scalar field, if present"""
        return None if self.w is None else ScalarField3D(self.w, self.mask)

    def __repr__(self) -> str:
        nz, ny, nx = self.shape
        return f"{self.__class__.__name__}({nz}x{ny}x{nx}{', w' if self.w is not None else ''})"


@dataclass(frozen=True, eq=False)
class OceanFrame:
    """One time step of ocean model output

    A frame may lack some variables: the SSH is only needed by the hybrid
    detector and the property fields only by the profile extraction. Accessing
    a missing variable through the require-methods raises MissingVariableError.

    Attributes:
        grid:         Grid geometry.
        ssh:          Sea surface height on the surface layer.
        vel:          Velocity on every layer.
        temp:         Temperature on every layer.
        sal:          Salinity on every layer.
        frame_index:  Position of the frame in its time series.
    """

    grid: GridSpec
    ssh: Optional[ScalarField2D] = None
    vel: Optional[VectorField3D] = None
    temp: Optional[ScalarField3D] = None
    sal: Optional[ScalarField3D] = None
    frame_index: int = 0
    attrs: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.ssh is not None and self.ssh.shape != self.grid.shape2d:
            raise exceptions.GridError(
                f"SSH has shape {self.ssh.shape}, grid expects {self.grid.shape2d}"
            )
        for name in ("vel", "temp", "sal"):
            var = getattr(self, name)
            if var is not None and var.shape != self.grid.shape3d:
                raise exceptions.GridError(
                    f"{name} has shape {var.shape}, grid expects {self.grid.shape3d}"
                )

    def require_ssh(self) -> ScalarField2D:
        if self.ssh is None:
            raise exceptions.MissingVariableError("ssh")
        return self.ssh

    def require_velocity(self) -> VectorField3D:
        if self.vel is None:
            raise exceptions.MissingVariableError("u")
        return self.vel

    def property_field(self, name: str) -> Optional[ScalarField3D]:
        """A scalar property by name: temperature, salinity or w"""
        if name == "temperature":
            return self.temp
        if name == "salinity":
            return self.sal
        if name == "w":
            return None if self.vel is None else self.vel.w_field()
        raise KeyError(name)

    def __repr__(self) -> str:
        names = [n for n in ("ssh", "vel", "temp", "sal") if getattr(self, n) is not None]
        g = self.grid
        return f"{self.__class__.__name__}({g.nx}x{g.ny}x{g.nz}, frame={self.frame_index}, {', '.join(names)})"
