"""Synthetic ocean frames with known eddies

Description:
------------

Ground truth flows used to check the detectors. An eddy is an axisymmetric
vortex with a Rankine (or Gaussian) speed profile and an SSH bump or
depression at its center. Cyclonic eddies rotate counterclockwise around an
SSH minimum, anticyclonic eddies clockwise around an SSH maximum.

Rankine tangential speed, with core radius R0 and peak speed Vmax:

    v(r) = Vmax * r / R0    for r <= R0
    v(r) = Vmax * R0 / r    for r > R0

The SSH profile `amplitude * max(0, 1 - (r / 2R0)**2)` is compactly supported
and has its extremum exactly at the center.

Scenes superpose several eddies, a background flow (uniform, shear or a
meandering jet) and isotropic velocity noise, and advect the eddies from
frame to frame. Given the same scene and seed the frames are bit-identical.
Scenes are read from JSON documents, see :func:`scene_from_dict`.
"""

# Standard library imports
from dataclasses import dataclass, field
import json
import logging
import pathlib
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

# Third party imports
import numpy as np

# Eddyscan imports
from eddyscan.data import GridSpec, OceanFrame, Polarity, ScalarField2D, ScalarField3D, VectorField3D
from eddyscan.lib import exceptions

log = logging.getLogger(__name__)

PROFILES = ("rankine", "gaussian")
BACKGROUNDS = ("none", "uniform", "shear", "meander")


@dataclass(frozen=True)
class SyntheticEddySpec:
    """Description of one synthetic eddy

    Attributes:
        center:         Surface center (x, y) in cells at frame 0.
        core_radius:    Radius R0 of the solid-body core, cells.
        peak_speed:     Tangential speed Vmax at the core radius.
        polarity:       Rotation sense.
        ssh_amplitude:  Magnitude of the SSH extremum, its sign follows the polarity.
        depth_extent:   Number of layers with velocity, None for all layers.
        decay:          Factor applied to the velocity per layer below the surface.
        tilt:           Shift (dx, dy) of the center per layer, cells.
        advection:      Shift (dx, dy) of the center per frame, cells.
        profile:        Speed profile, rankine or gaussian.
        temp_anomaly:   Temperature anomaly at the center, decays like the velocity.
    """

    center: Tuple[float, float]
    core_radius: float = 6.0
    peak_speed: float = 1.0
    polarity: Polarity = Polarity.CYCLONIC
    ssh_amplitude: float = 0.2
    depth_extent: Optional[int] = None
    decay: float = 1.0
    tilt: Tuple[float, float] = (0.0, 0.0)
    advection: Tuple[float, float] = (0.0, 0.0)
    profile: str = "rankine"
    temp_anomaly: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "polarity", Polarity(self.polarity))
        for name in ("center", "tilt", "advection"):
            object.__setattr__(self, name, tuple(float(c) for c in getattr(self, name)))
        if self.core_radius < 1:
            raise exceptions.SceneValidationError(f"Core radius must be at least 1 cell, got {self.core_radius}")
        if not self.peak_speed > 0:
            raise exceptions.SceneValidationError(f"Peak speed must be positive, got {self.peak_speed}")
        if self.ssh_amplitude < 0:
            raise exceptions.SceneValidationError("SSH amplitude is a magnitude, its sign follows the polarity")
        if self.depth_extent is not None and self.depth_extent < 1:
            raise exceptions.SceneValidationError(f"Depth extent must be at least 1 layer, got {self.depth_extent}")
        if self.profile not in PROFILES:
            raise exceptions.SceneValidationError(f"Unknown profile '{self.profile}', use one of {', '.join(PROFILES)}")

    def center_at(self, frame: int = 0, layer: int = 0) -> Tuple[float, float]:
        """Center of the eddy on a given frame and layer"""
        return (
            self.center[0] + frame * self.advection[0] + layer * self.tilt[0],
            self.center[1] + frame * self.advection[1] + layer * self.tilt[1],
        )

    def layers(self, grid: GridSpec) -> int:
        return grid.nz if self.depth_extent is None else self.depth_extent


@dataclass(frozen=True)
class BackgroundSpec:
    """Background flow of a scene

    Attributes:
        kind:           none, uniform, shear or meander.
        magnitude:      Speed of uniform flow, shear rate, or jet speed of the meander.
        direction:      Direction of uniform flow, degrees counterclockwise from east.
        amplitude:      Cross-jet amplitude of the meander, cells.
        wavelength:     Wavelength of the meander, cells.
        width:          Width of the jet, cells.
        y_center:       Mean position of the jet or the zero line of the shear.
        ssh_amplitude:  SSH step across the jet and height of its crests.
    """

    kind: str = "none"
    magnitude: float = 0.0
    direction: float = 0.0
    amplitude: float = 0.0
    wavelength: float = 50.0
    width: float = 5.0
    y_center: Optional[float] = None
    ssh_amplitude: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in BACKGROUNDS:
            raise exceptions.SceneValidationError(
                f"Unknown background '{self.kind}', use one of {', '.join(BACKGROUNDS)}"
            )


@dataclass(frozen=True)
class SceneSpec:
    """A synthetic time series

    Attributes:
        grid:         Grid geometry.
        eddies:       The eddies of the scene.
        background:   Background flow.
        noise_std:    Standard deviation of the velocity noise, per component.
        frames:       Number of frames.
        seed:         Seed of the noise generator.
        temperature:  Optional (surface value, change per layer) stratification.
        salinity:     Optional constant salinity.
        land:         Masked boxes (x0, y0, x1, y1), inclusive cell ranges.
    """

    grid: GridSpec
    eddies: Tuple[SyntheticEddySpec, ...] = ()
    background: BackgroundSpec = field(default_factory=BackgroundSpec)
    noise_std: float = 0.0
    frames: int = 1
    seed: int = 0
    temperature: Optional[Tuple[float, float]] = None
    salinity: Optional[float] = None
    land: Tuple[Tuple[int, int, int, int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "eddies", tuple(self.eddies))
        object.__setattr__(self, "land", tuple(tuple(int(c) for c in box) for box in self.land))
        if self.frames < 1:
            raise exceptions.SceneValidationError(f"A scene needs at least one frame, got {self.frames}")
        if self.noise_std < 0:
            raise exceptions.SceneValidationError(f"Noise must be non-negative, got {self.noise_std}")


#
# Velocity and SSH profiles
#
def _tangential_speed(r: np.ndarray, spec: SyntheticEddySpec) -> np.ndarray:
    r0, vmax = spec.core_radius, spec.peak_speed
    if spec.profile == "gaussian":
        return vmax * (r / r0) * np.exp(0.5 * (1 - (r / r0) ** 2))
    return np.where(r <= r0, vmax * r / r0, vmax * r0 / np.maximum(r, r0))


def _ssh_profile(r: np.ndarray, spec: SyntheticEddySpec) -> np.ndarray:
    sign = -1.0 if spec.polarity is Polarity.CYCLONIC else 1.0
    r0 = spec.core_radius
    if spec.profile == "gaussian":
        return sign * spec.ssh_amplitude * np.exp(-(r ** 2) / (2 * r0 ** 2))
    return sign * spec.ssh_amplitude * np.maximum(0.0, 1 - (r / (2 * r0)) ** 2)


def _eddy_fields(
    spec: SyntheticEddySpec, grid: GridSpec, frame: int
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """SSH, u, v and temperature anomaly of one eddy"""
    u = np.zeros(grid.shape3d)
    v = np.zeros(grid.shape3d)
    temp = np.zeros(grid.shape3d)
    jj, ii = np.mgrid[0 : grid.ny, 0 : grid.nx].astype(float)

    for layer in range(min(spec.layers(grid), grid.nz)):
        cx, cy = spec.center_at(frame, layer)
        dx, dy = ii - cx, jj - cy
        r = np.hypot(dx, dy)
        factor = spec.decay ** layer
        speed = factor * _tangential_speed(r, spec)
        with np.errstate(invalid="ignore", divide="ignore"):
            scale = np.where(r > 0, speed / r, 0.0)
        u[layer] = -spec.polarity.sense * scale * dy
        v[layer] = spec.polarity.sense * scale * dx
        if spec.temp_anomaly:
            temp[layer] = factor * spec.temp_anomaly * np.exp(-(r / spec.core_radius) ** 2)

    cx, cy = spec.center_at(frame, 0)
    ssh = _ssh_profile(np.hypot(ii - cx, jj - cy), spec)
    return ssh, u, v, temp


def _meander(
    grid: GridSpec, background: BackgroundSpec
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """SSH, u and v of a meandering jet flowing towards +x

    The jet follows y0(x) = y_center + amplitude * sin(2 pi x / wavelength).
    The velocity is everywhere parallel to the jet axis at the same x, so it
    never turns by more than the slope angle of the axis. The along-jet speed
    is reduced at the crests, which gives velocity minima, and the SSH has
    small crests there on top of the step across the jet.
    """
    jj, ii = np.mgrid[0 : grid.ny, 0 : grid.nx].astype(float)
    y_center = (grid.ny - 1) / 2 if background.y_center is None else background.y_center
    k = 2 * np.pi / background.wavelength
    phase = k * ii
    y0 = y_center + background.amplitude * np.sin(phase)
    slope = background.amplitude * k * np.cos(phase)
    s = (jj - y0) / background.width

    modulation = min(0.75, 4 * background.amplitude / background.wavelength)
    along = 1 - modulation * (1 + np.cos(phase)) / 2
    profile = 0.05 + 0.95 / np.cosh(s) ** 2
    speed = background.magnitude * along * profile
    norm = np.hypot(1.0, slope)
    u = speed / norm
    v = speed * slope / norm

    crest = background.ssh_amplitude * (1 + np.cos(phase)) / 2 / np.cosh(s) ** 2
    ssh = -background.ssh_amplitude * np.tanh(s) + crest
    return ssh, u, v


def _background_fields(
    grid: GridSpec, background: BackgroundSpec
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """SSH, u and v of the background flow, velocity constant with depth"""
    ssh = np.zeros(grid.shape2d)
    u = np.zeros(grid.shape2d)
    v = np.zeros(grid.shape2d)
    if background.kind == "uniform":
        angle = np.radians(background.direction)
        u += background.magnitude * np.cos(angle)
        v += background.magnitude * np.sin(angle)
    elif background.kind == "shear":
        y_center = (grid.ny - 1) / 2 if background.y_center is None else background.y_center
        u += background.magnitude * (np.arange(grid.ny)[:, None] - y_center)
    elif background.kind == "meander":
        ssh, u, v = _meander(grid, background)

    return ssh, np.broadcast_to(u, grid.shape3d), np.broadcast_to(v, grid.shape3d)


def _check_bounds(spec: SyntheticEddySpec, grid: GridSpec, frames: int) -> None:
    for frame in range(frames):
        for layer in range(min(spec.layers(grid), grid.nz)):
            if not grid.contains(*spec.center_at(frame, layer)):
                raise exceptions.SceneValidationError(
                    f"Eddy at {spec.center} leaves the grid on frame {frame}, layer {layer}"
                )


#
# Frames
#
def rankine_eddy(spec: SyntheticEddySpec, grid: GridSpec, frame_index: int = 0) -> OceanFrame:
    """A frame containing one eddy and nothing else

    Args:
        spec:         The eddy.
        grid:         Grid geometry.
        frame_index:  Frame number, moves the eddy by its advection.

    Returns:
        Frame with SSH and velocity.
    """
    if spec.depth_extent is not None and spec.depth_extent > grid.nz:
        raise exceptions.SceneValidationError(
            f"Depth extent {spec.depth_extent} exceeds the {grid.nz} layers of the grid"
        )
    _check_bounds(spec, grid, frame_index + 1)
    ssh, u, v, _ = _eddy_fields(spec, grid, frame_index)
    return OceanFrame(grid, ssh=ScalarField2D(ssh), vel=VectorField3D(u, v), frame_index=frame_index)


def meander_field(
    grid: GridSpec,
    amplitude: float,
    wavelength: float,
    jet_speed: float,
    width: float = 5.0,
    y_center: Optional[float] = None,
    ssh_amplitude: float = 0.05,
) -> OceanFrame:
    """A meandering jet without any closed rotation

    Args:
        grid:           Grid geometry.
        amplitude:      Cross-jet amplitude of the meander, cells.
        wavelength:     Wavelength of the meander, at least 4 cells.
        jet_speed:      Speed on the jet axis.
        width:          Width of the jet, cells.
        y_center:       Mean position of the jet, the middle of the grid by default.
        ssh_amplitude:  SSH step across the jet.

    Returns:
        Frame with SSH and velocity.
    """
    if wavelength < 4:
        raise exceptions.SceneValidationError(f"Wavelength must be at least 4 cells, got {wavelength}")
    background = BackgroundSpec(
        "meander", jet_speed, 0.0, amplitude, wavelength, width, y_center, ssh_amplitude
    )
    ssh, u, v = _background_fields(grid, background)
    return OceanFrame(grid, ssh=ScalarField2D(ssh), vel=VectorField3D(u, v))


def validate_scene(scene: SceneSpec) -> None:
    """Check that eddies stay on the grid and that their cores never overlap"""
    grid = scene.grid
    for spec in scene.eddies:
        if spec.depth_extent is not None and spec.depth_extent > grid.nz:
            raise exceptions.SceneValidationError(
                f"Depth extent {spec.depth_extent} exceeds the {grid.nz} layers of the grid"
            )
        _check_bounds(spec, grid, scene.frames)

    for frame in range(scene.frames):
        for idx, first in enumerate(scene.eddies):
            for second in scene.eddies[idx + 1 :]:
                distance = np.hypot(
                    *np.subtract(first.center_at(frame), second.center_at(frame))
                )
                if distance < first.core_radius + second.core_radius:
                    raise exceptions.SceneValidationError(
                        f"Cores of eddies at {first.center} and {second.center} overlap "
                        f"on frame {frame}"
                    )


def compose_frame(scene: SceneSpec, frame_index: int) -> OceanFrame:
    """One frame of a scene"""
    grid = scene.grid
    ssh, u_bg, v_bg = _background_fields(grid, scene.background)
    u = np.zeros(grid.shape3d) + u_bg
    v = np.zeros(grid.shape3d) + v_bg
    temp = None
    if scene.temperature is not None:
        surface, change = scene.temperature
        temp = np.broadcast_to(
            surface + change * np.arange(grid.nz)[:, None, None], grid.shape3d
        ).copy()

    for spec in scene.eddies:
        eddy_ssh, eddy_u, eddy_v, eddy_temp = _eddy_fields(spec, grid, frame_index)
        ssh = ssh + eddy_ssh
        u += eddy_u
        v += eddy_v
        if temp is not None:
            temp += eddy_temp

    if scene.noise_std > 0:
        rng = np.random.default_rng([scene.seed, frame_index])
        u += scene.noise_std * rng.standard_normal(grid.shape3d)
        v += scene.noise_std * rng.standard_normal(grid.shape3d)

    mask = np.ones(grid.shape2d, dtype=bool)
    for x0, y0, x1, y1 in scene.land:
        mask[y0 : y1 + 1, x0 : x1 + 1] = False
    mask3d = np.broadcast_to(mask, grid.shape3d)

    def _masked(values: np.ndarray, valid: np.ndarray) -> np.ndarray:
        return np.where(valid, values, 0.0)

    return OceanFrame(
        grid,
        ssh=ScalarField2D(_masked(ssh, mask), mask),
        vel=VectorField3D(_masked(u, mask3d), _masked(v, mask3d), mask=mask3d),
        temp=None if temp is None else ScalarField3D(_masked(temp, mask3d), mask3d),
        sal=None if scene.salinity is None else ScalarField3D(
            _masked(np.full(grid.shape3d, float(scene.salinity)), mask3d), mask3d
        ),
        frame_index=frame_index,
    )


def compose_scene(scene: SceneSpec) -> List[OceanFrame]:
    """All frames of a scene

    Args:
        scene:  The scene.

    Returns:
        The frames, ordered by frame index.
    """
    validate_scene(scene)
    log.info(f"Composing {scene.frames} frames with {len(scene.eddies)} eddies")
    return [compose_frame(scene, idx) for idx in range(scene.frames)]


#
# Scene files
#
def scene_from_dict(scene: Dict[str, Any]) -> SceneSpec:
    """Build a scene from a nested dictionary

    Example:

        {
            "grid": {"nx": 200, "ny": 200, "nz": 10},
            "eddies": [
                {"center": [50, 60], "core_radius": 6, "polarity": "cyclonic"},
                {"center": [140, 60], "polarity": "anticyclonic", "advection": [2, 0]}
            ],
            "background": {"kind": "meander", "magnitude": 0.4, "amplitude": 5,
                           "wavelength": 60, "y_center": 160},
            "noise_std": 0.05,
            "frames": 5,
            "seed": 1
        }
    """
    try:
        scene = dict(scene)
        grid = GridSpec(**scene.pop("grid"))
        eddies = [SyntheticEddySpec(**eddy) for eddy in scene.pop("eddies", [])]
        background = BackgroundSpec(**scene.pop("background", {}))
        return SceneSpec(grid, eddies, background, **scene)
    except (KeyError, TypeError, ValueError) as err:
        raise exceptions.SceneValidationError(f"Invalid scene description: {err}") from None


def read_scene(file_path: Union[str, pathlib.Path]) -> SceneSpec:
    """Read a scene from a JSON file"""
    try:
        scene = json.loads(pathlib.Path(file_path).read_text())
    except OSError as err:
        raise exceptions.FrameIOError(f"Cannot read scene '{file_path}': {err.strerror}") from None
    except json.JSONDecodeError as err:
        raise exceptions.ConfigError(f"Scene '{file_path}' is not valid JSON: {err}") from None
    return scene_from_dict(scene)


def ground_truth(scene: SceneSpec, frame: int = 0) -> Sequence[Tuple[Tuple[float, float], Polarity]]:
    """Surface centers and polarities of the eddies on one frame"""
    return [(spec.center_at(frame, 0), spec.polarity) for spec in scene.eddies]
