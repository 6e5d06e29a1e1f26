"""Parameters and run configuration

Description:
------------

All detection thresholds live in small frozen dataclasses that validate
themselves on construction. Window widths and radii are in cells, angles in
degrees. The defaults are the values tuned for a 4 km Red Sea model grid:

    Search:  re=7, rv=21, rc=5, rs=3
    Verify:  sv=3, sa=108, sae=18, san=2, sd=24, sy=120

A RunConfig bundles every parameter group with the detector to run. It is
read from a JSON document mirroring its fields:

    {
        "method": "hybrid",
        "workers": 4,
        "search": {"re": 7, "rv": 21},
        "verify": {"sv": 3.0, "san": 2},
        "ow": {"k": 0.2},
        "wa": {"step": 0.5},
        "track": {"max_displacement": 10}
    }

Missing fields keep their defaults, unknown fields are errors.
"""

# Standard library imports
from dataclasses import asdict, dataclass, field, fields, replace
import json
import pathlib
from typing import Any, Dict, Optional, Tuple, Union

# Eddyscan imports
from eddyscan.lib import exceptions


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise exceptions.ConfigError(message)


def _check_window(name: str, width: int) -> None:
    _check(
        isinstance(width, int) and width >= 3 and width % 2 == 1,
        f"{name} must be an odd integer >= 3, got {width!r}",
    )


@dataclass(frozen=True)
class SearchParams:
    """Parameters for locating candidate centers

    Attributes:
        re:      Width of the window for SSH extrema.
        rv:      Width of the window for velocity minima around each SSH extremum.
        rc:      Width of the window for the center on the next layer.
        rs:      Initial radius of the test path.
        smooth:  Width of the moving average applied to the velocity before
                 net-velocity minima are located, 1 for none.
    """

    re: int = 7
    rv: int = 21
    rc: int = 5
    rs: int = 3
    smooth: int = 3

    def __post_init__(self) -> None:
        for name in ("re", "rv", "rc", "rs"):
            _check_window(name, getattr(self, name))
        _check(
            isinstance(self.smooth, int) and self.smooth >= 1 and self.smooth % 2 == 1,
            f"smooth must be an odd positive integer, got {self.smooth!r}",
        )


@dataclass(frozen=True)
class VerifyParams:
    """Parameters for verifying candidate centers

    Attributes:
        sv:   Largest allowed net-velocity ratio between consecutive ring points.
        sa:   Largest allowed magnitude of a negative angular difference.
        sae:  Largest allowed positive angular difference.
        san:  Number of positive angular differences tolerated per ring.
        sd:   Largest allowed deviation of the velocity from the tangent.
        sy:   Tolerance of the symmetry angle around 180 degrees.
    """

    sv: float = 3.0
    sa: float = 108.0
    sae: float = 18.0
    san: int = 2
    sd: float = 24.0
    sy: float = 120.0

    def __post_init__(self) -> None:
        _check(self.sv >= 1, f"sv must be >= 1, got {self.sv}")
        _check(0 <= self.sae < self.sa <= 180, f"Need 0 <= sae < sa <= 180, got sae={self.sae}, sa={self.sa}")
        _check(isinstance(self.san, int) and self.san >= 0, f"san must be a non-negative integer, got {self.san!r}")
        _check(0 < self.sd < 90, f"sd must be in (0, 90), got {self.sd}")
        _check(0 <= self.sy < 180, f"sy must be in [0, 180), got {self.sy}")


@dataclass(frozen=True)
class OwParams:
    """Parameters for the Okubo-Weiss detector

    Attributes:
        k:             Fraction of the local OW minimum used as region threshold.
        window:        Width of the window for local OW minima.
        connectivity:  Neighbourhood of region growing, 4 or 8.
    """

    k: float = 0.2
    window: int = 7
    connectivity: int = 4

    def __post_init__(self) -> None:
        _check(0 < self.k <= 1, f"k must be in (0, 1], got {self.k}")
        _check_window("window", self.window)
        _check(self.connectivity in (4, 8), f"connectivity must be 4 or 8, got {self.connectivity}")


@dataclass(frozen=True)
class WaParams:
    """Parameters for the winding-angle detector

    Attributes:
        spacing:           Distance between streamline seeds.
        step:              Integration step length.
        max_steps:         Largest number of integration steps per streamline.
        threshold:         Smallest absolute winding angle of an eddy streamline.
        closure_distance:  Distance to the seed at which a streamline is closed.
        merge_distance:    Largest distance between centroids in one cluster.
        min_speed:         Speed below which integration stops.
    """

    spacing: float = 4.0
    step: float = 0.5
    max_steps: int = 600
    threshold: float = 360.0
    closure_distance: float = 1.0
    merge_distance: float = 3.0
    min_speed: float = 1e-9

    def __post_init__(self) -> None:
        _check(self.spacing > 0, f"spacing must be positive, got {self.spacing}")
        _check(self.step > 0, f"step must be positive, got {self.step}")
        _check(isinstance(self.max_steps, int) and self.max_steps >= 8, f"max_steps must be an integer >= 8, got {self.max_steps!r}")
        _check(self.threshold > 0, f"threshold must be positive, got {self.threshold}")
        _check(self.closure_distance > 0, f"closure_distance must be positive, got {self.closure_distance}")
        _check(self.merge_distance > 0, f"merge_distance must be positive, got {self.merge_distance}")
        _check(self.min_speed >= 0, f"min_speed must be non-negative, got {self.min_speed}")


@dataclass(frozen=True)
class TrackParams:
    """Parameters for associating eddies across frames

    Attributes:
        max_displacement:     Largest distance an eddy may move per frame.
        polarity_must_match:  Only associate eddies of equal polarity.
        max_missed_frames:    Frames an eddy may be missing within a track.
    """

    max_displacement: float = 10.0
    polarity_must_match: bool = True
    max_missed_frames: int = 0

    def __post_init__(self) -> None:
        _check(self.max_displacement > 0, f"max_displacement must be positive, got {self.max_displacement}")
        _check(
            isinstance(self.max_missed_frames, int) and self.max_missed_frames >= 0,
            f"max_missed_frames must be a non-negative integer, got {self.max_missed_frames!r}",
        )


_GROUPS = dict(search=SearchParams, verify=VerifyParams, ow=OwParams, wa=WaParams, track=TrackParams)

# Flat parameter names used by the command line and by sweeps
_PREFIXES = dict(search="", verify="", ow="ow_", wa="wa_", track="")


def parameter_names() -> Dict[str, Tuple[str, str]]:
    """Map flat parameter names like 'sv' or 'ow_k' to (group, field)"""
    names = dict()
    for group, cls in _GROUPS.items():
        for f in fields(cls):
            names[f"{_PREFIXES[group]}{f.name}"] = (group, f.name)
    return names


def parse_value(name: str, text: str) -> Any:
    """Convert text to the type of a flat parameter

    Args:
        name:  Flat parameter name, for instance 're' or 'ow_k'.
        text:  Value as text.

    Returns:
        The value as int, float or bool.
    """
    names = parameter_names()
    if name not in names:
        raise exceptions.ConfigError(
            f"Unknown parameter '{name}'. Use one of {', '.join(sorted(names))}"
        )
    group, field_name = names[name]
    field_type = {f.name: f.type for f in fields(_GROUPS[group])}[field_name]
    if field_type is bool:
        if text.lower() not in ("true", "false", "1", "0"):
            raise exceptions.ConfigError(f"Expected true or false for '{name}', got '{text}'")
        return text.lower() in ("true", "1")
    try:
        return field_type(text)
    except ValueError:
        raise exceptions.ConfigError(
            f"Expected {field_type.__name__} for '{name}', got '{text}'"
        ) from None


@dataclass(frozen=True)
class RunConfig:
    """Everything needed to run a detector

    Attributes:
        search:   Candidate search parameters.
        verify:   Candidate verification parameters.
        ow:       Okubo-Weiss detector parameters.
        wa:       Winding-angle detector parameters.
        track:    Tracking parameters.
        method:   Name of the detector plug-in.
        workers:  Number of parallel workers.
        report:   Path of the report, None for standard output.
        rings:    Directory for ring diagnostic tables, None to skip them.
    """

    search: SearchParams = field(default_factory=SearchParams)
    verify: VerifyParams = field(default_factory=VerifyParams)
    ow: OwParams = field(default_factory=OwParams)
    wa: WaParams = field(default_factory=WaParams)
    track: TrackParams = field(default_factory=TrackParams)
    method: str = "hybrid"
    workers: int = 1
    report: Optional[str] = None
    rings: Optional[str] = None

    def __post_init__(self) -> None:
        _check(isinstance(self.workers, int) and self.workers >= 1, f"workers must be a positive integer, got {self.workers!r}")

    @classmethod
    def from_dict(cls, config: Dict[str, Any]) -> "RunConfig":
        """Build a configuration from a nested dictionary"""
        known = {f.name for f in fields(cls)}
        unknown = set(config) - known
        _check(not unknown, f"Unknown configuration keys: {', '.join(sorted(unknown))}")

        values: Dict[str, Any] = dict()
        for key, value in config.items():
            if key in _GROUPS:
                _check(isinstance(value, dict), f"'{key}' must be a mapping")
                group_cls = _GROUPS[key]
                group_fields = {f.name for f in fields(group_cls)}
                unknown = set(value) - group_fields
                _check(not unknown, f"Unknown keys in '{key}': {', '.join(sorted(unknown))}")
                try:
                    values[key] = group_cls(**value)
                except TypeError as err:
                    raise exceptions.ConfigError(f"Invalid '{key}' parameters: {err}") from None
            else:
                values[key] = value
        return cls(**values)

    @classmethod
    def from_file(cls, file_path: Union[str, pathlib.Path]) -> "RunConfig":
        """Read a configuration from a JSON file"""
        try:
            text = pathlib.Path(file_path).read_text()
        except OSError as err:
            raise exceptions.FrameIOError(f"Cannot read config file '{file_path}': {err.strerror}") from None
        try:
            config = json.loads(text)
        except json.JSONDecodeError as err:
            raise exceptions.ConfigError(f"Config file '{file_path}' is not valid JSON: {err}") from None
        _check(isinstance(config, dict), f"Config file '{file_path}' must hold a JSON object")
        return cls.from_dict(config)

    def with_overrides(self, **overrides: Any) -> "RunConfig":
        """A copy with flat parameter overrides, None values are ignored

        Flat names are the ones listed by :func:`parameter_names` plus the
        top level fields, for instance `sv=2.5`, `ow_k=0.5` or `workers=4`.
        """
        names = parameter_names()
        groups: Dict[str, Dict[str, Any]] = dict()
        top: Dict[str, Any] = dict()
        for name, value in overrides.items():
            if value is None:
                continue
            if name in names:
                group, field_name = names[name]
                groups.setdefault(group, dict())[field_name] = value
            elif name in {f.name for f in fields(self)} and name not in _GROUPS:
                top[name] = value
            else:
                raise exceptions.ConfigError(f"Unknown parameter '{name}'")

        for group, changes in groups.items():
            top[group] = replace(getattr(self, group), **changes)
        return replace(self, **top)

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)
