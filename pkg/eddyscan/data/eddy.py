"""Eddy detection results

Description:
------------

Candidates, verified eddies and the detection report shared by all detectors.
An eddy is stored as its footprint: a contiguous stack of per-layer disks
starting at the surface, together with optional statistics of the property
fields inside each disk.
"""

# Standard library imports
from collections import Counter
from dataclasses import dataclass, field, replace
import enum
from typing import Any, Dict, List, Optional, Tuple

# Third party imports
import pandas as pd

# Eddyscan imports
from eddyscan.lib import exceptions

Cell = Tuple[int, int]

PROPERTIES = ("temperature", "salinity", "w", "speed")


class Polarity(enum.Enum):
    """Rotation sense of an eddy, northern hemisphere convention

    Cyclonic eddies rotate counterclockwise around an SSH minimum,
    anticyclonic eddies rotate clockwise around an SSH maximum.
    """

    CYCLONIC = "cyclonic"
    ANTICYCLONIC = "anticyclonic"

    @property
    def sense(self) -> int:
        """+1 for counterclockwise rotation, -1 for clockwise"""
        return 1 if self is Polarity.CYCLONIC else -1

    @classmethod
    def from_sense(cls, sense: float) -> "Polarity":
        return cls.CYCLONIC if sense > 0 else cls.ANTICYCLONIC


class Criterion(enum.Enum):
    """Reasons for rejecting a candidate"""

    C1 = "C1"
    C2 = "C2"
    C2A = "C2a"
    C3 = "C3"
    C4 = "C4"
    MASKED_RING = "masked_ring"
    DUPLICATE = "duplicate"


@dataclass(frozen=True)
class CenterCandidate:
    """A possible eddy center

    Attributes:
        ssh_extremum:  Cell (x, y) of the SSH extremum the candidate was found from.
        polarity:      Cyclonic for an SSH minimum, anticyclonic for a maximum.
        vel_minimum:   Cell (x, y) of the net-velocity minimum, the center to verify.
        layer:         Layer of the candidate, 0 is the surface.
    """

    ssh_extremum: Cell
    polarity: Polarity
    vel_minimum: Cell
    layer: int = 0


@dataclass(frozen=True)
class EddyLayer:
    """Disk of an eddy on one layer"""

    layer: int
    center: Cell
    radius: int


@dataclass(frozen=True)
class PropertyStats:
    """Statistics of one property over the cells of a footprint disk"""

    mean: float
    min: float
    max: float
    count: int


@dataclass(frozen=True)
class Eddy3D:
    """A detected eddy

    Attributes:
        id:        Identifier, unique within a report.
        polarity:  Rotation sense.
        layers:    Disks on contiguous layers starting at the surface.
        profiles:  Per layer, statistics for each property or None if unavailable.
    """

    id: int
    polarity: Polarity
    layers: Tuple[EddyLayer, ...]
    profiles: Tuple[Dict[str, Optional[PropertyStats]], ...] = ()

    def __post_init__(self) -> None:
        layers = tuple(self.layers)
        if not layers:
            raise exceptions.DataValidationError("An eddy needs at least one layer")
        if layers[0].layer != 0 or any(
            b.layer != a.layer + 1 for a, b in zip(layers, layers[1:])
        ):
            raise exceptions.DataValidationError(
                f"Eddy layers must be contiguous from the surface, got {[l.layer for l in layers]}"
            )
        object.__setattr__(self, "layers", layers)
        object.__setattr__(self, "profiles", tuple(self.profiles))

    @property
    def surface(self) -> EddyLayer:
        return self.layers[0]

    @property
    def depth(self) -> int:
        """Number of layers spanned by the eddy"""
        return len(self.layers)

    def with_id(self, eddy_id: int) -> "Eddy3D":
        return replace(self, id=eddy_id)

    def as_dict(self) -> Dict[str, Any]:
        layers = []
        for idx, layer in enumerate(self.layers):
            item: Dict[str, Any] = dict(
                layer=layer.layer, x=layer.center[0], y=layer.center[1], radius=layer.radius
            )
            if idx < len(self.profiles):
                item["profiles"] = {
                    name: None if stats is None else dict(
                        mean=stats.mean, min=stats.min, max=stats.max, count=stats.count
                    )
                    for name, stats in sorted(self.profiles[idx].items())
                }
            layers.append(item)
        return dict(id=self.id, polarity=self.polarity.value, layers=layers)


@dataclass
class DetectionReport:
    """Outcome of running a detector on one frame

    Attributes:
        eddies:                   Accepted eddies, ordered by id.
        candidates_total:         Number of candidates examined.
        rejections_by_criterion:  Number of rejected candidates per criterion.
        timing:                   Wall-clock seconds per phase.
        method:                   Name of the detector.
        frame_index:              Index of the detected frame.
    """

    eddies: List[Eddy3D] = field(default_factory=list)
    candidates_total: int = 0
    rejections_by_criterion: Dict[Criterion, int] = field(default_factory=dict)
    timing: Dict[str, float] = field(default_factory=dict)
    method: str = "hybrid"
    frame_index: int = 0

    @property
    def accepted(self) -> int:
        return len(self.eddies)

    @property
    def rejected(self) -> int:
        return sum(self.rejections_by_criterion.values())

    def count_rejections(self, criteria: List[Criterion]) -> None:
        """Add rejected candidates to the histogram"""
        counts = Counter(self.rejections_by_criterion)
        counts.update(criteria)
        self.rejections_by_criterion = dict(counts)

    def check_accounting(self) -> None:
        """Check that every candidate is either accepted or rejected"""
        if self.accepted + self.rejected != self.candidates_total:
            raise exceptions.DataValidationError(
                f"{self.accepted} accepted + {self.rejected} rejected != "
                f"{self.candidates_total} candidates"
            )

    def stable_dict(self) -> Dict[str, Any]:
        """The part of the report that is identical for identical input"""
        return dict(
            method=self.method,
            frame_index=self.frame_index,
            candidates_total=self.candidates_total,
            accepted=self.accepted,
            rejections_by_criterion={
                c.value: self.rejections_by_criterion.get(c, 0) for c in Criterion
            },
            eddies=[e.as_dict() for e in self.eddies],
        )

    def as_dict(self) -> Dict[str, Any]:
        return dict(self.stable_dict(), timing=dict(sorted(self.timing.items())))

    def as_dataframe(self) -> pd.DataFrame:
        """One row per eddy layer, with profile means as columns"""
        rows = []
        for eddy in self.eddies:
            for idx, layer in enumerate(eddy.layers):
                row: Dict[str, Any] = dict(
                    frame_index=self.frame_index,
                    id=eddy.id,
                    polarity=eddy.polarity.value,
                    layer=layer.layer,
                    x=layer.center[0],
                    y=layer.center[1],
                    radius=layer.radius,
                )
                profile = eddy.profiles[idx] if idx < len(eddy.profiles) else {}
                for name in PROPERTIES:
                    stats = profile.get(name)
                    for stat in ("mean", "min", "max"):
                        row[f"{name}_{stat}"] = None if stats is None else getattr(stats, stat)
                rows.append(row)
        columns = ["frame_index", "id", "polarity", "layer", "x", "y", "radius"] + [
            f"{n}_{s}" for n in PROPERTIES for s in ("mean", "min", "max")
        ]
        return pd.DataFrame(rows, columns=columns)

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__name__}(method={self.method!r}, frame={self.frame_index}, "
            f"candidates={self.candidates_total}, accepted={self.accepted})"
        )
