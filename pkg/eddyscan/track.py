"""Track eddies through a time series of frames

Description:
------------

Eddies detected on consecutive frames are associated greedily by mutual
nearest neighbours: a track and a detection are joined when each is the
closest of the other, among the pairs closer than the largest displacement
(scaled by the number of frames between them) and, optionally, of equal
polarity. Joined pairs are removed and the search is repeated until no more
pairs are found. Detections left over start new tracks.

A track may skip up to `max_missed_frames` frames. Only the surface layer of
each eddy is used.
"""

# Standard library imports
from dataclasses import dataclass, field
import logging
from typing import Dict, List, Sequence, Tuple

# Third party imports
import numpy as np
import pandas as pd

# Eddyscan imports
from eddyscan.data import DetectionReport, Polarity
from eddyscan.lib import exceptions
from eddyscan.lib.config import TrackParams

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Observation:
    """One eddy on one frame"""

    frame_index: int
    eddy_id: int
    center: Tuple[int, int]
    radius: int
    polarity: Polarity


@dataclass
class EddyTrack:
    """An eddy followed through time

    Attributes:
        track_id:      Identifier, numbered from 1 in order of appearance.
        observations:  Observations ordered by frame.
    """

    track_id: int
    observations: List[Observation] = field(default_factory=list)

    @property
    def last(self) -> Observation:
        return self.observations[-1]

    @property
    def polarity(self) -> Polarity:
        return self.observations[0].polarity

    @property
    def max_radius(self) -> int:
        return max(o.radius for o in self.observations)

    def displacements(self) -> List[Tuple[int, int]]:
        """Change of the surface center between consecutive observations"""
        return [
            (b.center[0] - a.center[0], b.center[1] - a.center[1])
            for a, b in zip(self.observations, self.observations[1:])
        ]

    def __len__(self) -> int:
        return len(self.observations)


def _observations(report: DetectionReport) -> List[Observation]:
    return [
        Observation(report.frame_index, e.id, e.surface.center, e.surface.radius, e.polarity)
        for e in report.eddies
    ]


def _check_order(reports: Sequence[DetectionReport]) -> None:
    indices = [r.frame_index for r in reports]
    steps = np.diff(indices)
    if not (np.all(steps > 0) or np.all(steps < 0)):
        raise exceptions.DataValidationError(
            f"Frames must be ordered by frame index without repeats, got {indices}"
        )


def _mutual_nearest(distance: np.ndarray) -> List[Tuple[int, int]]:
    """Greedy mutual-nearest pairs of a distance matrix, infinite entries are never paired"""
    pairs: List[Tuple[int, int]] = []
    distance = distance.copy()
    while np.isfinite(distance).any():
        nearest_col = np.argmin(distance, axis=1)
        nearest_row = np.argmin(distance, axis=0)
        found = [
            (row, int(col))
            for row, col in enumerate(nearest_col)
            if np.isfinite(distance[row, col]) and nearest_row[col] == row
        ]
        for row, col in found:
            pairs.append((row, col))
            distance[row, :] = np.inf
            distance[:, col] = np.inf
    return pairs


def associate(reports: Sequence[DetectionReport], params: TrackParams) -> List[EddyTrack]:
    """Associate the eddies of a sequence of frames into tracks

    Args:
        reports:  Detection reports ordered by frame index.
        params:   Association parameters.

    Returns:
        Tracks ordered by id. Every detection belongs to exactly one track.
    """
    _check_order(reports)
    tracks: List[EddyTrack] = []
    for report in reports:
        observations = _observations(report)
        open_tracks = [
            t for t in tracks
            if abs(report.frame_index - t.last.frame_index) <= params.max_missed_frames + 1
        ]

        distance = np.full((len(open_tracks), len(observations)), np.inf)
        for row, track in enumerate(open_tracks):
            gap = abs(report.frame_index - track.last.frame_index)
            for col, obs in enumerate(observations):
                if params.polarity_must_match and obs.polarity is not track.polarity:
                    continue
                d = np.hypot(obs.center[0] - track.last.center[0], obs.center[1] - track.last.center[1])
                if d <= params.max_displacement * gap:
                    distance[row, col] = d

        matched = set()
        for row, col in _mutual_nearest(distance):
            open_tracks[row].observations.append(observations[col])
            matched.add(col)
        for col, obs in enumerate(observations):
            if col not in matched:
                tracks.append(EddyTrack(len(tracks) + 1, [obs]))

    log.info(f"Associated eddies of {len(reports)} frames into {len(tracks)} tracks")
    return tracks


def top_n(tracks: Sequence[EddyTrack], n: int) -> List[EddyTrack]:
    """The n tracks with the largest surface radius, ordered by id"""
    if n < 0:
        raise exceptions.ConfigError(f"Number of tracks must be non-negative, got {n}")
    largest = sorted(tracks, key=lambda t: (-t.max_radius, t.track_id))[:n]
    return sorted(largest, key=lambda t: t.track_id)


def tracks_dataframe(tracks: Sequence[EddyTrack]) -> pd.DataFrame:
    """One row per observation, ready for plotting the paths of the tracks"""
    rows: List[Dict] = [
        dict(
            track_id=t.track_id,
            frame_index=o.frame_index,
            eddy_id=o.eddy_id,
            polarity=o.polarity.value,
            x=o.center[0],
            y=o.center[1],
            radius=o.radius,
        )
        for t in tracks
        for o in t.observations
    ]
    columns = ["track_id", "frame_index", "eddy_id", "polarity", "x", "y", "radius"]
    return pd.DataFrame(rows, columns=columns)
