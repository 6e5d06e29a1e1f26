"""Winding-angle detector, clustering of closed streamlines

Description:
------------

Streamlines are integrated from a regular grid of seeds with a fixed-step
fourth order Runge-Kutta scheme on the normalized velocity direction field,
so that one step always has the same length and the turning of a streamline
does not depend on the speed. The winding angle of a streamline is the sum of
the signed turns between consecutive segments, positive counterclockwise.

A streamline stops when it leaves the grid, runs into land or stagnant water,
reaches the largest number of steps, or comes back within the closure
distance of its seed after having left it and after at least 8 steps. A
closed streamline is completed by the segment back to the seed, so the
winding angle of a simple loop is exactly 360 degrees in magnitude.

Closed streamlines winding at least the threshold are eddy streamlines. They
are clustered by their centroids: a streamline whose centroid lies within the
merge distance of a centroid already in a cluster joins that cluster. Each
cluster is one eddy, centered on the mean centroid and bounded by its
outermost streamline.
"""

# Standard library imports
from dataclasses import dataclass
import logging
import time
from typing import List, Optional, Sequence, Tuple

# Third party imports
import numpy as np

# Eddyscan imports
from eddyscan.data import DetectionReport, Eddy3D, EddyLayer, OceanFrame, Polarity, ScalarField2D
from eddyscan.extract import extract_profiles
from eddyscan.lib import exceptions
from eddyscan.lib import plugins
from eddyscan.lib.config import RunConfig, WaParams
from eddyscan.lib.grid import bilinear_sample_points
from eddyscan.verify import wrap_angle

log = logging.getLogger(__name__)

# Smallest number of steps before a streamline may close
MIN_CLOSURE_STEPS = 8

# Number of streamlines integrated together
CHUNK_SIZE = 1024

# Slack on the winding threshold, degrees
_TOLERANCE = 1e-6


@dataclass(frozen=True, eq=False)
class Streamline:
    """An integrated streamline

    Attributes:
        seed:             Start position (x, y).
        points:           Positions along the streamline, shape (n, 2), starting at the seed.
        cumulative_turn:  Winding angle in degrees, positive counterclockwise.
        closed:           Whether the streamline came back to its seed.
        closure_gap:      Distance from the last point to the seed.
        stop:             Why integration stopped: closed, boundary, stagnation or max_steps.
    """

    seed: Tuple[float, float]
    points: np.ndarray
    cumulative_turn: float
    closed: bool
    closure_gap: float
    stop: str

    @property
    def centroid(self) -> Tuple[float, float]:
        x, y = self.points.mean(axis=0)
        return (float(x), float(y))

    @property
    def mean_radius(self) -> float:
        """Mean distance of the points from the centroid"""
        return float(np.hypot(*(self.points - np.array(self.centroid)).T).mean())


def _directions(
    u: ScalarField2D, v: ScalarField2D, points: np.ndarray, min_speed: float
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Unit velocity at points

    Returns:
        Directions with shape (n, 2), a flag for points inside the grid and a
        flag for points with a usable direction.
    """
    xs, ys = points[:, 0], points[:, 1]
    inside = (xs >= 0) & (xs <= u.nx - 1) & (ys >= 0) & (ys <= u.ny - 1)
    xs, ys = np.clip(xs, 0, u.nx - 1), np.clip(ys, 0, u.ny - 1)
    us, valid = bilinear_sample_points(u, xs, ys)
    vs, _ = bilinear_sample_points(v, xs, ys)
    us, vs = np.where(valid, us, 0.0), np.where(valid, vs, 0.0)
    speed = np.hypot(us, vs)
    usable = inside & valid & (speed > min_speed)
    norm = np.where(usable, speed, 1.0)
    return np.column_stack((us / norm, vs / norm)) * usable[:, None], inside, usable


def _integrate_chunk(
    u: ScalarField2D, v: ScalarField2D, seeds: np.ndarray, params: WaParams
) -> List[Streamline]:
    """Integrate the streamlines of a chunk of seeds together"""
    n, h = len(seeds), params.step
    history = np.full((params.max_steps + 1, n, 2), np.nan)
    history[0] = seeds
    lengths = np.ones(n, dtype=int)
    turn = np.zeros(n)
    first_heading = np.full(n, np.nan)
    last_heading = np.full(n, np.nan)
    stop = np.full(n, "max_steps", dtype=object)
    closed = np.zeros(n, dtype=bool)
    departed = np.zeros(n, dtype=bool)
    active = np.ones(n, dtype=bool)

    position = seeds.copy()
    for step in range(1, params.max_steps + 1):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        p = position[idx]
        k1, in1, ok1 = _directions(u, v, p, params.min_speed)
        k2, in2, ok2 = _directions(u, v, p + h / 2 * k1, params.min_speed)
        k3, in3, ok3 = _directions(u, v, p + h / 2 * k2, params.min_speed)
        k4, in4, ok4 = _directions(u, v, p + h * k3, params.min_speed)
        new = p + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        in_new = (new[:, 0] >= 0) & (new[:, 0] <= u.nx - 1) & (new[:, 1] >= 0) & (new[:, 1] <= u.ny - 1)

        exits = ~(in1 & in2 & in3 & in4 & in_new)
        stalls = ~exits & ~(ok1 & ok2 & ok3 & ok4)
        stop[idx[exits]] = "boundary"
        stop[idx[stalls]] = "stagnation"
        active[idx[exits | stalls]] = False

        moving = ~(exits | stalls)
        idx, new, p = idx[moving], new[moving], p[moving]
        segment = new - p
        heading = np.degrees(np.arctan2(segment[:, 1], segment[:, 0]))
        has_last = ~np.isnan(last_heading[idx])
        turn[idx] += np.where(has_last, wrap_angle(heading - np.nan_to_num(last_heading[idx])), 0.0)
        first_heading[idx] = np.where(has_last, first_heading[idx], heading)
        last_heading[idx] = heading
        position[idx] = new
        history[step, idx] = new
        lengths[idx] += 1

        gap = np.hypot(*(new - seeds[idx]).T)
        closing = departed[idx] & (step >= MIN_CLOSURE_STEPS) & (gap <= params.closure_distance)
        departed[idx] |= gap > params.closure_distance
        if closing.any():
            done = idx[closing]
            back = seeds[done] - new[closing]
            heading_back = np.degrees(np.arctan2(back[:, 1], back[:, 0]))
            degenerate = gap[closing] < 1e-12
            heading_back = np.where(degenerate, last_heading[done], heading_back)
            turn[done] += wrap_angle(heading_back - last_heading[done])
            turn[done] += wrap_angle(first_heading[done] - heading_back)
            closed[done] = True
            stop[done] = "closed"
            active[done] = False

    streamlines = []
    for line in range(n):
        points = history[: lengths[line], line]
        streamlines.append(
            Streamline(
                seed=(float(seeds[line, 0]), float(seeds[line, 1])),
                points=points,
                cumulative_turn=float(turn[line]),
                closed=bool(closed[line]),
                closure_gap=float(np.hypot(*(points[-1] - seeds[line]))),
                stop=str(stop[line]),
            )
        )
    return streamlines


def _on_land(u: ScalarField2D, seed: Tuple[float, float]) -> bool:
    col, row = int(round(seed[0])), int(round(seed[1]))
    return not u.mask[row, col]


def integrate_streamlines(
    u: ScalarField2D, v: ScalarField2D, seeds: Sequence[Tuple[float, float]], params: WaParams
) -> List[Optional[Streamline]]:
    """Integrate streamlines from many seeds

    Args:
        u:       Eastward velocity on one layer.
        v:       Northward velocity on one layer.
        seeds:   Start positions (x, y) inside the grid.
        params:  Integration parameters.

    Returns:
        One streamline per seed, None for seeds on land.
    """
    seeds = np.asarray(seeds, dtype=float).reshape(-1, 2)
    for x, y in seeds:
        if not (0 <= x <= u.nx - 1 and 0 <= y <= u.ny - 1):
            raise exceptions.SampleOutOfDomainError(f"Seed ({x:.3f}, {y:.3f}) outside grid {u.nx}x{u.ny}")

    on_water = np.array([not _on_land(u, tuple(s)) for s in seeds], dtype=bool)
    water_seeds = seeds[on_water]
    lines: List[Streamline] = []
    for start in range(0, len(water_seeds), CHUNK_SIZE):
        lines.extend(_integrate_chunk(u, v, water_seeds[start:start + CHUNK_SIZE], params))

    integrated = iter(lines)
    return [next(integrated) if ok else None for ok in on_water]


def integrate_streamline(
    u: ScalarField2D, v: ScalarField2D, seed: Tuple[float, float], params: WaParams
) -> Optional[Streamline]:
    """Integrate one streamline, None if the seed is on land"""
    return integrate_streamlines(u, v, [seed], params)[0]


def seed_grid(nx: int, ny: int, spacing: float) -> List[Tuple[float, float]]:
    """Regular grid of seeds, row by row, half a spacing in from the edges"""
    xs = np.arange(spacing / 2, nx - 1, spacing)
    ys = np.arange(spacing / 2, ny - 1, spacing)
    return [(float(x), float(y)) for y in ys for x in xs]


def cluster_streamlines(
    streamlines: Sequence[Streamline], merge_distance: float
) -> List[List[Streamline]]:
    """Single-linkage clustering of streamlines by their centroids

    Clusters are ordered by their first streamline, and streamlines keep their
    input order within a cluster.
    """
    centroids = np.array([s.centroid for s in streamlines], dtype=float).reshape(-1, 2)
    labels = np.full(len(streamlines), -1)
    for idx, centroid in enumerate(centroids):
        distance = np.hypot(*(centroids[:idx] - centroid).T)
        near = np.unique(labels[:idx][distance <= merge_distance])
        if near.size == 0:
            labels[idx] = idx
            continue
        labels[idx] = near[0]
        labels[np.isin(labels, near)] = near[0]

    return [
        [s for s, label in zip(streamlines, labels) if label == cluster]
        for cluster in np.unique(labels)
    ]


def detect_wa(
    frame: OceanFrame, layer: int, params: WaParams
) -> List[Tuple[Tuple[float, float], Streamline]]:
    """Winding-angle eddies on one layer

    Args:
        frame:   Frame with velocity.
        layer:   Layer to analyse.
        params:  Seeding, integration and clustering parameters.

    Returns:
        Center (x, y) and outermost streamline of each eddy.
    """
    u, v = frame.require_velocity().layer(layer)
    seeds = seed_grid(u.nx, u.ny, params.spacing)
    lines = [s for s in integrate_streamlines(u, v, seeds, params) if s is not None]
    winding = [s for s in lines if s.closed and abs(s.cumulative_turn) >= params.threshold - _TOLERANCE]
    log.debug(f"{len(winding)} of {len(lines)} streamlines wind at least {params.threshold} degrees")

    eddies = []
    for cluster in cluster_streamlines(winding, params.merge_distance):
        center = tuple(np.mean([s.centroid for s in cluster], axis=0))
        outermost = max(cluster, key=lambda s: s.mean_radius)
        eddies.append(((float(center[0]), float(center[1])), outermost))
    return eddies


@plugins.register
def detect(frame: OceanFrame, config: RunConfig) -> DetectionReport:
    start = time.perf_counter()
    clusters = detect_wa(frame, 0, config.wa)
    timing = dict(streamlines=time.perf_counter() - start)

    start = time.perf_counter()
    eddies = []
    for idx, (center, boundary) in enumerate(clusters, start=1):
        cell = (int(round(center[0])), int(round(center[1])))
        radius = max(1, int(round(boundary.mean_radius)))
        polarity = Polarity.from_sense(boundary.cumulative_turn)
        eddy = Eddy3D(idx, polarity, (EddyLayer(0, cell, radius),))
        eddies.append(extract_profiles(frame, eddy))
    timing["extract"] = time.perf_counter() - start

    report = DetectionReport(
        eddies=eddies,
        candidates_total=len(eddies),
        timing=timing,
        method="wa",
        frame_index=frame.frame_index,
    )
    log.info(f"Frame {frame.frame_index}: {report.accepted} winding-angle clusters")
    return report
