"""Extract the 3D footprint of verified eddies

Description:
------------

A verified center is grown into a disk on its layer by testing larger and
larger rings, one cell at a time, until the first ring fails verification.
The center on the next layer is the net-velocity minimum in a small window
around the center above. Net velocity is taken from the velocity averaged over
a few cells (`SearchParams.smooth`), so noise does not pull the minimum off
the rotation center. The new center is verified with the polarity found at
the surface and grown again. The descent stops at the first layer without a
verified center. The stack of disks is the footprint of the eddy, and
statistics of the property fields over the footprint are its profiles.

`detect_hybrid` runs the whole pipeline on one frame.
"""

# Standard library imports
import logging
import time
from typing import Dict, List, Optional, Sequence, Tuple

# Third party imports
import numpy as np

# Eddyscan imports
from eddyscan import centers
from eddyscan.data import (
    CenterCandidate,
    Cell,
    Criterion,
    DetectionReport,
    Eddy3D,
    EddyLayer,
    OceanFrame,
    Polarity,
    PropertyStats,
    ScalarField2D,
)
from eddyscan.data.eddy import PROPERTIES
from eddyscan.lib import exceptions
from eddyscan.lib.config import SearchParams, VerifyParams
from eddyscan.lib.grid import smoothed_speed
from eddyscan.lib.parallel import ordered_map
from eddyscan.verify import verify_candidates, verify_center

log = logging.getLogger(__name__)


def grow_boundary(
    frame: OceanFrame,
    layer: int,
    center: Cell,
    polarity: Polarity,
    params: VerifyParams,
    rs: int = 3,
) -> int:
    """Largest radius at which the ring, and every smaller one from rs, passes

    Args:
        frame:     Frame with velocity.
        layer:     Layer of the center.
        center:    Center (x, y), verified at radius rs.
        polarity:  Polarity used for the tangency criterion.
        params:    Verification thresholds.
        rs:        Initial radius.

    Returns:
        The last radius that passed, at least rs.
    """
    candidate = CenterCandidate(center, polarity, center, layer)
    radius = rs
    while verify_center(frame, candidate, radius + 1, params).accepted:
        radius += 1
    return radius


def descend_layers(
    frame: OceanFrame,
    surface_eddy: EddyLayer,
    polarity: Polarity,
    search: SearchParams,
    verify: VerifyParams,
    speeds: Optional[Sequence[ScalarField2D]] = None,
) -> Eddy3D:
    """Follow an eddy from its surface disk down through the layers

    Args:
        frame:         Frame with velocity.
        surface_eddy:  Grown disk on the surface layer.
        polarity:      Polarity found at the surface.
        search:        Search parameters, rc and rs are used.
        verify:        Verification thresholds.
        speeds:        Smoothed net velocity per layer, computed when not given.

    Returns:
        Eddy with one disk per layer down to the last verified layer, id 0.
    """
    vel = frame.require_velocity()
    layers = [surface_eddy]
    for k in range(surface_eddy.layer + 1, vel.nz):
        layer_speed = smoothed_speed(vel, k, search.smooth) if speeds is None else speeds[k]
        try:
            center = centers.window_minimum(layer_speed, layers[-1].center, search.rc)
        except exceptions.MaskedRegionError:
            break

        candidate = CenterCandidate(surface_eddy.center, polarity, center, k)
        if not verify_center(frame, candidate, search.rs, verify).accepted:
            break
        radius = grow_boundary(frame, k, center, polarity, verify, search.rs)
        layers.append(EddyLayer(k, center, radius))

    log.debug(f"Eddy at {surface_eddy.center} spans {len(layers)} layers")
    return Eddy3D(0, polarity, tuple(layers))


def disk_cells(center: Cell, radius: float, shape: Tuple[int, int]) -> Tuple[np.ndarray, np.ndarray]:
    """Rows and columns of the cells at distance <= radius from the center"""
    ny, nx = shape
    x, y = center
    reach = int(np.floor(radius))
    cols = np.arange(max(x - reach, 0), min(x + reach, nx - 1) + 1)
    rows = np.arange(max(y - reach, 0), min(y + reach, ny - 1) + 1)
    jj, ii = np.meshgrid(rows, cols, indexing="ij")
    inside = (ii - x) ** 2 + (jj - y) ** 2 <= radius ** 2
    return jj[inside], ii[inside]


def _stats(values: np.ndarray) -> Optional[PropertyStats]:
    if values.size == 0:
        return None
    return PropertyStats(
        mean=float(values.mean()), min=float(values.min()), max=float(values.max()), count=int(values.size)
    )


def extract_profiles(frame: OceanFrame, eddy: Eddy3D) -> Eddy3D:
    """Statistics of the property fields over each disk of the footprint

    Properties missing from the frame, or without a valid cell in a disk, are
    marked unavailable (None).
    """
    fields = {name: frame.property_field(name) for name in PROPERTIES if name != "speed"}
    profiles: List[Dict[str, Optional[PropertyStats]]] = []
    for layer in eddy.layers:
        rows, cols = disk_cells(layer.center, layer.radius, frame.grid.shape2d)
        profile: Dict[str, Optional[PropertyStats]] = dict()
        for name, field in fields.items():
            if field is None:
                profile[name] = None
                continue
            valid = field.mask[layer.layer, rows, cols]
            profile[name] = _stats(field.values[layer.layer, rows, cols][valid])

        if frame.vel is None:
            profile["speed"] = None
        else:
            valid = frame.vel.mask[layer.layer, rows, cols]
            u = frame.vel.u[layer.layer, rows, cols][valid]
            v = frame.vel.v[layer.layer, rows, cols][valid]
            profile["speed"] = _stats(np.hypot(u, v))
        profiles.append(profile)

    return Eddy3D(eddy.id, eddy.polarity, eddy.layers, tuple(profiles))


def _overlaps(first: Eddy3D, second: Eddy3D) -> bool:
    """The center of one eddy lies inside the disk of the other on a shared layer"""
    for a, b in zip(first.layers, second.layers):
        distance = np.hypot(a.center[0] - b.center[0], a.center[1] - b.center[1])
        if distance <= max(a.radius, b.radius):
            return True
    return False


def dedupe(eddies: Sequence[Eddy3D]) -> Tuple[List[Eddy3D], int]:
    """Remove eddies overlapping a larger one

    Eddies are considered by decreasing surface radius, earlier eddies first
    among equal radii. An eddy is dropped if it overlaps an eddy already kept.

    Returns:
        The kept eddies in their original order and the number dropped.
    """
    order = sorted(range(len(eddies)), key=lambda idx: (-eddies[idx].surface.radius, idx))
    kept: List[int] = []
    for idx in order:
        if not any(_overlaps(eddies[idx], eddies[other]) for other in kept):
            kept.append(idx)
    return [eddies[idx] for idx in sorted(kept)], len(eddies) - len(kept)


def detect_hybrid(
    frame: OceanFrame, search: SearchParams, verify: VerifyParams, workers: int = 1
) -> DetectionReport:
    """Detect 3D eddies with the hybrid SSH and velocity method

    Args:
        frame:    Frame with SSH and velocity.
        search:   Candidate search parameters.
        verify:   Verification thresholds.
        workers:  Number of threads used for verification and extraction.

    Returns:
        Report with the eddies numbered from 1 in candidate order.
    """
    ssh = frame.require_ssh()
    vel = frame.require_velocity()
    timing: Dict[str, float] = dict()

    start = time.perf_counter()
    speeds = [smoothed_speed(vel, k, search.smooth) for k in range(vel.nz)]
    extrema = centers.find_ssh_extrema(ssh, search.re)
    candidates = centers.find_velocity_minima(speeds[0], extrema, search.rv)
    timing["centers"] = time.perf_counter() - start

    start = time.perf_counter()
    reports = verify_candidates(frame, candidates, search.rs, verify, workers)
    timing["verify"] = time.perf_counter() - start
    verified = [c for c, r in zip(candidates, reports) if r.accepted]

    def extract(candidate: CenterCandidate) -> Eddy3D:
        radius = grow_boundary(frame, 0, candidate.vel_minimum, candidate.polarity, verify, search.rs)
        surface = EddyLayer(0, candidate.vel_minimum, radius)
        eddy = descend_layers(frame, surface, candidate.polarity, search, verify, speeds)
        return extract_profiles(frame, eddy)

    start = time.perf_counter()
    eddies = ordered_map(extract, verified, workers)
    eddies, num_duplicates = dedupe(eddies)
    timing["extract"] = time.perf_counter() - start

    report = DetectionReport(
        eddies=[e.with_id(idx) for idx, e in enumerate(eddies, start=1)],
        candidates_total=len(candidates),
        timing=timing,
        method="hybrid",
        frame_index=frame.frame_index,
    )
    report.count_rejections([r.failing_criterion for r in reports if not r.accepted])
    report.count_rejections([Criterion.DUPLICATE] * num_duplicates)
    report.check_accounting()

    log.info(
        f"Frame {frame.frame_index}: {len(candidates)} candidates, {len(verified)} verified, "
        f"{report.accepted} eddies"
    )
    return report
