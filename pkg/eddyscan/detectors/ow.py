"""Okubo-Weiss detector, region growing from local OW minima with a dynamic threshold

Description:
------------

Eddy cores are local minima of the Okubo-Weiss parameter W that are negative.
Around each core the connected region where

    W <= k * W_min

is grown, with W_min the value at the core. The threshold follows the strength
of each eddy instead of being one global constant. A minimum that already lies
inside the region of an earlier core does not start a new region.

Minima are strict with one exception: on a plateau of equal values (for
instance solid-body rotation) the first plateau cell in row order stands for
the plateau.

The detector works on the surface layer. Each region is reported as a
single-layer footprint: a disk of the same area centered on the core.
"""

# Standard library imports
import logging
import time
from typing import FrozenSet, List, Tuple

# Third party imports
import numpy as np
from scipy import ndimage

# Eddyscan imports
from eddyscan import centers
from eddyscan.data import Cell, Criterion, DetectionReport, Eddy3D, EddyLayer, OceanFrame, Polarity
from eddyscan.data import ScalarField2D
from eddyscan.extract import extract_profiles
from eddyscan.lib import plugins
from eddyscan.lib.config import OwParams, RunConfig
from eddyscan.lib.grid import okubo_weiss, vorticity

log = logging.getLogger(__name__)

# Relative slack when comparing W values
_TOLERANCE = 1e-9

_STRUCTURES = {4: ndimage.generate_binary_structure(2, 1), 8: ndimage.generate_binary_structure(2, 2)}

# Half width of the first labelling window around a core
_INITIAL_REACH = 8


def find_ow_minima(ow: ScalarField2D, window: int) -> List[Cell]:
    """Negative local minima of W, in row order

    Args:
        ow:      Okubo-Weiss parameter.
        window:  Width of the search window.

    Returns:
        Cells (x, y) of the minima.
    """
    centers.check_width("window", window)
    footprint = centers.window_footprint(window)
    preceding = footprint.copy()
    preceding[window // 2 + 1:, :] = False
    preceding[window // 2, window // 2 + 1:] = False

    values = ow.filled(np.inf)
    slack = _TOLERANCE * np.abs(np.where(ow.mask, ow.values, 0.0))
    lowest = ndimage.minimum_filter(values, footprint=footprint, mode="constant", cval=np.inf)
    lowest_before = ndimage.minimum_filter(values, footprint=preceding, mode="constant", cval=np.inf)
    neighbours = ndimage.correlate(ow.mask.astype(int), footprint.astype(int), mode="constant", cval=0)

    is_min = (
        ow.mask
        & (neighbours > 0)
        & (values < 0)
        & (values <= lowest + slack)
        & (values < lowest_before - slack)
    )
    return [(int(i), int(j)) for j, i in zip(*np.nonzero(is_min))]


def grow_region(ow: ScalarField2D, core: Cell, k: float, connectivity: int = 4) -> FrozenSet[Cell]:
    """Connected region around a core where W <= k * W(core)

    The region is the component holding the core of the thresholded field,
    labelled in a window around the core. The window is doubled until the
    component no longer touches an edge of the window inside the grid.

    Args:
        ow:            Okubo-Weiss parameter.
        core:          Cell (x, y) of a negative minimum.
        k:             Fraction of the core value used as threshold.
        connectivity:  4 or 8 connected neighbours.

    Returns:
        Cells (x, y) of the region, including the core.
    """
    return _grow(ow.filled(np.inf), core, k, connectivity)


def _grow(values: np.ndarray, core: Cell, k: float, connectivity: int) -> FrozenSet[Cell]:
    ny, nx = values.shape
    threshold = k * values[core[1], core[0]]
    threshold += _TOLERANCE * abs(threshold)

    x, y = core
    reach = _INITIAL_REACH
    while True:
        x0, x1 = max(x - reach, 0), min(x + reach + 1, nx)
        y0, y1 = max(y - reach, 0), min(y + reach + 1, ny)
        inside = values[y0:y1, x0:x1] <= threshold
        inside[y - y0, x - x0] = True
        labels, _ = ndimage.label(inside, structure=_STRUCTURES[connectivity])
        region = labels == labels[y - y0, x - x0]
        open_edges = (
            (x0 > 0 and region[:, 0].any())
            or (x1 < nx and region[:, -1].any())
            or (y0 > 0 and region[0, :].any())
            or (y1 < ny and region[-1, :].any())
        )
        if not open_edges:
            break
        reach *= 2

    rows, cols = np.nonzero(region)
    return frozenset(zip((cols + x0).tolist(), (rows + y0).tolist()))


def _regions(ow: ScalarField2D, params: OwParams) -> Tuple[List[Tuple[Cell, FrozenSet[Cell]]], int]:
    """Regions grown from the OW minima, and the number of minima absorbed by earlier regions"""
    regions: List[Tuple[Cell, FrozenSet[Cell]]] = []
    values = ow.filled(np.inf)
    covered = np.zeros(ow.shape, dtype=bool)
    absorbed = 0
    for core in find_ow_minima(ow, params.window):
        if covered[core[1], core[0]]:
            absorbed += 1
            continue
        region = _grow(values, core, params.k, params.connectivity)
        cols, rows = zip(*region)
        covered[list(rows), list(cols)] = True
        regions.append((core, region))
    return regions, absorbed


def detect_ow(
    frame: OceanFrame, layer: int, params: OwParams
) -> List[Tuple[Cell, FrozenSet[Cell]]]:
    """Okubo-Weiss regions on one layer

    Args:
        frame:   Frame with velocity.
        layer:   Layer to analyse.
        params:  Threshold constant, window and connectivity.

    Returns:
        Core cell and member cells of each region.
    """
    ow = okubo_weiss(frame.require_velocity(), layer)
    return _regions(ow, params)[0]


def _as_eddy(core: Cell, cells: FrozenSet[Cell], omega: ScalarField2D) -> Eddy3D:
    radius = max(1, int(round(np.sqrt(len(cells) / np.pi))))
    polarity = Polarity.from_sense(omega.values[core[1], core[0]])
    return Eddy3D(0, polarity, (EddyLayer(0, core, radius),))


@plugins.register
def detect(frame: OceanFrame, config: RunConfig) -> DetectionReport:
    vel = frame.require_velocity()
    timing = dict()

    start = time.perf_counter()
    ow = okubo_weiss(vel, 0)
    regions, absorbed = _regions(ow, config.ow)
    timing["regions"] = time.perf_counter() - start

    start = time.perf_counter()
    omega = vorticity(vel, 0)
    eddies = [
        extract_profiles(frame, _as_eddy(core, cells, omega)).with_id(idx)
        for idx, (core, cells) in enumerate(regions, start=1)
    ]
    timing["extract"] = time.perf_counter() - start

    report = DetectionReport(
        eddies=eddies,
        candidates_total=len(regions) + absorbed,
        timing=timing,
        method="ow",
        frame_index=frame.frame_index,
    )
    report.count_rejections([Criterion.DUPLICATE] * absorbed)
    report.check_accounting()
    log.info(f"Frame {frame.frame_index}: {report.accepted} Okubo-Weiss regions")
    return report
