"""Locate candidate eddy centers

Description:
------------

Eddies have an SSH extremum near their center: a minimum for cyclonic and a
maximum for anticyclonic eddies (northern hemisphere). The SSH extremum is not
always the rotation center, so the net-velocity minimum close to each SSH
extremum is taken as the candidate center instead.

Window widths are full widths in cells; a window of width `w` reaches
`(w - 1) / 2` cells from its center and is clipped at the grid boundary.
Extrema are strict: a cell with a tie anywhere in its window is not an
extremum.
"""

# Standard library imports
import logging
from typing import List, Tuple

# Third party imports
import numpy as np
from scipy import ndimage

# Eddyscan imports
from eddyscan.data import CenterCandidate, Cell, Polarity, ScalarField2D
from eddyscan.lib import exceptions

log = logging.getLogger(__name__)


def window_footprint(width: int) -> np.ndarray:
    """Square window without its center cell"""
    footprint = np.ones((width, width), dtype=bool)
    footprint[width // 2, width // 2] = False
    return footprint


def check_width(name: str, width: int) -> None:
    if width < 3 or width % 2 != 1:
        raise exceptions.ConfigError(f"{name} must be an odd integer >= 3, got {width}")


def find_ssh_extrema(ssh: ScalarField2D, re: int) -> List[Tuple[Cell, Polarity]]:
    """Strict SSH extrema in a sliding window

    A valid cell is a maximum if it is strictly greater than every other valid
    cell in the re x re window centered on it, and a minimum if it is strictly
    smaller. Cells with no other valid cell in their window are ignored.

    Args:
        ssh:  Sea surface height.
        re:   Width of the window.

    Returns:
        Cells (x, y) with the polarity they indicate, ordered row by row.
    """
    check_width("re", re)
    footprint = window_footprint(re)
    neighbours = ndimage.correlate(
        ssh.mask.astype(int), footprint.astype(int), mode="constant", cval=0
    )
    candidates = ssh.mask & (neighbours > 0)

    highest = ndimage.maximum_filter(
        ssh.filled(-np.inf), footprint=footprint, mode="constant", cval=-np.inf
    )
    lowest = ndimage.minimum_filter(
        ssh.filled(np.inf), footprint=footprint, mode="constant", cval=np.inf
    )
    values = ssh.filled(0.0)
    is_max = candidates & (values > highest)
    is_min = candidates & (values < lowest)

    extrema = []
    for j, i in zip(*np.nonzero(is_max | is_min)):
        polarity = Polarity.ANTICYCLONIC if is_max[j, i] else Polarity.CYCLONIC
        extrema.append(((int(i), int(j)), polarity))

    log.debug(f"Found {len(extrema)} SSH extrema with window {re}")
    return extrema


def window_minimum(field: ScalarField2D, center: Cell, width: int) -> Cell:
    """Cell of the smallest valid value in a window, ties broken row by row

    Args:
        field:   Field to search.
        center:  Cell (x, y) at the center of the window.
        width:   Width of the window, clipped at the grid boundary.

    Returns:
        Cell (x, y) of the minimum.
    """
    half = (width - 1) // 2
    x, y = center
    x0, x1 = max(x - half, 0), min(x + half, field.nx - 1)
    y0, y1 = max(y - half, 0), min(y + half, field.ny - 1)
    rows, cols = slice(y0, y1 + 1), slice(x0, x1 + 1)
    window = np.where(field.mask[rows, cols], field.values[rows, cols], np.inf)
    if not np.isfinite(window).any():
        raise exceptions.MaskedRegionError(f"No valid cell in the {width}x{width} window at {center}")

    j, i = np.unravel_index(np.argmin(window), window.shape)
    return (int(x0 + i), int(y0 + j))


def find_velocity_minima(
    speed: ScalarField2D,
    extrema: List[Tuple[Cell, Polarity]],
    rv: int,
    layer: int = 0,
) -> List[CenterCandidate]:
    """Net-velocity minima around SSH extrema

    Each SSH extremum yields the cell of smallest net velocity in the rv x rv
    window around it. Extrema whose window is entirely masked yield nothing.
    When several extrema share a velocity minimum, only the first one in row
    order is kept, with its polarity.

    Args:
        speed:    Net velocity on the layer.
        extrema:  SSH extrema as returned by find_ssh_extrema.
        rv:       Width of the window.
        layer:    Layer of the candidates.

    Returns:
        Candidate centers.
    """
    check_width("rv", rv)
    candidates: List[CenterCandidate] = []
    seen = set()
    for cell, polarity in sorted(extrema, key=lambda e: (e[0][1], e[0][0])):
        try:
            minimum = window_minimum(speed, cell, rv)
        except exceptions.MaskedRegionError:
            log.debug(f"Velocity window around SSH extremum {cell} is masked")
            continue
        if minimum in seen:
            continue
        seen.add(minimum)
        candidates.append(CenterCandidate(cell, polarity, minimum, layer))

    log.debug(f"Found {len(candidates)} candidates from {len(extrema)} SSH extrema")
    return candidates
