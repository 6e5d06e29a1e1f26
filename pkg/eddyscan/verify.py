"""Verify candidate eddy centers on circular test paths

Description:
------------

The velocity is sampled on a circle (ring) around the candidate and four
criteria check that it describes a coherent rotation:

    C1   Consecutive samples have similar net velocity, the ratio of their
         speeds lies in [1/sv, sv].
    C2   Traversing the ring counterclockwise, the velocity direction turns
         steadily: the angular difference d(i) = theta(i) - theta(i+1)
         lies in [-sa, 0].
    C2a  A few small positive differences are tolerated: at most san of
         them, none larger than sae.
    C3   The velocity is roughly tangential: it deviates at most sd from
         the tangent direction given by the polarity.
    C4   The velocity at opposite samples points in roughly opposite
         directions: their angle lies in [180 - sy, 180 + sy].

Samples start at the bottom-most point of the ring (azimuth -90 degrees) and
run counterclockwise. Directions use the atan2 convention, in degrees. Pairs
of consecutive samples wrap around from the last sample to the first.

Rings that leave the grid, or where more than a quarter of the samples fall on
land, are rejected as masked rings. On partially masked rings only pairs of
valid samples are tested.
"""

# Standard library imports
from dataclasses import dataclass
import logging
from typing import List, Optional, Sequence, Tuple

# Third party imports
import numpy as np
import pandas as pd

# Eddyscan imports
from eddyscan.data import CenterCandidate, Criterion, OceanFrame, Polarity
from eddyscan.lib import exceptions
from eddyscan.lib.config import VerifyParams
from eddyscan.lib.grid import bilinear_sample_points
from eddyscan.lib.parallel import ordered_map

log = logging.getLogger(__name__)

# Largest fraction of masked samples on a ring
MAX_MASKED_FRACTION = 0.25

# Slack on the thresholds so that ideal flows are not rejected by round-off
_TOLERANCE = 1e-9


def wrap_angle(angle: np.ndarray) -> np.ndarray:
    """Wrap angles in degrees to the interval (-180, 180]"""
    return -((180.0 - np.asarray(angle, dtype=float)) % 360.0 - 180.0)


@dataclass(frozen=True, eq=False)
class RingSamples:
    """Velocity sampled on a ring

    Attributes:
        center:     Center (x, y) of the ring, cells.
        radius:     Radius of the ring, cells.
        azimuth:    Azimuth of each sample, degrees.
        u:          Eastward velocity of each sample.
        v:          Northward velocity of each sample.
        speed:      Net velocity of each sample.
        direction:  Direction of the velocity, degrees.
        valid:      False for samples on land.
    """

    center: Tuple[float, float]
    radius: float
    azimuth: np.ndarray
    u: np.ndarray
    v: np.ndarray
    speed: np.ndarray
    direction: np.ndarray
    valid: np.ndarray

    @property
    def n(self) -> int:
        return len(self.azimuth)

    @property
    def pair_valid(self) -> np.ndarray:
        """True for consecutive pairs (i, i+1) where both samples are valid"""
        return self.valid & np.roll(self.valid, -1)


@dataclass(frozen=True)
class CriterionResult:
    """Outcome of one criterion

    Attributes:
        passed:      Whether the ring passed.
        criterion:   The failing criterion, None if passed.
        index:       Index of the first failing sample.
        exceptions:  Positive angular differences used, only set by the angular criterion.
    """

    passed: bool
    criterion: Optional[Criterion] = None
    index: Optional[int] = None
    exceptions: int = 0

    @classmethod
    def fail(cls, criterion: Criterion, index: int, exceptions: int = 0) -> "CriterionResult":
        return cls(False, criterion, int(index), exceptions)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of verifying one candidate at one radius

    Attributes:
        accepted:              Whether all criteria passed.
        failing_criterion:     First failing criterion, None if accepted.
        failing_sample_index:  Sample where it failed, if known.
        exception_count:       Positive angular differences used.
        radius:                Radius of the ring.
    """

    accepted: bool
    failing_criterion: Optional[Criterion] = None
    failing_sample_index: Optional[int] = None
    exception_count: int = 0
    radius: float = 0.0


def ring_sample_count(radius: float) -> int:
    """Number of samples on a ring, 16 at radius 3 growing linearly, at least 16

    The count is always even so that every sample has an opposite sample.
    """
    if radius < 1:
        raise exceptions.DataValidationError(f"Ring radius must be at least 1 cell, got {radius}")
    return max(16, 2 * int(np.floor(8 * radius / 3 + 0.5)))


def sample_ring(
    frame: OceanFrame, layer: int, center: Tuple[float, float], radius: float
) -> RingSamples:
    """Sample the velocity on a ring

    Args:
        frame:   Frame with velocity.
        layer:   Layer to sample.
        center:  Center (x, y) of the ring, cells.
        radius:  Radius of the ring, cells.

    Returns:
        The samples, counterclockwise from the bottom-most point.
    """
    vel = frame.require_velocity()
    n = ring_sample_count(radius)
    azimuth = -90.0 + 360.0 * np.arange(n) / n
    xs = center[0] + radius * np.cos(np.radians(azimuth))
    ys = center[1] + radius * np.sin(np.radians(azimuth))

    nx, ny = frame.grid.nx, frame.grid.ny
    slack = 1e-9
    if xs.min() < -slack or xs.max() > nx - 1 + slack or ys.min() < -slack or ys.max() > ny - 1 + slack:
        raise exceptions.RingOutOfBoundsError(
            f"Ring of radius {radius} around {center} crosses the grid boundary"
        )
    xs = np.clip(xs, 0, nx - 1)
    ys = np.clip(ys, 0, ny - 1)

    u_layer, v_layer = vel.layer(layer)
    u, valid = bilinear_sample_points(u_layer, xs, ys)
    v, _ = bilinear_sample_points(v_layer, xs, ys)
    if 1 - valid.mean() > MAX_MASKED_FRACTION:
        raise exceptions.MaskedRingError(
            f"{np.count_nonzero(~valid)} of {n} samples on the ring of radius {radius} "
            f"around {center} are masked"
        )

    u = np.where(valid, u, 0.0)
    v = np.where(valid, v, 0.0)
    return RingSamples(
        center=(float(center[0]), float(center[1])),
        radius=radius,
        azimuth=azimuth,
        u=u,
        v=v,
        speed=np.hypot(u, v),
        direction=np.degrees(np.arctan2(v, u)),
        valid=valid,
    )


#
# Criteria
#
def speed_ratios(ring: RingSamples) -> np.ndarray:
    """Ratio speed(i) / speed(i+1), infinite where the next speed is zero"""
    with np.errstate(divide="ignore", invalid="ignore"):
        return ring.speed / np.roll(ring.speed, -1)


def angular_differences(ring: RingSamples) -> np.ndarray:
    """d(i) = theta(i) - theta(i+1), wrapped to (-180, 180]"""
    return wrap_angle(ring.direction - np.roll(ring.direction, -1))


def tangent_deviations(ring: RingSamples, polarity: Polarity) -> np.ndarray:
    """Deviation of the velocity from the tangent of the ring, wrapped to (-180, 180]"""
    tangent = ring.azimuth + 90.0 * polarity.sense
    return wrap_angle(ring.direction - tangent)


def symmetry_angles(ring: RingSamples) -> np.ndarray:
    """Angle theta(i) - theta(i + n/2) in [0, 360) for the first half of the ring"""
    half = ring.n // 2
    return (ring.direction[:half] - ring.direction[half:]) % 360.0


def criterion_speed_ratio(ring: RingSamples, sv: float) -> CriterionResult:
    """C1, similar net velocity at consecutive samples"""
    speed = ring.speed
    ratio = speed_ratios(ring)
    zero = (speed == 0) | (np.roll(speed, -1) == 0)
    low, high = 1 / sv * (1 - _TOLERANCE), sv * (1 + _TOLERANCE)
    bad = ring.pair_valid & (zero | (ratio < low) | (ratio > high))
    if bad.any():
        return CriterionResult.fail(Criterion.C1, np.flatnonzero(bad)[0])
    return CriterionResult(True)


def criterion_angular(ring: RingSamples, sa: float, sae: float, san: int) -> CriterionResult:
    """C2 and C2a, steady turning of the velocity direction along the ring"""
    differences = angular_differences(ring)
    used = 0
    for idx in np.flatnonzero(ring.pair_valid):
        difference = differences[idx]
        if difference < -sa - _TOLERANCE:
            return CriterionResult.fail(Criterion.C2, idx, used)
        if difference > sae + _TOLERANCE:
            return CriterionResult.fail(Criterion.C2A, idx, used)
        if difference > _TOLERANCE:
            used += 1
            if used > san:
                return CriterionResult.fail(Criterion.C2A, idx, used)
    return CriterionResult(True, exceptions=used)


def criterion_tangency(ring: RingSamples, sd: float, polarity: Polarity) -> CriterionResult:
    """C3, velocity parallel to the tangent in the rotation sense of the polarity"""
    deviation = tangent_deviations(ring, polarity)
    bad = ring.valid & (np.abs(deviation) > sd + _TOLERANCE)
    if bad.any():
        return CriterionResult.fail(Criterion.C3, np.flatnonzero(bad)[0])
    return CriterionResult(True)


def criterion_symmetry(ring: RingSamples, sy: float) -> CriterionResult:
    """C4, opposite samples have opposite velocity directions"""
    if ring.n % 2:
        raise exceptions.DataValidationError(f"Symmetry needs an even number of samples, got {ring.n}")
    half = ring.n // 2
    angle = symmetry_angles(ring)
    both_valid = ring.valid[:half] & ring.valid[half:]
    bad = both_valid & (
        (angle < 180.0 - sy - _TOLERANCE) | (angle > 180.0 + sy + _TOLERANCE)
    )
    if bad.any():
        return CriterionResult.fail(Criterion.C4, np.flatnonzero(bad)[0])
    return CriterionResult(True)


def check_ring(ring: RingSamples, polarity: Polarity, params: VerifyParams) -> VerificationReport:
    """Apply the criteria in order C1, C2/C2a, C3, C4, stopping at the first failure"""
    angular = criterion_angular(ring, params.sa, params.sae, params.san)
    results = (
        lambda: criterion_speed_ratio(ring, params.sv),
        lambda: angular,
        lambda: criterion_tangency(ring, params.sd, polarity),
        lambda: criterion_symmetry(ring, params.sy),
    )
    for check in results:
        result = check()
        if not result.passed:
            return VerificationReport(
                False, result.criterion, result.index, result.exceptions, ring.radius
            )
    return VerificationReport(True, exception_count=angular.exceptions, radius=ring.radius)


def verify_center(
    frame: OceanFrame, candidate: CenterCandidate, radius: float, params: VerifyParams
) -> VerificationReport:
    """Verify a candidate center on the ring of a given radius

    Args:
        frame:      Frame with velocity.
        candidate:  Candidate, verified around its velocity minimum.
        radius:     Radius of the ring, cells.
        params:     Verification thresholds.

    Returns:
        Report naming the first failing criterion, if any.
    """
    try:
        ring = sample_ring(frame, candidate.layer, candidate.vel_minimum, radius)
    except (exceptions.RingOutOfBoundsError, exceptions.MaskedRingError) as err:
        log.debug(f"Candidate {candidate.vel_minimum}: {err}")
        return VerificationReport(False, Criterion.MASKED_RING, radius=radius)

    report = check_ring(ring, candidate.polarity, params)
    if not report.accepted:
        log.debug(
            f"Candidate {candidate.vel_minimum} rejected by {report.failing_criterion.value} "
            f"at sample {report.failing_sample_index}, radius {radius}"
        )
    return report


def verify_candidates(
    frame: OceanFrame,
    candidates: Sequence[CenterCandidate],
    radius: float,
    params: VerifyParams,
    workers: int = 1,
) -> List[VerificationReport]:
    """Verify many candidates, in parallel if workers > 1

    The reports are returned in the order of the candidates.
    """
    return ordered_map(lambda c: verify_center(frame, c, radius, params), candidates, workers)


def ring_table(ring: RingSamples, polarity: Polarity) -> pd.DataFrame:
    """All per-sample quantities tested by the criteria, ready for plotting"""
    half = ring.n // 2
    symmetry = np.full(ring.n, np.nan)
    symmetry[:half] = symmetry_angles(ring)
    return pd.DataFrame(
        dict(
            azimuth=ring.azimuth,
            x=ring.center[0] + ring.radius * np.cos(np.radians(ring.azimuth)),
            y=ring.center[1] + ring.radius * np.sin(np.radians(ring.azimuth)),
            u=ring.u,
            v=ring.v,
            speed=ring.speed,
            direction=ring.direction,
            speed_ratio=speed_ratios(ring),
            angular_difference=angular_differences(ring),
            tangent_deviation=tangent_deviations(ring, polarity),
            symmetry_angle=symmetry,
            valid=ring.valid,
        )
    )
