"""Tests for the detectors.wa module

"""

# Third party imports
import numpy as np
import pytest

# Eddyscan imports
from eddyscan import detectors
from eddyscan import synth
from eddyscan.data import GridSpec, Polarity, ScalarField2D
from eddyscan.detectors import wa
from eddyscan.lib import exceptions
from eddyscan.lib.config import RunConfig, WaParams


def _fields(u, v, mask=None):
    return ScalarField2D(u, mask), ScalarField2D(v, mask)


def _rotation(omega, nx=41, ny=41):
    """Solid-body rotation around the middle of the grid, on the whole grid"""
    jj, ii = np.mgrid[0:ny, 0:nx].astype(float)
    return _fields(-omega * (jj - ny // 2), omega * (ii - nx // 2))


def _streamline(*points):
    points = np.array(points, dtype=float)
    return wa.Streamline(tuple(points[0]), points, 360.0, True, 0.0, "closed")


def _ring_around(x, y, radius=2.0):
    angles = np.radians(np.arange(0, 360, 30))
    return _streamline(*zip(x + radius * np.cos(angles), y + radius * np.sin(angles)))


#
# Integration
#
def test_uniform_flow_is_straight():
    u, v = _fields(np.ones((20, 40)), np.zeros((20, 40)))
    line = wa.integrate_streamline(u, v, (5.0, 10.0), WaParams())

    assert line.stop == "boundary"
    assert not line.closed
    assert line.cumulative_turn == pytest.approx(0.0)
    assert np.allclose(line.points[:, 1], 10.0)
    assert np.allclose(np.diff(line.points[:, 0]), WaParams().step)


@pytest.mark.parametrize("omega, sign", [(0.1, 1), (-0.1, -1)])
def test_solid_body_closes(omega, sign):
    u, v = _rotation(omega)
    line = wa.integrate_streamline(u, v, (25.0, 20.0), WaParams(step=0.25))

    assert line.closed
    assert line.stop == "closed"
    assert line.closure_gap <= 1.0
    assert abs(line.cumulative_turn - sign * 360.0) <= 5.0
    assert np.allclose(np.hypot(line.points[:, 0] - 20, line.points[:, 1] - 20), 5.0, atol=0.01)


def test_halving_the_step_does_not_hurt():
    u, v = _rotation(0.1)
    errors = [
        abs(wa.integrate_streamline(u, v, (25.0, 20.0), WaParams(step=step)).cumulative_turn - 360.0)
        for step in (0.25, 0.125)
    ]
    assert errors[1] <= errors[0] + 1e-6


@pytest.mark.parametrize("omega", [0.1, -0.05])
@pytest.mark.parametrize("seed", [(23.0, 20.0), (20.0, 28.5), (13.0, 20.0)])
def test_turn_stable_under_step_halving(omega, seed):
    """Closed streamlines turn by the same angle within a degree when the step is halved"""
    u, v = _rotation(omega)
    turns = [wa.integrate_streamline(u, v, seed, WaParams(step=step)) for step in (0.25, 0.125)]

    assert all(line.closed for line in turns)
    assert abs(turns[0].cumulative_turn - turns[1].cumulative_turn) < 1.0


def test_closure_needs_departure():
    """A streamline does not close while it is still next to its seed"""
    u, v = _rotation(0.1)
    line = wa.integrate_streamline(u, v, (25.0, 20.0), WaParams(step=0.05, max_steps=2000))
    assert line.closed
    assert len(line.points) > 500


def test_stagnation():
    u, v = _fields(np.zeros((20, 20)), np.zeros((20, 20)))
    line = wa.integrate_streamline(u, v, (10.0, 10.0), WaParams())
    assert line.stop == "stagnation"
    assert len(line.points) == 1


def test_max_steps():
    u, v = _rotation(0.1)
    line = wa.integrate_streamline(u, v, (25.0, 20.0), WaParams(max_steps=10))
    assert line.stop == "max_steps"
    assert not line.closed
    assert len(line.points) == 11


def test_seed_on_land():
    mask = np.ones((20, 20), dtype=bool)
    mask[8:12, 8:12] = False
    u, v = _fields(np.ones((20, 20)), np.zeros((20, 20)), mask)
    lines = wa.integrate_streamlines(u, v, [(10.0, 10.0), (2.0, 2.0)], WaParams())
    assert lines[0] is None
    assert lines[1].stop == "boundary"


def test_streamline_runs_into_land():
    mask = np.ones((20, 20), dtype=bool)
    mask[:, 12:] = False
    u, v = _fields(np.ones((20, 20)), np.zeros((20, 20)), mask)
    line = wa.integrate_streamline(u, v, (2.0, 10.0), WaParams())
    assert line.stop == "stagnation"
    assert line.points[-1, 0] < 12


def test_seed_outside_grid():
    u, v = _rotation(0.1)
    with pytest.raises(exceptions.SampleOutOfDomainError):
        wa.integrate_streamlines(u, v, [(10.0, 10.0), (41.0, 10.0)], WaParams())


def test_chunks_give_the_same_streamlines(monkeypatch):
    u, v = _rotation(0.1)
    seeds = wa.seed_grid(41, 41, 8)
    together = wa.integrate_streamlines(u, v, seeds, WaParams())
    monkeypatch.setattr(wa, "CHUNK_SIZE", 3)
    chunked = wa.integrate_streamlines(u, v, seeds, WaParams())

    assert [s.stop for s in together] == [s.stop for s in chunked]
    for first, second in zip(together, chunked):
        assert np.array_equal(first.points, second.points)


#
# Seeds and clusters
#
def test_seed_grid():
    assert wa.seed_grid(10, 10, 4) == [(2.0, 2.0), (6.0, 2.0), (2.0, 6.0), (6.0, 6.0)]


def test_cluster_single_linkage():
    """Centroids chained within the merge distance end up in one cluster"""
    a, b, c, d = (_ring_around(x, 10) for x in (0.0, 5.0, 2.5, 20.0))
    clusters = wa.cluster_streamlines([a, d, b, c], merge_distance=3.0)
    assert clusters == [[a, b, c], [d]]


def test_cluster_nothing():
    assert wa.cluster_streamlines([], merge_distance=3.0) == []


def test_streamline_geometry():
    line = _ring_around(4.0, 7.0, radius=3.0)
    assert line.centroid == pytest.approx((4.0, 7.0))
    assert line.mean_radius == pytest.approx(3.0)


#
# Detector
#
@pytest.mark.parametrize("polarity", list(Polarity))
def test_detect_single_eddy(single_eddy, polarity):
    frame = single_eddy(center=(30, 30), polarity=polarity)
    clusters = wa.detect_wa(frame, 0, WaParams())
    assert len(clusters) == 1
    center, outermost = clusters[0]
    assert np.hypot(center[0] - 30, center[1] - 30) <= 1.5
    assert outermost.closed
    assert np.sign(outermost.cumulative_turn) == polarity.sense

    report = detectors.detect(frame, RunConfig(method="wa"))
    assert report.method == "wa"
    assert report.accepted == report.candidates_total == 1
    assert report.eddies[0].polarity is polarity
    assert report.eddies[0].surface.radius >= 10
    assert set(report.timing) == {"streamlines", "extract"}


def test_detect_meander():
    frame = synth.meander_field(GridSpec(200, 100), amplitude=5, wavelength=60, jet_speed=0.5)
    assert wa.detect_wa(frame, 0, WaParams()) == []


def test_threshold_excludes_loops():
    """No closed streamline winds more than once around a center"""
    u, v = _rotation(0.1)
    frame_lines = wa.integrate_streamlines(u, v, wa.seed_grid(41, 41, 4), WaParams())
    closed = [s for s in frame_lines if s is not None and s.closed]
    assert closed
    assert all(abs(abs(s.cumulative_turn) - 360.0) <= 5.0 for s in closed)
