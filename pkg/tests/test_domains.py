import math

import numpy as np
import pytest

from weylkit.domains import (
    Ball,
    Box,
    Disk,
    HalfSpace,
    Polygon,
    load_polygon,
    lshape_polygon,
    square,
)
from weylkit.errors import ConfigError


def test_box_geometry():
    b = Box((1.0, 2.0))
    assert b.volume == pytest.approx(2.0)
    assert b.surface == pytest.approx(6.0)
    assert Box((1.0, 2.0, 3.0)).surface == pytest.approx(2 * (2 + 3 + 6))


def test_disk_geometry():
    d = Disk(2.0)
    assert d.volume == pytest.approx(4 * math.pi)
    assert d.surface == pytest.approx(4 * math.pi)


def test_ball_geometry():
    b = Ball(1.0)
    assert b.volume == pytest.approx(4 * math.pi / 3)
    assert b.surface == pytest.approx(4 * math.pi)


def test_invalid_shapes():
    with pytest.raises(ConfigError):
        Box((1.0, -1.0))
    with pytest.raises(ConfigError):
        Disk(0.0)
    with pytest.raises(ConfigError):
        Polygon([(0, 0), (1, 0), (2, 0)])  # zero area


def test_distances():
    sq = square(1.0)
    assert sq.distance_to_complement(np.array([0.5, 0.5])) == pytest.approx(0.5)
    assert sq.distance_to_complement(np.array([0.1, 0.4])) == pytest.approx(0.1)
    assert sq.distance_to_complement(np.array([1.5, 0.5])) == 0.0
    d = Disk(1.0)
    assert d.distance_to_complement(np.array([0.3, 0.0])) == pytest.approx(0.7)
    assert d.distance_to_complement(np.array([2.0, 0.0])) == 0.0
    hs = HalfSpace(2)
    assert hs.distance_to_complement(np.array([5.0, 0.25])) == pytest.approx(0.25)
    assert hs.distance_to_complement(np.array([5.0, -1.0])) == 0.0


def test_boundary_distance_outside():
    sq = square(1.0)
    assert sq.distance_to_boundary(np.array([2.0, 0.5])) == pytest.approx(1.0)
    assert sq.distance_to_boundary(np.array([2.0, 2.0])) == pytest.approx(math.sqrt(2))
    d = Disk(1.0)
    assert d.distance_to_boundary(np.array([3.0, 0.0])) == pytest.approx(2.0)


def test_box_grad_flags_ridge():
    sq = square(1.0)
    g, smooth = sq.grad_distance(np.array([0.2, 0.5]))
    assert smooth
    assert np.allclose(g, [1.0, 0.0])
    g, smooth = sq.grad_distance(np.array([0.9, 0.5]))
    assert np.allclose(g, [-1.0, 0.0])
    _, smooth = sq.grad_distance(np.array([0.3, 0.3]))  # on the diagonal ridge
    assert not smooth


def test_disk_grad():
    d = Disk(1.0)
    g, smooth = d.grad_distance(np.array([0.5, 0.0]))
    assert smooth
    assert np.allclose(g, [-1.0, 0.0])


def test_polygon_membership_and_edges():
    L = lshape_polygon(1.0)
    assert L.volume == pytest.approx(0.75)
    assert L.surface == pytest.approx(4.0)
    pts = np.array(
        [
            [0.25, 0.25],  # inside
            [0.75, 0.75],  # inside the removed quadrant
            [0.75, 0.25],  # inside the lower arm
            [0.75, 0.5],  # exactly on the inner horizontal edge
            [0.5, 0.75],  # exactly on the inner vertical edge
            [0.5, 0.25],  # interior point
            [-0.1, 0.2],  # outside
        ]
    )
    inside = L.contains(pts)
    assert list(inside) == [True, False, True, False, False, True, False]


def test_polygon_distance():
    L = lshape_polygon(1.0)
    assert L.distance_to_complement(np.array([0.25, 0.25])) == pytest.approx(0.25)
    assert L.distance_to_complement(np.array([0.75, 0.75])) == 0.0


def test_polygon_json_roundtrip(tmp_path):
    p = tmp_path / "poly.json"
    p.write_text('{"vertices": [[0,0],[1,0],[1,1],[0,1]]}')
    poly = load_polygon(p)
    assert poly.volume == pytest.approx(1.0)
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    with pytest.raises(ConfigError):
        load_polygon(bad)
    with pytest.raises(ConfigError):
        load_polygon(tmp_path / "missing.json")
