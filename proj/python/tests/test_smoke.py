import math

import numpy as np
import pytest

import dclust


def lattice(side, spacing, ox=0.0):
    xs, ys = np.meshgrid(np.arange(side) * spacing + ox, np.arange(side) * spacing)
    return np.column_stack([xs.ravel(), ys.ravel()])


def test_dbscan_two_blobs():
    pts = np.vstack([lattice(5, 1.0), lattice(5, 1.0, 20.0)])
    labels = dclust.dbscan(pts, eps=1.0, minpts=4)
    assert labels.dtype == np.int32
    assert set(labels.tolist()) == {0, 1}
    assert (dclust.dbscan(pts, 1.0, 4, index="linear") == labels).all()


def test_generated_scenario_scores():
    pts, truth = dclust.generate("blobs", 300, seed=1)
    assert pts.shape == (300, 2)
    labels = dclust.dbscan(pts, eps=1.5, minpts=4)
    assert dclust.adjusted_rand_index(labels, truth) > 0.9
    again, _ = dclust.generate("blobs", 300, seed=1)
    assert (again == pts).all()


def test_optics_matches_dbscan_at_full_radius():
    pts, _ = dclust.generate("varying", 400, seed=2)
    order, reach, core = dclust.optics_order(pts, eps=1.0, minpts=5)
    assert sorted(order.tolist()) == list(range(400))
    assert math.isinf(reach[0])
    labels = dclust.optics(pts, eps=1.0, minpts=5)
    db = dclust.dbscan(pts, eps=1.0, minpts=5)
    both = (labels >= 0) & (db >= 0)
    assert dclust.adjusted_rand_index(labels[both], db[both]) > 0.99
    multi = dclust.optics(pts, eps=3.0, minpts=5, levels=[0.2, 1.0])
    assert multi.max() >= 1


def test_other_algorithms_run():
    pts, truth = dclust.generate("embedded", 600, seed=3)
    assert dclust.endbscan(pts, 1.5, 12, 0.3).shape == (600,)
    assert dclust.endbscan(pts, 1.5, 12, math.inf, mode="chained").max() >= 0
    labels, radius = dclust.kdvariant(pts, minpts=4, alpha=1000)
    assert radius > 0 and labels.shape == (600,)
    assert dclust.ndiff(pts, 0.3, 8, min_cluster_size=10).shape == (600,)
    g = dclust.k_distance_graph(pts, 4)
    assert (np.diff(g) >= 0).all()
    assert g[0] <= dclust.estimate_radius(pts, 4) <= g[-1]


def test_errors():
    pts = lattice(3, 1.0)
    with pytest.raises(ValueError):
        dclust.dbscan(pts, eps=0.0, minpts=3)
    with pytest.raises(dclust.ParameterError):
        dclust.optics(pts, eps=1.0, minpts=3, eps_prime=2.0)
    with pytest.raises(dclust.DataError):
        dclust.dbscan(np.array([[0.0, math.nan]]), 1.0, 1)
    with pytest.raises(dclust.NoKneeError):
        dclust.estimate_radius(np.column_stack([np.arange(6.0), np.zeros(6)]), 1)
    with pytest.raises(OSError):
        dclust.load("/nonexistent/file.csv")


def test_round_trip(tmp_path):
    pts, truth = dclust.generate("varying", 200, seed=4)
    for fmt in ("csv", "arff"):
        path = str(tmp_path / f"data.{fmt}")
        dclust.save(path, pts, truth.tolist(), format=fmt)
        back, back_truth = dclust.load(path, format=fmt)
        assert (back == pts).all()
        assert (back_truth == truth).all()
