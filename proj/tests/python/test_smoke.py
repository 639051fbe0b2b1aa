import itertools
import math

import numpy as np
import pytest

import mdembed


def path_matrix(n):
    idx = np.arange(n, dtype=float)
    return np.abs(idx[:, None] - idx[None, :])


def test_metric_round_trip():
    m = mdembed.FiniteMetric(path_matrix(5))
    assert m.size == 5
    assert m.diameter == 4.0
    assert m(1, 3) == 2.0
    np.testing.assert_array_equal(m.matrix(), path_matrix(5))


def test_invalid_metric_rejected():
    bad = np.array([[0.0, 1.0, 5.0], [1.0, 0.0, 1.0], [5.0, 1.0, 0.0]])
    with pytest.raises(mdembed.InvalidInput):
        mdembed.FiniteMetric(bad)


def test_graph_metric_matches_numpy_floyd_warshall():
    g = mdembed.generate("grid2d", rows=3, cols=4, weighted=True, seed=2)
    m = mdembed.metric_from_graph(g)
    d = np.full((g.size, g.size), np.inf)
    np.fill_diagonal(d, 0.0)
    for u, v, w in g.edges():
        d[u, v] = d[v, u] = min(d[u, v], w)
    for k in range(g.size):
        d = np.minimum(d, d[:, [k]] + d[[k], :])
    np.testing.assert_allclose(m.matrix(), d)


def test_ckr_partition_covers_and_bounds():
    m = mdembed.as_metric(mdembed.generate("path", n=16))
    p = mdembed.ckr_partition(m, 4.0, 7)
    assert sorted(itertools.chain.from_iterable(p.clusters)) == list(range(16))
    assert 0.25 <= p.alpha <= 0.5
    for c in p.clusters:
        assert max(m(a, b) for a in c for b in c) < 4.0


def test_measured_descent_upper_bound_and_replay():
    m = mdembed.FiniteMetric(path_matrix(12))
    e = mdembed.embed_measured_descent(m, p=2.0, samples=8, seed=3)
    again = mdembed.embed_measured_descent(m, p=2.0, samples=8, seed=3)
    np.testing.assert_array_equal(e.coords, again.coords)
    bound = 50.0 * math.log(e.phi_mu)
    diff = e.coords[:, None, :] - e.coords[None, :, :]
    sq = (diff**2).sum(axis=2)
    d = m.matrix()
    mask = d > 0
    assert np.all(sq[mask] <= bound * d[mask] ** 2 * (1 + 1e-9))


def test_distortion_report():
    m = mdembed.as_metric(mdembed.generate("grid2d", rows=4, cols=4))
    e = mdembed.embed_theorem_pad(m, p=2.0, seed=5)
    r = mdembed.distortion(m, e.coords, 2.0)
    assert r.distortion >= 1.0
    assert r.lipschitz >= r.contraction > 0.0


def test_volume_map_is_one_lipschitz():
    m = mdembed.FiniteMetric(path_matrix(10))
    e = mdembed.embed_volume(m, samples=16, seed=4)
    assert mdembed.distortion(m, e.coords, 2.0).lipschitz <= 1.0 + 1e-12
    report = mdembed.volume_eta_report(m, e.coords, k=3, subsets=20, seed=1)
    assert report.affine_floor > 0.0
    assert len(report.eta_quantiles) == 5


def test_linf_embedding_of_weighted_grid():
    g = mdembed.generate("grid2d", rows=6, cols=6, weighted=True, seed=1)
    e = mdembed.embed_theorem_yuri(g, 3, 2.0)
    assert e.validated
    assert e.K == mdembed.linf_dimension(36, 3, 2.0) == e.coords.shape[1]
    r = mdembed.distortion(mdembed.metric_from_graph(g), e.coords, math.inf)
    assert r.lipschitz <= 2.0
    assert r.contraction >= 1.0 / (2.0 * e.D)


def test_small_constant_raises_diameter_violation():
    g = mdembed.generate("grid2d", rows=6, cols=6)
    with pytest.raises(mdembed.DiameterViolation):
        mdembed.embed_theorem_yuri(g, 3, 0.05)
