import math

import numpy as np
import pytest

from turanlab import cliques as cl
from turanlab import graph as gr
from turanlab import motzkin as ms

from conftest import random_graph


def test_quad_form_k4_uniform():
    x = np.full(4, 0.25)
    # 6 edges * 2 * (1/16) = 0.75 = 1 - 1/omega.
    assert math.isclose(ms.quad_form(gr.complete(4), "classical", x), 0.75, rel_tol=1e-12)


def test_quad_form_indicator_is_zero():
    for g in (gr.petersen(), gr.bowtie(), gr.complete(5)):
        x = np.zeros(g.n)
        x[0] = 1.0
        assert ms.quad_form(g, "classical", x) == 0.0


def test_quad_form_avg_local_triangle_of_diamond():
    g = gr.diamond()
    # All c(v) = 3, so avg_local weight is 3/2 on every edge; uniform mass on
    # one triangle gives 3 edges * 2 * (3/2) * (1/9) = 1.
    x = np.array([1 / 3, 1 / 3, 1 / 3, 0.0])
    assert math.isclose(ms.quad_form(g, "avg_local", x), 1.0, rel_tol=1e-12)


def test_quad_form_rejects_off_simplex():
    with pytest.raises(ValueError):
        ms.quad_form(gr.complete(3), "classical", np.array([0.5, 0.2, 0.2]))
    with pytest.raises(ValueError):
        ms.quad_form(gr.complete(3), "classical", np.array([1.5, -0.5, 0.0]))


def test_maximize_classical_fixtures():
    _, val = ms.maximize_simplex(gr.complete(4), "classical")
    assert abs(val - 0.75) <= 1e-6
    _, val = ms.maximize_simplex(gr.petersen(), "classical")
    assert abs(val - 0.5) <= 1e-6
    _, val = ms.maximize_simplex(gr.diamond(), "classical")
    assert abs(val - (1 - 1 / 3)) <= 1e-6


def test_maximize_classical_exhaustive_n4():
    for g in gr.enumerate_labeled(4):
        omega = cl.max_clique(g)[0]
        _, val = ms.maximize_simplex(g, "classical", restarts=2, iters=500)
        assert abs(val - (1 - 1 / omega)) <= 1e-6, gr.to_graph6(g)


def test_weighted_schemes_bounded_by_one():
    rng = np.random.default_rng(17)
    for _ in range(40):
        g = random_graph(rng, 2, 7)
        for scheme in ("avg_local", "geo_local"):
            _, val = ms.maximize_simplex(g, scheme, restarts=4, iters=2000)
            assert val <= 1.0 + 1e-6, (gr.to_graph6(g), scheme, val)


def test_clique_witness_attains_one_for_weighted_schemes():
    for g in (gr.diamond(), gr.bowtie(), gr.complete(4), gr.petersen()):
        size, witness = cl.max_clique(g)
        if size < 2:
            continue
        x = ms.uniform_clique_point(g, witness)
        for scheme in ("avg_local", "geo_local"):
            assert ms.quad_form(g, scheme, x) >= 1.0 - 1e-6
        _, val = ms.maximize_simplex(g, "geo_local", restarts=2, iters=2000)
        assert 1.0 - 1e-6 <= val <= 1.0 + 1e-6


def test_geo_local_below_avg_local_pointwise():
    rng = np.random.default_rng(23)
    for _ in range(30):
        g = random_graph(rng, 2, 7)
        if g.m == 0:
            continue
        x = rng.dirichlet(np.ones(g.n))
        geo = ms.quad_form(g, "geo_local", x)
        avg = ms.quad_form(g, "avg_local", x)
        assert geo <= avg + 1e-12


def test_replicator_monotone_and_stationary():
    g = gr.bowtie()
    w = ms.WeightScheme("classical").matrix(g)
    rng = np.random.default_rng(5)
    x0 = rng.dirichlet(np.ones(g.n))
    x, val, steps = ms.replicator_ascent(w, x0, 5000)
    assert steps <= 5000
    # Stationary value is a clique value 1 - 1/k for the classical scheme.
    assert any(abs(val - (1 - 1 / k)) < 1e-6 for k in (1, 2, 3))


def test_maximize_edgeless_graph():
    x, val = ms.maximize_simplex(gr.empty(4), "classical", restarts=2, iters=50)
    assert val == 0.0
    assert math.isclose(float(x.sum()), 1.0, abs_tol=1e-9)


def test_custom_scheme():
    g = gr.complete(3)
    sch = ms.WeightScheme("custom", {(0, 1): 2.0, (0, 2): 2.0, (1, 2): 2.0})
    _, val = ms.maximize_simplex(g, sch, restarts=2, iters=2000)
    # Doubling all weights doubles the classical maximum.
    assert abs(val - 2 * (1 - 1 / 3)) <= 1e-6
    with pytest.raises(ValueError, match="negative"):
        ms.WeightScheme("custom", {(0, 1): -1.0}).matrix(g)
    with pytest.raises(ValueError, match="not an edge"):
        ms.WeightScheme("custom", {(0, 2): 1.0}).matrix(gr.path(3))
    with pytest.raises(ValueError, match="unknown scheme"):
        ms.WeightScheme("bogus").matrix(g)


def test_maximize_deterministic():
    g = gr.petersen()
    x1, v1 = ms.maximize_simplex(g, "classical", restarts=4, seed=7)
    x2, v2 = ms.maximize_simplex(g, "classical", restarts=4, seed=7)
    assert v1 == v2 and np.array_equal(x1, x2)
