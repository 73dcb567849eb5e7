import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from turanlab import cliques as cl
from turanlab import graph as gr
from turanlab import spectra as sp

from conftest import random_graph


def char_poly_exact(g):
    """Oracle: integer characteristic polynomial via Leverrier-Faddeev.

    Returns coefficients of det(xI - A) from the leading power down.
    """
    n = g.n
    a = [[Fraction(int(g.has_edge(i, j))) for j in range(n)] for i in range(n)]

    def matmul(x, y):
        return [
            [sum(x[i][k] * y[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]

    coeffs = [Fraction(1)]
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        for i in range(n):
            m[i][i] += coeffs[-1]
        m = matmul(a, m)
        c = -Fraction(sum(m[i][i] for i in range(n)), k)
        coeffs.append(c)
    assert all(c.denominator == 1 for c in coeffs)
    return [int(c) for c in coeffs]


def poly_eval(coeffs, x):
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def test_complete_graph_spectrum():
    s = sp.eigenvalues(gr.complete(4))
    assert np.allclose(s.eigenvalues, [3, -1, -1, -1], atol=1e-12)
    assert math.isclose(s.s_plus, 9.0, abs_tol=1e-9)
    assert math.isclose(s.s_minus, 3.0, abs_tol=1e-9)
    assert (s.n_plus, s.n_minus) == (1, 3)


def test_petersen_spectrum_against_char_poly():
    p = gr.petersen()
    coeffs = char_poly_exact(p)
    # Exact factorization check: (x-3)(x-1)^5(x+2)^4 has these integer roots.
    assert poly_eval(coeffs, 3) == 0
    assert poly_eval(coeffs, 1) == 0
    assert poly_eval(coeffs, -2) == 0
    s = sp.eigenvalues(p)
    expect = np.array([3] + [1] * 5 + [-2] * 4, dtype=float)
    assert np.allclose(s.eigenvalues, expect, atol=1e-9)
    assert math.isclose(s.s_plus, 14.0, abs_tol=1e-8)
    assert math.isclose(s.s_minus, 16.0, abs_tol=1e-8)


def test_cycle5_spectrum_circulant_closed_form():
    s = sp.eigenvalues(gr.cycle(5))
    expect = sorted((2 * math.cos(2 * math.pi * k / 5) for k in range(5)), reverse=True)
    assert np.allclose(s.eigenvalues, expect, atol=1e-12)
    assert math.isclose(s.s_plus, 4.0 + 2 * (2 * math.cos(2 * math.pi / 5)) ** 2, abs_tol=1e-9)
    assert math.isclose(s.s_plus, 4.7639320225, abs_tol=1e-9)
    assert math.isclose(s.s_minus, 5.2360679775, abs_tol=1e-9)


def test_diamond_spectrum_quadratic_closed_form():
    # Characteristic polynomial factors as (x^2 - x - 4) * x * (x + 1).
    coeffs = char_poly_exact(gr.diamond())
    assert poly_eval(coeffs, Fraction(-1)) == 0
    assert poly_eval(coeffs, 0) == 0
    s = sp.eigenvalues(gr.diamond())
    r17 = math.sqrt(17)
    expect = [(1 + r17) / 2, 0.0, -1.0, (1 - r17) / 2]
    assert np.allclose(s.eigenvalues, expect, atol=1e-12)
    assert math.isclose(s.s_plus, ((1 + r17) / 2) ** 2, abs_tol=1e-9)
    assert math.isclose(s.s_plus, 6.5615528128, abs_tol=1e-8)
    assert math.isclose(s.power_sum(3), 12.0, abs_tol=1e-8)


def test_bipartite_square_energies():
    s = sp.eigenvalues(gr.complete_bipartite(3, 3))
    assert math.isclose(s.s_plus, 9.0, abs_tol=1e-9)
    assert math.isclose(s.s_minus, 9.0, abs_tol=1e-9)
    assert sp.square_energies(s) == (s.s_plus, s.s_minus)


def test_power_sum_fixtures():
    assert math.isclose(sp.power_sum(sp.eigenvalues(gr.complete(4)), 3), 24.0, abs_tol=1e-9)
    assert math.isclose(sp.power_sum(sp.eigenvalues(gr.petersen()), 3), 0.0, abs_tol=1e-8)
    with pytest.raises(ValueError):
        sp.power_sum(sp.eigenvalues(gr.complete(3)), 0)


def trace_identities_ok(g, s=None):
    s = s or sp.eigenvalues(g)
    t = cl.triangle_count(g)
    ok1 = abs(s.eigenvalues.sum()) <= 1e-8 * g.n
    ok2 = abs(s.power_sum(2) - 2 * g.m) <= 1e-7 * max(1, g.m)
    ok3 = abs(s.power_sum(3) - 6 * t) <= 1e-6 * (1 + t)
    return ok1 and ok2 and ok3


def test_trace_identities_random():
    rng = np.random.default_rng(21)
    for _ in range(300):
        g = random_graph(rng, 1, 12)
        assert trace_identities_ok(g)
        s = sp.eigenvalues(g)
        # Average degree sits between the extreme eigenvalues.
        assert s.lambda1 >= 2 * g.m / g.n - 1e-9
        assert float(s.eigenvalues[-1]) <= 2 * g.m / g.n + 1e-9
        assert abs(s.s_plus + s.s_minus - 2 * g.m) <= 1e-7 * max(1, g.m)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.integers(0, 1 << 28))
def test_trace_identities_property(n, bits):
    g = gr.from_edge_mask(n, bits & ((1 << (n * (n - 1) // 2)) - 1))
    assert trace_identities_ok(g)


def walks_brute(g, r):
    """Oracle: explicit walk enumeration by depth-first extension."""
    def count(v, remaining):
        if remaining == 1:
            return 1
        return sum(count(u, remaining - 1) for u in range(g.n) if g.has_edge(v, u))

    return [count(v, r) for v in range(g.n)]


def test_walk_counts():
    g = gr.cycle(5)
    t1 = sp.walk_counts(g, 1)
    assert t1.per_vertex == (1,) * 5 and t1.total == 5
    t2 = sp.walk_counts(g, 2)
    assert t2.per_vertex == g.degrees and t2.total == 2 * g.m
    t3 = sp.walk_counts(g, 3)
    assert t3.per_vertex == (4,) * 5 and t3.total == 20
    rng = np.random.default_rng(31)
    for _ in range(40):
        n = int(rng.integers(1, 7))
        g = gr.from_edge_mask(n, int(rng.integers(0, 1 << (n * (n - 1) // 2))))
        for r in (1, 2, 3, 4, 5):
            assert list(sp.walk_counts(g, r).per_vertex) == walks_brute(g, r)


def test_walk_recursion_invariant_exact():
    rng = np.random.default_rng(32)
    for _ in range(50):
        n = int(rng.integers(2, 9))
        g = gr.from_edge_mask(n, int(rng.integers(0, 1 << (n * (n - 1) // 2))))
        for r in range(1, 6):
            wr = sp.walk_counts(g, r)
            wr1 = sp.walk_counts(g, r + 1)
            for v in range(g.n):
                nb = [u for u in range(g.n) if g.has_edge(u, v)]
                assert wr1.per_vertex[v] == sum(wr.per_vertex[u] for u in nb)


def test_walk_counts_rejects_bad_r():
    with pytest.raises(ValueError):
        sp.walk_counts(gr.complete(3), 0)


def test_weighted_spectral_radius():
    g = gr.complete(2)
    assert math.isclose(sp.weighted_spectral_radius(g, {(0, 1): 2.5}), 2.5, abs_tol=1e-12)
    k3 = gr.complete(3)
    w1 = {(0, 1): 1.0, (0, 2): 1.0, (1, 2): 1.0}
    assert math.isclose(
        sp.weighted_spectral_radius(k3, w1),
        sp.eigenvalues(k3).lambda1,
        abs_tol=1e-10,
    )
    w3 = {e: 3.0 * v for e, v in w1.items()}
    assert math.isclose(
        sp.weighted_spectral_radius(k3, w3),
        3.0 * sp.weighted_spectral_radius(k3, w1),
        rel_tol=1e-12,
    )
    with pytest.raises(ValueError, match="negative"):
        sp.weighted_spectral_radius(g, {(0, 1): -1.0})
    with pytest.raises(ValueError, match="not an edge"):
        sp.weighted_spectral_radius(gr.path(3), {(0, 2): 1.0})


def test_lambda2_convention_single_vertex():
    assert sp.eigenvalues(gr.complete(1)).lambda2 == 0.0
